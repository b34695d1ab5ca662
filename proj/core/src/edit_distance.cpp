#include "wordsim/edit_distance.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "wordsim/error.hpp"
#include "wordsim/unicode.hpp"

namespace wordsim {

double CostTable::substitute_cost(char32_t from, char32_t to) const {
  if (from == to) return 0.0;
  if (auto it = substitute_overrides.find({from, to}); it != substitute_overrides.end()) {
    return it->second;
  }
  return substitute;
}

void CostTable::validate() const {
  auto bad = [](double c) { return !std::isfinite(c) || c < 0.0; };
  if (bad(insert) || bad(remove) || bad(substitute)) {
    throw ConfigError("edit costs must be finite and non-negative");
  }
  for (const auto& [pair, cost] : substitute_overrides) {
    if (bad(cost)) throw ConfigError("substitution override costs must be finite and non-negative");
    if (pair.first == pair.second && cost != 0.0) {
      throw ConfigError("substituting a character for itself must cost 0");
    }
  }
}

double levenshtein(std::u32string_view x, std::u32string_view y, const CostTable& costs) {
  costs.validate();
  std::vector<double> prev(y.size() + 1), cur(y.size() + 1);
  for (std::size_t j = 0; j <= y.size(); ++j) prev[j] = static_cast<double>(j) * costs.insert;
  for (std::size_t i = 1; i <= x.size(); ++i) {
    cur[0] = static_cast<double>(i) * costs.remove;
    for (std::size_t j = 1; j <= y.size(); ++j) {
      cur[j] = std::min({prev[j] + costs.remove, cur[j - 1] + costs.insert,
                         prev[j - 1] + costs.substitute_cost(x[i - 1], y[j - 1])});
    }
    std::swap(prev, cur);
  }
  return prev[y.size()];
}

double levenshtein(std::string_view x, std::string_view y, const CostTable& costs) {
  return levenshtein(decode_utf8(x), decode_utf8(y), costs);
}

namespace {

std::size_t unit_levenshtein(std::u32string_view x, std::u32string_view y) {
  std::vector<std::size_t> prev(y.size() + 1), cur(y.size() + 1);
  for (std::size_t j = 0; j <= y.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= x.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= y.size(); ++j) {
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (x[i - 1] == y[j - 1] ? 0 : 1)});
    }
    std::swap(prev, cur);
  }
  return prev[y.size()];
}

}  // namespace

double normalized_levenshtein(std::u32string_view x, std::u32string_view y) {
  const std::size_t longest = std::max(x.size(), y.size());
  if (longest == 0) return 0.0;
  return static_cast<double>(unit_levenshtein(x, y)) / static_cast<double>(longest);
}

double normalized_levenshtein(std::string_view x, std::string_view y) {
  return normalized_levenshtein(decode_utf8(x), decode_utf8(y));
}

std::size_t damerau_levenshtein(std::u32string_view x, std::u32string_view y) {
  const std::size_t cols = y.size() + 1;
  // Three rolling rows: i-2, i-1, i.
  std::vector<std::size_t> before(cols), prev(cols), cur(cols);
  for (std::size_t j = 0; j < cols; ++j) prev[j] = j;
  for (std::size_t i = 1; i <= x.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= y.size(); ++j) {
      std::size_t best = std::min({prev[j] + 1, cur[j - 1] + 1,
                                   prev[j - 1] + (x[i - 1] == y[j - 1] ? 0 : 1)});
      if (i > 1 && j > 1 && x[i - 1] == y[j - 2] && x[i - 2] == y[j - 1]) {
        best = std::min(best, before[j - 2] + 1);
      }
      cur[j] = best;
    }
    std::swap(before, prev);
    std::swap(prev, cur);
  }
  return prev[y.size()];
}

std::size_t damerau_levenshtein(std::string_view x, std::string_view y) {
  return damerau_levenshtein(decode_utf8(x), decode_utf8(y));
}

std::size_t hamming(std::u32string_view x, std::u32string_view y) {
  if (x.size() != y.size()) {
    throw LengthMismatchError("hamming distance needs equal lengths (" + std::to_string(x.size()) +
                              " vs " + std::to_string(y.size()) + ")");
  }
  std::size_t d = 0;
  for (std::size_t i = 0; i < x.size(); ++i) d += x[i] != y[i];
  return d;
}

std::size_t hamming(std::string_view x, std::string_view y) {
  return hamming(decode_utf8(x), decode_utf8(y));
}

std::size_t lcs_length(std::u32string_view x, std::u32string_view y) {
  std::vector<std::size_t> prev(y.size() + 1, 0), cur(y.size() + 1, 0);
  for (std::size_t i = 1; i <= x.size(); ++i) {
    for (std::size_t j = 1; j <= y.size(); ++j) {
      cur[j] = x[i - 1] == y[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[y.size()];
}

std::size_t lcs_distance(std::u32string_view x, std::u32string_view y) {
  return x.size() + y.size() - 2 * lcs_length(x, y);
}

std::size_t lcs_distance(std::string_view x, std::string_view y) {
  return lcs_distance(decode_utf8(x), decode_utf8(y));
}

double metric_lcs(std::u32string_view x, std::u32string_view y) {
  const std::size_t longest = std::max(x.size(), y.size());
  if (longest == 0) return 0.0;
  return 1.0 - static_cast<double>(lcs_length(x, y)) / static_cast<double>(longest);
}

double metric_lcs(std::string_view x, std::string_view y) {
  return metric_lcs(decode_utf8(x), decode_utf8(y));
}

EpisodeResult episode_distance(std::u32string_view x, std::u32string_view y) {
  // Greedy leftmost matching decides the subsequence relation.
  std::size_t i = 0;
  for (std::size_t j = 0; j < y.size() && i < x.size(); ++j) {
    if (x[i] == y[j]) ++i;
  }
  if (i != x.size()) return EpisodeResult::infinite();
  return EpisodeResult::finite(y.size() - x.size());
}

EpisodeResult episode_distance(std::string_view x, std::string_view y) {
  return episode_distance(decode_utf8(x), decode_utf8(y));
}

}  // namespace wordsim
