#include "wordsim/gram_distance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>
#include <vector>

#include "wordsim/error.hpp"
#include "wordsim/unicode.hpp"

namespace wordsim {

namespace {

void require_gram_length(std::size_t n) {
  if (n == 0) throw ParameterError("gram length must be at least 1");
}

std::set<std::u32string> gram_set(const NGramProfile& profile) {
  std::set<std::u32string> out;
  for (const auto& [gram, _] : profile.counts) out.insert(gram);
  return out;
}

}  // namespace

std::size_t NGramProfile::count(const std::u32string& gram) const {
  auto it = counts.find(gram);
  return it == counts.end() ? 0 : it->second;
}

NGramProfile ngram_profile(std::u32string_view s, std::size_t n, GramPadding padding) {
  require_gram_length(n);
  std::u32string padded;
  if (padding == GramPadding::head) padded.assign(n - 1, kBoundaryChar);
  padded.append(s);

  NGramProfile profile;
  profile.n = n;
  if (padded.size() < n) return profile;
  for (std::size_t i = 0; i + n <= padded.size(); ++i) {
    ++profile.counts[padded.substr(i, n)];
    ++profile.total;
  }
  return profile;
}

NGramProfile ngram_profile(std::string_view s, std::size_t n, GramPadding padding) {
  return ngram_profile(decode_utf8(s), n, padding);
}

std::size_t qgram_distance(std::u32string_view x, std::u32string_view y, std::size_t q) {
  const NGramProfile px = ngram_profile(x, q);
  const NGramProfile py = ngram_profile(y, q);
  std::size_t d = 0;
  for (const auto& [gram, cx] : px.counts) {
    const std::size_t cy = py.count(gram);
    d += cx > cy ? cx - cy : cy - cx;
  }
  for (const auto& [gram, cy] : py.counts) {
    if (!px.counts.contains(gram)) d += cy;
  }
  return d;
}

std::size_t qgram_distance(std::string_view x, std::string_view y, std::size_t q) {
  return qgram_distance(decode_utf8(x), decode_utf8(y), q);
}

double kondrak_ngram_distance(std::u32string_view x, std::u32string_view y, std::size_t n) {
  require_gram_length(n);
  if (x.empty() || y.empty()) {
    throw ParameterError("N-gram distance is undefined for empty strings");
  }
  std::u32string px(n - 1, kBoundaryChar);
  px.append(x);
  std::u32string py(n - 1, kBoundaryChar);
  py.append(y);
  const double inv_n = 1.0 / static_cast<double>(n);

  // Gram i of x spans px[i-1, i-1+n) and ends at x[i-1].
  auto gram_cost = [&](std::size_t i, std::size_t j) {
    std::size_t differing = 0;
    for (std::size_t k = 0; k < n; ++k) differing += px[i - 1 + k] != py[j - 1 + k];
    return static_cast<double>(differing) * inv_n;
  };

  std::vector<double> prev(y.size() + 1), cur(y.size() + 1);
  for (std::size_t j = 0; j <= y.size(); ++j) prev[j] = static_cast<double>(j);
  for (std::size_t i = 1; i <= x.size(); ++i) {
    cur[0] = static_cast<double>(i);
    for (std::size_t j = 1; j <= y.size(); ++j) {
      cur[j] = std::min({prev[j] + 1.0, cur[j - 1] + 1.0, prev[j - 1] + gram_cost(i, j)});
    }
    std::swap(prev, cur);
  }
  return prev[y.size()] / static_cast<double>(std::max(x.size(), y.size()));
}

double kondrak_ngram_distance(std::string_view x, std::string_view y, std::size_t n) {
  return kondrak_ngram_distance(decode_utf8(x), decode_utf8(y), n);
}

double dice_coefficient(std::u32string_view x, std::u32string_view y, std::size_t n) {
  const NGramProfile px = ngram_profile(x, n);
  const NGramProfile py = ngram_profile(y, n);
  if (px.empty() && py.empty()) {
    throw UndefinedInputError("Dice coefficient undefined: both strings shorter than n = " +
                              std::to_string(n));
  }
  std::size_t shared = 0;
  for (const auto& [gram, cx] : px.counts) shared += std::min(cx, py.count(gram));
  return 2.0 * static_cast<double>(shared) / static_cast<double>(px.total + py.total);
}

double dice_coefficient(std::string_view x, std::string_view y, std::size_t n) {
  return dice_coefficient(decode_utf8(x), decode_utf8(y), n);
}

double dice_distance(std::u32string_view x, std::u32string_view y, std::size_t n) {
  return 1.0 - dice_coefficient(x, y, n);
}

double dice_distance(std::string_view x, std::string_view y, std::size_t n) {
  return dice_distance(decode_utf8(x), decode_utf8(y), n);
}

double jaccard_distance(std::u32string_view x, std::u32string_view y, std::size_t n) {
  const auto gx = gram_set(ngram_profile(x, n));
  const auto gy = gram_set(ngram_profile(y, n));
  if (gx.empty() && gy.empty()) {
    throw UndefinedInputError("Jaccard distance undefined: both gram sets are empty");
  }
  std::size_t shared = 0;
  for (const auto& g : gx) shared += gy.contains(g);
  const std::size_t united = gx.size() + gy.size() - shared;
  return 1.0 - static_cast<double>(shared) / static_cast<double>(united);
}

double jaccard_distance(std::string_view x, std::string_view y, std::size_t n) {
  return jaccard_distance(decode_utf8(x), decode_utf8(y), n);
}

CharCountVector char_counts(std::u32string_view s) {
  CharCountVector counts;
  for (char32_t c : s) ++counts[c];
  return counts;
}

double char_cosine_distance(std::u32string_view x, std::u32string_view y) {
  if (x.empty() || y.empty()) {
    throw UndefinedInputError("cosine distance undefined for an empty string");
  }
  const CharCountVector cx = char_counts(x);
  const CharCountVector cy = char_counts(y);
  // Integer arithmetic keeps identical count vectors at exactly zero distance.
  std::uint64_t dot = 0, nx = 0, ny = 0;
  for (const auto& [c, k] : cx) {
    nx += k * k;
    if (auto it = cy.find(c); it != cy.end()) dot += k * it->second;
  }
  for (const auto& [c, k] : cy) ny += k * k;
  const double similarity =
      static_cast<double>(dot) / std::sqrt(static_cast<double>(nx) * static_cast<double>(ny));
  return std::clamp(1.0 - similarity, 0.0, 1.0);
}

double char_cosine_distance(std::string_view x, std::string_view y) {
  return char_cosine_distance(decode_utf8(x), decode_utf8(y));
}

}  // namespace wordsim
