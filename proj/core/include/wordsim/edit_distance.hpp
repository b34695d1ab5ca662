#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string_view>
#include <utility>

namespace wordsim {

// Operation weights for the general edit distance. Substitutions default to
// `substitute` unless a per-pair override exists; identical characters always
// substitute for free.
struct CostTable {
  double insert = 1.0;
  double remove = 1.0;
  double substitute = 1.0;
  std::map<std::pair<char32_t, char32_t>, double> substitute_overrides;

  static CostTable unit() { return {}; }

  double substitute_cost(char32_t from, char32_t to) const;
  // Throws ConfigError on negative or non-finite weights.
  void validate() const;
};

// Result of the insertion-only episode distance: either |y| - |x| or
// infinite. Infinity is an explicit state, never a sentinel number.
class EpisodeResult {
 public:
  static EpisodeResult finite(std::size_t value) { return EpisodeResult(value); }
  static EpisodeResult infinite() { return EpisodeResult(); }

  bool is_infinite() const noexcept { return !value_.has_value(); }
  // Precondition: !is_infinite().
  std::size_t value() const { return value_.value(); }

  friend bool operator==(const EpisodeResult&, const EpisodeResult&) = default;

 private:
  EpisodeResult() = default;
  explicit EpisodeResult(std::size_t v) : value_(v) {}
  std::optional<std::size_t> value_;
};

// All functions take Unicode scalar sequences; the std::string_view overloads
// decode UTF-8 first.

double levenshtein(std::u32string_view x, std::u32string_view y,
                   const CostTable& costs = CostTable::unit());
double levenshtein(std::string_view x, std::string_view y,
                   const CostTable& costs = CostTable::unit());

// Unit-cost edit distance divided by the longer length; 0 for two empty strings.
double normalized_levenshtein(std::u32string_view x, std::u32string_view y);
double normalized_levenshtein(std::string_view x, std::string_view y);

// Restricted Damerau-Levenshtein (optimal string alignment): no substring is
// edited more than once.
std::size_t damerau_levenshtein(std::u32string_view x, std::u32string_view y);
std::size_t damerau_levenshtein(std::string_view x, std::string_view y);

// Throws LengthMismatchError when |x| != |y|.
std::size_t hamming(std::u32string_view x, std::u32string_view y);
std::size_t hamming(std::string_view x, std::string_view y);

std::size_t lcs_length(std::u32string_view x, std::u32string_view y);

// Insert/delete-only distance: |x| + |y| - 2 LCS(x, y).
std::size_t lcs_distance(std::u32string_view x, std::u32string_view y);
std::size_t lcs_distance(std::string_view x, std::string_view y);

// 1 - LCS(x, y) / max(|x|, |y|); 0 for two empty strings.
double metric_lcs(std::u32string_view x, std::u32string_view y);
double metric_lcs(std::string_view x, std::string_view y);

// Not symmetric.
EpisodeResult episode_distance(std::u32string_view x, std::u32string_view y);
EpisodeResult episode_distance(std::string_view x, std::string_view y);

}  // namespace wordsim
