#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>

namespace wordsim {

enum class GramPadding {
  none,
  // n - 1 copies of kBoundaryChar prepended (Kondrak head padding).
  head,
};

// Reserved boundary symbol (a Unicode noncharacter, never valid text).
inline constexpr char32_t kBoundaryChar = 0xFFFF;

struct NGramProfile {
  std::size_t n = 0;
  std::map<std::u32string, std::size_t> counts;
  std::size_t total = 0;

  std::size_t count(const std::u32string& gram) const;
  bool empty() const noexcept { return total == 0; }
};

// Multiset of contiguous length-n substrings. Throws ParameterError for n = 0.
NGramProfile ngram_profile(std::u32string_view s, std::size_t n,
                           GramPadding padding = GramPadding::none);
NGramProfile ngram_profile(std::string_view s, std::size_t n,
                           GramPadding padding = GramPadding::none);

// Ukkonen q-gram distance: L1 distance between the two q-gram profiles.
std::size_t qgram_distance(std::u32string_view x, std::u32string_view y, std::size_t q);
std::size_t qgram_distance(std::string_view x, std::string_view y, std::size_t q);

// Kondrak N-gram edit distance, normalized by the longer length. Substitution
// cost between positions is the fraction of differing characters in the
// head-padded n-grams ending there; n = 1 is normalized Levenshtein.
// Throws ParameterError for n = 0 or an empty string.
double kondrak_ngram_distance(std::u32string_view x, std::u32string_view y, std::size_t n);
double kondrak_ngram_distance(std::string_view x, std::string_view y, std::size_t n);

// Sorensen-Dice similarity 2 n_t / (n_x + n_y) over unpadded n-gram
// multisets, n_t = sum of min counts. Throws UndefinedInputError when both
// strings are shorter than n.
double dice_coefficient(std::u32string_view x, std::u32string_view y, std::size_t n = 2);
double dice_coefficient(std::string_view x, std::string_view y, std::size_t n = 2);
// 1 - dice_coefficient.
double dice_distance(std::u32string_view x, std::u32string_view y, std::size_t n = 2);
double dice_distance(std::string_view x, std::string_view y, std::size_t n = 2);

// 1 - |G(x) & G(y)| / |G(x) | G(y)| over n-gram sets. Throws
// UndefinedInputError when both gram sets are empty.
double jaccard_distance(std::u32string_view x, std::u32string_view y, std::size_t n = 2);
double jaccard_distance(std::string_view x, std::string_view y, std::size_t n = 2);

// Character-count vectors over the scalar values present in either string.
using CharCountVector = std::map<char32_t, std::size_t>;
CharCountVector char_counts(std::u32string_view s);

// 1 - cosine similarity of the character-count vectors. Throws
// UndefinedInputError if either string is empty.
double char_cosine_distance(std::u32string_view x, std::u32string_view y);
double char_cosine_distance(std::string_view x, std::string_view y);

}  // namespace wordsim
