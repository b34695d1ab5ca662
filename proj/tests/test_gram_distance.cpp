#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "oracles/string_oracles.hpp"
#include "wordsim/edit_distance.hpp"
#include "wordsim/error.hpp"
#include "wordsim/gram_distance.hpp"
#include "wordsim/unicode.hpp"

using namespace wordsim;

namespace {

std::string random_word(std::mt19937_64& rng, const std::string& alphabet, int min_len, int max_len) {
  std::uniform_int_distribution<int> len(min_len, max_len);
  std::uniform_int_distribution<std::size_t> ch(0, alphabet.size() - 1);
  std::string s;
  for (int k = len(rng); k > 0; --k) s += alphabet[ch(rng)];
  return s;
}

}  // namespace

TEST_CASE("ngram profiles") {
  const NGramProfile night = ngram_profile("night", 2);
  CHECK(night.total == 4);
  CHECK(night.counts.size() == 4);
  CHECK(night.count(U"gh") == 1);
  CHECK(ngram_profile("a", 2).empty());
  const NGramProfile aaa = ngram_profile("aaa", 2);
  CHECK(aaa.total == 2);
  CHECK(aaa.count(U"aa") == 2);
  CHECK_THROWS_AS(ngram_profile("abc", 0), ParameterError);
}

TEST_CASE("head-padded profiles have one gram per character") {
  const NGramProfile p = ngram_profile("ab", 3, GramPadding::head);
  CHECK(p.total == 2);
  const std::u32string first{kBoundaryChar, kBoundaryChar, U'a'};
  CHECK(p.count(first) == 1);
}

TEST_CASE("qgram distance") {
  CHECK(qgram_distance("night", "night", 2) == 0);
  CHECK(qgram_distance("night", "nacht", 2) == 6);
  CHECK(qgram_distance("ab", "ba", 2) == 2);
  CHECK_THROWS_AS(qgram_distance("a", "b", 0), ParameterError);
}

TEST_CASE("qgram identity of indiscernibles fails: stored witnesses") {
  CHECK(qgram_distance("abab", "baba", 1) == 0);
  CHECK(qgram_distance("aba", "bab", 2) == 0);
}

TEST_CASE("qgram matches the profile oracle") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    const std::string x = random_word(rng, "abcd", 0, 9), y = random_word(rng, "abcd", 0, 9);
    for (std::size_t q = 1; q <= 3; ++q) {
      REQUIRE(static_cast<int>(qgram_distance(x, y, q)) == oracle::qgram_reference(x, y, q));
    }
  }
}

TEST_CASE("kondrak ngram distance") {
  CHECK(kondrak_ngram_distance("night", "night", 2) == 0.0);
  CHECK(kondrak_ngram_distance("abc", "abc", 3) == 0.0);
  CHECK(kondrak_ngram_distance("vector", "doctor", 1) == doctest::Approx(2.0 / 6.0));
  const double nn = kondrak_ngram_distance("night", "nacht", 2);
  CHECK(nn > 0.0);
  CHECK(nn < 1.0);
  CHECK(nn == doctest::Approx(oracle::kondrak_reference(U"night", U"nacht", 2)).epsilon(1e-12));
  CHECK_THROWS_AS(kondrak_ngram_distance("", "abc", 2), ParameterError);
  CHECK_THROWS_AS(kondrak_ngram_distance("abc", "abc", 0), ParameterError);
}

TEST_CASE("kondrak n=1 equals normalized levenshtein") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const std::string x = random_word(rng, "abcde", 1, 10), y = random_word(rng, "abcde", 1, 10);
    REQUIRE(std::abs(kondrak_ngram_distance(x, y, 1) - normalized_levenshtein(x, y)) < 1e-12);
  }
}

TEST_CASE("kondrak matches the independent recursion") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    const std::string x = random_word(rng, "abc", 1, 8), y = random_word(rng, "abc", 1, 8);
    for (std::size_t n = 1; n <= 4; ++n) {
      const double expected = oracle::kondrak_reference(decode_utf8(x), decode_utf8(y), n);
      REQUIRE(std::abs(kondrak_ngram_distance(x, y, n) - expected) < 1e-12);
    }
  }
}

TEST_CASE("dice coefficient") {
  CHECK(dice_coefficient("night", "nacht", 2) == doctest::Approx(0.25));
  CHECK(dice_distance("night", "nacht", 2) == doctest::Approx(0.75));
  CHECK(dice_coefficient("night", "night", 2) == 1.0);
  CHECK(dice_coefficient("abc", "xyz", 2) == 0.0);
  CHECK_THROWS_AS(dice_coefficient("a", "b", 2), UndefinedInputError);
  // One side shorter than n is fine: nothing shared.
  CHECK(dice_coefficient("a", "abc", 2) == 0.0);
  // Multiset minimum: "aaa" has aa x2, "aa" has aa x1.
  CHECK(dice_coefficient("aaa", "aa", 2) == doctest::Approx(2.0 * 1 / 3));
}

TEST_CASE("dice matches the oracle and stays in [0,1]") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 500; ++i) {
    const std::string x = random_word(rng, "abc", 2, 9), y = random_word(rng, "abc", 2, 9);
    const double d = dice_coefficient(x, y, 2);
    REQUIRE(d >= 0.0);
    REQUIRE(d <= 1.0);
    REQUIRE(d == doctest::Approx(oracle::dice_reference(x, y, 2)));
    REQUIRE(d == dice_coefficient(y, x, 2));
  }
}

TEST_CASE("jaccard distance") {
  CHECK(jaccard_distance("night", "night", 2) == 0.0);
  CHECK(jaccard_distance("night", "nacht", 2) == doctest::Approx(1.0 - 1.0 / 7.0));
  CHECK(jaccard_distance("abc", "xyz", 2) == 1.0);
  CHECK(jaccard_distance("aab", "aaab", 2) == 0.0);  // equal gram sets
  CHECK_THROWS_AS(jaccard_distance("a", "b", 2), UndefinedInputError);
}

TEST_CASE("jaccard is zero exactly when gram sets agree") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 500; ++i) {
    const std::string x = random_word(rng, "ab", 2, 6), y = random_word(rng, "ab", 2, 6);
    auto set_of = [](const std::string& s) {
      std::set<std::string> out;
      for (const auto& [g, c] : oracle::grams(s, 2)) out.insert(g);
      return out;
    };
    const double d = jaccard_distance(x, y, 2);
    REQUIRE(d >= 0.0);
    REQUIRE(d <= 1.0);
    REQUIRE((d == 0.0) == (set_of(x) == set_of(y)));
    REQUIRE(d == jaccard_distance(y, x, 2));
  }
}

TEST_CASE("character count cosine") {
  CHECK(char_cosine_distance("night", "night") == 0.0);
  CHECK(char_cosine_distance("ab", "ba") == 0.0);
  CHECK(char_cosine_distance("aa", "bb") == 1.0);
  CHECK(char_cosine_distance("ab", "a") == doctest::Approx(1.0 - 1.0 / std::sqrt(2.0)));
  CHECK(char_cosine_distance("don't", "dont") > 0.0);
  CHECK_THROWS_AS(char_cosine_distance("", "a"), UndefinedInputError);
  const CharCountVector counts = char_counts(U"hello");
  CHECK(counts.at(U'l') == 2);
}
