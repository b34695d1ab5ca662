#pragma once

#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "wordsim/lexicon.hpp"

namespace fixtures {

inline const std::vector<std::string>& toy_words() {
  static const std::vector<std::string> words{
      "thing", "water", "house", "light", "sound", "money", "night", "place", "music", "dance",
      "green", "smile", "heart", "world", "table", "paper", "stone", "river", "cloud", "dream"};
  return words;
}

// Drop, swap and duplicate the character at the middle position.
inline std::vector<std::string> variants(const std::string& w) {
  const std::size_t p = w.size() / 2;
  std::string drop = w.substr(0, p) + w.substr(p + 1);
  std::string swap = w;
  std::swap(swap[p - 1], swap[p]);
  std::string dup = w.substr(0, p) + w[p] + w.substr(p);
  return {drop, swap, dup};
}

inline std::vector<std::pair<std::string, std::string>> toy_pairs(std::size_t standard_words = 20) {
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i < standard_words; ++i) {
    for (const std::string& v : variants(toy_words()[i])) pairs.emplace_back(v, toy_words()[i]);
  }
  return pairs;
}

inline wordsim::Lexicon toy_lexicon(std::size_t standard_words = 20) {
  const auto pairs = toy_pairs(standard_words);
  return wordsim::Lexicon::from_pairs(pairs);
}

// Lexicon and corpus in which "dogg" appears in exactly the contexts of "dog".
struct DogFixture {
  std::string pairs_tsv;
  std::string corpus_txt;
};

inline DogFixture dog_fixture(std::size_t sentences = 500) {
  const std::vector<std::pair<std::string, std::vector<std::string>>> nouns{
      {"dog", {"barks", "growls"}},  {"cat", {"meows", "purrs"}},
      {"bird", {"sings", "flies"}},  {"fish", {"swims", "dives"}},
      {"horse", {"gallops", "neighs"}}, {"cow", {"moos", "grazes"}}};
  const std::vector<std::string> adjectives{"big", "small", "old", "young"};
  std::ostringstream pairs;
  pairs << "dogg\tdog\n";
  for (const char* w : {"the", "today"}) pairs << w << '\t' << w << '\n';
  for (const auto& a : adjectives) pairs << a << '\t' << a << '\n';
  for (const auto& [noun, verbs] : nouns) {
    pairs << noun << '\t' << noun << '\n';
    for (const auto& v : verbs) pairs << v << '\t' << v << '\n';
  }
  std::mt19937_64 rng(12345);
  std::ostringstream corpus;
  for (std::size_t i = 0; i < sentences; ++i) {
    const std::size_t k = rng() % 7;
    const auto& entry = nouns[k == 6 ? 0 : k];
    const std::string noun = k == 6 ? "dogg" : entry.first;
    corpus << "the " << adjectives[rng() % 4] << ' ' << noun << ' ' << entry.second[rng() % 2]
           << " today\n";
  }
  return {pairs.str(), corpus.str()};
}

}  // namespace fixtures
