#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace wordsim {

using WordId = std::size_t;

struct LexiconOptions {
  bool case_fold = true;
};

// Vocabulary of standard words and their non-standard spellings.
//
// Ids are assigned in order of first appearance in the pairs file. Every
// non-standard word maps to exactly one standard word; standard words map
// to nothing. Immutable once built, so concurrent readers are fine.
class Lexicon {
 public:
  // Builds from (non-standard, standard) pairs. A pair whose sides are equal
  // only registers the standard word. Throws AmbiguityError if a word would
  // map to two different standard words (a standard word implicitly maps to
  // itself).
  static Lexicon from_pairs(
      std::span<const std::pair<std::string, std::string>> pairs,
      const LexiconOptions& options = {});

  // Rebuilds a lexicon from its serialized parts: the words in id order and
  // the standard id for every word (nullopt for standard words).
  static Lexicon from_parts(std::vector<std::string> words,
                            const std::vector<std::optional<WordId>>& standard_of,
                            const LexiconOptions& options = {});

  std::size_t size() const noexcept { return words_.size(); }
  std::size_t standard_count() const noexcept { return standard_ids_.size(); }

  const std::string& word(WordId id) const;
  std::optional<WordId> find(std::string_view word) const;
  // Like find() but applies the lexicon's normalization first and throws
  // IndexError for unknown words.
  WordId id_of(std::string_view word) const;
  std::optional<WordId> lookup(std::string_view raw_word) const;

  bool is_standard(WordId id) const;
  std::optional<WordId> standard_of(WordId id) const;

  // Ascending id order.
  const std::vector<WordId>& standard_ids() const noexcept { return standard_ids_; }
  const std::vector<WordId>& nonstandard_ids() const noexcept { return nonstandard_ids_; }

  const LexiconOptions& options() const noexcept { return options_; }

  // Content hash binding trained models to this exact vocabulary.
  std::uint64_t fingerprint() const noexcept { return fingerprint_; }

  std::string normalize(std::string_view raw_word) const;

 private:
  Lexicon() = default;
  WordId intern(const std::string& word);
  void finalize();

  LexiconOptions options_;
  std::vector<std::string> words_;
  std::unordered_map<std::string, WordId> index_;
  std::vector<std::optional<WordId>> standard_of_;
  std::vector<bool> standard_flags_;
  std::vector<WordId> standard_ids_;
  std::vector<WordId> nonstandard_ids_;
  std::uint64_t fingerprint_ = 0;
};

// Pairs file: UTF-8 TSV `nonstandard<TAB>standard`; blank lines and lines
// starting with '#' are skipped.
Lexicon parse_lexicon(std::istream& in, const LexiconOptions& options = {});
Lexicon load_lexicon(const std::filesystem::path& pairs_path,
                     const LexiconOptions& options = {});

enum class OovPolicy { skip_token, skip_sentence };

OovPolicy parse_oov_policy(std::string_view name);

struct Corpus {
  std::vector<std::vector<WordId>> sentences;
  std::size_t token_count = 0;
  std::size_t oov_count = 0;
};

// One whitespace-tokenized sentence per line. Sentences that end up empty
// are dropped; an entirely empty result raises DataError.
Corpus parse_corpus(std::istream& in, const Lexicon& lex,
                    OovPolicy policy = OovPolicy::skip_token);
Corpus load_corpus(const std::filesystem::path& corpus_path, const Lexicon& lex,
                   OovPolicy policy = OovPolicy::skip_token);

struct OneHotVector {
  std::size_t dimension = 0;
  WordId hot_index = 0;

  double operator[](std::size_t i) const noexcept { return i == hot_index ? 1.0 : 0.0; }
  Eigen::VectorXd dense() const;
};

OneHotVector one_hot(const Lexicon& lex, WordId word_id);

}  // namespace wordsim
