#include "wordsim/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

#include "wordsim/error.hpp"
#include "wordsim/unicode.hpp"

namespace wordsim {

namespace {

constexpr std::uint64_t kFnvOffset = 14695981039346656037ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

void fnv_mix(std::uint64_t& h, std::string_view bytes) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= kFnvPrime;
  }
}

void fnv_mix(std::uint64_t& h, std::uint64_t value) {
  for (int i = 0; i < 8; ++i) {
    h ^= (value >> (8 * i)) & 0xFF;
    h *= kFnvPrime;
  }
}

std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

bool is_blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(),
                     [](char c) { return c == ' ' || c == '\t' || c == '\r'; });
}

}  // namespace

std::string Lexicon::normalize(std::string_view raw_word) const {
  std::string word = normalize_spacing(raw_word);
  return options_.case_fold ? fold_case(word) : word;
}

WordId Lexicon::intern(const std::string& word) {
  auto [it, inserted] = index_.try_emplace(word, words_.size());
  if (inserted) {
    words_.push_back(word);
    standard_of_.emplace_back();
    standard_flags_.push_back(false);
  }
  return it->second;
}

void Lexicon::finalize() {
  standard_ids_.clear();
  nonstandard_ids_.clear();
  for (WordId id = 0; id < words_.size(); ++id) {
    (standard_flags_[id] ? standard_ids_ : nonstandard_ids_).push_back(id);
  }
  if (standard_ids_.empty()) throw DataError("lexicon has no standard words");

  std::uint64_t h = kFnvOffset;
  fnv_mix(h, static_cast<std::uint64_t>(words_.size()));
  for (WordId id = 0; id < words_.size(); ++id) {
    fnv_mix(h, words_[id]);
    fnv_mix(h, static_cast<std::uint64_t>(standard_of_[id] ? *standard_of_[id] + 1 : 0));
  }
  fingerprint_ = h;
}

Lexicon Lexicon::from_pairs(std::span<const std::pair<std::string, std::string>> pairs,
                            const LexiconOptions& options) {
  Lexicon lex;
  lex.options_ = options;

  for (const auto& [raw_variant, raw_standard] : pairs) {
    const std::string variant = lex.normalize(raw_variant);
    const std::string standard = lex.normalize(raw_standard);
    if (variant.empty() || standard.empty()) throw DataError("empty word in pair");

    const WordId v = lex.intern(variant);
    const WordId s = lex.intern(standard);
    if (v == s) {
      if (lex.standard_of_[s]) {
        throw AmbiguityError("'" + standard + "' maps to both '" + standard + "' and '" +
                             lex.words_[*lex.standard_of_[s]] + "'");
      }
      lex.standard_flags_[s] = true;
      continue;
    }
    if (lex.standard_of_[s]) {
      throw AmbiguityError("'" + standard + "' maps to both '" + standard + "' and '" +
                           lex.words_[*lex.standard_of_[s]] + "'");
    }
    if (lex.standard_flags_[v]) {
      throw AmbiguityError("'" + variant + "' maps to both '" + variant + "' and '" + standard +
                           "'");
    }
    if (lex.standard_of_[v] && *lex.standard_of_[v] != s) {
      throw AmbiguityError("'" + variant + "' maps to both '" +
                           lex.words_[*lex.standard_of_[v]] + "' and '" + standard + "'");
    }
    lex.standard_flags_[s] = true;
    lex.standard_of_[v] = s;
  }
  lex.finalize();
  return lex;
}

Lexicon Lexicon::from_parts(std::vector<std::string> words,
                            const std::vector<std::optional<WordId>>& standard_of,
                            const LexiconOptions& options) {
  if (words.size() != standard_of.size()) {
    throw DataError("lexicon parts disagree in length");
  }
  Lexicon lex;
  lex.options_ = options;
  // Parts are already normalized; keep them verbatim.
  for (const std::string& w : words) {
    if (lex.intern(w) != lex.words_.size() - 1) throw DataError("duplicate word '" + w + "'");
  }
  for (WordId id = 0; id < standard_of.size(); ++id) {
    lex.standard_of_[id] = standard_of[id];
    lex.standard_flags_[id] = !standard_of[id].has_value();
  }
  for (WordId id = 0; id < standard_of.size(); ++id) {
    if (standard_of[id] &&
        (*standard_of[id] >= lex.words_.size() || !lex.standard_flags_[*standard_of[id]])) {
      throw DataError("word '" + lex.words_[id] + "' maps to a non-standard entry");
    }
  }
  lex.finalize();
  return lex;
}

const std::string& Lexicon::word(WordId id) const {
  if (id >= words_.size()) {
    throw IndexError("word id " + std::to_string(id) + " out of range (size " +
                     std::to_string(words_.size()) + ")");
  }
  return words_[id];
}

std::optional<WordId> Lexicon::find(std::string_view word) const {
  auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<WordId> Lexicon::lookup(std::string_view raw_word) const {
  return find(normalize(raw_word));
}

WordId Lexicon::id_of(std::string_view word) const {
  if (auto id = lookup(word)) return *id;
  throw IndexError("unknown word '" + std::string(word) + "'");
}

bool Lexicon::is_standard(WordId id) const {
  word(id);
  return standard_flags_[id];
}

std::optional<WordId> Lexicon::standard_of(WordId id) const {
  word(id);
  return standard_of_[id];
}

Lexicon parse_lexicon(std::istream& in, const LexiconOptions& options) {
  std::vector<std::pair<std::string, std::string>> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = strip_cr(line);
    if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
    if (is_blank(view) || view.starts_with('#')) continue;

    const auto tab = view.find('\t');
    if (tab == std::string_view::npos) throw ParseError("missing tab separator", line_no);
    const std::string_view variant = view.substr(0, tab);
    const std::string_view standard = view.substr(tab + 1);
    if (standard.find('\t') != std::string_view::npos) {
      throw ParseError("more than two fields", line_no);
    }
    try {
      if (normalize_spacing(variant).empty()) throw ParseError("empty non-standard field", line_no);
      if (normalize_spacing(standard).empty()) throw ParseError("empty standard field", line_no);
    } catch (const ParseError& e) {
      if (e.line() != 0) throw;
      throw ParseError(e.what(), line_no);
    }
    pairs.emplace_back(variant, standard);
  }
  if (in.bad()) throw IoError("read error in pairs file");
  if (pairs.empty()) throw DataError("pairs file contains no pairs");
  return Lexicon::from_pairs(pairs, options);
}

Lexicon load_lexicon(const std::filesystem::path& pairs_path, const LexiconOptions& options) {
  std::ifstream in(pairs_path);
  if (!in) throw IoError("cannot open pairs file " + pairs_path.string());
  return parse_lexicon(in, options);
}

OovPolicy parse_oov_policy(std::string_view name) {
  if (name == "skip-token") return OovPolicy::skip_token;
  if (name == "skip-sentence") return OovPolicy::skip_sentence;
  throw ConfigError("unknown OOV policy '" + std::string(name) +
                    "' (expected skip-token or skip-sentence)");
}

Corpus parse_corpus(std::istream& in, const Lexicon& lex, OovPolicy policy) {
  Corpus corpus;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::vector<WordId> sentence;
    bool drop = false;
    std::istringstream tokens(line);
    std::string token;
    while (tokens >> token) {
      std::optional<WordId> id;
      try {
        id = lex.lookup(token);
      } catch (const ParseError& e) {
        throw ParseError(e.what(), line_no);
      }
      if (id) {
        sentence.push_back(*id);
        continue;
      }
      ++corpus.oov_count;
      if (policy == OovPolicy::skip_sentence) drop = true;
    }
    if (drop || sentence.empty()) continue;
    corpus.token_count += sentence.size();
    corpus.sentences.push_back(std::move(sentence));
  }
  if (in.bad()) throw IoError("read error in corpus file");
  if (corpus.sentences.empty()) throw DataError("corpus has no usable sentences");
  return corpus;
}

Corpus load_corpus(const std::filesystem::path& corpus_path, const Lexicon& lex,
                   OovPolicy policy) {
  std::ifstream in(corpus_path);
  if (!in) throw IoError("cannot open corpus file " + corpus_path.string());
  return parse_corpus(in, lex, policy);
}

Eigen::VectorXd OneHotVector::dense() const {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dimension));
  v[static_cast<Eigen::Index>(hot_index)] = 1.0;
  return v;
}

OneHotVector one_hot(const Lexicon& lex, WordId word_id) {
  if (word_id >= lex.size()) {
    throw IndexError("word id " + std::to_string(word_id) + " out of range (size " +
                     std::to_string(lex.size()) + ")");
  }
  return OneHotVector{lex.size(), word_id};
}

}  // namespace wordsim
