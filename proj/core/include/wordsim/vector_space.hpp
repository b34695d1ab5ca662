#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "wordsim/lexicon.hpp"

namespace wordsim {

enum class VectorMetric { l1, l2, cosine };

// Accepts "l1", "l2"/"euclidean", "cosine".
VectorMetric parse_vector_metric(std::string_view name);
std::string_view to_string(VectorMetric metric);

// Cosine distance is 1 - cosine similarity; a zero vector raises NumericError.
double vector_distance(const Eigen::Ref<const Eigen::VectorXd>& a,
                       const Eigen::Ref<const Eigen::VectorXd>& b,
                       VectorMetric metric);

// Row i is the representation of word id i (the word-to-vector map F).
struct EmbeddingMatrix {
  Eigen::MatrixXd rows;
  std::uint64_t lexicon_fingerprint = 0;

  std::size_t word_count() const noexcept { return static_cast<std::size_t>(rows.rows()); }
  std::size_t width() const noexcept { return static_cast<std::size_t>(rows.cols()); }

  // Throws BindingError when built for another lexicon.
  void check_binding(const Lexicon& lex) const;
  // Throws IndexError for ids outside the matrix.
  double distance(WordId a, WordId b, VectorMetric metric) const;
};

struct Neighbor {
  WordId id = 0;
  double distance = 0.0;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

// Ascending by distance, ties by ascending id. k larger than the candidate
// set truncates. Candidates are the standard words of `lex`.
std::vector<Neighbor> nearest_standard(const EmbeddingMatrix& embedding, const Lexicon& lex,
                                       WordId query, std::size_t k, VectorMetric metric);

// Same ordering over every word except the query itself.
std::vector<Neighbor> nearest_words(const EmbeddingMatrix& embedding, const Lexicon& lex,
                                    WordId query, std::size_t k, VectorMetric metric);

// Sorts by (distance, id) and keeps the first k.
void rank_neighbors(std::vector<Neighbor>& candidates, std::size_t k);

}  // namespace wordsim
