#include "wordsim/vector_space.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wordsim/error.hpp"

namespace wordsim {

VectorMetric parse_vector_metric(std::string_view name) {
  if (name == "l1") return VectorMetric::l1;
  if (name == "l2" || name == "euclidean") return VectorMetric::l2;
  if (name == "cosine") return VectorMetric::cosine;
  throw ConfigError("unknown vector metric '" + std::string(name) +
                    "' (expected l1, l2 or cosine)");
}

std::string_view to_string(VectorMetric metric) {
  switch (metric) {
    case VectorMetric::l1:
      return "l1";
    case VectorMetric::l2:
      return "l2";
    case VectorMetric::cosine:
      return "cosine";
  }
  return "?";
}

double vector_distance(const Eigen::Ref<const Eigen::VectorXd>& a,
                       const Eigen::Ref<const Eigen::VectorXd>& b, VectorMetric metric) {
  if (a.size() != b.size()) {
    throw ShapeError("vector widths differ: " + std::to_string(a.size()) + " vs " +
                     std::to_string(b.size()));
  }
  switch (metric) {
    case VectorMetric::l1:
      return (a - b).lpNorm<1>();
    case VectorMetric::l2:
      return (a - b).norm();
    case VectorMetric::cosine: {
      const double na = a.norm();
      const double nb = b.norm();
      if (na == 0.0 || nb == 0.0) throw NumericError("cosine distance of a zero vector");
      if (a == b) return 0.0;
      return std::clamp(1.0 - a.dot(b) / (na * nb), 0.0, 2.0);
    }
  }
  return 0.0;
}

void EmbeddingMatrix::check_binding(const Lexicon& lex) const {
  if (lexicon_fingerprint != lex.fingerprint() || word_count() != lex.size()) {
    throw BindingError("representation was built for a different lexicon");
  }
}

double EmbeddingMatrix::distance(WordId a, WordId b, VectorMetric metric) const {
  if (a >= word_count() || b >= word_count()) {
    throw IndexError("word id out of range for embedding with " + std::to_string(word_count()) +
                     " rows");
  }
  if (a == b) return 0.0;
  return vector_distance(rows.row(static_cast<Eigen::Index>(a)).transpose(),
                         rows.row(static_cast<Eigen::Index>(b)).transpose(), metric);
}

void rank_neighbors(std::vector<Neighbor>& candidates, std::size_t k) {
  auto before = [](const Neighbor& l, const Neighbor& r) {
    return l.distance != r.distance ? l.distance < r.distance : l.id < r.id;
  };
  const std::size_t keep = std::min(k, candidates.size());
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(keep),
                    candidates.end(), before);
  candidates.resize(keep);
}

std::vector<Neighbor> nearest_standard(const EmbeddingMatrix& embedding, const Lexicon& lex,
                                       WordId query, std::size_t k, VectorMetric metric) {
  if (k == 0) throw ConfigError("k must be at least 1");
  embedding.check_binding(lex);
  lex.word(query);
  std::vector<Neighbor> out;
  out.reserve(lex.standard_count());
  for (WordId c : lex.standard_ids()) out.push_back({c, embedding.distance(query, c, metric)});
  rank_neighbors(out, k);
  return out;
}

std::vector<Neighbor> nearest_words(const EmbeddingMatrix& embedding, const Lexicon& lex,
                                    WordId query, std::size_t k, VectorMetric metric) {
  if (k == 0) throw ConfigError("k must be at least 1");
  embedding.check_binding(lex);
  lex.word(query);
  std::vector<Neighbor> out;
  out.reserve(lex.size());
  for (WordId w = 0; w < lex.size(); ++w) {
    if (w != query) out.push_back({w, embedding.distance(query, w, metric)});
  }
  rank_neighbors(out, k);
  return out;
}

}  // namespace wordsim
