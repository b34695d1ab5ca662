#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wordsim/edit_distance.hpp"
#include "wordsim/lexicon.hpp"
#include "wordsim/vector_space.hpp"

namespace wordsim {

enum class MetricKind { classical, learned_da, learned_dc };

std::string_view to_string(MetricKind kind);

struct MetricParams {
  std::size_t n = 2;  // gram length for q-gram, N-gram, Dice, Jaccard
  // Weighted Levenshtein weights; default_weighted_costs() when unset.
  std::optional<CostTable> costs;
  VectorMetric vector_metric = VectorMetric::cosine;
  std::filesystem::path model_path;  // autoencoder model or embedding file
};

struct MetricSpec {
  std::string name;
  MetricKind kind = MetricKind::classical;
  // Classical: one of classical_algorithms(). Learned: empty.
  std::string algorithm;
  MetricParams params;

  // Throws ConfigError when params do not fit the kind.
  void validate() const;
  // Flat key/value view of the parameters relevant to the kind.
  std::map<std::string, std::string> describe() const;
};

// Defaults used for the weighted Levenshtein row.
CostTable default_weighted_costs();

// levenshtein, weighted_levenshtein, normalized_levenshtein,
// damerau_levenshtein, lcs, metric_lcs, qgram, ngram, dice, jaccard, cosine.
const std::vector<std::string>& classical_algorithms();

MetricSpec classical_metric(std::string_view algorithm, MetricParams params = {});
MetricSpec learned_metric(MetricKind kind, const std::filesystem::path& model_path,
                          VectorMetric vector_metric);

// Distance between two word ids of a fixed lexicon.
using WordDistance = std::function<double(WordId, WordId)>;

// Builds the distance for a spec. Learned metrics load their file and throw
// BindingError if it belongs to another lexicon. Classical metrics that are
// undefined for a pair (Dice on two too-short strings ...) return +infinity.
WordDistance make_word_distance(const MetricSpec& spec, const Lexicon& lex);
WordDistance embedding_distance(EmbeddingMatrix embedding, VectorMetric metric);

// 1-based rank of the true standard word among all standard words for every
// non-standard word (ascending distance, ties by id), in nonstandard_ids()
// order.
std::vector<std::size_t> true_ranks(const WordDistance& distance, const Lexicon& lex,
                                    std::size_t threads = 1);

// Percentage of non-standard words whose standard form is in the top k.
std::map<std::size_t, double> evaluate_accuracy(const WordDistance& distance,
                                                const Lexicon& lex,
                                                const std::vector<std::size_t>& ks,
                                                std::size_t threads = 1);

// accuracy@k for k = 1..max_k.
std::vector<std::pair<std::size_t, double>> neighbor_curve(const WordDistance& distance,
                                                           const Lexicon& lex, std::size_t max_k,
                                                           std::size_t threads = 1);

struct QueryNeighbors {
  std::string query;
  std::optional<std::string> error;
  std::vector<std::pair<std::string, double>> neighbors;

  friend bool operator==(const QueryNeighbors&, const QueryNeighbors&) = default;
};

// Top-k words for each query: standard words only, or every other word.
// Unknown queries produce an error entry instead of aborting.
std::vector<QueryNeighbors> qualitative_neighbors(const WordDistance& distance,
                                                  const Lexicon& lex,
                                                  const std::vector<std::string>& queries,
                                                  std::size_t k, bool standard_only);

struct MetricResult {
  std::string name;
  std::string kind;
  std::map<std::string, std::string> params;
  std::map<std::size_t, double> accuracy;
  std::vector<std::pair<std::size_t, double>> curve;
  std::vector<QueryNeighbors> qualitative;

  friend bool operator==(const MetricResult&, const MetricResult&) = default;
};

inline constexpr int kReportFormatVersion = 1;

struct EvalReport {
  int version = kReportFormatVersion;
  std::vector<std::size_t> ks;
  std::vector<MetricResult> metrics;
  std::map<std::string, std::string> metadata;
  // Wall-clock stamp; the only field allowed to differ between reruns.
  std::string generated_at;

  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

struct EvalOptions {
  std::vector<std::size_t> ks{1, 5};
  std::size_t curve_max_k = 0;  // 0 disables the curve
  std::vector<std::string> queries;
  std::size_t query_k = 5;
  std::size_t threads = 1;
  bool timestamp = true;
};

// Evaluates every spec on the lexicon and assembles a report.
EvalReport run_evaluation(const std::vector<MetricSpec>& specs, const Lexicon& lex,
                          const EvalOptions& options,
                          std::map<std::string, std::string> metadata = {});

enum class ReportFormat { json, csv };

ReportFormat parse_report_format(std::string_view name);

std::string report_to_json(const EvalReport& report);
EvalReport report_from_json(std::string_view json_text);
// Header `metric,k,accuracy_percent`, one row per (metric, k).
std::string report_to_csv(const EvalReport& report);

void export_report(const EvalReport& report, const std::filesystem::path& path,
                   ReportFormat format);

// FNV-1a 64 of a byte string, as 16 hex digits.
std::string content_hash(std::string_view bytes);

}  // namespace wordsim
