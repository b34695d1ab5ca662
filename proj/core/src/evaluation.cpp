#include "wordsim/evaluation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>
#include <thread>

#include "json_support.hpp"
#include "wordsim/autoencoder.hpp"
#include "wordsim/context_encoder.hpp"
#include "wordsim/error.hpp"
#include "wordsim/gram_distance.hpp"
#include "wordsim/io.hpp"
#include "wordsim/unicode.hpp"

namespace wordsim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_gram_metric(std::string_view algorithm) {
  return algorithm == "qgram" || algorithm == "ngram" || algorithm == "dice" ||
         algorithm == "jaccard";
}

// Runs fn(i) for i in [0, count) on up to `threads` workers.
template <typename Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(count, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> failures(workers);
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = count * w / workers; i < count * (w + 1) / workers; ++i) fn(i);
        } catch (...) {
          failures[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
}

std::string format_double(double value) {
  std::ostringstream out;
  out << std::setprecision(17) << value;
  return out.str();
}

std::string csv_field(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

detail::json distance_to_json(double d) { return std::isfinite(d) ? detail::json(d) : detail::json(nullptr); }

double distance_from_json(const detail::json& j) { return j.is_null() ? kInf : j.get<double>(); }

}  // namespace

std::string_view to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::classical:
      return "classical";
    case MetricKind::learned_da:
      return "learned-Da";
    case MetricKind::learned_dc:
      return "learned-Dc";
  }
  return "?";
}

CostTable default_weighted_costs() {
  CostTable costs;
  costs.insert = 1.0;
  costs.remove = 1.0;
  costs.substitute = 1.5;
  return costs;
}

const std::vector<std::string>& classical_algorithms() {
  static const std::vector<std::string> names{
      "cosine",      "qgram",       "dice",       "jaccard", "levenshtein",
      "weighted_levenshtein",       "damerau_levenshtein",   "ngram",
      "metric_lcs",  "lcs",         "normalized_levenshtein"};
  return names;
}

void MetricSpec::validate() const {
  if (name.empty()) throw ConfigError("metric name must not be empty");
  switch (kind) {
    case MetricKind::classical: {
      const auto& known = classical_algorithms();
      if (std::find(known.begin(), known.end(), algorithm) == known.end()) {
        throw ConfigError("unknown classical metric '" + algorithm + "'");
      }
      if (is_gram_metric(algorithm) && params.n == 0) throw ConfigError("gram length must be >= 1");
      if (params.costs) params.costs->validate();
      break;
    }
    case MetricKind::learned_da:
    case MetricKind::learned_dc:
      if (!algorithm.empty()) throw ConfigError("learned metrics take no algorithm name");
      if (params.model_path.empty()) throw ConfigError("metric '" + name + "' needs a model file");
      break;
  }
}

std::map<std::string, std::string> MetricSpec::describe() const {
  std::map<std::string, std::string> out;
  if (kind == MetricKind::classical) {
    out["algorithm"] = algorithm;
    if (is_gram_metric(algorithm)) out["n"] = std::to_string(params.n);
    if (algorithm == "weighted_levenshtein") {
      const CostTable costs = params.costs.value_or(default_weighted_costs());
      out["insert_cost"] = format_double(costs.insert);
      out["delete_cost"] = format_double(costs.remove);
      out["substitute_cost"] = format_double(costs.substitute);
    }
  } else {
    out["vector_metric"] = std::string(to_string(params.vector_metric));
    out["model"] = params.model_path.filename().string();
  }
  return out;
}

MetricSpec classical_metric(std::string_view algorithm, MetricParams params) {
  MetricSpec spec;
  spec.name = std::string(algorithm);
  spec.kind = MetricKind::classical;
  spec.algorithm = std::string(algorithm);
  spec.params = std::move(params);
  spec.validate();
  return spec;
}

MetricSpec learned_metric(MetricKind kind, const std::filesystem::path& model_path,
                          VectorMetric vector_metric) {
  MetricSpec spec;
  spec.kind = kind;
  spec.name = std::string(kind == MetricKind::learned_da ? "da-" : "dc-") +
              std::string(to_string(vector_metric));
  spec.params.model_path = model_path;
  spec.params.vector_metric = vector_metric;
  spec.validate();
  return spec;
}

WordDistance embedding_distance(EmbeddingMatrix embedding, VectorMetric metric) {
  return [embedding = std::move(embedding), metric](WordId a, WordId b) {
    return embedding.distance(a, b, metric);
  };
}

WordDistance make_word_distance(const MetricSpec& spec, const Lexicon& lex) {
  spec.validate();
  if (spec.kind == MetricKind::learned_da) {
    LoadedAutoencoder loaded = parse_autoencoder(read_file(spec.params.model_path));
    loaded.model.check_binding(lex);
    return embedding_distance(loaded.model.code_table(lex), spec.params.vector_metric);
  }
  if (spec.kind == MetricKind::learned_dc) {
    LoadedEmbedding loaded = parse_embedding(read_file(spec.params.model_path));
    loaded.embedding.check_binding(lex);
    return embedding_distance(std::move(loaded.embedding), spec.params.vector_metric);
  }

  auto words = std::make_shared<std::vector<std::u32string>>();
  for (WordId w = 0; w < lex.size(); ++w) words->push_back(decode_utf8(lex.word(w)));
  const std::size_t n = spec.params.n;
  const CostTable costs = spec.params.costs.value_or(default_weighted_costs());

  using Pair = std::function<double(std::u32string_view, std::u32string_view)>;
  Pair fn;
  const std::string& a = spec.algorithm;
  if (a == "levenshtein") {
    fn = [](auto x, auto y) { return levenshtein(x, y); };
  } else if (a == "weighted_levenshtein") {
    fn = [costs](auto x, auto y) { return levenshtein(x, y, costs); };
  } else if (a == "normalized_levenshtein") {
    fn = [](auto x, auto y) { return normalized_levenshtein(x, y); };
  } else if (a == "damerau_levenshtein") {
    fn = [](auto x, auto y) { return static_cast<double>(damerau_levenshtein(x, y)); };
  } else if (a == "lcs") {
    fn = [](auto x, auto y) { return static_cast<double>(lcs_distance(x, y)); };
  } else if (a == "metric_lcs") {
    fn = [](auto x, auto y) { return metric_lcs(x, y); };
  } else if (a == "qgram") {
    fn = [n](auto x, auto y) { return static_cast<double>(qgram_distance(x, y, n)); };
  } else if (a == "ngram") {
    fn = [n](auto x, auto y) { return kondrak_ngram_distance(x, y, n); };
  } else if (a == "dice") {
    fn = [n](auto x, auto y) { return dice_distance(x, y, n); };
  } else if (a == "jaccard") {
    fn = [n](auto x, auto y) { return jaccard_distance(x, y, n); };
  } else {
    fn = [](auto x, auto y) { return char_cosine_distance(x, y); };
  }
  return [words, fn = std::move(fn)](WordId x, WordId y) {
    try {
      return fn(words->at(x), words->at(y));
    } catch (const UndefinedInputError&) {
      return kInf;
    } catch (const ParameterError&) {
      return kInf;
    }
  };
}

std::vector<std::size_t> true_ranks(const WordDistance& distance, const Lexicon& lex,
                                    std::size_t threads) {
  const auto& queries = lex.nonstandard_ids();
  if (queries.empty()) throw ConfigError("evaluation needs at least one non-standard word");
  std::vector<std::size_t> ranks(queries.size());
  parallel_for(queries.size(), threads, [&](std::size_t q) {
    const WordId m = queries[q];
    const WordId truth = *lex.standard_of(m);
    const double d_true = distance(m, truth);
    std::size_t rank = 1;
    for (WordId c : lex.standard_ids()) {
      if (c == truth) continue;
      const double d = distance(m, c);
      if (d < d_true || (d == d_true && c < truth)) ++rank;
    }
    ranks[q] = rank;
  });
  return ranks;
}

namespace {

double accuracy_at(const std::vector<std::size_t>& ranks, std::size_t k) {
  const auto hits = std::count_if(ranks.begin(), ranks.end(), [k](std::size_t r) { return r <= k; });
  return 100.0 * static_cast<double>(hits) / static_cast<double>(ranks.size());
}

std::vector<std::pair<std::size_t, double>> curve_from_ranks(const std::vector<std::size_t>& ranks,
                                                             std::size_t max_k) {
  std::vector<std::pair<std::size_t, double>> out;
  for (std::size_t k = 1; k <= max_k; ++k) out.emplace_back(k, accuracy_at(ranks, k));
  return out;
}

}  // namespace

std::map<std::size_t, double> evaluate_accuracy(const WordDistance& distance, const Lexicon& lex,
                                                const std::vector<std::size_t>& ks,
                                                std::size_t threads) {
  for (std::size_t k : ks) {
    if (k == 0) throw ConfigError("k must be at least 1");
  }
  const auto ranks = true_ranks(distance, lex, threads);
  std::map<std::size_t, double> out;
  for (std::size_t k : ks) out[k] = accuracy_at(ranks, k);
  return out;
}

std::vector<std::pair<std::size_t, double>> neighbor_curve(const WordDistance& distance,
                                                           const Lexicon& lex, std::size_t max_k,
                                                           std::size_t threads) {
  if (max_k == 0) throw ConfigError("curve length must be at least 1");
  return curve_from_ranks(true_ranks(distance, lex, threads), max_k);
}

std::vector<QueryNeighbors> qualitative_neighbors(const WordDistance& distance,
                                                  const Lexicon& lex,
                                                  const std::vector<std::string>& queries,
                                                  std::size_t k, bool standard_only) {
  if (k == 0) throw ConfigError("k must be at least 1");
  std::vector<QueryNeighbors> out;
  for (const std::string& query : queries) {
    QueryNeighbors entry;
    entry.query = query;
    std::optional<WordId> id;
    try {
      id = lex.lookup(query);
    } catch (const Error& e) {
      entry.error = e.what();
    }
    if (!id) {
      if (!entry.error) entry.error = "unknown word '" + query + "'";
      out.push_back(std::move(entry));
      continue;
    }
    std::vector<Neighbor> candidates;
    if (standard_only) {
      for (WordId c : lex.standard_ids()) candidates.push_back({c, distance(*id, c)});
    } else {
      for (WordId w = 0; w < lex.size(); ++w) {
        if (w != *id) candidates.push_back({w, distance(*id, w)});
      }
    }
    rank_neighbors(candidates, k);
    for (const Neighbor& n : candidates) entry.neighbors.emplace_back(lex.word(n.id), n.distance);
    out.push_back(std::move(entry));
  }
  return out;
}

EvalReport run_evaluation(const std::vector<MetricSpec>& specs, const Lexicon& lex,
                          const EvalOptions& options, std::map<std::string, std::string> metadata) {
  if (specs.empty()) throw ConfigError("no metrics to evaluate");
  std::set<std::string> names;
  for (const MetricSpec& spec : specs) {
    if (!names.insert(spec.name).second) throw ConfigError("duplicate metric name '" + spec.name + "'");
  }
  std::vector<std::size_t> ks = options.ks;
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  if (ks.empty() || ks.front() == 0) throw ConfigError("ks must be positive");

  EvalReport report;
  report.ks = ks;
  report.metadata = std::move(metadata);
  report.metadata["lexicon_fingerprint"] = detail::u64_to_string(lex.fingerprint());
  report.metadata["lexicon_words"] = std::to_string(lex.size());
  report.metadata["standard_words"] = std::to_string(lex.standard_count());
  report.metadata["nonstandard_words"] = std::to_string(lex.nonstandard_ids().size());
  report.metadata["split"] = "all-pairs (evaluated on the training lexicon, no held-out split)";
  report.metadata["tie_breaking"] = "ascending word id";
  report.metadata["candidates"] = "all standard words, true form included";
  report.metadata["gram_length_note"] =
      "q-gram/N-gram/Dice/Jaccard gram length defaults to 2, a harness choice";
  report.metadata["undefined_distance"] = "ranked as +infinity";

  for (const MetricSpec& spec : specs) {
    const WordDistance distance = make_word_distance(spec, lex);
    const auto ranks = true_ranks(distance, lex, options.threads);
    MetricResult result;
    result.name = spec.name;
    result.kind = std::string(to_string(spec.kind));
    result.params = spec.describe();
    for (std::size_t k : ks) result.accuracy[k] = accuracy_at(ranks, k);
    if (options.curve_max_k > 0) result.curve = curve_from_ranks(ranks, options.curve_max_k);
    if (!options.queries.empty()) {
      result.qualitative = qualitative_neighbors(distance, lex, options.queries, options.query_k,
                                                 spec.kind != MetricKind::learned_dc);
    }
    report.metrics.push_back(std::move(result));
  }
  if (options.timestamp) report.generated_at = utc_timestamp();
  return report;
}

ReportFormat parse_report_format(std::string_view name) {
  if (name == "json") return ReportFormat::json;
  if (name == "csv") return ReportFormat::csv;
  throw ConfigError("unknown report format '" + std::string(name) + "' (expected json or csv)");
}

std::string report_to_json(const EvalReport& report) {
  using detail::json;
  json metrics = json::array();
  for (const MetricResult& m : report.metrics) {
    json accuracy = json::array();
    for (const auto& [k, pct] : m.accuracy) accuracy.push_back({{"k", k}, {"accuracy_percent", pct}});
    json curve = json::array();
    for (const auto& [k, pct] : m.curve) curve.push_back({{"k", k}, {"accuracy_percent", pct}});
    json qualitative = json::array();
    for (const QueryNeighbors& q : m.qualitative) {
      json neighbors = json::array();
      for (const auto& [word, d] : q.neighbors) {
        neighbors.push_back({{"word", word}, {"distance", distance_to_json(d)}});
      }
      json entry = {{"query", q.query}, {"neighbors", neighbors}};
      entry["error"] = q.error ? json(*q.error) : json(nullptr);
      qualitative.push_back(entry);
    }
    metrics.push_back({{"name", m.name},
                       {"kind", m.kind},
                       {"params", m.params},
                       {"accuracy", accuracy},
                       {"curve", curve},
                       {"qualitative", qualitative}});
  }
  json doc = {{"format", "wordsim.report"},
              {"version", report.version},
              {"generated_at", report.generated_at},
              {"ks", report.ks},
              {"metadata", report.metadata},
              {"metrics", metrics}};
  return detail::dump(doc);
}

EvalReport report_from_json(std::string_view json_text) {
  using detail::require;
  const detail::json doc = detail::parse_json(json_text, "report");
  detail::check_header(doc, "wordsim.report", kReportFormatVersion);
  try {
    EvalReport report;
    report.version = require(doc, "version").get<int>();
    report.generated_at = require(doc, "generated_at").get<std::string>();
    report.ks = require(doc, "ks").get<std::vector<std::size_t>>();
    report.metadata = require(doc, "metadata").get<std::map<std::string, std::string>>();
    for (const auto& m : require(doc, "metrics")) {
      MetricResult result;
      result.name = require(m, "name").get<std::string>();
      result.kind = require(m, "kind").get<std::string>();
      result.params = require(m, "params").get<std::map<std::string, std::string>>();
      for (const auto& a : require(m, "accuracy")) {
        result.accuracy[require(a, "k").get<std::size_t>()] = require(a, "accuracy_percent").get<double>();
      }
      for (const auto& c : require(m, "curve")) {
        result.curve.emplace_back(require(c, "k").get<std::size_t>(),
                                  require(c, "accuracy_percent").get<double>());
      }
      for (const auto& q : require(m, "qualitative")) {
        QueryNeighbors entry;
        entry.query = require(q, "query").get<std::string>();
        if (const auto& e = require(q, "error"); !e.is_null()) entry.error = e.get<std::string>();
        for (const auto& n : require(q, "neighbors")) {
          entry.neighbors.emplace_back(require(n, "word").get<std::string>(),
                                       distance_from_json(require(n, "distance")));
        }
        result.qualitative.push_back(std::move(entry));
      }
      report.metrics.push_back(std::move(result));
    }
    return report;
  } catch (const detail::json::exception& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
}

std::string report_to_csv(const EvalReport& report) {
  std::ostringstream out;
  out << "metric,k,accuracy_percent\n";
  out << std::fixed << std::setprecision(4);
  for (const MetricResult& m : report.metrics) {
    for (std::size_t k : report.ks) {
      auto it = m.accuracy.find(k);
      if (it == m.accuracy.end()) continue;
      out << csv_field(m.name) << ',' << k << ',' << it->second << '\n';
    }
  }
  return out.str();
}

void export_report(const EvalReport& report, const std::filesystem::path& path,
                   ReportFormat format) {
  write_file_atomic(path, format == ReportFormat::json ? report_to_json(report) : report_to_csv(report));
}

std::string content_hash(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(h));
  return buffer;
}

}  // namespace wordsim
