#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wordsim/autoencoder.hpp"
#include "wordsim/context_encoder.hpp"
#include "wordsim/edit_distance.hpp"
#include "wordsim/error.hpp"
#include "wordsim/evaluation.hpp"
#include "wordsim/gram_distance.hpp"
#include "wordsim/io.hpp"
#include "wordsim/lexicon.hpp"
#include "wordsim/unicode.hpp"

namespace wordsim::cli {

namespace {

using nlohmann::json;

struct Global {
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  std::string format = "json";
  bool verbose = false;
};

std::string number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.10g", value);
  return buffer;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<std::size_t> parse_ks(const std::string& text) {
  std::vector<std::size_t> ks;
  for (const std::string& item : split_list(text)) {
    std::size_t used = 0;
    unsigned long long k = 0;
    try {
      k = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || k == 0) throw ConfigError("invalid k '" + item + "'");
    ks.push_back(static_cast<std::size_t>(k));
  }
  if (ks.empty()) throw ConfigError("--ks needs at least one value");
  return ks;
}

// "da-cosine" -> (learned_da, cosine); nullopt for non-learned names.
std::optional<std::pair<MetricKind, VectorMetric>> learned_name(const std::string& name) {
  MetricKind kind;
  if (name.rfind("da-", 0) == 0) {
    kind = MetricKind::learned_da;
  } else if (name.rfind("dc-", 0) == 0) {
    kind = MetricKind::learned_dc;
  } else {
    return std::nullopt;
  }
  return std::pair{kind, parse_vector_metric(name.substr(3))};
}

struct TrainFlags {
  std::size_t batch = 100;
  double lr = 0.01;
  std::size_t epochs = 100;
  std::string reduction = "sum";

  TrainConfig config(const Global& g, std::uint64_t seed) const {
    TrainConfig c;
    c.batch_size = batch;
    c.learning_rate = lr;
    c.epochs = epochs;
    c.seed = seed;
    c.reduction = parse_batch_reduction(reduction);
    c.threads = g.threads;
    c.validate();
    return c;
  }
};

void add_train_flags(CLI::App* cmd, TrainFlags& f, const std::string& prefix = "",
                     bool with_epochs = true) {
  cmd->add_option("--" + prefix + "batch", f.batch, "Minibatch size")->capture_default_str();
  cmd->add_option("--" + prefix + "lr", f.lr, "Learning rate")->capture_default_str();
  if (with_epochs) {
    cmd->add_option("--" + prefix + "epochs", f.epochs, "Training epochs")->capture_default_str();
  }
  cmd->add_option("--" + prefix + "reduction", f.reduction, "Minibatch gradient reduction: sum|mean")
      ->capture_default_str();
}

struct AeFlags {
  std::size_t code_size = 11;
  std::size_t depth = 7;
  std::string hidden = "sigmoid";
  std::string bottleneck = "sigmoid";
  bool oversample = false;

  AutoencoderConfig config() const {
    AutoencoderConfig c;
    c.code_size = code_size;
    c.depth = depth;
    c.hidden_activation = parse_activation(hidden);
    c.bottleneck_activation = parse_activation(bottleneck);
    return c;
  }
};

void add_ae_flags(CLI::App* cmd, AeFlags& f) {
  cmd->add_option("--code-size", f.code_size, "Bottleneck width")->capture_default_str();
  cmd->add_option("--depth", f.depth, "Layer count including input and output (odd)")
      ->capture_default_str();
  cmd->add_option("--hidden-activation", f.hidden, "sigmoid|tanh|identity")->capture_default_str();
  cmd->add_option("--bottleneck-activation", f.bottleneck, "sigmoid|tanh|identity|softmax")
      ->capture_default_str();
  cmd->add_flag("--oversample", f.oversample, "Repeat rare standard words to balance targets");
}

struct CtxFlags {
  std::string corpus;
  std::size_t window = 4;
  std::size_t hidden = 64;
  std::string hidden_activation = "sigmoid";
  std::string policy = "pad";
  std::string oov = "skip-token";

  ContextConfig config(std::size_t embed_dim) const {
    ContextConfig c;
    c.window = window;
    c.embed_dim = embed_dim;
    c.hidden = hidden;
    c.hidden_activation = parse_activation(hidden_activation);
    c.policy = parse_window_policy(policy);
    return c;
  }
};

void add_ctx_flags(CLI::App* cmd, CtxFlags& f) {
  cmd->add_option("--corpus", f.corpus, "Tokenized corpus, one sentence per line")->required();
  cmd->add_option("--window", f.window, "Preceding words used as context")->capture_default_str();
  cmd->add_option("--hidden", f.hidden, "Hidden layer width")->capture_default_str();
  cmd->add_option("--ctx-activation", f.hidden_activation, "Context hidden activation: sigmoid|tanh|identity")
      ->capture_default_str();
  cmd->add_option("--window-policy", f.policy, "Sentence-start handling: pad|skip")
      ->capture_default_str();
  cmd->add_option("--oov", f.oov, "Unknown tokens: skip-token|skip-sentence")->capture_default_str();
}

void log_losses(std::ostream& err, const Global& g, std::string_view label,
                const std::vector<double>& values) {
  if (!g.verbose) return;
  for (std::size_t i = 0; i < values.size(); ++i) {
    err << label << " epoch " << (i + 1) << ": " << number(values[i]) << '\n';
  }
}

Lexicon lexicon_from_model_file(const std::string& path) {
  const std::string text = read_file(path);
  // Both model kinds embed their lexicon; try the autoencoder format first.
  if (text.find("\"wordsim.autoencoder\"") != std::string::npos) {
    return parse_autoencoder(text).lexicon;
  }
  return parse_embedding(text).lexicon;
}

// ---------------------------------------------------------------- dist

struct DistArgs {
  std::string metric = "levenshtein";
  std::size_t n = 2;
  std::optional<double> ins, del, sub;
  std::string model;
  std::string a, b;
};

int run_dist(const DistArgs& args, std::ostream& out) {
  if (auto learned = learned_name(args.metric)) {
    if (args.model.empty()) throw ConfigError("learned metric '" + args.metric + "' needs --model");
    const Lexicon lex = lexicon_from_model_file(args.model);
    const MetricSpec spec = learned_metric(learned->first, args.model, learned->second);
    const WordDistance d = make_word_distance(spec, lex);
    out << args.metric << ": " << number(d(lex.id_of(args.a), lex.id_of(args.b))) << '\n';
    return kOk;
  }

  const std::u32string a = decode_utf8(args.a);
  const std::u32string b = decode_utf8(args.b);
  const std::string& m = args.metric;
  if (m == "hamming") {
    out << m << ": " << hamming(a, b) << '\n';
    return kOk;
  }
  if (m == "episode") {
    const EpisodeResult r = episode_distance(a, b);
    out << m << ": " << (r.is_infinite() ? std::string("inf") : std::to_string(r.value())) << '\n';
    return kOk;
  }
  if (m == "dice") {
    const double sim = dice_coefficient(a, b, args.n);
    out << m << ": " << number(1.0 - sim) << " (similarity " << number(sim) << ")\n";
    return kOk;
  }

  MetricParams params;
  params.n = args.n;
  if (args.ins || args.del || args.sub) {
    CostTable costs = default_weighted_costs();
    if (args.ins) costs.insert = *args.ins;
    if (args.del) costs.remove = *args.del;
    if (args.sub) costs.substitute = *args.sub;
    params.costs = costs;
  }
  const MetricSpec spec = classical_metric(m, params);
  // Classical metrics only need two words; bind them to a throwaway lexicon.
  std::vector<std::pair<std::string, std::string>> pairs{{args.a, args.b}};
  if (args.a == args.b) pairs = {{args.a, args.a}};
  const Lexicon lex = Lexicon::from_pairs(pairs, LexiconOptions{.case_fold = false});
  const WordDistance d = make_word_distance(spec, lex);
  out << m << ": " << number(d(*lex.find(args.a), *lex.find(args.b))) << '\n';
  return kOk;
}

// ---------------------------------------------------------------- nearest

struct WordTable {
  Lexicon lex;
  EmbeddingMatrix table;
};

WordTable load_table(const std::string& text) {
  if (text.find("\"wordsim.autoencoder\"") != std::string::npos) {
    LoadedAutoencoder loaded = parse_autoencoder(text);
    EmbeddingMatrix table = loaded.model.code_table(loaded.lexicon);
    return {std::move(loaded.lexicon), std::move(table)};
  }
  LoadedEmbedding loaded = parse_embedding(text);
  return {std::move(loaded.lexicon), std::move(loaded.embedding)};
}

struct NearestArgs {
  std::string model;
  std::vector<std::string> queries;
  std::size_t k = 5;
  std::string vector_metric = "cosine";
  bool all_words = false;
};

int run_nearest(const NearestArgs& args, const Global& g, std::ostream& out) {
  if (args.k == 0) throw ConfigError("--k must be at least 1");
  auto [lex, table] = load_table(read_file(args.model));
  const VectorMetric metric = parse_vector_metric(args.vector_metric);

  std::vector<WordId> ids;
  for (const std::string& query : args.queries) {
    const auto id = lex.lookup(query);
    if (!id) throw IndexError("query '" + query + "' is not in the model's lexicon");
    ids.push_back(*id);
  }

  json doc = json::array();
  if (g.format == "csv") out << "query,rank,word,distance\n";
  for (std::size_t q = 0; q < ids.size(); ++q) {
    const std::string& query = args.queries[q];
    const WordId* id = &ids[q];
    const auto neighbors = args.all_words ? nearest_words(table, lex, *id, args.k, metric)
                                          : nearest_standard(table, lex, *id, args.k, metric);
    if (g.format == "json") {
      json rows = json::array();
      for (const Neighbor& n : neighbors) {
        rows.push_back({{"word", lex.word(n.id)}, {"distance", n.distance}});
      }
      doc.push_back({{"query", query}, {"neighbors", rows}});
    } else {
      for (std::size_t r = 0; r < neighbors.size(); ++r) {
        out << query << ',' << (r + 1) << ',' << lex.word(neighbors[r].id) << ','
            << number(neighbors[r].distance) << '\n';
      }
    }
  }
  if (g.format == "json") out << doc.dump(2) << '\n';
  return kOk;
}

// ---------------------------------------------------------------- training

struct TrainAeArgs {
  std::string lexicon, out;
  AeFlags ae;
  TrainFlags train;
};

int run_train_ae(const TrainAeArgs& args, const Global& g, std::ostream& out, std::ostream& err) {
  const Lexicon lex = load_lexicon(args.lexicon);
  const TrainConfig tc = args.train.config(g, g.seed);
  AutoencoderModel model = AutoencoderModel::build(lex, args.ae.config(), g.seed);
  const TrainTrace trace = train_autoencoder(model, lex, tc, args.ae.oversample);
  log_losses(err, g, "autoencoder", trace.epoch_loss);
  write_file_atomic(args.out, serialize_autoencoder(model, lex));
  out << "final loss: " << number(model.final_loss.value_or(NAN)) << '\n';
  out << "wrote " << args.out << '\n';
  return kOk;
}

struct TrainCtxArgs {
  std::string lexicon, out, tsv;
  std::size_t embed_dim = 11;
  CtxFlags ctx;
  TrainFlags train;
};

int run_train_ctx(TrainCtxArgs args, const Global& g, std::ostream& out, std::ostream& err) {
  const Lexicon lex = load_lexicon(args.lexicon);
  const Corpus corpus = load_corpus(args.ctx.corpus, lex, parse_oov_policy(args.ctx.oov));
  const TrainConfig tc = args.train.config(g, g.seed);
  ContextModel model = ContextModel::build(lex, args.ctx.config(args.embed_dim), g.seed);
  const ContextTrace trace = train_context(model, corpus, tc);
  log_losses(err, g, "context", trace.mean_log_likelihood);

  EmbeddingMetadata meta;
  meta.source = "context";
  meta.window = args.ctx.window;
  meta.context_seed = g.seed;
  write_file_atomic(args.out, serialize_embedding(model.embeddings(), lex, meta));
  if (!args.tsv.empty()) write_file_atomic(args.tsv, embedding_to_tsv(model.embeddings(), lex));
  const double ll = trace.mean_log_likelihood.empty() ? mean_log_likelihood(model, corpus)
                                                      : trace.mean_log_likelihood.back();
  out << "mean log-likelihood: " << number(ll) << '\n';
  if (corpus.oov_count > 0) out << "skipped oov tokens: " << corpus.oov_count << '\n';
  out << "wrote " << args.out << '\n';
  return kOk;
}

struct TrainCombinedArgs {
  std::string lexicon, out, ae_out, tsv;
  AeFlags ae;
  CtxFlags ctx;
  TrainFlags ctx_train;
  TrainFlags ae_train;
  CombinedConfig combined;
};

int run_train_combined(TrainCombinedArgs args, const Global& g, std::ostream& out,
                       std::ostream& err) {
  const Lexicon lex = load_lexicon(args.lexicon);
  const Corpus corpus = load_corpus(args.ctx.corpus, lex, parse_oov_policy(args.ctx.oov));
  // Context and autoencoder streams are seeded from --seed and --seed + 1.
  const std::uint64_t ae_seed = g.seed + 1;
  const TrainConfig ctx_tc = args.ctx_train.config(g, g.seed);
  const TrainConfig ae_tc = args.ae_train.config(g, ae_seed);
  args.combined.validate();

  ContextModel ctx = ContextModel::build(lex, args.ctx.config(args.ae.code_size), g.seed);
  AutoencoderModel ae = AutoencoderModel::build(lex, args.ae.config(), ae_seed);
  const EmbeddingMatrix u = train_combined(ctx, ae, lex, corpus, ctx_tc, ae_tc, args.combined);
  if (g.verbose) {
    err << "autoencoder loss: " << number(autoencoder_loss(ae, lex)) << '\n';
    err << "context log-likelihood: " << number(mean_log_likelihood(ctx, corpus)) << '\n';
  }

  EmbeddingMetadata meta;
  meta.source = "combined";
  meta.window = args.ctx.window;
  meta.blend = args.combined.blend;
  meta.rounds = args.combined.rounds;
  meta.context_seed = g.seed;
  meta.autoencoder_seed = ae_seed;
  const std::string embedding = serialize_embedding(u, lex, meta);
  const std::string model = args.ae_out.empty() ? std::string() : serialize_autoencoder(ae, lex);
  write_file_atomic(args.out, embedding);
  if (!args.ae_out.empty()) write_file_atomic(args.ae_out, model);
  if (!args.tsv.empty()) write_file_atomic(args.tsv, embedding_to_tsv(u, lex));
  out << "rounds: " << args.combined.rounds << '\n';
  out << "wrote " << args.out << '\n';
  return kOk;
}

// ---------------------------------------------------------------- eval

struct EvalArgs {
  std::string lexicon, out;
  std::string metrics = "all-classical";
  std::string ae_model, embedding;
  std::string ks = "1,5";
  std::size_t curve = 0;
  std::string queries;
  std::size_t query_k = 5;
  std::size_t n = 2;
  bool no_timestamp = false;
};

int run_eval(const EvalArgs& args, const Global& g, std::ostream& out) {
  const ReportFormat format = parse_report_format(g.format);
  const std::string lexicon_bytes = read_file(args.lexicon);
  std::istringstream lexicon_stream(lexicon_bytes);
  const Lexicon lex = parse_lexicon(lexicon_stream);

  std::map<std::string, std::string> metadata;
  metadata["lexicon_file"] = std::filesystem::path(args.lexicon).filename().string();
  metadata["lexicon_sha"] = content_hash(lexicon_bytes);
  metadata["seed"] = std::to_string(g.seed);

  MetricParams classical;
  classical.n = args.n;
  std::vector<MetricSpec> specs;
  for (const std::string& name : split_list(args.metrics)) {
    if (name == "all-classical") {
      for (const std::string& algorithm : classical_algorithms()) {
        specs.push_back(classical_metric(algorithm, classical));
      }
    } else if (auto learned = learned_name(name)) {
      const std::string& path = learned->first == MetricKind::learned_da ? args.ae_model : args.embedding;
      if (path.empty()) {
        throw ConfigError("metric '" + name + "' needs --" +
                          (learned->first == MetricKind::learned_da ? "ae-model" : "embedding"));
      }
      MetricSpec spec = learned_metric(learned->first, path, learned->second);
      spec.name = name;
      metadata[name + "_model_sha"] = content_hash(read_file(path));
      specs.push_back(std::move(spec));
    } else {
      specs.push_back(classical_metric(name, classical));
    }
  }
  if (specs.empty()) throw ConfigError("--metrics selected nothing");

  EvalOptions opts;
  opts.ks = parse_ks(args.ks);
  opts.curve_max_k = args.curve;
  opts.queries = split_list(args.queries);
  opts.query_k = args.query_k;
  opts.threads = g.threads;
  opts.timestamp = !args.no_timestamp;
  const EvalReport report = run_evaluation(specs, lex, opts, std::move(metadata));

  if (args.out.empty()) {
    out << (format == ReportFormat::json ? report_to_json(report) : report_to_csv(report));
    return kOk;
  }
  export_report(report, args.out, format);
  for (const MetricResult& m : report.metrics) {
    out << m.name;
    for (const auto& [k, pct] : m.accuracy) {
      out << "  @" << k << " " << std::fixed << std::setprecision(2) << pct << '%';
    }
    out << std::defaultfloat << '\n';
  }
  out << "wrote " << args.out << '\n';
  return kOk;
}

int exit_code_for(const Error& e) {
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const ParameterError*>(&e)) return kUsage;
  if (dynamic_cast<const NumericError*>(&e)) return kNumeric;
  return kData;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Word similarity: classical string metrics and learned embeddings"};
  app.require_subcommand(1);
  Global g;
  app.add_option("--seed", g.seed, "Seed for every random stream")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker thread cap")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--format", g.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_flag("--verbose", g.verbose, "Per-epoch progress on stderr");
  app.fallthrough();

  DistArgs dist;
  auto* dist_cmd = app.add_subcommand("dist", "Distance between two strings");
  dist_cmd->add_option("--metric", dist.metric, "Metric name (da-*/dc-* need --model)")
      ->capture_default_str();
  dist_cmd->add_option("--n", dist.n, "Gram length")->capture_default_str();
  dist_cmd->add_option("--ins", dist.ins, "Insertion cost (weighted_levenshtein)");
  dist_cmd->add_option("--del", dist.del, "Deletion cost (weighted_levenshtein)");
  dist_cmd->add_option("--sub", dist.sub, "Substitution cost (weighted_levenshtein)");
  dist_cmd->add_option("--model", dist.model, "Autoencoder or embedding file");
  dist_cmd->add_option("a", dist.a, "First string")->required();
  dist_cmd->add_option("b", dist.b, "Second string")->required();

  NearestArgs nearest;
  auto* nearest_cmd = app.add_subcommand("nearest", "Nearest words under a learned metric");
  auto* emb_opt = nearest_cmd->add_option("--embedding", nearest.model, "Embedding file");
  auto* model_opt = nearest_cmd->add_option("--model", nearest.model, "Autoencoder file");
  emb_opt->excludes(model_opt);
  nearest_cmd->add_option("--query", nearest.queries, "Query word (repeatable)")->required();
  nearest_cmd->add_option("--k", nearest.k, "Neighbors per query")->capture_default_str();
  nearest_cmd->add_option("--vector-metric", nearest.vector_metric, "cosine|l1|l2")
      ->capture_default_str();
  nearest_cmd->add_flag("--all-words", nearest.all_words, "Rank every word, not only standard ones");

  TrainAeArgs train_ae;
  auto* ae_cmd = app.add_subcommand("train-ae", "Train the denoising autoencoder");
  ae_cmd->add_option("--lexicon", train_ae.lexicon, "Pairs TSV")->required();
  ae_cmd->add_option("--out", train_ae.out, "Model file to write")->required();
  add_ae_flags(ae_cmd, train_ae.ae);
  add_train_flags(ae_cmd, train_ae.train);

  TrainCtxArgs train_ctx;
  auto* ctx_cmd = app.add_subcommand("train-ctx", "Train the context encoder");
  ctx_cmd->add_option("--lexicon", train_ctx.lexicon, "Pairs TSV")->required();
  ctx_cmd->add_option("--out", train_ctx.out, "Embedding file to write")->required();
  ctx_cmd->add_option("--tsv", train_ctx.tsv, "Also write the embedding as TSV");
  ctx_cmd->add_option("--embed-dim", train_ctx.embed_dim, "Embedding width")->capture_default_str();
  add_ctx_flags(ctx_cmd, train_ctx.ctx);
  train_ctx.train.epochs = 10;
  add_train_flags(ctx_cmd, train_ctx.train);

  TrainCombinedArgs combined;
  auto* comb_cmd = app.add_subcommand("train-combined", "Alternate context and autoencoder training");
  comb_cmd->add_option("--lexicon", combined.lexicon, "Pairs TSV")->required();
  comb_cmd->add_option("--out", combined.out, "Embedding file to write")->required();
  comb_cmd->add_option("--ae-out", combined.ae_out, "Also write the trained autoencoder");
  comb_cmd->add_option("--tsv", combined.tsv, "Also write the embedding as TSV");
  add_ae_flags(comb_cmd, combined.ae);
  add_ctx_flags(comb_cmd, combined.ctx);
  comb_cmd->add_option("--rounds", combined.combined.rounds, "Alternation rounds")->capture_default_str();
  comb_cmd->add_option("--blend", combined.combined.blend, "Weight of the autoencoder code")
      ->capture_default_str();
  comb_cmd->add_option("--ctx-epochs", combined.combined.context_epochs_per_round,
                       "Context epochs per round")
      ->capture_default_str();
  comb_cmd->add_option("--ae-epochs", combined.combined.autoencoder_epochs_per_round,
                       "Autoencoder epochs per round")
      ->capture_default_str();
  // Epoch counts come from the rounds; these set batch, lr and reduction per stream.
  add_train_flags(comb_cmd, combined.ctx_train, "ctx-", false);
  add_train_flags(comb_cmd, combined.ae_train, "ae-", false);

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Accuracy@k of metrics over a lexicon");
  eval_cmd->add_option("--lexicon", eval.lexicon, "Pairs TSV")->required();
  eval_cmd->add_option("--metrics", eval.metrics,
                       "Comma list: metric names, all-classical, da-<vm>, dc-<vm>")
      ->capture_default_str();
  eval_cmd->add_option("--ae-model", eval.ae_model, "Autoencoder file for da-* metrics");
  eval_cmd->add_option("--embedding", eval.embedding, "Embedding file for dc-* metrics");
  eval_cmd->add_option("--ks", eval.ks, "Comma list of k")->capture_default_str();
  eval_cmd->add_option("--curve", eval.curve, "Also report accuracy@k for k = 1..K");
  eval_cmd->add_option("--queries", eval.queries, "Comma list of words for neighbor tables");
  eval_cmd->add_option("--query-k", eval.query_k, "Neighbors per query")->capture_default_str();
  eval_cmd->add_option("--n", eval.n, "Gram length for gram metrics")->capture_default_str();
  eval_cmd->add_option("--out", eval.out, "Report file (stdout when absent)");
  eval_cmd->add_flag("--no-timestamp", eval.no_timestamp, "Leave generated_at empty");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*dist_cmd) return run_dist(dist, out);
    if (*nearest_cmd) {
      if (nearest.model.empty()) throw ConfigError("nearest needs --embedding or --model");
      return run_nearest(nearest, g, out);
    }
    if (*ae_cmd) return run_train_ae(train_ae, g, out, err);
    if (*ctx_cmd) return run_train_ctx(train_ctx, g, out, err);
    if (*comb_cmd) return run_train_combined(combined, g, out, err);
    if (*eval_cmd) return run_eval(eval, g, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}

}  // namespace wordsim::cli
