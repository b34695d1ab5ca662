#include "wordsim/context_encoder.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <numeric>
#include <sstream>

#include "json_support.hpp"
#include "wordsim/error.hpp"

namespace wordsim {

WindowPolicy parse_window_policy(std::string_view name) {
  if (name == "pad") return WindowPolicy::pad;
  if (name == "skip") return WindowPolicy::skip;
  throw ConfigError("unknown window policy '" + std::string(name) + "' (expected pad or skip)");
}

ContextModel ContextModel::build(const Lexicon& lex, const ContextConfig& config,
                                 std::uint64_t seed) {
  if (config.window == 0 || config.embed_dim == 0 || config.hidden == 0) {
    throw ConfigError("context window, embedding width and hidden width must be positive");
  }
  if (config.hidden_activation == Activation::softmax) {
    throw ConfigError("context hidden layer cannot be softmax");
  }
  std::mt19937_64 rng(seed);
  ContextModel model;
  model.config_ = config;
  model.seed_ = seed;

  const std::size_t widths[] = {config.window * config.embed_dim, config.hidden, lex.size()};
  const Activation activations[] = {config.hidden_activation, Activation::softmax};
  model.predictor_ = Network::glorot(widths, activations, rng);

  std::uniform_real_distribution<double> init(-0.5, 0.5);
  const auto rows = static_cast<Eigen::Index>(lex.size());
  const auto cols = static_cast<Eigen::Index>(config.embed_dim);
  model.embeddings_.lexicon_fingerprint = lex.fingerprint();
  model.embeddings_.rows.resize(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) model.embeddings_.rows(r, c) = init(rng);
  }
  model.padding_.resize(cols);
  for (Eigen::Index c = 0; c < cols; ++c) model.padding_[c] = init(rng);
  return model;
}

Eigen::VectorXd ContextModel::features(std::span<const WordId> context) const {
  if (context.size() != config_.window) {
    throw ShapeError("context has " + std::to_string(context.size()) + " words, window is " +
                     std::to_string(config_.window));
  }
  const auto width = static_cast<Eigen::Index>(config_.embed_dim);
  Eigen::VectorXd x(width * static_cast<Eigen::Index>(context.size()));
  for (std::size_t slot = 0; slot < context.size(); ++slot) {
    const WordId id = context[slot];
    auto segment = x.segment(static_cast<Eigen::Index>(slot) * width, width);
    if (id == kPaddingToken) {
      segment = padding_;
    } else if (id < embeddings_.word_count()) {
      segment = embeddings_.rows.row(static_cast<Eigen::Index>(id)).transpose();
    } else {
      throw IndexError("context word id " + std::to_string(id) + " out of range");
    }
  }
  return x;
}

Eigen::VectorXd ContextModel::context_prob(std::span<const WordId> context) const {
  return forward(predictor_, features(context)).back();
}

ContextExamples context_examples(const Corpus& corpus, std::size_t window, WindowPolicy policy) {
  ContextExamples out;
  out.window = window;
  for (const auto& sentence : corpus.sentences) {
    for (std::size_t t = 0; t < sentence.size(); ++t) {
      if (policy == WindowPolicy::skip && t < window) continue;
      for (std::size_t back = window; back > 0; --back) {
        out.contexts.push_back(t >= back ? sentence[t - back] : kPaddingToken);
      }
      out.targets.push_back(sentence[t]);
    }
  }
  return out;
}

ContextTrainer::ContextTrainer(ContextModel& model, const Corpus& corpus,
                               const TrainConfig& config)
    : model_(model),
      config_(config),
      examples_(context_examples(corpus, model.config().window, model.config().policy)),
      rng_(config.seed) {
  config_.validate();
  if (examples_.size() == 0) {
    throw DataError("corpus yields no training positions for window " +
                    std::to_string(model.config().window));
  }
  for (WordId t : examples_.targets) {
    if (t >= model_.embeddings().word_count()) throw IndexError("corpus token outside the lexicon");
  }
  order_.resize(examples_.size());
  std::iota(order_.begin(), order_.end(), std::size_t{0});
}

double ContextTrainer::run_epoch() {
  if (config_.shuffle) std::shuffle(order_.begin(), order_.end(), rng_);
  const auto vocab = static_cast<Eigen::Index>(model_.embeddings().word_count());
  const auto width = static_cast<Eigen::Index>(model_.config().embed_dim);
  double loss_sum = 0.0;

  for (std::size_t begin = 0; begin < order_.size(); begin += config_.batch_size) {
    const std::size_t count = std::min(config_.batch_size, order_.size() - begin);
    auto source = [&](std::size_t i, Eigen::VectorXd& input, Eigen::VectorXd& target) {
      const std::size_t ex = order_[begin + i];
      input = model_.features(examples_.context(ex));
      target.setZero(vocab);
      target[static_cast<Eigen::Index>(examples_.targets[ex])] = 1.0;
    };
    BatchResult batch = batch_backward(model_.predictor(), count, source, Loss::cross_entropy,
                                       config_.threads, /*keep_input_gradients=*/true);
    if (!std::isfinite(batch.loss_sum)) throw NumericError("non-finite context loss");
    const double scale =
        config_.reduction == BatchReduction::mean ? 1.0 / static_cast<double>(count) : 1.0;

    // Scatter input gradients onto embedding rows before any parameter moves.
    std::map<WordId, Eigen::VectorXd> row_grads;
    for (std::size_t i = 0; i < count; ++i) {
      const auto context = examples_.context(order_[begin + i]);
      for (std::size_t slot = 0; slot < context.size(); ++slot) {
        auto piece = batch.input_gradients[i].segment(static_cast<Eigen::Index>(slot) * width, width);
        auto [it, inserted] = row_grads.try_emplace(context[slot], piece);
        if (!inserted) it->second += piece;
      }
    }

    if (scale != 1.0) batch.sum *= scale;
    sgd_step(model_.predictor(), batch.sum, config_.learning_rate);
    const double step = config_.learning_rate * scale;
    for (const auto& [id, grad] : row_grads) {
      if (id == kPaddingToken) {
        model_.padding_embedding() -= step * grad;
      } else {
        model_.embeddings().rows.row(static_cast<Eigen::Index>(id)) -= step * grad.transpose();
      }
    }
    if (!model_.embeddings().rows.allFinite() || !model_.padding_embedding().allFinite()) {
      throw NumericError("non-finite embedding after update");
    }
    loss_sum += batch.loss_sum;
  }
  return -loss_sum / static_cast<double>(order_.size());
}

ContextTrace train_context(ContextModel& model, const Corpus& corpus, const TrainConfig& config) {
  ContextTrainer trainer(model, corpus, config);
  ContextTrace trace;
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    trace.mean_log_likelihood.push_back(trainer.run_epoch());
  }
  return trace;
}

double mean_log_likelihood(const ContextModel& model, const Corpus& corpus) {
  const ContextExamples examples =
      context_examples(corpus, model.config().window, model.config().policy);
  if (examples.size() == 0) throw DataError("corpus yields no positions to score");
  double total = 0.0;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    const Eigen::VectorXd p = model.context_prob(examples.context(i));
    total += std::log(std::max(p[static_cast<Eigen::Index>(examples.targets[i])], 1e-300));
  }
  return total / static_cast<double>(examples.size());
}

double context_gradient_check(const ContextModel& model, std::span<const WordId> context,
                              WordId target, double epsilon) {
  if (!(epsilon > 0.0)) throw ConfigError("gradient check epsilon must be positive");
  const auto vocab = static_cast<Eigen::Index>(model.embeddings().word_count());
  if (target >= model.embeddings().word_count()) throw IndexError("target id out of range");
  const Eigen::VectorXd x = model.features(context);
  Eigen::VectorXd t = Eigen::VectorXd::Zero(vocab);
  t[static_cast<Eigen::Index>(target)] = 1.0;

  const Gradients analytic = backward(model.predictor(), x, t, Loss::cross_entropy);
  double worst = gradient_check(model.predictor(), x, t, Loss::cross_entropy, epsilon, analytic);

  const auto width = static_cast<Eigen::Index>(model.config().embed_dim);
  std::map<WordId, Eigen::VectorXd> row_grads;
  for (std::size_t slot = 0; slot < context.size(); ++slot) {
    Eigen::VectorXd piece = analytic.input.segment(static_cast<Eigen::Index>(slot) * width, width);
    auto [it, inserted] = row_grads.try_emplace(context[slot], piece);
    if (!inserted) it->second += piece;
  }

  ContextModel probe = model;
  for (const auto& [id, grad] : row_grads) {
    for (Eigen::Index k = 0; k < width; ++k) {
      double& slot = id == kPaddingToken
                         ? probe.padding_embedding()[k]
                         : probe.embeddings().rows(static_cast<Eigen::Index>(id), k);
      const double saved = slot;
      const double up = saved + epsilon;
      const double down = saved - epsilon;
      slot = up;
      const long double loss_up =
          loss_extended(probe.predictor(), probe.features(context), t, Loss::cross_entropy);
      slot = down;
      const long double loss_down =
          loss_extended(probe.predictor(), probe.features(context), t, Loss::cross_entropy);
      slot = saved;
      const double numeric = static_cast<double>((loss_up - loss_down) / (up - down));
      worst = std::max(worst, relative_error(grad[k], numeric));
    }
  }
  return worst;
}

void CombinedConfig::validate() const {
  if (!(blend >= 0.0 && blend <= 1.0)) throw ConfigError("blend must lie in [0, 1]");
}

EmbeddingMatrix train_combined(ContextModel& context, AutoencoderModel& autoencoder,
                               const Lexicon& lex, const Corpus& corpus,
                               const TrainConfig& context_training,
                               const TrainConfig& autoencoder_training,
                               const CombinedConfig& combined) {
  combined.validate();
  if (autoencoder.code_size() != context.config().embed_dim) {
    throw ConfigError("autoencoder code size " + std::to_string(autoencoder.code_size()) +
                      " differs from embedding width " +
                      std::to_string(context.config().embed_dim));
  }
  autoencoder.check_binding(lex);
  context.embeddings().check_binding(lex);

  ContextTrainer context_trainer(context, corpus, context_training);
  AutoencoderTrainer autoencoder_trainer(autoencoder, lex, autoencoder_training);
  for (std::size_t round = 0; round < combined.rounds; ++round) {
    for (std::size_t e = 0; e < combined.context_epochs_per_round; ++e) context_trainer.run_epoch();
    for (std::size_t e = 0; e < combined.autoencoder_epochs_per_round; ++e) {
      autoencoder_trainer.run_epoch();
    }
    const EmbeddingMatrix codes = autoencoder.code_table(lex);
    context.embeddings().rows =
        (1.0 - combined.blend) * context.embeddings().rows + combined.blend * codes.rows;
  }
  if (combined.rounds > 0 && combined.autoencoder_epochs_per_round > 0) {
    TrainConfig record = autoencoder_training;
    record.epochs = combined.rounds * combined.autoencoder_epochs_per_round;
    autoencoder.trained_with = record;
    autoencoder.final_loss = autoencoder_loss(autoencoder, lex);
  }
  return context.embeddings();
}

double distance_dc(const EmbeddingMatrix& embedding, WordId a, WordId b, VectorMetric metric) {
  return embedding.distance(a, b, metric);
}

std::string serialize_embedding(const EmbeddingMatrix& embedding, const Lexicon& lex,
                                const EmbeddingMetadata& metadata) {
  embedding.check_binding(lex);
  using detail::json;
  std::vector<double> values;
  values.reserve(embedding.word_count() * embedding.width());
  for (Eigen::Index r = 0; r < embedding.rows.rows(); ++r) {
    for (Eigen::Index c = 0; c < embedding.rows.cols(); ++c) values.push_back(embedding.rows(r, c));
  }
  json doc = {{"format", "wordsim.embedding"},
              {"version", kEmbeddingFormatVersion},
              {"lexicon_fingerprint", detail::u64_to_string(embedding.lexicon_fingerprint)},
              {"n_embed", embedding.width()},
              {"rows", embedding.word_count()}};
  doc["metadata"] = {{"source", metadata.source},
                     {"window", metadata.window},
                     {"blend", metadata.blend},
                     {"rounds", metadata.rounds},
                     {"context_seed", detail::u64_to_string(metadata.context_seed)},
                     {"autoencoder_seed", detail::u64_to_string(metadata.autoencoder_seed)}};
  doc["U"] = values;
  doc["lexicon"] = detail::lexicon_to_json(lex);
  return detail::dump(doc);
}

LoadedEmbedding parse_embedding(std::string_view json_text) {
  using detail::require;
  const detail::json doc = detail::parse_json(json_text, "embedding file");
  detail::check_header(doc, "wordsim.embedding", kEmbeddingFormatVersion);
  try {
    Lexicon lex = detail::lexicon_from_json(require(doc, "lexicon"));
    EmbeddingMatrix embedding;
    embedding.lexicon_fingerprint = detail::u64_from_json(require(doc, "lexicon_fingerprint"));
    const auto width = require(doc, "n_embed").get<Eigen::Index>();
    const auto rows = require(doc, "rows").get<Eigen::Index>();
    const auto values = require(doc, "U").get<std::vector<double>>();
    if (static_cast<Eigen::Index>(values.size()) != rows * width) {
      throw ParseError("embedding matrix size does not match rows x n_embed");
    }
    embedding.rows.resize(rows, width);
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index c = 0; c < width; ++c) {
        embedding.rows(r, c) = values[static_cast<std::size_t>(r * width + c)];
      }
    }
    const detail::json& meta = require(doc, "metadata");
    EmbeddingMetadata metadata;
    metadata.source = require(meta, "source").get<std::string>();
    metadata.window = require(meta, "window").get<std::size_t>();
    metadata.blend = require(meta, "blend").get<double>();
    metadata.rounds = require(meta, "rounds").get<std::size_t>();
    metadata.context_seed = detail::u64_from_json(require(meta, "context_seed"));
    metadata.autoencoder_seed = detail::u64_from_json(require(meta, "autoencoder_seed"));
    try {
      embedding.check_binding(lex);
    } catch (const BindingError&) {
      throw ParseError("embedding fingerprint does not match its embedded lexicon");
    }
    return {std::move(embedding), std::move(lex), std::move(metadata)};
  } catch (const detail::json::exception& e) {
    throw ParseError(std::string("embedding file: ") + e.what());
  }
}

std::string embedding_to_tsv(const EmbeddingMatrix& embedding, const Lexicon& lex) {
  embedding.check_binding(lex);
  std::ostringstream out;
  out << std::setprecision(17);
  for (WordId w = 0; w < lex.size(); ++w) {
    out << lex.word(w);
    for (Eigen::Index c = 0; c < embedding.rows.cols(); ++c) {
      out << '\t' << embedding.rows(static_cast<Eigen::Index>(w), c);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace wordsim
