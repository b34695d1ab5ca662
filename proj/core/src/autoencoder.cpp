#include "wordsim/autoencoder.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "json_support.hpp"
#include "wordsim/error.hpp"

namespace wordsim {

std::vector<std::size_t> hourglass_widths(std::size_t vocabulary_size, std::size_t code_size,
                                          std::size_t depth) {
  if (depth < 3 || depth % 2 == 0) {
    throw ConfigError("autoencoder depth must be odd and at least 3 (got " +
                      std::to_string(depth) + ")");
  }
  if (code_size == 0) throw ConfigError("code size must be at least 1");
  if (code_size >= vocabulary_size) {
    throw ConfigError("code size " + std::to_string(code_size) +
                      " must be smaller than the vocabulary (" + std::to_string(vocabulary_size) +
                      ")");
  }
  const std::size_t half = (depth - 1) / 2;
  const double ratio = static_cast<double>(code_size) / static_cast<double>(vocabulary_size);
  std::vector<std::size_t> encoder{vocabulary_size};
  for (std::size_t i = 1; i < half; ++i) {
    const double w = static_cast<double>(vocabulary_size) *
                     std::pow(ratio, static_cast<double>(i) / static_cast<double>(half));
    const auto rounded = static_cast<std::size_t>(std::llround(w));
    encoder.push_back(std::clamp(rounded, code_size, encoder.back()));
  }
  encoder.push_back(code_size);

  std::vector<std::size_t> widths = encoder;
  for (std::size_t i = encoder.size() - 1; i-- > 0;) widths.push_back(encoder[i]);
  return widths;
}

AutoencoderModel AutoencoderModel::build(const Lexicon& lex, const AutoencoderConfig& config,
                                         std::uint64_t seed) {
  const std::vector<std::size_t> widths =
      hourglass_widths(lex.size(), config.code_size, config.depth);
  if (config.hidden_activation == Activation::softmax) {
    throw ConfigError("hidden layers cannot be softmax; use the bottleneck activation");
  }
  const std::size_t layers = widths.size() - 1;
  const std::size_t half = layers / 2;
  std::vector<Activation> activations(layers, config.hidden_activation);
  activations[half - 1] = config.bottleneck_activation;
  activations.back() = Activation::softmax;

  std::mt19937_64 rng(seed);
  AutoencoderModel model;
  model.net_ = Network::glorot(widths, activations, rng);
  model.config_ = config;
  model.fingerprint_ = lex.fingerprint();
  model.seed_ = seed;
  return model;
}

AutoencoderModel AutoencoderModel::from_parts(Network net, const AutoencoderConfig& config,
                                              std::uint64_t lexicon_fingerprint,
                                              std::uint64_t seed) {
  const std::vector<std::size_t> topology = net.topology();
  if (topology.size() != config.depth || topology.front() != topology.back() ||
      topology[(config.depth - 1) / 2] != config.code_size) {
    throw ConfigError("network topology does not match the autoencoder header");
  }
  if (net.layers().back().activation != Activation::softmax) {
    throw ConfigError("autoencoder output layer must be softmax");
  }
  AutoencoderModel model;
  model.net_ = std::move(net);
  model.config_ = config;
  model.fingerprint_ = lexicon_fingerprint;
  model.seed_ = seed;
  return model;
}

void AutoencoderModel::check_binding(const Lexicon& lex) const {
  if (lex.fingerprint() != fingerprint_ || lex.size() != net_.input_dim()) {
    throw BindingError("autoencoder was trained on a different lexicon");
  }
}

Eigen::VectorXd AutoencoderModel::bottleneck_of(WordId word) const {
  const auto& layers = net_.layers();
  // The first layer sees a one-hot vector: its pre-activation is one column.
  Eigen::VectorXd a = activate(layers[0].activation,
                               layers[0].weights.col(static_cast<Eigen::Index>(word)) + layers[0].bias);
  for (std::size_t l = 1; l <= bottleneck_index(); ++l) {
    a = activate(layers[l].activation, layers[l].weights * a + layers[l].bias);
  }
  if (!a.allFinite()) throw NumericError("non-finite autoencoder code");
  return a;
}

CodeVector AutoencoderModel::encode(const Lexicon& lex, WordId word) const {
  check_binding(lex);
  lex.word(word);
  return {bottleneck_of(word)};
}

Eigen::VectorXd AutoencoderModel::reconstruct(const Lexicon& lex, WordId word) const {
  check_binding(lex);
  return forward(net_, one_hot(lex, word).dense()).back();
}

EmbeddingMatrix AutoencoderModel::code_table(const Lexicon& lex) const {
  check_binding(lex);
  EmbeddingMatrix table;
  table.lexicon_fingerprint = fingerprint_;
  table.rows.resize(static_cast<Eigen::Index>(lex.size()),
                    static_cast<Eigen::Index>(config_.code_size));
  for (WordId w = 0; w < lex.size(); ++w) {
    table.rows.row(static_cast<Eigen::Index>(w)) = bottleneck_of(w).transpose();
  }
  return table;
}

AutoencoderModel build_autoencoder(const Lexicon& lex, std::size_t code_size, std::size_t depth,
                                   std::uint64_t seed) {
  AutoencoderConfig config;
  config.code_size = code_size;
  config.depth = depth;
  return AutoencoderModel::build(lex, config, seed);
}

std::vector<AutoencoderExample> autoencoder_examples(const Lexicon& lex, bool oversample) {
  // Grouped per standard word: the word itself first, then its variants.
  std::vector<std::vector<AutoencoderExample>> groups(lex.size());
  for (WordId c : lex.standard_ids()) groups[c].push_back({c, c});
  for (WordId m : lex.nonstandard_ids()) {
    const WordId c = *lex.standard_of(m);
    groups[c].push_back({m, c});
  }
  std::size_t largest = 0;
  for (const auto& g : groups) largest = std::max(largest, g.size());

  std::vector<AutoencoderExample> examples;
  for (WordId c : lex.standard_ids()) {
    const auto& g = groups[c];
    const std::size_t copies = oversample ? largest : g.size();
    for (std::size_t i = 0; i < copies; ++i) examples.push_back(g[i % g.size()]);
  }
  return examples;
}

AutoencoderTrainer::AutoencoderTrainer(AutoencoderModel& model, const Lexicon& lex,
                                       const TrainConfig& config, bool oversample)
    : model_(model),
      lex_(lex),
      config_(config),
      examples_(autoencoder_examples(lex, oversample)),
      rng_(config.seed) {
  config_.validate();
  model_.check_binding(lex_);
  if (lex_.nonstandard_ids().empty()) {
    throw ConfigError("lexicon has no (non-standard, standard) pairs to train on");
  }
}

double AutoencoderTrainer::run_epoch() {
  if (config_.shuffle) std::shuffle(examples_.begin(), examples_.end(), rng_);
  const auto width = static_cast<Eigen::Index>(lex_.size());
  double loss_sum = 0.0;
  for (std::size_t begin = 0; begin < examples_.size(); begin += config_.batch_size) {
    const std::size_t count = std::min(config_.batch_size, examples_.size() - begin);
    auto source = [&](std::size_t i, Eigen::VectorXd& input, Eigen::VectorXd& target) {
      const AutoencoderExample& ex = examples_[begin + i];
      input.setZero(width);
      input[static_cast<Eigen::Index>(ex.input)] = 1.0;
      target.setZero(width);
      target[static_cast<Eigen::Index>(ex.target)] = 1.0;
    };
    BatchResult batch = batch_backward(model_.network(), count, source, Loss::cross_entropy,
                                       config_.threads);
    if (!std::isfinite(batch.loss_sum)) throw NumericError("non-finite autoencoder loss");
    if (config_.reduction == BatchReduction::mean) batch.sum *= 1.0 / static_cast<double>(count);
    sgd_step(model_.network(), batch.sum, config_.learning_rate);
    loss_sum += batch.loss_sum;
  }
  return loss_sum / static_cast<double>(examples_.size());
}

TrainTrace train_autoencoder(AutoencoderModel& model, const Lexicon& lex,
                             const TrainConfig& config, bool oversample) {
  AutoencoderTrainer trainer(model, lex, config, oversample);
  TrainTrace trace;
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    trace.epoch_loss.push_back(trainer.run_epoch());
  }
  model.trained_with = config;
  model.final_loss = autoencoder_loss(model, lex);
  model.oversampled = oversample;
  return trace;
}

double autoencoder_loss(const AutoencoderModel& model, const Lexicon& lex) {
  model.check_binding(lex);
  const auto examples = autoencoder_examples(lex);
  double total = 0.0;
  for (const AutoencoderExample& ex : examples) {
    const Eigen::VectorXd p = model.reconstruct(lex, ex.input);
    total -= std::log(std::max(p[static_cast<Eigen::Index>(ex.target)], 1e-300));
  }
  return total / static_cast<double>(examples.size());
}

double distance_da(const AutoencoderModel& model, const Lexicon& lex, WordId a, WordId b,
                   VectorMetric metric) {
  if (a == b) {
    lex.word(a);
    return 0.0;
  }
  return vector_distance(model.encode(lex, a).values, model.encode(lex, b).values, metric);
}

std::vector<Neighbor> nearest_standard(const AutoencoderModel& model, const Lexicon& lex,
                                       WordId query, std::size_t k, VectorMetric metric) {
  return nearest_standard(model.code_table(lex), lex, query, k, metric);
}

std::string serialize_autoencoder(const AutoencoderModel& model, const Lexicon& lex) {
  model.check_binding(lex);
  using detail::json;
  json header = {
      {"lexicon_fingerprint", detail::u64_to_string(model.lexicon_fingerprint())},
      {"code_size", model.code_size()},
      {"depth", model.depth()},
      {"bottleneck_index", model.bottleneck_index()},
      {"hidden_activation", std::string(to_string(model.config().hidden_activation))},
      {"bottleneck_activation", std::string(to_string(model.config().bottleneck_activation))},
      {"seed", detail::u64_to_string(model.seed())},
      {"oversampled", model.oversampled},
  };
  header["training"] = model.trained_with ? detail::train_config_to_json(*model.trained_with)
                                          : json(nullptr);
  header["final_loss"] = model.final_loss ? json(*model.final_loss) : json(nullptr);

  json doc = {{"format", "wordsim.autoencoder"}, {"version", kAutoencoderFormatVersion}};
  doc["header"] = header;
  doc["network"] = detail::network_to_json(model.network());
  doc["lexicon"] = detail::lexicon_to_json(lex);
  return detail::dump(doc);
}

LoadedAutoencoder parse_autoencoder(std::string_view json_text) {
  using detail::require;
  const detail::json doc = detail::parse_json(json_text, "autoencoder file");
  detail::check_header(doc, "wordsim.autoencoder", kAutoencoderFormatVersion);
  try {
    const detail::json& header = require(doc, "header");
    AutoencoderConfig config;
    config.code_size = require(header, "code_size").get<std::size_t>();
    config.depth = require(header, "depth").get<std::size_t>();
    config.hidden_activation = parse_activation(require(header, "hidden_activation").get<std::string>());
    config.bottleneck_activation =
        parse_activation(require(header, "bottleneck_activation").get<std::string>());

    Lexicon lex = detail::lexicon_from_json(require(doc, "lexicon"));
    const std::uint64_t fingerprint = detail::u64_from_json(require(header, "lexicon_fingerprint"));
    if (fingerprint != lex.fingerprint()) {
      throw ParseError("autoencoder header fingerprint does not match its lexicon");
    }
    AutoencoderModel model = AutoencoderModel::from_parts(
        detail::network_from_json(require(doc, "network")), config, fingerprint,
        detail::u64_from_json(require(header, "seed")));
    if (require(header, "bottleneck_index").get<std::size_t>() != model.bottleneck_index()) {
      throw ParseError("bottleneck index does not match depth");
    }
    if (const auto& t = require(header, "training"); !t.is_null()) {
      model.trained_with = detail::train_config_from_json(t);
    }
    if (const auto& l = require(header, "final_loss"); !l.is_null()) {
      model.final_loss = l.get<double>();
    }
    model.oversampled = require(header, "oversampled").get<bool>();
    model.check_binding(lex);
    return {std::move(model), std::move(lex)};
  } catch (const detail::json::exception& e) {
    throw ParseError(std::string("autoencoder file: ") + e.what());
  } catch (const ConfigError& e) {
    throw ParseError(std::string("autoencoder file: ") + e.what());
  }
}

}  // namespace wordsim
