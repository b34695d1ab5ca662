#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "wordsim/lexicon.hpp"
#include "wordsim/network.hpp"
#include "wordsim/vector_space.hpp"

namespace wordsim {

struct AutoencoderConfig {
  std::size_t code_size = 11;
  // Number of node layers including input and output; odd, so the
  // bottleneck sits in the middle. depth 3 is |A| - code - |A|.
  std::size_t depth = 7;
  Activation hidden_activation = Activation::sigmoid;
  Activation bottleneck_activation = Activation::sigmoid;
};

// Bottleneck activation h(v(w)) of one word.
struct CodeVector {
  Eigen::VectorXd values;

  std::size_t width() const noexcept { return static_cast<std::size_t>(values.size()); }
};

// Hourglass network over one-hot word encodings with a softmax
// reconstruction layer over |A|.
class AutoencoderModel {
 public:
  // Throws ConfigError when code_size >= |A|, the depth is even or < 3.
  static AutoencoderModel build(const Lexicon& lex, const AutoencoderConfig& config,
                                std::uint64_t seed);

  // Reassembles a model from parts; validates the topology against config.
  static AutoencoderModel from_parts(Network net, const AutoencoderConfig& config,
                                     std::uint64_t lexicon_fingerprint, std::uint64_t seed);

  const Network& network() const noexcept { return net_; }
  Network& network() noexcept { return net_; }
  const AutoencoderConfig& config() const noexcept { return config_; }
  std::size_t code_size() const noexcept { return config_.code_size; }
  std::size_t depth() const noexcept { return config_.depth; }
  // Index into network().layers() of the layer whose output is the code.
  std::size_t bottleneck_index() const noexcept { return (config_.depth - 1) / 2 - 1; }
  std::uint64_t lexicon_fingerprint() const noexcept { return fingerprint_; }
  std::uint64_t seed() const noexcept { return seed_; }

  void check_binding(const Lexicon& lex) const;

  CodeVector encode(const Lexicon& lex, WordId word) const;
  // Softmax reconstruction distribution for the one-hot input of `word`.
  Eigen::VectorXd reconstruct(const Lexicon& lex, WordId word) const;
  // Code of every word, row = word id.
  EmbeddingMatrix code_table(const Lexicon& lex) const;

  // Provenance recorded in the model file.
  std::optional<TrainConfig> trained_with;
  std::optional<double> final_loss;
  bool oversampled = false;

 private:
  AutoencoderModel() = default;
  Eigen::VectorXd bottleneck_of(WordId word) const;

  Network net_;
  AutoencoderConfig config_;
  std::uint64_t fingerprint_ = 0;
  std::uint64_t seed_ = 0;
};

// Geometric interpolation from |A| down to the code size and back.
std::vector<std::size_t> hourglass_widths(std::size_t vocabulary_size, std::size_t code_size,
                                          std::size_t depth);

AutoencoderModel build_autoencoder(const Lexicon& lex, std::size_t code_size, std::size_t depth,
                                   std::uint64_t seed);

struct AutoencoderExample {
  WordId input = 0;
  WordId target = 0;
};

// (m, standard_of(m)) for every non-standard word plus (c, c) for every
// standard word. With `oversample`, each standard word's examples are
// repeated until all standard words have the same count.
std::vector<AutoencoderExample> autoencoder_examples(const Lexicon& lex, bool oversample = false);

// Runs epochs one at a time; owns the shuffle RNG so that interleaving with
// other trainers does not perturb the sequence.
class AutoencoderTrainer {
 public:
  AutoencoderTrainer(AutoencoderModel& model, const Lexicon& lex, const TrainConfig& config,
                     bool oversample = false);

  // Mean cross-entropy over the epoch's examples.
  double run_epoch();

 private:
  AutoencoderModel& model_;
  const Lexicon& lex_;
  TrainConfig config_;
  std::vector<AutoencoderExample> examples_;
  std::mt19937_64 rng_;
};

struct TrainTrace {
  std::vector<double> epoch_loss;
};

// Cross-entropy training towards the standard word. Throws ConfigError when
// there is nothing to train on and NumericError on NaN/Inf.
TrainTrace train_autoencoder(AutoencoderModel& model, const Lexicon& lex,
                             const TrainConfig& config, bool oversample = false);

// Mean cross-entropy of the current model over the training examples.
double autoencoder_loss(const AutoencoderModel& model, const Lexicon& lex);

double distance_da(const AutoencoderModel& model, const Lexicon& lex, WordId a, WordId b,
                   VectorMetric metric);

std::vector<Neighbor> nearest_standard(const AutoencoderModel& model, const Lexicon& lex,
                                       WordId query, std::size_t k, VectorMetric metric);

inline constexpr int kAutoencoderFormatVersion = 1;

// The model file embeds the network container, the header fields and the
// lexicon it is bound to.
std::string serialize_autoencoder(const AutoencoderModel& model, const Lexicon& lex);

struct LoadedAutoencoder {
  AutoencoderModel model;
  Lexicon lexicon;
};

LoadedAutoencoder parse_autoencoder(std::string_view json_text);

}  // namespace wordsim
