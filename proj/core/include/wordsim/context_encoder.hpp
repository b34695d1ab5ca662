#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "wordsim/autoencoder.hpp"
#include "wordsim/lexicon.hpp"
#include "wordsim/network.hpp"
#include "wordsim/vector_space.hpp"

namespace wordsim {

// Fills context slots before the start of a sentence.
inline constexpr WordId kPaddingToken = std::numeric_limits<WordId>::max();

enum class WindowPolicy {
  // Missing history is filled with kPaddingToken.
  pad,
  // Positions without a full window of history are not trained on.
  skip,
};

WindowPolicy parse_window_policy(std::string_view name);

struct ContextConfig {
  std::size_t window = 4;
  std::size_t embed_dim = 11;
  std::size_t hidden = 64;
  Activation hidden_activation = Activation::sigmoid;
  WindowPolicy policy = WindowPolicy::pad;
};

// Feed-forward next-word model: the embeddings of the `window` previous
// words, oldest first, are concatenated and fed to one hidden layer and a
// softmax over the vocabulary.
class ContextModel {
 public:
  static ContextModel build(const Lexicon& lex, const ContextConfig& config, std::uint64_t seed);

  const ContextConfig& config() const noexcept { return config_; }
  const EmbeddingMatrix& embeddings() const noexcept { return embeddings_; }
  EmbeddingMatrix& embeddings() noexcept { return embeddings_; }
  const Eigen::VectorXd& padding_embedding() const noexcept { return padding_; }
  Eigen::VectorXd& padding_embedding() noexcept { return padding_; }
  const Network& predictor() const noexcept { return predictor_; }
  Network& predictor() noexcept { return predictor_; }
  std::uint64_t seed() const noexcept { return seed_; }

  // Concatenated embeddings x. Throws ShapeError for a wrong context length
  // and IndexError for unknown ids.
  Eigen::VectorXd features(std::span<const WordId> context) const;
  // P(next word | context), a probability vector over the lexicon.
  Eigen::VectorXd context_prob(std::span<const WordId> context) const;

 private:
  ContextModel() = default;

  ContextConfig config_;
  EmbeddingMatrix embeddings_;
  Eigen::VectorXd padding_;
  Network predictor_;
  std::uint64_t seed_ = 0;
};

// Training positions flattened: example i has context
// contexts[i*window .. (i+1)*window) and target targets[i].
struct ContextExamples {
  std::size_t window = 0;
  std::vector<WordId> contexts;
  std::vector<WordId> targets;

  std::size_t size() const noexcept { return targets.size(); }
  std::span<const WordId> context(std::size_t i) const {
    return {contexts.data() + i * window, window};
  }
};

ContextExamples context_examples(const Corpus& corpus, std::size_t window, WindowPolicy policy);

class ContextTrainer {
 public:
  // Throws DataError if the corpus yields no training positions.
  ContextTrainer(ContextModel& model, const Corpus& corpus, const TrainConfig& config);

  // One SGD pass updating the predictor and the embedding rows of every
  // context word seen. Returns the epoch's mean log-likelihood.
  double run_epoch();

 private:
  ContextModel& model_;
  TrainConfig config_;
  ContextExamples examples_;
  std::vector<std::size_t> order_;
  std::mt19937_64 rng_;
};

struct ContextTrace {
  std::vector<double> mean_log_likelihood;
};

ContextTrace train_context(ContextModel& model, const Corpus& corpus, const TrainConfig& config);

// (1/T) sum_t log P(a_t | context) under the current parameters.
double mean_log_likelihood(const ContextModel& model, const Corpus& corpus);

// Finite-difference check of the cross-entropy gradient for one position,
// covering the predictor parameters and every embedding row in the context.
double context_gradient_check(const ContextModel& model, std::span<const WordId> context,
                              WordId target, double epsilon = 1e-5);

struct CombinedConfig {
  std::size_t rounds = 10;
  // Weight of the autoencoder code in U[w] <- (1 - blend) U[w] + blend h(w).
  double blend = 0.5;
  std::size_t context_epochs_per_round = 1;
  std::size_t autoencoder_epochs_per_round = 1;

  void validate() const;
};

// Alternates per round: context epochs, autoencoder epochs, then pulls every
// row of U towards the word's autoencoder code. Returns the final U.
EmbeddingMatrix train_combined(ContextModel& context, AutoencoderModel& autoencoder,
                               const Lexicon& lex, const Corpus& corpus,
                               const TrainConfig& context_training,
                               const TrainConfig& autoencoder_training,
                               const CombinedConfig& combined);

double distance_dc(const EmbeddingMatrix& embedding, WordId a, WordId b, VectorMetric metric);

struct EmbeddingMetadata {
  std::string source;  // "context", "combined" or "autoencoder"
  std::size_t window = 0;
  double blend = 0.0;
  std::size_t rounds = 0;
  std::uint64_t context_seed = 0;
  std::uint64_t autoencoder_seed = 0;
};

inline constexpr int kEmbeddingFormatVersion = 1;

std::string serialize_embedding(const EmbeddingMatrix& embedding, const Lexicon& lex,
                                const EmbeddingMetadata& metadata);

struct LoadedEmbedding {
  EmbeddingMatrix embedding;
  Lexicon lexicon;
  EmbeddingMetadata metadata;
};

LoadedEmbedding parse_embedding(std::string_view json_text);

// `word<TAB>v1<TAB>...<TAB>vn` per row.
std::string embedding_to_tsv(const EmbeddingMatrix& embedding, const Lexicon& lex);

}  // namespace wordsim
