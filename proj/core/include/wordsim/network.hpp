#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace wordsim {

enum class Activation { sigmoid, tanh, identity, softmax };

Activation parse_activation(std::string_view name);
std::string_view to_string(Activation activation);

struct DenseLayer {
  Eigen::MatrixXd weights;  // out_dim x in_dim
  Eigen::VectorXd bias;     // out_dim
  Activation activation = Activation::sigmoid;

  std::size_t in_dim() const noexcept { return static_cast<std::size_t>(weights.cols()); }
  std::size_t out_dim() const noexcept { return static_cast<std::size_t>(weights.rows()); }
};

// Stack of dense layers; layer i feeds layer i + 1.
class Network {
 public:
  Network() = default;
  // Throws ShapeError if the layers do not chain or the stack is empty.
  explicit Network(std::vector<DenseLayer> layers);

  // Glorot-uniform weights in +-sqrt(6 / (fan_in + fan_out)), four times
  // wider for sigmoid layers; zero biases.
  // `widths` has one more entry than `activations`.
  static Network glorot(std::span<const std::size_t> widths,
                        std::span<const Activation> activations, std::mt19937_64& rng);

  const std::vector<DenseLayer>& layers() const noexcept { return layers_; }
  std::vector<DenseLayer>& layers() noexcept { return layers_; }
  std::size_t depth() const noexcept { return layers_.size(); }

  // Layer widths, input first.
  std::vector<std::size_t> topology() const;
  std::size_t input_dim() const;
  std::size_t output_dim() const;
  std::size_t parameter_count() const;

  // Throws NumericError naming the first layer holding NaN/Inf.
  void check_finite() const;

 private:
  std::vector<DenseLayer> layers_;
};

// Stable softmax (max subtraction). Throws NumericError on non-finite input.
Eigen::VectorXd softmax(const Eigen::Ref<const Eigen::VectorXd>& z);
double sigmoid(double z);
Eigen::VectorXd activate(Activation activation, const Eigen::Ref<const Eigen::VectorXd>& z);

// Activations of every layer; back() is the network output. Throws
// ShapeError on dimension mismatch and NumericError on non-finite output.
std::vector<Eigen::VectorXd> forward(const Network& net,
                                     const Eigen::Ref<const Eigen::VectorXd>& x);

enum class Loss {
  // -sum t_i log p_i.
  cross_entropy,
  // sum (p_i - t_i)^2.
  squared_l2,
};

double loss_value(const Eigen::Ref<const Eigen::VectorXd>& output,
                  const Eigen::Ref<const Eigen::VectorXd>& target, Loss loss);

struct Gradients {
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;
  // dLoss/dInput; filled by backward(), left empty by batch accumulation.
  Eigen::VectorXd input;

  static Gradients zeros_like(const Network& net);
  Gradients& operator+=(const Gradients& other);
  Gradients& operator*=(double factor);
  void set_zero();
};

// Exact gradients of `loss` at (x, target).
Gradients backward(const Network& net, const Eigen::Ref<const Eigen::VectorXd>& x,
                   const Eigen::Ref<const Eigen::VectorXd>& target, Loss loss);

// Adds parameter gradients into `acc` and returns the example loss. When
// `input_gradient` is non-null it receives dLoss/dInput.
double backward_accumulate(const Network& net, const Eigen::Ref<const Eigen::VectorXd>& x,
                           const Eigen::Ref<const Eigen::VectorXd>& target, Loss loss,
                           Gradients& acc, Eigen::VectorXd* input_gradient = nullptr);

// p <- p - learning_rate * g for every parameter, then checks finiteness.
void sgd_step(Network& net, const Gradients& gradients, double learning_rate);

// Max over parameters (and inputs) of |analytic - numeric| /
// max(|analytic|, |numeric|, 1e-12) with central differences of step
// `epsilon`. The perturbed losses are evaluated in extended precision.
double gradient_check(const Network& net, const Eigen::Ref<const Eigen::VectorXd>& x,
                      const Eigen::Ref<const Eigen::VectorXd>& target, Loss loss,
                      double epsilon = 1e-5);
// Checks a caller-supplied gradient instead of backward()'s.
double gradient_check(const Network& net, const Eigen::Ref<const Eigen::VectorXd>& x,
                      const Eigen::Ref<const Eigen::VectorXd>& target, Loss loss,
                      double epsilon, const Gradients& analytic);

double relative_error(double analytic, double numeric);

// Extended-precision loss, used by the finite-difference checks.
long double loss_extended(const Network& net, const Eigen::Ref<const Eigen::VectorXd>& x,
                          const Eigen::Ref<const Eigen::VectorXd>& target, Loss loss);

enum class BatchReduction { sum, mean };

struct TrainConfig {
  std::size_t batch_size = 100;
  double learning_rate = 0.01;
  std::size_t epochs = 100;
  std::uint64_t seed = 1;
  bool shuffle = true;
  BatchReduction reduction = BatchReduction::sum;
  std::size_t threads = 1;

  // Throws ConfigError.
  void validate() const;
};

std::string_view to_string(BatchReduction reduction);
BatchReduction parse_batch_reduction(std::string_view name);

// Fills the input and target of example `index`.
using ExampleSource =
    std::function<void(std::size_t index, Eigen::VectorXd& input, Eigen::VectorXd& target)>;

struct BatchResult {
  Gradients sum;
  // Per-example dLoss/dInput, only when requested.
  std::vector<Eigen::VectorXd> input_gradients;
  double loss_sum = 0.0;
};

// Backward passes over examples [0, count), using up to `threads` workers on
// contiguous chunks. Chunk sums are folded in chunk order, so the result is
// deterministic for a fixed thread count.
BatchResult batch_backward(const Network& net, std::size_t count,
                           const ExampleSource& source, Loss loss, std::size_t threads,
                           bool keep_input_gradients = false);

}  // namespace wordsim
