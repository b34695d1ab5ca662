#include "wordsim/network.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <string>
#include <thread>

#include "wordsim/error.hpp"

namespace wordsim {

namespace {

using MatrixXld = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
using VectorXld = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

template <typename Vec>
bool mostly_zero(const Vec& v) {
  Eigen::Index nnz = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) nnz += v[i] != 0;
  return nnz * 4 < v.size();
}

// z = W a + b, skipping zero inputs when the input is sparse (one-hot words).
template <typename Mat, typename Vec>
Vec affine(const Mat& weights, const Vec& bias, const Vec& in) {
  if (!mostly_zero(in)) return weights * in + bias;
  Vec z = bias;
  for (Eigen::Index j = 0; j < in.size(); ++j) {
    if (in[j] != 0) z.noalias() += weights.col(j) * in[j];
  }
  return z;
}

template <typename Vec>
Vec apply_activation(Activation activation, const Vec& z) {
  using Scalar = typename Vec::Scalar;
  switch (activation) {
    case Activation::sigmoid:
      return z.unaryExpr([](Scalar v) { return Scalar(1) / (Scalar(1) + std::exp(-v)); });
    case Activation::tanh:
      return z.unaryExpr([](Scalar v) { return std::tanh(v); });
    case Activation::identity:
      return z;
    case Activation::softmax: {
      const Scalar top = z.maxCoeff();
      Vec e = (z.array() - top).exp().matrix();
      return e / e.sum();
    }
  }
  return z;
}

// Jacobian-transpose of the activation applied to the upstream gradient.
Eigen::VectorXd activation_backward(Activation activation, const Eigen::VectorXd& out,
                                    const Eigen::VectorXd& upstream) {
  switch (activation) {
    case Activation::sigmoid:
      return (upstream.array() * out.array() * (1.0 - out.array())).matrix();
    case Activation::tanh:
      return (upstream.array() * (1.0 - out.array().square())).matrix();
    case Activation::identity:
      return upstream;
    case Activation::softmax:
      return (out.array() * (upstream.array() - out.dot(upstream))).matrix();
  }
  return upstream;
}

bool all_finite(const Eigen::Ref<const Eigen::MatrixXd>& m) { return m.allFinite(); }

std::string shape_of(std::size_t rows, std::size_t cols) {
  return std::to_string(rows) + "x" + std::to_string(cols);
}

struct ExtendedLayer {
  MatrixXld weights;
  VectorXld bias;
  Activation activation;
};

std::vector<ExtendedLayer> extend(const Network& net) {
  std::vector<ExtendedLayer> out;
  for (const DenseLayer& layer : net.layers()) {
    out.push_back({layer.weights.cast<long double>(), layer.bias.cast<long double>(),
                   layer.activation});
  }
  return out;
}

long double extended_loss(const std::vector<ExtendedLayer>& layers, const VectorXld& x,
                          const VectorXld& target, Loss loss) {
  VectorXld a = x;
  for (const ExtendedLayer& layer : layers) {
    a = apply_activation(layer.activation, affine(layer.weights, layer.bias, a));
  }
  long double total = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (loss == Loss::cross_entropy) {
      if (target[i] != 0) total -= target[i] * std::log(std::max(a[i], static_cast<long double>(LDBL_MIN)));
    } else {
      const long double d = a[i] - target[i];
      total += d * d;
    }
  }
  return total;
}

void check_io_shapes(const Network& net, Eigen::Index x, Eigen::Index target) {
  if (static_cast<std::size_t>(x) != net.input_dim()) {
    throw ShapeError("input width " + std::to_string(x) + " does not match network input " +
                     std::to_string(net.input_dim()));
  }
  if (static_cast<std::size_t>(target) != net.output_dim()) {
    throw ShapeError("target width " + std::to_string(target) + " does not match network output " +
                     std::to_string(net.output_dim()));
  }
}

}  // namespace

Activation parse_activation(std::string_view name) {
  if (name == "sigmoid") return Activation::sigmoid;
  if (name == "tanh") return Activation::tanh;
  if (name == "identity") return Activation::identity;
  if (name == "softmax") return Activation::softmax;
  throw ConfigError("unknown activation '" + std::string(name) + "'");
}

std::string_view to_string(Activation activation) {
  switch (activation) {
    case Activation::sigmoid:
      return "sigmoid";
    case Activation::tanh:
      return "tanh";
    case Activation::identity:
      return "identity";
    case Activation::softmax:
      return "softmax";
  }
  return "?";
}

Network::Network(std::vector<DenseLayer> layers) : layers_(std::move(layers)) {
  if (layers_.empty()) throw ShapeError("network needs at least one layer");
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const DenseLayer& layer = layers_[i];
    if (static_cast<std::size_t>(layer.bias.size()) != layer.out_dim()) {
      throw ShapeError("layer " + std::to_string(i) + ": bias width " +
                       std::to_string(layer.bias.size()) + " vs weights " +
                       shape_of(layer.out_dim(), layer.in_dim()));
    }
    if (layer.out_dim() == 0 || layer.in_dim() == 0) {
      throw ShapeError("layer " + std::to_string(i) + " has a zero dimension");
    }
    if (i > 0 && layers_[i - 1].out_dim() != layer.in_dim()) {
      throw ShapeError("layer " + std::to_string(i) + " expects " + std::to_string(layer.in_dim()) +
                       " inputs but layer " + std::to_string(i - 1) + " produces " +
                       std::to_string(layers_[i - 1].out_dim()));
    }
  }
}

Network Network::glorot(std::span<const std::size_t> widths,
                        std::span<const Activation> activations, std::mt19937_64& rng) {
  if (widths.size() < 2 || activations.size() + 1 != widths.size()) {
    throw ShapeError("glorot: need one activation per layer and at least two widths");
  }
  std::vector<DenseLayer> layers;
  for (std::size_t i = 0; i + 1 < widths.size(); ++i) {
    const auto in = static_cast<Eigen::Index>(widths[i]);
    const auto out = static_cast<Eigen::Index>(widths[i + 1]);
    const double gain = activations[i] == Activation::sigmoid ? 4.0 : 1.0;
    const double limit = gain * std::sqrt(6.0 / static_cast<double>(in + out));
    std::uniform_real_distribution<double> dist(-limit, limit);
    DenseLayer layer;
    layer.weights.resize(out, in);
    // Fill row by row so the draw order is independent of Eigen's storage.
    for (Eigen::Index r = 0; r < out; ++r) {
      for (Eigen::Index c = 0; c < in; ++c) layer.weights(r, c) = dist(rng);
    }
    layer.bias = Eigen::VectorXd::Zero(out);
    layer.activation = activations[i];
    layers.push_back(std::move(layer));
  }
  return Network(std::move(layers));
}

std::vector<std::size_t> Network::topology() const {
  std::vector<std::size_t> widths;
  if (layers_.empty()) return widths;
  widths.push_back(layers_.front().in_dim());
  for (const DenseLayer& layer : layers_) widths.push_back(layer.out_dim());
  return widths;
}

std::size_t Network::input_dim() const {
  if (layers_.empty()) throw ShapeError("empty network");
  return layers_.front().in_dim();
}

std::size_t Network::output_dim() const {
  if (layers_.empty()) throw ShapeError("empty network");
  return layers_.back().out_dim();
}

std::size_t Network::parameter_count() const {
  std::size_t total = 0;
  for (const DenseLayer& layer : layers_) total += layer.out_dim() * (layer.in_dim() + 1);
  return total;
}

void Network::check_finite() const {
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    if (!all_finite(layers_[i].weights) || !all_finite(layers_[i].bias)) {
      throw NumericError("non-finite parameter in layer " + std::to_string(i));
    }
  }
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

Eigen::VectorXd softmax(const Eigen::Ref<const Eigen::VectorXd>& z) {
  if (!z.allFinite()) throw NumericError("softmax input is not finite");
  if (z.size() == 0) throw ShapeError("softmax of an empty vector");
  return apply_activation(Activation::softmax, Eigen::VectorXd(z));
}

Eigen::VectorXd activate(Activation activation, const Eigen::Ref<const Eigen::VectorXd>& z) {
  if (activation == Activation::softmax) return softmax(z);
  return apply_activation(activation, Eigen::VectorXd(z));
}

std::vector<Eigen::VectorXd> forward(const Network& net,
                                     const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (static_cast<std::size_t>(x.size()) != net.input_dim()) {
    throw ShapeError("input width " + std::to_string(x.size()) + " does not match network input " +
                     std::to_string(net.input_dim()));
  }
  std::vector<Eigen::VectorXd> activations;
  activations.reserve(net.depth());
  Eigen::VectorXd a = x;
  for (const DenseLayer& layer : net.layers()) {
    Eigen::VectorXd z = affine(layer.weights, layer.bias, a);
    if (!z.allFinite()) throw NumericError("non-finite pre-activation in forward pass");
    a = apply_activation(layer.activation, z);
    activations.push_back(a);
  }
  if (!a.allFinite()) throw NumericError("non-finite network output");
  return activations;
}

double loss_value(const Eigen::Ref<const Eigen::VectorXd>& output,
                  const Eigen::Ref<const Eigen::VectorXd>& target, Loss loss) {
  if (output.size() != target.size()) throw ShapeError("output and target widths differ");
  double total = 0.0;
  if (loss == Loss::cross_entropy) {
    for (Eigen::Index i = 0; i < output.size(); ++i) {
      if (target[i] != 0.0) total -= target[i] * std::log(std::max(output[i], DBL_MIN));
    }
  } else {
    total = (output - target).squaredNorm();
  }
  return total;
}

Gradients Gradients::zeros_like(const Network& net) {
  Gradients g;
  for (const DenseLayer& layer : net.layers()) {
    g.weights.push_back(Eigen::MatrixXd::Zero(layer.weights.rows(), layer.weights.cols()));
    g.biases.push_back(Eigen::VectorXd::Zero(layer.bias.size()));
  }
  return g;
}

Gradients& Gradients::operator+=(const Gradients& other) {
  if (other.weights.size() != weights.size()) throw ShapeError("gradient layer counts differ");
  for (std::size_t i = 0; i < weights.size(); ++i) {
    weights[i] += other.weights[i];
    biases[i] += other.biases[i];
  }
  return *this;
}

Gradients& Gradients::operator*=(double factor) {
  for (std::size_t i = 0; i < weights.size(); ++i) {
    weights[i] *= factor;
    biases[i] *= factor;
  }
  input *= factor;
  return *this;
}

void Gradients::set_zero() {
  for (std::size_t i = 0; i < weights.size(); ++i) {
    weights[i].setZero();
    biases[i].setZero();
  }
  input.setZero();
}

double backward_accumulate(const Network& net, const Eigen::Ref<const Eigen::VectorXd>& x,
                           const Eigen::Ref<const Eigen::VectorXd>& target, Loss loss,
                           Gradients& acc, Eigen::VectorXd* input_gradient) {
  check_io_shapes(net, x.size(), target.size());
  if (acc.weights.size() != net.depth()) throw ShapeError("gradient accumulator shape mismatch");

  const Eigen::VectorXd input = x;
  const std::vector<Eigen::VectorXd> acts = forward(net, input);
  const auto& layers = net.layers();
  const std::size_t last = layers.size() - 1;
  const Eigen::VectorXd& out = acts.back();

  Eigen::VectorXd delta;
  if (loss == Loss::cross_entropy && layers[last].activation == Activation::softmax) {
    delta = out * target.sum() - target;
  } else {
    Eigen::VectorXd upstream(out.size());
    for (Eigen::Index i = 0; i < out.size(); ++i) {
      if (loss == Loss::squared_l2) {
        upstream[i] = 2.0 * (out[i] - target[i]);
      } else {
        upstream[i] = target[i] == 0.0 ? 0.0 : -target[i] / std::max(out[i], DBL_MIN);
      }
    }
    delta = activation_backward(layers[last].activation, out, upstream);
  }

  for (std::size_t l = layers.size(); l-- > 0;) {
    const Eigen::VectorXd& in = l == 0 ? input : acts[l - 1];
    if (mostly_zero(in)) {
      for (Eigen::Index j = 0; j < in.size(); ++j) {
        if (in[j] != 0.0) acc.weights[l].col(j).noalias() += delta * in[j];
      }
    } else {
      acc.weights[l].noalias() += delta * in.transpose();
    }
    acc.biases[l] += delta;
    if (l > 0) {
      Eigen::VectorXd upstream = layers[l].weights.transpose() * delta;
      delta = activation_backward(layers[l - 1].activation, acts[l - 1], upstream);
    } else if (input_gradient != nullptr) {
      *input_gradient = layers[0].weights.transpose() * delta;
    }
  }
  return loss_value(out, target, loss);
}

Gradients backward(const Network& net, const Eigen::Ref<const Eigen::VectorXd>& x,
                   const Eigen::Ref<const Eigen::VectorXd>& target, Loss loss) {
  Gradients g = Gradients::zeros_like(net);
  backward_accumulate(net, x, target, loss, g, &g.input);
  return g;
}

void sgd_step(Network& net, const Gradients& gradients, double learning_rate) {
  auto& layers = net.layers();
  if (gradients.weights.size() != layers.size() || gradients.biases.size() != layers.size()) {
    throw ShapeError("gradient layer count does not match network");
  }
  for (std::size_t i = 0; i < layers.size(); ++i) {
    if (gradients.weights[i].rows() != layers[i].weights.rows() ||
        gradients.weights[i].cols() != layers[i].weights.cols() ||
        gradients.biases[i].size() != layers[i].bias.size()) {
      throw ShapeError("gradient shape mismatch in layer " + std::to_string(i));
    }
  }
  for (std::size_t i = 0; i < layers.size(); ++i) {
    layers[i].weights.noalias() -= learning_rate * gradients.weights[i];
    layers[i].bias.noalias() -= learning_rate * gradients.biases[i];
  }
  net.check_finite();
}

double relative_error(double analytic, double numeric) {
  const double scale = std::max({std::abs(analytic), std::abs(numeric), 1e-12});
  return std::abs(analytic - numeric) / scale;
}

long double loss_extended(const Network& net, const Eigen::Ref<const Eigen::VectorXd>& x,
                          const Eigen::Ref<const Eigen::VectorXd>& target, Loss loss) {
  check_io_shapes(net, x.size(), target.size());
  return extended_loss(extend(net), x.cast<long double>(), target.cast<long double>(), loss);
}

double gradient_check(const Network& net, const Eigen::Ref<const Eigen::VectorXd>& x,
                      const Eigen::Ref<const Eigen::VectorXd>& target, Loss loss,
                      double epsilon) {
  return gradient_check(net, x, target, loss, epsilon, backward(net, x, target, loss));
}

double gradient_check(const Network& net, const Eigen::Ref<const Eigen::VectorXd>& x,
                      const Eigen::Ref<const Eigen::VectorXd>& target, Loss loss, double epsilon,
                      const Gradients& analytic) {
  if (!(epsilon > 0.0)) throw ConfigError("gradient_check epsilon must be positive");
  check_io_shapes(net, x.size(), target.size());
  if (analytic.weights.size() != net.depth()) throw ShapeError("gradient layer count mismatch");

  std::vector<ExtendedLayer> layers = extend(net);
  VectorXld xe = x.cast<long double>();
  const VectorXld te = target.cast<long double>();
  const long double step = epsilon;

  auto numeric = [&](long double& slot) {
    const long double saved = slot;
    slot = saved + step;
    const long double up = extended_loss(layers, xe, te, loss);
    slot = saved - step;
    const long double down = extended_loss(layers, xe, te, loss);
    slot = saved;
    return static_cast<double>((up - down) / (2 * step));
  };

  double worst = 0.0;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    for (Eigen::Index r = 0; r < layers[l].weights.rows(); ++r) {
      for (Eigen::Index c = 0; c < layers[l].weights.cols(); ++c) {
        worst = std::max(worst, relative_error(analytic.weights[l](r, c),
                                               numeric(layers[l].weights(r, c))));
      }
      worst = std::max(worst, relative_error(analytic.biases[l][r], numeric(layers[l].bias[r])));
    }
  }
  if (analytic.input.size() == x.size()) {
    for (Eigen::Index i = 0; i < xe.size(); ++i) {
      worst = std::max(worst, relative_error(analytic.input[i], numeric(xe[i])));
    }
  }
  return worst;
}

void TrainConfig::validate() const {
  if (batch_size == 0) throw ConfigError("batch size must be at least 1");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw ConfigError("learning rate must be positive and finite");
  }
  if (epochs == 0) throw ConfigError("epochs must be at least 1");
  if (threads == 0) throw ConfigError("threads must be at least 1");
}

std::string_view to_string(BatchReduction reduction) {
  return reduction == BatchReduction::sum ? "sum" : "mean";
}

BatchReduction parse_batch_reduction(std::string_view name) {
  if (name == "sum") return BatchReduction::sum;
  if (name == "mean") return BatchReduction::mean;
  throw ConfigError("unknown batch reduction '" + std::string(name) + "' (expected sum or mean)");
}

BatchResult batch_backward(const Network& net, std::size_t count, const ExampleSource& source,
                           Loss loss, std::size_t threads, bool keep_input_gradients) {
  BatchResult result;
  result.sum = Gradients::zeros_like(net);
  if (keep_input_gradients) result.input_gradients.resize(count);
  if (count == 0) return result;

  const std::size_t workers = std::clamp<std::size_t>(threads, 1, count);
  std::vector<Gradients> partial(workers);
  std::vector<double> partial_loss(workers, 0.0);
  std::vector<std::exception_ptr> failures(workers);

  auto run_chunk = [&](std::size_t w) {
    try {
      const std::size_t begin = count * w / workers;
      const std::size_t end = count * (w + 1) / workers;
      Gradients& acc = w == 0 ? result.sum : partial[w];
      if (w != 0) acc = Gradients::zeros_like(net);
      Eigen::VectorXd input, target;
      for (std::size_t i = begin; i < end; ++i) {
        source(i, input, target);
        partial_loss[w] += backward_accumulate(
            net, input, target, loss, acc,
            keep_input_gradients ? &result.input_gradients[i] : nullptr);
      }
    } catch (...) {
      failures[w] = std::current_exception();
    }
  };

  if (workers == 1) {
    run_chunk(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run_chunk, w);
    run_chunk(0);
  }
  for (auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  for (std::size_t w = 1; w < workers; ++w) result.sum += partial[w];
  for (double l : partial_loss) result.loss_sum += l;
  return result;
}

}  // namespace wordsim
