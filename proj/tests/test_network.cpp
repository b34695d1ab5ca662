#include <doctest.h>

#include <cmath>
#include <random>

#include "wordsim/error.hpp"
#include "wordsim/network.hpp"
#include "wordsim/network_io.hpp"

using namespace wordsim;

namespace {

Network random_net(std::vector<std::size_t> widths, std::vector<Activation> acts, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Network net = Network::glorot(widths, acts, rng);
  // Non-zero biases so their gradients are exercised too.
  std::normal_distribution<double> g(0.0, 0.3);
  for (auto& layer : net.layers()) {
    for (Eigen::Index i = 0; i < layer.bias.size(); ++i) layer.bias[i] = g(rng);
  }
  return net;
}

Eigen::VectorXd random_vec(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = g(rng);
  return v;
}

Eigen::VectorXd one_hot(Eigen::Index n, Eigen::Index i) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  v[i] = 1.0;
  return v;
}

DenseLayer layer(Eigen::MatrixXd w, Eigen::VectorXd b, Activation a) {
  DenseLayer l;
  l.weights = std::move(w);
  l.bias = std::move(b);
  l.activation = a;
  return l;
}

}  // namespace

TEST_CASE("forward basics") {
  SUBCASE("identity layer with W = I is the identity map") {
    Network net({layer(Eigen::MatrixXd::Identity(3, 3), Eigen::VectorXd::Zero(3), Activation::identity)});
    Eigen::VectorXd x(3);
    x << 1.5, -2, 0.25;
    CHECK(forward(net, x).back() == x);
  }
  SUBCASE("softmax on zero logits is uniform") {
    Network net({layer(Eigen::MatrixXd::Zero(4, 2), Eigen::VectorXd::Zero(4), Activation::softmax)});
    const Eigen::VectorXd y = forward(net, Eigen::VectorXd::Ones(2)).back();
    for (Eigen::Index i = 0; i < 4; ++i) CHECK(y[i] == doctest::Approx(0.25));
  }
  SUBCASE("sigmoid of zero is one half") {
    Network net({layer(Eigen::MatrixXd::Zero(2, 2), Eigen::VectorXd::Zero(2), Activation::sigmoid)});
    const Eigen::VectorXd y = forward(net, Eigen::VectorXd::Ones(2)).back();
    CHECK(y[0] == 0.5);
    CHECK(y[1] == 0.5);
  }
  SUBCASE("every layer's activation is returned") {
    Network net = random_net({5, 4, 3}, {Activation::sigmoid, Activation::softmax}, 1);
    const auto acts = forward(net, Eigen::VectorXd::Ones(5));
    REQUIRE(acts.size() == 2);
    CHECK(acts[0].size() == 4);
    CHECK(acts[1].size() == 3);
  }
}

TEST_CASE("forward errors") {
  Network net = random_net({3, 2}, {Activation::sigmoid}, 1);
  CHECK_THROWS_AS(forward(net, Eigen::VectorXd::Ones(4)), ShapeError);
  Eigen::VectorXd bad = Eigen::VectorXd::Ones(3);
  bad[1] = std::nan("");
  CHECK_THROWS_AS(forward(net, bad), NumericError);
  CHECK_THROWS_AS(Network(std::vector<DenseLayer>{}), ShapeError);
  CHECK_THROWS_AS(Network({layer(Eigen::MatrixXd::Zero(2, 3), Eigen::VectorXd::Zero(2), Activation::sigmoid),
                           layer(Eigen::MatrixXd::Zero(2, 3), Eigen::VectorXd::Zero(2), Activation::sigmoid)}),
                  ShapeError);
  CHECK_THROWS_AS(Network({layer(Eigen::MatrixXd::Zero(2, 3), Eigen::VectorXd::Zero(3), Activation::sigmoid)}),
                  ShapeError);
}

TEST_CASE("topology and parameter count") {
  Network net = random_net({6, 5, 4}, {Activation::sigmoid, Activation::softmax}, 2);
  CHECK(net.topology() == std::vector<std::size_t>{6, 5, 4});
  CHECK(net.parameter_count() == 6 * 5 + 5 + 5 * 4 + 4);
  CHECK(net.input_dim() == 6);
  CHECK(net.output_dim() == 4);
}

TEST_CASE("softmax") {
  Eigen::VectorXd z(3);
  z << 0, 0, 0;
  const Eigen::VectorXd u = softmax(z);
  for (Eigen::Index i = 0; i < 3; ++i) CHECK(u[i] == doctest::Approx(1.0 / 3.0));

  Eigen::VectorXd big(2);
  big << 1000, 0;
  const Eigen::VectorXd s = softmax(big);
  CHECK(std::isfinite(s[0]));
  CHECK(s[0] == doctest::Approx(1.0));
  CHECK(s[1] < 1e-300);

  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    const Eigen::VectorXd v = random_vec(7, rng) * 20.0;
    const Eigen::VectorXd p = softmax(v);
    const Eigen::VectorXd q = softmax((v.array() + 123.5).matrix());
    REQUIRE(std::abs(p.sum() - 1.0) < 1e-12);
    REQUIRE((p.array() > 0.0).all());
    REQUIRE((p - q).cwiseAbs().maxCoeff() < 1e-12);
  }

  Eigen::VectorXd inf(2);
  inf << 1.0, INFINITY;
  CHECK_THROWS_AS(softmax(inf), NumericError);
}

TEST_CASE("activation names") {
  CHECK(parse_activation("sigmoid") == Activation::sigmoid);
  CHECK(parse_activation("tanh") == Activation::tanh);
  CHECK(parse_activation("identity") == Activation::identity);
  CHECK(parse_activation("softmax") == Activation::softmax);
  CHECK(to_string(Activation::tanh) == "tanh");
  CHECK_THROWS_AS(parse_activation("relu6"), ConfigError);
}

TEST_CASE("losses") {
  Eigen::VectorXd out(2), t(2);
  out << 0.25, 0.75;
  t << 0, 1;
  CHECK(loss_value(out, t, Loss::cross_entropy) == doctest::Approx(-std::log(0.75)));
  CHECK(loss_value(out, t, Loss::squared_l2) == doctest::Approx(0.125));
}

TEST_CASE("backward: zero-loss configuration has zero gradients") {
  Network net({layer(Eigen::MatrixXd::Identity(2, 2), Eigen::VectorXd::Zero(2), Activation::identity)});
  Eigen::VectorXd x(2);
  x << 0.3, -0.7;
  const Gradients g = backward(net, x, x, Loss::squared_l2);
  CHECK(g.weights[0].cwiseAbs().maxCoeff() == 0.0);
  CHECK(g.biases[0].cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("backward: single softmax layer gradient is (p - t) x^T") {
  std::mt19937_64 rng(5);
  Network net = random_net({4, 3}, {Activation::softmax}, 5);
  const Eigen::VectorXd x = random_vec(4, rng);
  const Eigen::VectorXd t = one_hot(3, 1);
  const Eigen::VectorXd p = forward(net, x).back();
  const Gradients g = backward(net, x, t, Loss::cross_entropy);
  const Eigen::MatrixXd expected = (p - t) * x.transpose();
  CHECK((g.weights[0] - expected).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((g.biases[0] - (p - t)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(gradient_check(net, x, t, Loss::cross_entropy) < 1e-6);
}

TEST_CASE("backward rejects mismatched targets") {
  Network net = random_net({4, 3}, {Activation::softmax}, 5);
  CHECK_THROWS_AS(backward(net, Eigen::VectorXd::Ones(4), Eigen::VectorXd::Ones(2), Loss::cross_entropy),
                  ShapeError);
}

TEST_CASE("gradient check") {
  std::mt19937_64 rng(6);
  SUBCASE("linear net, squared L2") {
    Network net = random_net({3, 2}, {Activation::identity}, 6);
    const Eigen::VectorXd x = random_vec(3, rng), t = random_vec(2, rng);
    CHECK(gradient_check(net, x, t, Loss::squared_l2) < 1e-7);
  }
  SUBCASE("5-4-3 net, random input") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      Network net = random_net({5, 4, 3}, {Activation::sigmoid, Activation::softmax}, seed);
      const Eigen::VectorXd x = random_vec(5, rng);
      CHECK(gradient_check(net, x, one_hot(3, 2), Loss::cross_entropy) < 1e-4);
    }
  }
  SUBCASE("6-5-4 sigmoid net") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      Network net = random_net({6, 5, 4}, {Activation::sigmoid, Activation::sigmoid}, seed);
      const Eigen::VectorXd x = random_vec(6, rng), t = random_vec(4, rng);
      CHECK(gradient_check(net, x, t, Loss::squared_l2) < 1e-4);
    }
  }
  SUBCASE("tanh layers and one-hot input") {
    Network net = random_net({8, 5, 3, 8}, {Activation::tanh, Activation::identity, Activation::softmax}, 9);
    CHECK(gradient_check(net, one_hot(8, 3), one_hot(8, 6), Loss::cross_entropy) < 1e-4);
  }
  SUBCASE("a corrupted gradient is detected") {
    Network net = random_net({6, 5, 4}, {Activation::sigmoid, Activation::softmax}, 3);
    const Eigen::VectorXd x = random_vec(6, rng);
    Gradients g = backward(net, x, one_hot(4, 0), Loss::cross_entropy);
    g.weights[0](1, 2) *= 2.0;
    CHECK(gradient_check(net, x, one_hot(4, 0), Loss::cross_entropy, 1e-5, g) > 0.1);
  }
}

TEST_CASE("sgd step") {
  SUBCASE("lr = 0 leaves the network unchanged") {
    Network net = random_net({3, 2}, {Activation::sigmoid}, 1);
    const Network before = net;
    const Gradients g = backward(net, Eigen::VectorXd::Ones(3), Eigen::VectorXd::Zero(2), Loss::squared_l2);
    sgd_step(net, g, 0.0);
    CHECK(net.layers()[0].weights == before.layers()[0].weights);
    CHECK(net.layers()[0].bias == before.layers()[0].bias);
  }
  SUBCASE("loss p^2 at p = 1 with lr 0.1 moves p to 0.8") {
    Eigen::MatrixXd w(1, 1);
    w << 1.0;
    Network net({layer(w, Eigen::VectorXd::Zero(1), Activation::identity)});
    const Gradients g = backward(net, Eigen::VectorXd::Ones(1), Eigen::VectorXd::Zero(1), Loss::squared_l2);
    CHECK(g.weights[0](0, 0) == 2.0);
    sgd_step(net, g, 0.1);
    CHECK(net.layers()[0].weights(0, 0) == doctest::Approx(0.8).epsilon(1e-15));
  }
  SUBCASE("gradient descent on a convex quadratic decreases the loss monotonically") {
    Eigen::MatrixXd w(1, 2);
    w << 3.0, -2.0;
    Network net({layer(w, Eigen::VectorXd::Zero(1), Activation::identity)});
    Eigen::VectorXd x(2);
    x << 1.0, 0.5;
    const Eigen::VectorXd t = Eigen::VectorXd::Constant(1, 0.75);
    double previous = loss_value(forward(net, x).back(), t, Loss::squared_l2);
    for (int i = 0; i < 50; ++i) {
      sgd_step(net, backward(net, x, t, Loss::squared_l2), 0.05);
      const double now = loss_value(forward(net, x).back(), t, Loss::squared_l2);
      REQUIRE(now < previous);
      previous = now;
    }
  }
  SUBCASE("shape mismatch") {
    Network a = random_net({3, 2}, {Activation::sigmoid}, 1);
    Network b = random_net({3, 4}, {Activation::sigmoid}, 1);
    CHECK_THROWS_AS(sgd_step(a, Gradients::zeros_like(b), 0.1), ShapeError);
  }
  SUBCASE("non-finite update aborts") {
    Network net = random_net({3, 2}, {Activation::sigmoid}, 1);
    Gradients g = Gradients::zeros_like(net);
    g.weights[0](0, 0) = INFINITY;
    CHECK_THROWS_AS(sgd_step(net, g, 0.1), NumericError);
  }
}

TEST_CASE("train config validation") {
  TrainConfig c;
  c.validate();
  c.batch_size = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c.batch_size = 1;
  c.learning_rate = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  CHECK(parse_batch_reduction("mean") == BatchReduction::mean);
  CHECK(to_string(BatchReduction::sum) == "sum");
}

TEST_CASE("batch backward equals the sum of single backward passes, for any thread count") {
  Network net = random_net({6, 5, 4}, {Activation::sigmoid, Activation::softmax}, 8);
  std::mt19937_64 rng(8);
  std::vector<Eigen::VectorXd> xs;
  for (int i = 0; i < 10; ++i) xs.push_back(random_vec(6, rng));
  auto source = [&](std::size_t i, Eigen::VectorXd& in, Eigen::VectorXd& t) {
    in = xs[i];
    t = one_hot(4, static_cast<Eigen::Index>(i % 4));
  };
  Gradients expected = Gradients::zeros_like(net);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    expected += backward(net, xs[i], one_hot(4, static_cast<Eigen::Index>(i % 4)), Loss::cross_entropy);
  }
  const BatchResult one = batch_backward(net, xs.size(), source, Loss::cross_entropy, 1);
  const BatchResult three = batch_backward(net, xs.size(), source, Loss::cross_entropy, 3, true);
  const BatchResult again = batch_backward(net, xs.size(), source, Loss::cross_entropy, 3, true);
  for (std::size_t l = 0; l < net.depth(); ++l) {
    CHECK((one.sum.weights[l] - expected.weights[l]).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((three.sum.weights[l] - expected.weights[l]).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(three.sum.weights[l] == again.sum.weights[l]);
  }
  CHECK(three.input_gradients.size() == xs.size());
  CHECK(one.loss_sum == doctest::Approx(three.loss_sum));
}

TEST_CASE("linearly separable two-class problem reaches 100% within 500 epochs") {
  std::mt19937_64 rng(10);
  std::vector<Eigen::VectorXd> xs;
  std::vector<int> ys;
  std::normal_distribution<double> g;
  for (int i = 0; i < 40; ++i) {
    Eigen::VectorXd x(2);
    x << g(rng), g(rng);
    const int y = x[0] + 0.5 * x[1] > 0.1 ? 1 : 0;
    xs.push_back(x);
    ys.push_back(y);
  }
  Network net = random_net({2, 2}, {Activation::softmax}, 10);
  auto accuracy = [&] {
    int ok = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      Eigen::Index arg;
      forward(net, xs[i]).back().maxCoeff(&arg);
      ok += arg == ys[i];
    }
    return static_cast<double>(ok) / static_cast<double>(xs.size());
  };
  int epoch = 0;
  for (; epoch < 500 && accuracy() < 1.0; ++epoch) {
    auto source = [&](std::size_t i, Eigen::VectorXd& in, Eigen::VectorXd& t) {
      in = xs[i];
      t = one_hot(2, ys[i]);
    };
    sgd_step(net, batch_backward(net, xs.size(), source, Loss::cross_entropy, 1).sum, 0.5);
  }
  CHECK(accuracy() == 1.0);
  MESSAGE("separable toy converged after " << epoch << " epochs");
}

TEST_CASE("network serialization round-trips bit-exactly") {
  Network net = random_net({5, 4, 3}, {Activation::tanh, Activation::softmax}, 12);
  net.layers()[0].weights(0, 0) = 0.1 + 0.2;  // not representable in short decimal
  net.layers()[0].weights(1, 1) = 1e-310;     // subnormal
  const std::string text = serialize_network(net, 987654321987654321ULL);
  const LoadedNetwork loaded = parse_network(text);
  CHECK(loaded.seed == 987654321987654321ULL);
  REQUIRE(loaded.net.depth() == net.depth());
  for (std::size_t l = 0; l < net.depth(); ++l) {
    CHECK(loaded.net.layers()[l].weights == net.layers()[l].weights);
    CHECK(loaded.net.layers()[l].bias == net.layers()[l].bias);
    CHECK(loaded.net.layers()[l].activation == net.layers()[l].activation);
  }
  CHECK(serialize_network(loaded.net, loaded.seed) == text);
}

TEST_CASE("network parsing rejects bad documents") {
  CHECK_THROWS_AS(parse_network("not json"), ParseError);
  CHECK_THROWS_AS(parse_network(R"({"format":"wordsim.network","version":99})"), ParseError);
  CHECK_THROWS_AS(parse_network(R"({"format":"other","version":1})"), ParseError);
}
