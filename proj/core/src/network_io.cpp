#include "wordsim/network_io.hpp"

#include <charconv>

#include "json_support.hpp"

namespace wordsim {

namespace detail {

json parse_json(std::string_view text, std::string_view what) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

const json& require(const json& object, std::string_view key) {
  if (!object.is_object()) throw ParseError("expected a JSON object around '" + std::string(key) + "'");
  auto it = object.find(key);
  if (it == object.end()) throw ParseError("missing field '" + std::string(key) + "'");
  return *it;
}

void check_header(const json& doc, std::string_view format, int max_version) {
  try {
    if (require(doc, "format").get<std::string>() != format) {
      throw ParseError("not a " + std::string(format) + " document");
    }
    const int version = require(doc, "version").get<int>();
    if (version < 1 || version > max_version) {
      throw ParseError("unsupported " + std::string(format) + " version " + std::to_string(version));
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string(format) + " header: " + e.what());
  }
}

json network_to_json(const Network& net) {
  json layers = json::array();
  for (const DenseLayer& layer : net.layers()) {
    std::vector<double> weights;
    weights.reserve(layer.out_dim() * layer.in_dim());
    for (Eigen::Index r = 0; r < layer.weights.rows(); ++r) {
      for (Eigen::Index c = 0; c < layer.weights.cols(); ++c) weights.push_back(layer.weights(r, c));
    }
    layers.push_back({
        {"activation", std::string(to_string(layer.activation))},
        {"in", layer.in_dim()},
        {"out", layer.out_dim()},
        {"weights", weights},
        {"bias", std::vector<double>(layer.bias.data(), layer.bias.data() + layer.bias.size())},
    });
  }
  return {{"topology", net.topology()}, {"layers", layers}};
}

Network network_from_json(const json& doc) {
  try {
    std::vector<DenseLayer> layers;
    for (const json& entry : require(doc, "layers")) {
      const auto in = require(entry, "in").get<Eigen::Index>();
      const auto out = require(entry, "out").get<Eigen::Index>();
      const auto weights = require(entry, "weights").get<std::vector<double>>();
      const auto bias = require(entry, "bias").get<std::vector<double>>();
      if (static_cast<Eigen::Index>(weights.size()) != in * out ||
          static_cast<Eigen::Index>(bias.size()) != out) {
        throw ParseError("layer arrays do not match declared shape");
      }
      DenseLayer layer;
      layer.activation = parse_activation(require(entry, "activation").get<std::string>());
      layer.weights.resize(out, in);
      for (Eigen::Index r = 0; r < out; ++r) {
        for (Eigen::Index c = 0; c < in; ++c) {
          layer.weights(r, c) = weights[static_cast<std::size_t>(r * in + c)];
        }
      }
      layer.bias = Eigen::Map<const Eigen::VectorXd>(bias.data(), out);
      layers.push_back(std::move(layer));
    }
    Network net(std::move(layers));
    if (require(doc, "topology").get<std::vector<std::size_t>>() != net.topology()) {
      throw ParseError("topology signature does not match layers");
    }
    return net;
  } catch (const json::exception& e) {
    throw ParseError(std::string("network container: ") + e.what());
  } catch (const ShapeError& e) {
    throw ParseError(std::string("network container: ") + e.what());
  } catch (const ConfigError& e) {
    throw ParseError(std::string("network container: ") + e.what());
  }
}

json lexicon_to_json(const Lexicon& lex) {
  json words = json::array();
  json standard_of = json::array();
  for (WordId id = 0; id < lex.size(); ++id) {
    words.push_back(lex.word(id));
    if (auto s = lex.standard_of(id)) {
      standard_of.push_back(*s);
    } else {
      standard_of.push_back(nullptr);
    }
  }
  return {{"case_fold", lex.options().case_fold},
          {"fingerprint", u64_to_string(lex.fingerprint())},
          {"words", words},
          {"standard_of", standard_of}};
}

Lexicon lexicon_from_json(const json& doc) {
  try {
    auto words = require(doc, "words").get<std::vector<std::string>>();
    std::vector<std::optional<WordId>> standard_of;
    for (const json& s : require(doc, "standard_of")) {
      if (s.is_null()) {
        standard_of.emplace_back();
      } else {
        standard_of.emplace_back(s.get<WordId>());
      }
    }
    LexiconOptions options;
    options.case_fold = require(doc, "case_fold").get<bool>();
    Lexicon lex = Lexicon::from_parts(std::move(words), standard_of, options);
    if (u64_from_json(require(doc, "fingerprint")) != lex.fingerprint()) {
      throw ParseError("embedded lexicon fingerprint does not match its contents");
    }
    return lex;
  } catch (const json::exception& e) {
    throw ParseError(std::string("embedded lexicon: ") + e.what());
  }
}

json train_config_to_json(const TrainConfig& config) {
  return {{"batch_size", config.batch_size},
          {"learning_rate", config.learning_rate},
          {"epochs", config.epochs},
          {"seed", u64_to_string(config.seed)},
          {"shuffle", config.shuffle},
          {"reduction", std::string(to_string(config.reduction))}};
}

TrainConfig train_config_from_json(const json& doc) {
  try {
    TrainConfig config;
    config.batch_size = require(doc, "batch_size").get<std::size_t>();
    config.learning_rate = require(doc, "learning_rate").get<double>();
    config.epochs = require(doc, "epochs").get<std::size_t>();
    config.seed = u64_from_json(require(doc, "seed"));
    config.shuffle = require(doc, "shuffle").get<bool>();
    config.reduction = parse_batch_reduction(require(doc, "reduction").get<std::string>());
    return config;
  } catch (const json::exception& e) {
    throw ParseError(std::string("training config: ") + e.what());
  }
}

std::string u64_to_string(std::uint64_t value) { return std::to_string(value); }

std::uint64_t u64_from_json(const json& value) {
  if (value.is_number_unsigned()) return value.get<std::uint64_t>();
  if (!value.is_string()) throw ParseError("expected a 64-bit integer string");
  const auto& text = value.get_ref<const std::string&>();
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError("invalid 64-bit integer '" + text + "'");
  }
  return out;
}

std::string dump(const json& doc) { return doc.dump(1, '\t') + "\n"; }

}  // namespace detail

std::string serialize_network(const Network& net, std::uint64_t seed) {
  detail::json doc = {{"format", "wordsim.network"},
                      {"version", kNetworkFormatVersion},
                      {"seed", detail::u64_to_string(seed)}};
  doc["network"] = detail::network_to_json(net);
  return detail::dump(doc);
}

LoadedNetwork parse_network(std::string_view json_text) {
  const detail::json doc = detail::parse_json(json_text, "network file");
  detail::check_header(doc, "wordsim.network", kNetworkFormatVersion);
  return {detail::network_from_json(detail::require(doc, "network")),
          detail::u64_from_json(detail::require(doc, "seed"))};
}

}  // namespace wordsim
