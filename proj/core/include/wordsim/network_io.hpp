#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "wordsim/network.hpp"

namespace wordsim {

inline constexpr int kNetworkFormatVersion = 1;

// Versioned JSON container: topology, activations, row-major weights, biases
// and the training seed. Doubles are written in shortest round-trip form, so
// parameters survive save/load bit-exactly.
std::string serialize_network(const Network& net, std::uint64_t seed);

struct LoadedNetwork {
  Network net;
  std::uint64_t seed = 0;
};

// Throws ParseError on malformed documents or unsupported versions.
LoadedNetwork parse_network(std::string_view json_text);

}  // namespace wordsim
