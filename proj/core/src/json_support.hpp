#pragma once

// Internal helpers shared by the JSON containers. Not installed.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "wordsim/error.hpp"
#include "wordsim/lexicon.hpp"
#include "wordsim/network.hpp"

namespace wordsim::detail {

using nlohmann::json;

json parse_json(std::string_view text, std::string_view what);

// Throws ParseError naming the missing key.
const json& require(const json& object, std::string_view key);

void check_header(const json& doc, std::string_view format, int max_version);

json network_to_json(const Network& net);
Network network_from_json(const json& doc);

json lexicon_to_json(const Lexicon& lex);
Lexicon lexicon_from_json(const json& doc);

json train_config_to_json(const TrainConfig& config);
TrainConfig train_config_from_json(const json& doc);

// 64-bit values are stored as decimal strings; JSON readers outside C++
// commonly lose precision above 2^53.
std::string u64_to_string(std::uint64_t value);
std::uint64_t u64_from_json(const json& value);

std::string dump(const json& doc);

}  // namespace wordsim::detail
