#pragma once

#include <ostream>

namespace wordsim::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInternal = 1;
inline constexpr int kUsage = 2;
inline constexpr int kData = 3;
inline constexpr int kNumeric = 4;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wordsim::cli
