#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace wordsim {

std::string read_file(const std::filesystem::path& path);

// Writes to a sibling temporary and renames over `path`; nothing is left
// behind on failure.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace wordsim
