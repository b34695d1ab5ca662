#pragma once

#include <string>
#include <string_view>

namespace wordsim {

// Strict UTF-8 decoding into Unicode scalar values. Overlong forms,
// surrogates and truncated sequences raise ParseError.
std::u32string decode_utf8(std::string_view bytes);
std::string encode_utf8(std::u32string_view text);

// Trims surrounding whitespace and collapses internal runs to one space.
std::string normalize_spacing(std::string_view text);

// Simple case folding: ASCII, Latin-1 Supplement, Greek and Cyrillic
// upper-case letters map to their lower-case forms. Everything else is kept.
std::string fold_case(std::string_view text);

}  // namespace wordsim
