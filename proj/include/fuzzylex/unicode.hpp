#pragma once

#include <string>
#include <string_view>

namespace fuzzylex {

// All engine-level text is a sequence of Unicode scalar values (char32_t).
// Files and CLI arguments are UTF-8 at the boundary.

// Decodes UTF-8 bytes to scalar values. Rejects malformed sequences
// (truncated, overlong, surrogates, out of range) with std::invalid_argument.
std::u32string decode_utf8(std::string_view bytes);

std::string encode_utf8(std::u32string_view text);
std::string encode_utf8(char32_t scalar);

// Per-scalar lowercase for ASCII, Latin-1 Supplement and Latin Extended-A.
// Anything else passes through unchanged.
char32_t lower_scalar(char32_t scalar);
std::u32string lower_all(std::u32string_view text);

}  // namespace fuzzylex
