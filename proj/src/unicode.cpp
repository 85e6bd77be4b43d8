#include "fuzzylex/unicode.hpp"

#include <stdexcept>

namespace fuzzylex {

namespace {

[[noreturn]] void bad_utf8(std::size_t offset) {
    throw std::invalid_argument("malformed UTF-8 at byte offset " + std::to_string(offset));
}

}  // namespace

std::u32string decode_utf8(std::string_view bytes) {
    std::u32string out;
    out.reserve(bytes.size());
    std::size_t i = 0;
    while (i < bytes.size()) {
        const unsigned char b0 = static_cast<unsigned char>(bytes[i]);
        char32_t cp = 0;
        std::size_t len = 0;
        if (b0 < 0x80) {
            cp = b0;
            len = 1;
        } else if ((b0 & 0xE0) == 0xC0) {
            cp = b0 & 0x1F;
            len = 2;
        } else if ((b0 & 0xF0) == 0xE0) {
            cp = b0 & 0x0F;
            len = 3;
        } else if ((b0 & 0xF8) == 0xF0) {
            cp = b0 & 0x07;
            len = 4;
        } else {
            bad_utf8(i);
        }
        if (i + len > bytes.size()) bad_utf8(i);
        for (std::size_t k = 1; k < len; ++k) {
            const unsigned char bk = static_cast<unsigned char>(bytes[i + k]);
            if ((bk & 0xC0) != 0x80) bad_utf8(i);
            cp = (cp << 6) | (bk & 0x3F);
        }
        // overlong encodings, surrogates, and values past U+10FFFF are invalid
        static constexpr char32_t kMinByLen[5] = {0, 0, 0x80, 0x800, 0x10000};
        if (len > 1 && cp < kMinByLen[len]) bad_utf8(i);
        if (cp >= 0xD800 && cp <= 0xDFFF) bad_utf8(i);
        if (cp > 0x10FFFF) bad_utf8(i);
        out.push_back(cp);
        i += len;
    }
    return out;
}

std::string encode_utf8(char32_t scalar) {
    std::string out;
    if (scalar < 0x80) {
        out.push_back(static_cast<char>(scalar));
    } else if (scalar < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (scalar >> 6)));
        out.push_back(static_cast<char>(0x80 | (scalar & 0x3F)));
    } else if (scalar < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (scalar >> 12)));
        out.push_back(static_cast<char>(0x80 | ((scalar >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (scalar & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (scalar >> 18)));
        out.push_back(static_cast<char>(0x80 | ((scalar >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((scalar >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (scalar & 0x3F)));
    }
    return out;
}

std::string encode_utf8(std::u32string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char32_t cp : text) out += encode_utf8(cp);
    return out;
}

char32_t lower_scalar(char32_t c) {
    if (c >= U'A' && c <= U'Z') return c + 0x20;
    // Latin-1 Supplement uppercase block, minus the multiplication sign
    if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 0x20;
    // Latin Extended-A pairs upper/lower codepoints (even/odd) in two runs
    if (c >= 0x100 && c <= 0x137 && (c % 2) == 0) return c + 1;
    if (c >= 0x139 && c <= 0x148 && (c % 2) == 1) return c + 1;
    if (c >= 0x14A && c <= 0x177 && (c % 2) == 0) return c + 1;
    if (c == 0x178) return 0xFF;  // Ÿ -> ÿ
    if (c >= 0x179 && c <= 0x17E && (c % 2) == 1) return c + 1;
    return c;
}

std::u32string lower_all(std::u32string_view text) {
    std::u32string out(text);
    for (char32_t& c : out) c = lower_scalar(c);
    return out;
}

}  // namespace fuzzylex
