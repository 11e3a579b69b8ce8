#ifndef MAXDIAC_UTF8_HPP
#define MAXDIAC_UTF8_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace maxdiac {

class Utf8Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace utf8 {

/// Decodes UTF-8 into scalar codepoints. Throws Utf8Error on malformed input.
inline std::u32string decode(std::string_view in)
{
    std::u32string out;
    out.reserve(in.size());
    std::size_t i = 0;
    while (i < in.size()) {
        auto b0 = static_cast<unsigned char>(in[i]);
        char32_t cp = 0;
        int extra = 0;
        if (b0 < 0x80) {
            cp = b0;
        } else if ((b0 & 0xE0) == 0xC0) {
            cp = b0 & 0x1F;
            extra = 1;
        } else if ((b0 & 0xF0) == 0xE0) {
            cp = b0 & 0x0F;
            extra = 2;
        } else if ((b0 & 0xF8) == 0xF0) {
            cp = b0 & 0x07;
            extra = 3;
        } else {
            throw Utf8Error("invalid UTF-8 lead byte at offset " + std::to_string(i));
        }
        for (int k = 1; k <= extra; ++k) {
            if (i + k >= in.size())
                throw Utf8Error("truncated UTF-8 sequence at offset " + std::to_string(i));
            auto b = static_cast<unsigned char>(in[i + k]);
            if ((b & 0xC0) != 0x80)
                throw Utf8Error("invalid UTF-8 continuation byte at offset " + std::to_string(i + k));
            cp = (cp << 6) | (b & 0x3F);
        }
        static constexpr char32_t min_for_len[] = {0, 0x80, 0x800, 0x10000};
        if (cp < min_for_len[extra] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))
            throw Utf8Error("invalid UTF-8 scalar at offset " + std::to_string(i));
        out.push_back(cp);
        i += static_cast<std::size_t>(extra) + 1;
    }
    return out;
}

inline void append(std::string& out, char32_t cp)
{
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

inline std::string encode(std::u32string_view in)
{
    std::string out;
    out.reserve(in.size() * 2);
    for (char32_t cp : in)
        append(out, cp);
    return out;
}

} // namespace utf8
} // namespace maxdiac

#endif
