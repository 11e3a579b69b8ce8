#ifndef MAXDIAC_HSB_HPP
#define MAXDIAC_HSB_HPP

// One-to-one Latin transliteration used for fixtures, tests and the --hsb
// CLI mode. The same table ships as data/hsb.tsv.

#include <array>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "script.hpp"
#include "utf8.hpp"

namespace maxdiac {

class MappingError : public std::runtime_error {
public:
    MappingError(const std::string& what, char32_t offender)
        : std::runtime_error(what), offender_(offender)
    {
    }
    char32_t offender() const { return offender_; }

private:
    char32_t offender_;
};

namespace hsb {

struct Entry {
    char32_t latin;
    char32_t arabic;
};

inline constexpr std::array<Entry, 46> table = {{
    {U'\'', 0x0621}, {U'Ā', 0x0622}, {U'Â', 0x0623}, {U'ŵ', 0x0624}, {U'Ǎ', 0x0625}, {U'ŷ', 0x0626},
    {U'A', 0x0627},  {U'b', 0x0628}, {U'ħ', 0x0629}, {U't', 0x062A}, {U'θ', 0x062B}, {U'j', 0x062C},
    {U'H', 0x062D},  {U'x', 0x062E}, {U'd', 0x062F}, {U'ð', 0x0630}, {U'r', 0x0631}, {U'z', 0x0632},
    {U's', 0x0633},  {U'š', 0x0634}, {U'S', 0x0635}, {U'D', 0x0636}, {U'T', 0x0637}, {U'Ď', 0x0638},
    {U'ς', 0x0639},  {U'γ', 0x063A}, {U'f', 0x0641}, {U'q', 0x0642}, {U'k', 0x0643}, {U'l', 0x0644},
    {U'm', 0x0645},  {U'n', 0x0646}, {U'h', 0x0647}, {U'w', 0x0648}, {U'ý', 0x0649}, {U'y', 0x064A},
    {U'ã', 0x064B},  {U'ũ', 0x064C}, {U'ĩ', 0x064D}, {U'a', 0x064E}, {U'u', 0x064F}, {U'i', 0x0650},
    {U'~', 0x0651},  {U'.', 0x0652}, {U'á', 0x0670}, {U'Ä', 0x0671},
}};

/// Alternative input spellings for Ayn.
inline constexpr std::array<Entry, 2> input_aliases = {{{U'E', 0x0639}, {U'ʿ', 0x0639}}};

inline std::optional<char32_t> to_arabic(char32_t latin)
{
    for (const auto& e : table)
        if (e.latin == latin)
            return e.arabic;
    for (const auto& e : input_aliases)
        if (e.latin == latin)
            return e.arabic;
    return std::nullopt;
}

inline std::optional<char32_t> to_latin(char32_t arabic)
{
    for (const auto& e : table)
        if (e.arabic == arabic)
            return e.latin;
    return std::nullopt;
}

inline std::string describe(char32_t c)
{
    char buf[16];
    std::snprintf(buf, sizeof buf, "U+%04X", static_cast<unsigned>(c));
    std::string s = buf;
    if (c >= 0x20 && c != 0x7F) {
        s += " '";
        utf8::append(s, c);
        s += "'";
    }
    return s;
}

} // namespace hsb

/// Arabic word to HSB. Throws MappingError on a codepoint outside the table.
inline std::string to_hsb(std::u32string_view word)
{
    std::string out;
    for (char32_t c : word) {
        auto l = hsb::to_latin(c);
        if (!l)
            throw MappingError("no HSB mapping for " + hsb::describe(c), c);
        utf8::append(out, *l);
    }
    return out;
}

inline std::u32string from_hsb(std::u32string_view text)
{
    std::u32string out;
    out.reserve(text.size());
    for (char32_t c : text) {
        auto a = hsb::to_arabic(c);
        if (!a)
            throw MappingError("not an HSB symbol: " + hsb::describe(c), c);
        out.push_back(*a);
    }
    return out;
}

inline std::u32string from_hsb(std::string_view text) { return from_hsb(utf8::decode(text)); }

namespace hsb {

/// Symbols outside the alphabet that may appear in running HSB text.
inline bool passes_through(char32_t c)
{
    return is_whitespace(c) || is_digit(c) || ((is_punctuation(c) || c == U'%') && !to_arabic(c));
}

/// Line-level transliteration: whitespace, digits and non-alphabet
/// punctuation are copied.
inline std::u32string line_to_arabic(std::u32string_view line)
{
    std::u32string out;
    out.reserve(line.size());
    for (char32_t c : line) {
        if (auto a = to_arabic(c))
            out.push_back(*a);
        else if (passes_through(c))
            out.push_back(c);
        else
            throw MappingError("not an HSB symbol: " + describe(c), c);
    }
    return out;
}

inline std::u32string line_to_arabic(std::string_view line) { return line_to_arabic(utf8::decode(line)); }

inline std::string line_to_latin(std::u32string_view line)
{
    std::string out;
    for (char32_t c : line) {
        if (auto l = to_latin(c))
            utf8::append(out, *l);
        else if (!is_arabic_letter(c) && !is_diacritic(c))
            utf8::append(out, c);
        else
            throw MappingError("no HSB mapping for " + describe(c), c);
    }
    return out;
}

} // namespace hsb
} // namespace maxdiac

#endif
