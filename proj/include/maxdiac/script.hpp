#ifndef MAXDIAC_SCRIPT_HPP
#define MAXDIAC_SCRIPT_HPP

// Arabic codepoint classification, letter+cluster segmentation, cluster
// normalization and dediacritization.

#include <algorithm>
#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "utf8.hpp"

namespace maxdiac {

/// The nine MSA diacritics, enumerated in Unicode order.
enum class Diacritic : std::uint8_t {
    Fathatan,
    Dammatan,
    Kasratan,
    Fatha,
    Damma,
    Kasra,
    Shadda,
    Sukun,
    DaggerAlif,
};

inline constexpr std::size_t diacritic_count = 9;

inline constexpr std::array<char32_t, diacritic_count> diacritic_codepoints = {
    0x064B, 0x064C, 0x064D, 0x064E, 0x064F, 0x0650, 0x0651, 0x0652, 0x0670};

inline constexpr std::array<std::string_view, diacritic_count> diacritic_names = {
    "Fathatan", "Dammatan", "Kasratan", "Fatha", "Damma", "Kasra", "Shadda", "Sukun", "DaggerAlif"};

constexpr char32_t codepoint(Diacritic d) { return diacritic_codepoints[static_cast<std::size_t>(d)]; }
constexpr std::size_t index(Diacritic d) { return static_cast<std::size_t>(d); }

constexpr std::optional<Diacritic> as_diacritic(char32_t c)
{
    if (c >= 0x064B && c <= 0x0652)
        return static_cast<Diacritic>(c - 0x064B);
    if (c == 0x0670)
        return Diacritic::DaggerAlif;
    return std::nullopt;
}

constexpr bool is_diacritic(char32_t c) { return as_diacritic(c).has_value(); }

/// Short vowels, Tanwiyns and Sukun: at most one per cluster.
constexpr bool is_vowel_class(Diacritic d) { return d != Diacritic::Shadda && d != Diacritic::DaggerAlif; }
constexpr bool is_short_vowel(Diacritic d)
{
    return d == Diacritic::Fatha || d == Diacritic::Damma || d == Diacritic::Kasra;
}
constexpr bool is_tanwiyn(Diacritic d)
{
    return d == Diacritic::Fathatan || d == Diacritic::Dammatan || d == Diacritic::Kasratan;
}

namespace letters {
inline constexpr char32_t hamza = 0x0621;
inline constexpr char32_t alif_madda = 0x0622;
inline constexpr char32_t alif_hamza_above = 0x0623;
inline constexpr char32_t waw_hamza = 0x0624;
inline constexpr char32_t alif_hamza_below = 0x0625;
inline constexpr char32_t ya_hamza = 0x0626;
inline constexpr char32_t alif = 0x0627;
inline constexpr char32_t ba = 0x0628;
inline constexpr char32_t ta_marbuta = 0x0629;
inline constexpr char32_t fa = 0x0641;
inline constexpr char32_t kaf = 0x0643;
inline constexpr char32_t lam = 0x0644;
inline constexpr char32_t waw = 0x0648;
inline constexpr char32_t alif_maqsura = 0x0649;
inline constexpr char32_t ya = 0x064A;
inline constexpr char32_t tatweel = 0x0640;
inline constexpr char32_t alif_wasla = 0x0671;
} // namespace letters

enum class LetterKind : std::uint8_t { Sun, Moon, Weak, Other };

struct CharClass {
    enum class Kind : std::uint8_t { ArabicLetter, ArabicDiacritic, Digit, Punctuation, Whitespace, Other };

    Kind kind = Kind::Other;
    LetterKind letter = LetterKind::Other;     // meaningful for ArabicLetter
    Diacritic diacritic = Diacritic::Fatha;    // meaningful for ArabicDiacritic

    friend bool operator==(const CharClass&, const CharClass&) = default;
};

/// Sun/moon/weak letter tables. The defaults follow standard grammar; a
/// config stream can replace any of the three sets.
class LetterTable {
public:
    LetterTable(std::u32string sun, std::u32string moon, std::u32string weak)
        : sun_(sun.begin(), sun.end()), moon_(moon.begin(), moon.end()), weak_(weak.begin(), weak.end())
    {
    }

    static const LetterTable& standard()
    {
        // t θ d ð r z s š S D T Ď l n
        static const LetterTable table(
            U"تثدذرزسشصضطظلن",
            // ' Ā Â Ǎ b j H x ς γ f q k m h
            U"ءآأإبجحخعغفقكمه",
            // A w y ý Ä
            U"اويىٱ");
        return table;
    }

    /// Reads `sun|moon|weak<TAB>letters` lines; unspecified sets keep the
    /// standard values. Lines starting with '#' are ignored.
    static LetterTable from_stream(std::istream& in)
    {
        LetterTable t = standard();
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#')
                continue;
            auto tab = line.find('\t');
            if (tab == std::string::npos)
                throw std::invalid_argument("letter table line without TAB: " + line);
            auto name = line.substr(0, tab);
            auto letters = utf8::decode(std::string_view(line).substr(tab + 1));
            std::unordered_set<char32_t> set(letters.begin(), letters.end());
            if (name == "sun")
                t.sun_ = std::move(set);
            else if (name == "moon")
                t.moon_ = std::move(set);
            else if (name == "weak")
                t.weak_ = std::move(set);
            else
                throw std::invalid_argument("unknown letter table: " + name);
        }
        return t;
    }

    bool is_sun(char32_t c) const { return sun_.count(c) != 0; }
    bool is_weak(char32_t c) const { return weak_.count(c) != 0; }
    /// Consonants that keep the article's l. Weak w and y behave as moon
    /// consonants after the article.
    bool is_moon(char32_t c) const
    {
        return moon_.count(c) != 0 || c == letters::waw || c == letters::ya;
    }

    LetterKind kind(char32_t c) const
    {
        if (is_sun(c))
            return LetterKind::Sun;
        if (weak_.count(c))
            return LetterKind::Weak;
        if (moon_.count(c))
            return LetterKind::Moon;
        return LetterKind::Other;
    }

private:
    std::unordered_set<char32_t> sun_;
    std::unordered_set<char32_t> moon_;
    std::unordered_set<char32_t> weak_;
};

constexpr bool is_arabic_letter(char32_t c)
{
    return (c >= 0x0621 && c <= 0x063A) || (c >= 0x0641 && c <= 0x064A) || c == 0x066E || c == 0x066F
        || (c >= 0x0671 && c <= 0x06D3) || c == 0x06D5 || c == 0x06EE || c == 0x06EF
        || (c >= 0x06FA && c <= 0x06FC) || c == 0x06FF || (c >= 0x0750 && c <= 0x077F)
        || (c >= 0x08A0 && c <= 0x08C9);
}

constexpr bool is_arabic_punctuation(char32_t c)
{
    switch (c) {
    case 0x060C: // comma
    case 0x061B: // semicolon
    case 0x061F: // question mark
    case 0x066A: // percent
    case 0x066B:
    case 0x066C:
    case 0x066D:
    case 0x06D4: // full stop
    case 0x00AB:
    case 0x00BB:
    case 0x2026:
    case 0x2013:
    case 0x2014:
    case 0x2018:
    case 0x2019:
    case 0x201C:
    case 0x201D:
        return true;
    default:
        return false;
    }
}

constexpr bool is_ascii_punctuation(char32_t c)
{
    return (c >= 0x21 && c <= 0x2F) || (c >= 0x3A && c <= 0x40) || (c >= 0x5B && c <= 0x60)
        || (c >= 0x7B && c <= 0x7E);
}

constexpr bool is_punctuation(char32_t c) { return is_ascii_punctuation(c) || is_arabic_punctuation(c); }

constexpr bool is_digit(char32_t c)
{
    return (c >= U'0' && c <= U'9') || (c >= 0x0660 && c <= 0x0669) || (c >= 0x06F0 && c <= 0x06F9);
}

constexpr bool is_whitespace(char32_t c)
{
    return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == U'\v' || c == U'\f' || c == 0x00A0
        || c == 0x200F || c == 0x200E || c == 0x2009 || c == 0x3000;
}

inline CharClass classify_char(char32_t c, const LetterTable& table = LetterTable::standard())
{
    CharClass out;
    if (auto d = as_diacritic(c)) {
        out.kind = CharClass::Kind::ArabicDiacritic;
        out.diacritic = *d;
    } else if (is_arabic_letter(c)) {
        out.kind = CharClass::Kind::ArabicLetter;
        out.letter = table.kind(c);
    } else if (is_digit(c)) {
        out.kind = CharClass::Kind::Digit;
    } else if (is_whitespace(c)) {
        out.kind = CharClass::Kind::Whitespace;
    } else if (is_punctuation(c)) {
        out.kind = CharClass::Kind::Punctuation;
    }
    return out;
}

/// Canonical slot order: Shadda, then the vowel-class mark, then Dagger Alif.
constexpr int canonical_rank(Diacritic d)
{
    if (d == Diacritic::Shadda)
        return 0;
    if (d == Diacritic::DaggerAlif)
        return 2;
    return 1;
}

/// The run of diacritics following one letter, kept in the order read.
struct DiacCluster {
    std::vector<Diacritic> raw;

    struct Canonical {
        bool shadda = false;
        std::optional<Diacritic> vowel;
        bool dagger = false;
    };

    bool empty() const { return raw.empty(); }
    std::size_t size() const { return raw.size(); }

    bool has(Diacritic d) const { return std::find(raw.begin(), raw.end(), d) != raw.end(); }

    /// Absent when the marks cannot co-occur on one letter: more than one
    /// Shadda, more than one vowel-class mark (duplicates included), or a
    /// Dagger Alif next to anything but Fatha/Shadda.
    std::optional<Canonical> canonical() const
    {
        Canonical c;
        int vowels = 0;
        int shaddas = 0;
        int daggers = 0;
        for (auto d : raw) {
            if (d == Diacritic::Shadda) {
                ++shaddas;
                c.shadda = true;
            } else if (d == Diacritic::DaggerAlif) {
                ++daggers;
                c.dagger = true;
            } else {
                ++vowels;
                c.vowel = d;
            }
        }
        if (shaddas > 1 || vowels > 1 || daggers > 1)
            return std::nullopt;
        if (c.dagger && c.vowel && *c.vowel != Diacritic::Fatha)
            return std::nullopt;
        return c;
    }

    bool compatible() const { return canonical().has_value(); }

    /// The first vowel-class mark, if any.
    std::optional<Diacritic> vowel() const
    {
        for (auto d : raw)
            if (is_vowel_class(d))
                return d;
        return std::nullopt;
    }

    bool in_canonical_order() const
    {
        return std::is_sorted(raw.begin(), raw.end(),
                              [](Diacritic a, Diacritic b) { return canonical_rank(a) < canonical_rank(b); });
    }

    /// Stable canonical reorder with exact duplicates collapsed.
    DiacCluster normalized() const
    {
        DiacCluster out;
        for (auto d : raw)
            if (!out.has(d))
                out.raw.push_back(d);
        std::stable_sort(out.raw.begin(), out.raw.end(),
                         [](Diacritic a, Diacritic b) { return canonical_rank(a) < canonical_rank(b); });
        return out;
    }

    void append_to(std::u32string& out) const
    {
        for (auto d : raw)
            out.push_back(codepoint(d));
    }

    friend bool operator==(const DiacCluster&, const DiacCluster&) = default;
};

struct Segment {
    char32_t letter = 0;
    DiacCluster cluster;

    friend bool operator==(const Segment&, const Segment&) = default;
};

/// A word split into letters, each with the cluster that follows it.
struct DiacWord {
    DiacCluster initial_orphan; // marks before the first letter; empty when well placed
    std::vector<Segment> segments;

    bool has_orphan() const { return !initial_orphan.empty(); }
    std::size_t size() const { return segments.size(); }
    bool empty() const { return segments.empty() && initial_orphan.empty(); }

    std::u32string serialize() const
    {
        std::u32string out;
        initial_orphan.append_to(out);
        for (const auto& s : segments) {
            out.push_back(s.letter);
            s.cluster.append_to(out);
        }
        return out;
    }

    friend bool operator==(const DiacWord&, const DiacWord&) = default;
};

inline DiacWord segment(std::u32string_view word)
{
    DiacWord out;
    for (char32_t c : word) {
        if (auto d = as_diacritic(c)) {
            if (out.segments.empty())
                out.initial_orphan.raw.push_back(*d);
            else
                out.segments.back().cluster.raw.push_back(*d);
        } else {
            out.segments.push_back(Segment{c, {}});
        }
    }
    return out;
}

inline bool is_tanwiyn_carrier(char32_t c) { return c == letters::alif || c == letters::alif_maqsura; }

/// Cluster-canonical form; word-final Fathatan on a bare Alif/Alif-Maqsura
/// carrier moves onto the preceding letter.
inline DiacWord normalize(const DiacWord& word)
{
    DiacWord out;
    out.initial_orphan = word.initial_orphan.normalized();
    out.segments.reserve(word.segments.size());
    for (const auto& s : word.segments)
        out.segments.push_back(Segment{s.letter, s.cluster.normalized()});

    auto n = out.segments.size();
    if (n >= 2) {
        auto& last = out.segments[n - 1];
        if (is_tanwiyn_carrier(last.letter) && last.cluster.has(Diacritic::Fathatan)
            && !out.segments[n - 2].cluster.has(Diacritic::Fathatan)) {
            auto& raw = last.cluster.raw;
            raw.erase(std::remove(raw.begin(), raw.end(), Diacritic::Fathatan), raw.end());
            auto& prev = out.segments[n - 2].cluster;
            prev.raw.push_back(Diacritic::Fathatan);
            prev = prev.normalized();
        }
    }
    return out;
}

inline std::u32string normalize(std::u32string_view word) { return normalize(segment(word)).serialize(); }

inline std::u32string dediacritize(std::u32string_view word)
{
    std::u32string out;
    out.reserve(word.size());
    for (char32_t c : word)
        if (!is_diacritic(c))
            out.push_back(c);
    return out;
}

inline bool has_diacritic(std::u32string_view word)
{
    return std::any_of(word.begin(), word.end(), [](char32_t c) { return is_diacritic(c); });
}

inline bool has_arabic_letter(std::u32string_view word)
{
    return std::any_of(word.begin(), word.end(), [](char32_t c) { return is_arabic_letter(c); });
}

using DiacriticProfile = std::array<std::size_t, diacritic_count>;

inline DiacriticProfile diacritic_profile(std::u32string_view word)
{
    DiacriticProfile counts{};
    for (char32_t c : word)
        if (auto d = as_diacritic(c))
            ++counts[index(*d)];
    return counts;
}

} // namespace maxdiac

#endif
