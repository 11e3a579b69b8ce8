#ifndef MAXDIAC_WELLFORMEDNESS_HPP
#define MAXDIAC_WELLFORMEDNESS_HPP

// Maximal-diacritization well-formedness: a word is an optional starting
// pattern, one or more middle units and an optional ending, checked on the
// raw cluster order so that wild ordering errors stay visible.

#include <algorithm>
#include <istream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "hsb.hpp"
#include "script.hpp"

namespace maxdiac {

enum class ViolationCode : std::uint8_t {
    ShaddaOrder,        // cluster marks not in Shadda, vowel, Dagger Alif order
    TanwiynOrder,       // word-final Fathatan written after its Alif carrier
    IncompatibleCluster,
    WordInitialDiacritic,
    BareLetterNotAllowed,
    MissingClusterOnLetter,
    InvalidStartPattern,
    InvalidEndingPattern,
    DoubleSukun,
    SukunBeforeShadda,
    ContextFinalSukunBeforeWasla,
    WaslaMissingInitialVowel,
    UnknownException,
};

inline constexpr std::string_view to_string(ViolationCode c)
{
    switch (c) {
    case ViolationCode::ShaddaOrder: return "ShaddaOrder";
    case ViolationCode::TanwiynOrder: return "TanwiynOrder";
    case ViolationCode::IncompatibleCluster: return "IncompatibleCluster";
    case ViolationCode::WordInitialDiacritic: return "WordInitialDiacritic";
    case ViolationCode::BareLetterNotAllowed: return "BareLetterNotAllowed";
    case ViolationCode::MissingClusterOnLetter: return "MissingClusterOnLetter";
    case ViolationCode::InvalidStartPattern: return "InvalidStartPattern";
    case ViolationCode::InvalidEndingPattern: return "InvalidEndingPattern";
    case ViolationCode::DoubleSukun: return "DoubleSukun";
    case ViolationCode::SukunBeforeShadda: return "SukunBeforeShadda";
    case ViolationCode::ContextFinalSukunBeforeWasla: return "ContextFinalSukunBeforeWasla";
    case ViolationCode::WaslaMissingInitialVowel: return "WaslaMissingInitialVowel";
    case ViolationCode::UnknownException: return "UnknownException";
    }
    return "?";
}

/// Codes that only record missing marks. A partially diacritized word whose
/// verdict holds nothing else is consistent, just incomplete.
constexpr bool is_incompleteness(ViolationCode c)
{
    return c == ViolationCode::MissingClusterOnLetter || c == ViolationCode::WaslaMissingInitialVowel;
}

struct Violation {
    ViolationCode code;
    std::size_t segment; // index into DiacWord::segments

    friend bool operator==(const Violation&, const Violation&) = default;
};

struct WellFormedVerdict {
    bool applicable = true; // false for tokens without an Arabic letter
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }

    bool has(ViolationCode c) const
    {
        return std::any_of(violations.begin(), violations.end(), [c](const Violation& v) { return v.code == c; });
    }

    /// No codes apart from incompleteness ones.
    bool consistent() const
    {
        return std::all_of(violations.begin(), violations.end(),
                           [](const Violation& v) { return is_incompleteness(v.code); });
    }

    void add(ViolationCode c, std::size_t segment)
    {
        Violation v{c, segment};
        if (std::find(violations.begin(), violations.end(), v) == violations.end())
            violations.push_back(v);
    }

    std::vector<ViolationCode> codes() const
    {
        std::vector<ViolationCode> out;
        for (const auto& v : violations)
            if (std::find(out.begin(), out.end(), v.code) == out.end())
                out.push_back(v.code);
        std::sort(out.begin(), out.end());
        return out;
    }

    std::string joined_codes() const
    {
        std::string out;
        for (auto c : codes()) {
            if (!out.empty())
                out += ',';
            out += to_string(c);
        }
        return out;
    }
};

/// Words accepted as written even though the grammar rejects them.
class ExceptionLexicon {
public:
    ExceptionLexicon() = default;
    explicit ExceptionLexicon(std::vector<std::u32string> forms)
    {
        for (auto& f : forms)
            add(std::move(f));
    }

    /// ςam.raw, ςam.ruw, ςam.rĩw (the name Amr with its silent w) and the
    /// ligature spellings of Allah that leave middle letters bare.
    static const ExceptionLexicon& standard()
    {
        static const ExceptionLexicon lex = [] {
            ExceptionLexicon l;
            for (std::string_view f : {"ςam.raw", "ςam.ruw", "ςam.rĩw", "Allhu", "Allhi", "Allha", "llhi"})
                l.add(from_hsb(f));
            return l;
        }();
        return lex;
    }

    /// One Arabic-script form per line; '#' starts a comment line.
    static ExceptionLexicon from_stream(std::istream& in)
    {
        ExceptionLexicon l;
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            if (line.empty() || line[0] == '#')
                continue;
            l.add(utf8::decode(line));
        }
        return l;
    }

    void add(std::u32string form)
    {
        skeletons_.insert(dediacritize(form));
        forms_.insert(normalize(form));
    }

    bool empty() const { return forms_.empty(); }

    /// `word` must already be normalized. A leading wa/fa conjunction and a
    /// context-initial Wasla vowel are ignored.
    bool accepts(const DiacWord& word) const
    {
        if (forms_.empty())
            return false;
        for (const auto& candidate : variants(word))
            if (forms_.count(candidate.serialize()))
                return true;
        return false;
    }

    bool knows_skeleton(const DiacWord& word) const
    {
        for (const auto& candidate : variants(word))
            if (skeletons_.count(dediacritize(candidate.serialize())))
                return true;
        return false;
    }

private:
    static std::vector<DiacWord> variants(const DiacWord& word)
    {
        std::vector<DiacWord> out{word};
        const auto& s = word.segments;
        if (s.size() > 1 && (s[0].letter == letters::waw || s[0].letter == letters::fa)
            && s[0].cluster.raw == std::vector<Diacritic>{Diacritic::Fatha}) {
            DiacWord rest;
            rest.segments.assign(s.begin() + 1, s.end());
            out.push_back(std::move(rest));
        }
        for (std::size_t i = 0, n = out.size(); i < n; ++i) {
            auto& w = out[i].segments;
            if (!w.empty() && (w[0].letter == letters::alif || w[0].letter == letters::alif_wasla)
                && !w[0].cluster.empty()) {
                DiacWord bare = out[i];
                bare.segments[0].cluster.raw.clear();
                bare.segments[0].letter = letters::alif;
                out.push_back(std::move(bare));
            }
        }
        return out;
    }

    std::unordered_set<std::u32string> forms_;
    std::unordered_set<std::u32string> skeletons_;
};

struct GrammarConfig {
    const LetterTable* letters = &LetterTable::standard();
    const ExceptionLexicon* exceptions = &ExceptionLexicon::standard();

    static const GrammarConfig& standard()
    {
        static const GrammarConfig cfg;
        return cfg;
    }
};

/// What licenses each letter's (possibly empty) cluster.
enum class SegmentRole : std::uint8_t {
    Consonant,      // needs Shadda?(vowel | Fatha+Dagger) or Sukun
    Prefix,         // conjunction or preposition before an article/Wasla
    WaslaAlif,      // word-initial unhamzated Alif
    ArticleLamMoon, // article l before a moon letter, takes Sukun
    ArticleLamSun,  // article l assimilated into a sun letter, bare
    LongVowel,      // bare weak letter after its matching short vowel
    TanwiynAlif,
    PluralAlif,
    Ambiguous,      // bare weak letter after a letter with no vowel information
    Invalid,
};

/// True for roles whose letter stays bare under maximal diacritization.
constexpr bool licenses_bare(SegmentRole r)
{
    return r == SegmentRole::ArticleLamSun || r == SegmentRole::LongVowel || r == SegmentRole::TanwiynAlif
        || r == SegmentRole::PluralAlif || r == SegmentRole::WaslaAlif;
}

struct GrammarParse {
    std::vector<SegmentRole> roles;
    WellFormedVerdict verdict;
};

namespace detail {

inline bool is_alif_like(char32_t c) { return c == letters::alif || c == letters::alif_wasla; }

inline bool cluster_is(const DiacCluster& c, Diacritic d) { return c.raw.size() == 1 && c.raw[0] == d; }

inline bool is_conjunction(const Segment& s)
{
    return (s.letter == letters::waw || s.letter == letters::fa) && cluster_is(s.cluster, Diacritic::Fatha);
}

inline bool is_preposition(const Segment& s)
{
    return (s.letter == letters::ba && cluster_is(s.cluster, Diacritic::Kasra))
        || (s.letter == letters::kaf && cluster_is(s.cluster, Diacritic::Fatha))
        || (s.letter == letters::lam && cluster_is(s.cluster, Diacritic::Kasra));
}

/// Position of the Wasla Alif after an ordered conjunction/preposition
/// prefix, if the word has one.
inline std::optional<std::size_t> wasla_position(const std::vector<Segment>& s)
{
    if (s.empty())
        return std::nullopt;
    if (is_alif_like(s[0].letter))
        return 0;
    if (s.size() > 1 && (is_conjunction(s[0]) || is_preposition(s[0])) && is_alif_like(s[1].letter))
        return 1;
    if (s.size() > 2 && is_conjunction(s[0]) && is_preposition(s[1]) && is_alif_like(s[2].letter))
        return 2;
    return std::nullopt;
}

inline bool has_sukun(const DiacCluster& c) { return c.has(Diacritic::Sukun); }

} // namespace detail

/// Structural parse of an already-normalized word. Order codes and context
/// rules are the caller's business.
inline GrammarParse parse_word(const DiacWord& norm, bool at_context_start, const GrammarConfig& cfg)
{
    using detail::cluster_is;
    using V = ViolationCode;

    const auto& s = norm.segments;
    const auto n = s.size();
    GrammarParse out;
    out.roles.assign(n, SegmentRole::Consonant);
    auto& verdict = out.verdict;
    if (n == 0)
        return out;

    // Vowel information carried from the previous letter into the next.
    enum class Prev { Known, Unknown };
    Prev prev = Prev::Known;
    std::optional<Diacritic> prev_vowel;

    std::size_t m = 0;
    if (auto p = detail::wasla_position(s)) {
        for (std::size_t k = 0; k < *p; ++k)
            out.roles[k] = SegmentRole::Prefix;
        const auto& alif = s[*p];
        out.roles[*p] = SegmentRole::WaslaAlif;
        bool vowelled = alif.cluster.raw.size() == 1 && is_short_vowel(alif.cluster.raw[0]);
        if (!alif.cluster.empty() && (!vowelled || *p > 0))
            verdict.add(V::InvalidStartPattern, *p);
        if (*p == 0 && at_context_start && alif.cluster.empty())
            verdict.add(V::WaslaMissingInitialVowel, *p);

        m = *p + 1;
        bool article = false;
        if (*p + 2 < n && s[*p + 1].letter == letters::lam) {
            const auto& lam = s[*p + 1].cluster;
            const auto& next = s[*p + 2];
            bool sukun = cluster_is(lam, Diacritic::Sukun);
            if (cfg.letters->is_sun(next.letter)) {
                if (lam.empty() || sukun) {
                    article = true;
                    out.roles[*p + 1] = SegmentRole::ArticleLamSun;
                    if (sukun)
                        verdict.add(V::InvalidStartPattern, *p + 1);
                    if (!next.cluster.empty() && !next.cluster.has(Diacritic::Shadda))
                        verdict.add(V::InvalidStartPattern, *p + 2);
                }
            } else if (lam.empty() || sukun) {
                article = true;
                out.roles[*p + 1] = SegmentRole::ArticleLamMoon;
                if (lam.empty())
                    verdict.add(V::MissingClusterOnLetter, *p + 1);
                if (next.cluster.has(Diacritic::Shadda))
                    verdict.add(V::InvalidStartPattern, *p + 2);
            }
        }
        if (article) {
            m = *p + 2;
            if (vowelled && alif.cluster.raw[0] != Diacritic::Fatha)
                verdict.add(V::InvalidStartPattern, *p);
            prev = s[*p + 1].cluster.empty() ? Prev::Unknown : Prev::Known;
            prev_vowel = s[*p + 1].cluster.empty() ? std::nullopt : std::optional{Diacritic::Sukun};
            if (out.roles[*p + 1] == SegmentRole::ArticleLamSun) {
                prev = Prev::Known;
                prev_vowel = Diacritic::Sukun;
            }
        } else {
            prev = Prev::Known;
            prev_vowel = Diacritic::Sukun;
        }
        if (m >= n)
            verdict.add(V::InvalidStartPattern, *p);
    }

    for (std::size_t j = m; j < n; ++j) {
        const auto L = s[j].letter;
        const auto& cl = s[j].cluster;
        const bool final = j + 1 == n;
        auto canon = cl.canonical();
        if (!canon) {
            verdict.add(V::IncompatibleCluster, j);
            out.roles[j] = SegmentRole::Invalid;
            prev = Prev::Unknown;
            prev_vowel.reset();
            continue;
        }

        if (detail::is_alif_like(L) || L == letters::alif_maqsura) {
            if (!cl.empty()) {
                // Alif carriers take no marks past the word start.
                verdict.add(V::IncompatibleCluster, j);
                out.roles[j] = SegmentRole::Invalid;
                prev = Prev::Unknown;
                prev_vowel.reset();
                continue;
            }
            if (prev == Prev::Known && prev_vowel == Diacritic::Fatha) {
                out.roles[j] = SegmentRole::LongVowel;
            } else if (prev == Prev::Known && prev_vowel && is_tanwiyn(*prev_vowel) && final) {
                // a misplaced carrier is reported on the Tanwiyn letter
                out.roles[j] = SegmentRole::TanwiynAlif;
            } else if (L != letters::alif_maqsura && final && j > 0 && s[j - 1].letter == letters::waw
                       && (out.roles[j - 1] == SegmentRole::LongVowel
                           || (cluster_is(s[j - 1].cluster, Diacritic::Sukun) && j > 1
                               && s[j - 2].cluster.canonical()
                               && s[j - 2].cluster.canonical()->vowel == Diacritic::Fatha))) {
                out.roles[j] = SegmentRole::PluralAlif;
            } else if (prev == Prev::Unknown) {
                out.roles[j] = SegmentRole::Ambiguous;
            } else {
                verdict.add(V::BareLetterNotAllowed, j);
                out.roles[j] = SegmentRole::Invalid;
            }
            prev = out.roles[j] == SegmentRole::Ambiguous ? Prev::Unknown : Prev::Known;
            prev_vowel.reset();
            continue;
        }

        if (cl.empty()) {
            if (L == letters::alif_madda) {
                out.roles[j] = SegmentRole::LongVowel;
                prev = Prev::Known;
                prev_vowel.reset();
                continue;
            }
            if (L == letters::waw || L == letters::ya) {
                auto match = L == letters::waw ? Diacritic::Damma : Diacritic::Kasra;
                if (prev == Prev::Known && prev_vowel == match) {
                    out.roles[j] = SegmentRole::LongVowel;
                    prev_vowel.reset();
                    continue;
                }
                if (prev == Prev::Unknown) {
                    out.roles[j] = SegmentRole::Ambiguous;
                    prev_vowel.reset();
                    continue;
                }
            }
            verdict.add(V::MissingClusterOnLetter, j);
            out.roles[j] = SegmentRole::Consonant;
            prev = Prev::Unknown;
            prev_vowel.reset();
            continue;
        }

        out.roles[j] = SegmentRole::Consonant;
        if (!canon->vowel) {
            // Shadda or Dagger Alif with no vowel slot filled.
            verdict.add(V::MissingClusterOnLetter, j);
            prev = Prev::Unknown;
            prev_vowel.reset();
            continue;
        }
        const auto v = *canon->vowel;
        if (v == Diacritic::Sukun && canon->shadda)
            verdict.add(V::IncompatibleCluster, j);
        if (canon->dagger && v != Diacritic::Fatha)
            verdict.add(V::IncompatibleCluster, j);
        if (is_tanwiyn(v)) {
            if (v == Diacritic::Fathatan) {
                bool exempt = L == letters::alif_hamza_above || L == letters::ta_marbuta
                    || (L == letters::hamza && j > 0 && s[j - 1].letter == letters::alif);
                bool carrier_follows = j + 2 == n && is_tanwiyn_carrier(s[n - 1].letter) && s[n - 1].cluster.empty();
                if (final) {
                    if (!exempt)
                        verdict.add(V::InvalidEndingPattern, j);
                } else if (carrier_follows) {
                    if (exempt)
                        verdict.add(V::InvalidEndingPattern, j);
                } else {
                    verdict.add(V::InvalidEndingPattern, j);
                }
            } else if (!final) {
                verdict.add(V::InvalidEndingPattern, j);
            }
        }
        prev = Prev::Known;
        prev_vowel = v;
    }

    return out;
}

/// Validates one word (raw order, not normalized).
inline WellFormedVerdict check_word(const DiacWord& word, bool at_context_start, bool at_context_end,
                                    const GrammarConfig& cfg = GrammarConfig::standard())
{
    using V = ViolationCode;
    WellFormedVerdict verdict;
    bool any_letter = std::any_of(word.segments.begin(), word.segments.end(),
                                  [](const Segment& s) { return is_arabic_letter(s.letter); });
    if (!any_letter) {
        verdict.applicable = false;
        return verdict;
    }

    if (word.has_orphan())
        verdict.add(V::WordInitialDiacritic, 0);
    const auto& raw = word.segments;
    const auto n = raw.size();
    for (std::size_t j = 0; j < n; ++j) {
        const auto& cl = raw[j].cluster;
        if (!cl.compatible())
            verdict.add(V::IncompatibleCluster, j);
        else if (!cl.in_canonical_order())
            verdict.add(V::ShaddaOrder, j);
    }
    if (n >= 2 && is_tanwiyn_carrier(raw[n - 1].letter) && raw[n - 1].cluster.has(Diacritic::Fathatan))
        verdict.add(V::TanwiynOrder, n - 1);

    auto norm = normalize(word);
    if (cfg.exceptions->accepts(norm))
        return verdict;

    auto parse = parse_word(norm, at_context_start, cfg);
    for (const auto& v : parse.verdict.violations)
        verdict.add(v.code, v.segment);

    const auto& s = norm.segments;
    for (std::size_t j = 0; j + 1 < n; ++j) {
        if (at_context_end && j + 2 == n)
            break;
        if (!detail::has_sukun(s[j].cluster))
            continue;
        if (detail::has_sukun(s[j + 1].cluster))
            verdict.add(V::DoubleSukun, j + 1);
        else if (s[j + 1].cluster.has(Diacritic::Shadda))
            verdict.add(V::SukunBeforeShadda, j + 1);
    }

    if (!verdict.ok() && cfg.exceptions->knows_skeleton(norm))
        verdict.add(V::UnknownException, 0);
    return verdict;
}

inline WellFormedVerdict check_word(std::u32string_view word, bool at_context_start, bool at_context_end,
                                    const GrammarConfig& cfg = GrammarConfig::standard())
{
    return check_word(segment(word), at_context_start, at_context_end, cfg);
}

/// Words between two context delimiters (punctuation, sentence boundary).
struct ContextWindow {
    std::vector<std::u32string> words;
};

/// Wasla-initial: starts with an unhamzated Alif (or the internal Wasla).
inline bool starts_with_wasla(const DiacWord& w)
{
    return !w.has_orphan() && !w.segments.empty() && detail::is_alif_like(w.segments[0].letter);
}

inline bool ends_with_sukun(const DiacWord& w)
{
    return !w.segments.empty() && detail::has_sukun(w.segments.back().cluster);
}

inline std::vector<WellFormedVerdict> check_context(const ContextWindow& window,
                                                    const GrammarConfig& cfg = GrammarConfig::standard())
{
    std::vector<DiacWord> words;
    words.reserve(window.words.size());
    for (const auto& w : window.words)
        words.push_back(segment(w));

    std::vector<WellFormedVerdict> out;
    out.reserve(words.size());
    const auto n = words.size();
    for (std::size_t k = 0; k < n; ++k) {
        auto v = check_word(words[k], k == 0, k + 1 == n, cfg);
        if (v.applicable && k + 1 < n && starts_with_wasla(words[k + 1]) && ends_with_sukun(words[k]))
            v.add(ViolationCode::ContextFinalSukunBeforeWasla, words[k].segments.size() - 1);
        out.push_back(std::move(v));
    }
    return out;
}

inline bool is_maximally_diacritized(const DiacWord& word, bool at_context_start, bool at_context_end,
                                     const GrammarConfig& cfg = GrammarConfig::standard())
{
    if (word.segments.empty())
        return false;
    auto v = check_word(word, at_context_start, at_context_end, cfg);
    return v.applicable && v.ok();
}

inline bool is_maximally_diacritized(std::u32string_view word, bool at_context_start, bool at_context_end,
                                     const GrammarConfig& cfg = GrammarConfig::standard())
{
    return is_maximally_diacritized(segment(word), at_context_start, at_context_end, cfg);
}

} // namespace maxdiac

#endif
