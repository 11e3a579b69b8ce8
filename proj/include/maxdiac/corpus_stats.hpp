#ifndef MAXDIAC_CORPUS_STATS_HPP
#define MAXDIAC_CORPUS_STATS_HPP

// Diacritic usage statistics over line-oriented corpora. Raw counts live in
// a mergeable accumulator; ratios are derived once at finalize().

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "tokenizer.hpp"
#include "utf8.hpp"
#include "wellformedness.hpp"

namespace maxdiac {

struct StatsAccumulator {
    std::uint64_t lines = 0;
    std::uint64_t lines_with_diac = 0;
    std::uint64_t words = 0;
    std::uint64_t diac_words = 0;
    std::uint64_t marks_in_diac_words = 0;
    std::uint64_t maximal_words = 0;
    std::uint64_t wellformed_diac_words = 0;
    std::array<std::uint64_t, diacritic_count> marks{};
    std::uint64_t tanwiyn_before_alif = 0; // ãA / ãý
    std::uint64_t tanwiyn_after_alif = 0;  // Aã / ýã
    std::uint64_t shadda_first = 0;
    std::uint64_t vowel_first = 0;

    void add_line(std::u32string_view line, const GrammarConfig& cfg = GrammarConfig::standard());
    void add_line(std::string_view utf8_line, const GrammarConfig& cfg = GrammarConfig::standard())
    {
        add_line(utf8::decode(utf8_line), cfg);
    }

    StatsAccumulator& merge(const StatsAccumulator& o)
    {
        lines += o.lines;
        lines_with_diac += o.lines_with_diac;
        words += o.words;
        diac_words += o.diac_words;
        marks_in_diac_words += o.marks_in_diac_words;
        maximal_words += o.maximal_words;
        wellformed_diac_words += o.wellformed_diac_words;
        for (std::size_t i = 0; i < diacritic_count; ++i)
            marks[i] += o.marks[i];
        tanwiyn_before_alif += o.tanwiyn_before_alif;
        tanwiyn_after_alif += o.tanwiyn_after_alif;
        shadda_first += o.shadda_first;
        vowel_first += o.vowel_first;
        return *this;
    }

    friend StatsAccumulator merge(StatsAccumulator a, const StatsAccumulator& b) { return a.merge(b); }
    friend bool operator==(const StatsAccumulator&, const StatsAccumulator&) = default;
};

struct CorpusStats {
    std::uint64_t line_count = 0;
    std::uint64_t word_count = 0;
    double pct_lines_with_diac = 0;
    double pct_words_with_diac = 0;
    double diacs_per_diac_word = 0;
    double pct_maximal_words = 0;
    std::array<double, diacritic_count> diac_distribution{};
    double pct_wellformed_of_diac_words = 0;
    struct {
        double before = 0, after = 0;
    } tanwiyn_alif_order;
    struct {
        double shadda_first = 0, vowel_first = 0;
    } shadda_vowel_order;

    bool empty_corpus = true;       // no lines
    bool empty_distribution = true; // no diacritics at all
    bool empty_tanwiyn_sites = true;
    bool empty_shadda_sites = true;
};

namespace detail {

inline double pct(std::uint64_t num, std::uint64_t den) { return den == 0 ? 0.0 : 100.0 * double(num) / double(den); }

} // namespace detail

inline void StatsAccumulator::add_line(std::u32string_view line, const GrammarConfig& cfg)
{
    ++lines;
    auto tl = tokenize(line);
    bool line_diac = false;

    for (const auto& tok : tl.tokens) {
        if (!tok.is_word())
            continue;
        ++words;
        const auto prof = diacritic_profile(tok.text);
        std::uint64_t n = 0;
        for (std::size_t i = 0; i < diacritic_count; ++i) {
            marks[i] += prof[i];
            n += prof[i];
        }
        if (n == 0)
            continue;
        line_diac = true;
        ++diac_words;
        marks_in_diac_words += n;

        auto seg = segment(tok.text);
        for (const auto& s : seg.segments) {
            const auto& raw = s.cluster.raw;
            auto sh = std::find(raw.begin(), raw.end(), Diacritic::Shadda);
            auto vw = std::find_if(raw.begin(), raw.end(), [](Diacritic d) { return is_vowel_class(d); });
            if (sh != raw.end() && vw != raw.end())
                ++(sh < vw ? shadda_first : vowel_first);
        }
        const auto k = seg.segments.size();
        if (k >= 2 && is_tanwiyn_carrier(seg.segments[k - 1].letter)) {
            if (seg.segments[k - 1].cluster.has(Diacritic::Fathatan))
                ++tanwiyn_after_alif;
            else if (seg.segments[k - 2].cluster.has(Diacritic::Fathatan))
                ++tanwiyn_before_alif;
        }
    }
    if (line_diac)
        ++lines_with_diac;

    for (const auto& win : context_windows(tl.tokens)) {
        ContextWindow cw;
        for (auto i : win)
            cw.words.push_back(tl.tokens[i].text);
        auto verdicts = check_context(cw, cfg);
        for (std::size_t k = 0; k < win.size(); ++k) {
            if (!has_diacritic(cw.words[k]))
                continue;
            const auto& v = verdicts[k];
            if (v.applicable && v.ok())
                ++maximal_words;
            if (v.applicable && v.consistent())
                ++wellformed_diac_words;
        }
    }
}

inline CorpusStats finalize(const StatsAccumulator& a)
{
    CorpusStats s;
    s.line_count = a.lines;
    s.word_count = a.words;
    s.empty_corpus = a.lines == 0;
    s.pct_lines_with_diac = detail::pct(a.lines_with_diac, a.lines);
    s.pct_words_with_diac = detail::pct(a.diac_words, a.words);
    s.diacs_per_diac_word = a.diac_words == 0 ? 0.0 : double(a.marks_in_diac_words) / double(a.diac_words);
    s.pct_maximal_words = detail::pct(a.maximal_words, a.words);
    s.pct_wellformed_of_diac_words = detail::pct(a.wellformed_diac_words, a.diac_words);

    std::uint64_t total = 0;
    for (auto m : a.marks)
        total += m;
    s.empty_distribution = total == 0;
    for (std::size_t i = 0; i < diacritic_count; ++i)
        s.diac_distribution[i] = total == 0 ? 0.0 : double(a.marks[i]) / double(total);

    const auto tw = a.tanwiyn_before_alif + a.tanwiyn_after_alif;
    s.empty_tanwiyn_sites = tw == 0;
    s.tanwiyn_alif_order.before = detail::pct(a.tanwiyn_before_alif, tw);
    s.tanwiyn_alif_order.after = detail::pct(a.tanwiyn_after_alif, tw);

    const auto sv = a.shadda_first + a.vowel_first;
    s.empty_shadda_sites = sv == 0;
    s.shadda_vowel_order.shadda_first = detail::pct(a.shadda_first, sv);
    s.shadda_vowel_order.vowel_first = detail::pct(a.vowel_first, sv);
    return s;
}

template <typename Range>
CorpusStats analyze_corpus(const Range& lines, const GrammarConfig& cfg = GrammarConfig::standard())
{
    StatsAccumulator acc;
    for (const auto& l : lines)
        acc.add_line(l, cfg);
    return finalize(acc);
}

/// Pearson correlation; nullopt when either vector has zero variance.
inline std::optional<double> correlate(const std::array<double, diacritic_count>& a,
                                       const std::array<double, diacritic_count>& b)
{
    constexpr double n = diacritic_count;
    double ma = 0, mb = 0;
    for (std::size_t i = 0; i < diacritic_count; ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double sab = 0, saa = 0, sbb = 0;
    for (std::size_t i = 0; i < diacritic_count; ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    constexpr double eps = 1e-20; // rounding residue of a constant vector
    if (saa <= eps || sbb <= eps)
        return std::nullopt;
    return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

} // namespace maxdiac

#endif
