#ifndef MAXDIAC_CONTEXT_EDITS_HPP
#define MAXDIAC_CONTEXT_EDITS_HPP

// Inter-word rewrite cascade turning ranked internal forms into surface
// forms: Alif Wasla spelling by position, epenthetic vowels before a Wasla,
// and flag removal. Rules are data; the defaults below ship as
// data/context_rules.tsv.

#include <cctype>
#include <istream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "analysis_db.hpp"
#include "script.hpp"

namespace maxdiac {

enum class ContextMode : std::uint8_t { None, Solo, Full };

class UnknownFlagError : public std::runtime_error {
public:
    UnknownFlagError(const std::u32string& word, char32_t flag)
        : std::runtime_error("unknown allomorph flag '%" + utf8::encode(std::u32string(1, flag)) + "' on "
                             + utf8::encode(word)),
          word_(word)
    {
    }
    const std::u32string& word() const { return word_; }

private:
    std::u32string word_;
};

class RuleError : public std::runtime_error {
public:
    RuleError(std::size_t line, const std::string& what)
        : std::runtime_error("rule line " + std::to_string(line) + ": " + what)
    {
    }
};

struct TriggerAtom {
    enum class Kind : std::uint8_t { Always, CtxStart, CtxEnd, WaslaInitial, FinalSukun, Flag, NoFlag, NextWasla, NextArticle };
    Kind kind = Kind::Always;
    bool negated = false;
    char32_t flag = 0;
};

struct Rewrite {
    enum class Kind : std::uint8_t { WaslaKeepVowel, WaslaDropVowel, FinalVowel, StripFlags };
    Kind kind = Kind::StripFlags;
    Diacritic vowel = Diacritic::Kasra;

    bool epenthetic() const { return kind == Kind::FinalVowel; }
};

struct EditRule {
    std::string id;
    std::vector<TriggerAtom> trigger; // conjunction
    Rewrite rewrite;
    std::size_t order = 0;
};

inline constexpr std::string_view default_context_rules =
    "# id\ttrigger\trewrite\n"
    "wasla_context_initial\tctx_start&wasla_initial\twasla_keep_vowel\n"
    "wasla_medial\t!ctx_start&wasla_initial\twasla_drop_vowel\n"
    "epenthesis_plural_pronoun\tfinal_sukun&next:wasla&flag:m\tfinal_vowel:u\n"
    "epenthesis_min_article\tfinal_sukun&next:article&flag:n\tfinal_vowel:a\n"
    "epenthesis_min\tfinal_sukun&next:wasla&flag:n\tfinal_vowel:i\n"
    "epenthesis_default\tfinal_sukun&next:wasla&noflag\tfinal_vowel:i\n"
    "strip_flags\t*\tstrip_flags\n";

class RuleSet {
public:
    static RuleSet parse(std::istream& in)
    {
        RuleSet rs;
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            if (line.empty() || line[0] == '#')
                continue;
            auto t1 = line.find('\t');
            auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
            if (t2 == std::string::npos || line.find('\t', t2 + 1) != std::string::npos)
                throw RuleError(line_no, "expected id<TAB>trigger<TAB>rewrite");
            EditRule r;
            r.id = line.substr(0, t1);
            r.order = rs.rules_.size();
            r.trigger = parse_trigger(std::string_view(line).substr(t1 + 1, t2 - t1 - 1), line_no);
            r.rewrite = parse_rewrite(std::string_view(line).substr(t2 + 1), line_no);
            for (const auto& a : r.trigger)
                if (a.kind == TriggerAtom::Kind::Flag)
                    rs.known_flags_.insert(a.flag);
            rs.rules_.push_back(std::move(r));
        }
        return rs;
    }

    static RuleSet parse(std::string_view text)
    {
        std::istringstream in{std::string(text)};
        return parse(in);
    }

    static const RuleSet& standard()
    {
        static const RuleSet rs = parse(default_context_rules);
        return rs;
    }

    const std::vector<EditRule>& rules() const { return rules_; }
    bool knows_flag(char32_t f) const { return known_flags_.count(f) != 0; }

private:
    static std::vector<TriggerAtom> parse_trigger(std::string_view text, std::size_t line_no)
    {
        std::vector<TriggerAtom> out;
        std::size_t pos = 0;
        while (true) {
            auto amp = text.find('&', pos);
            auto tok = text.substr(pos, amp == std::string_view::npos ? amp : amp - pos);
            TriggerAtom a;
            if (tok.starts_with("!")) {
                a.negated = true;
                tok.remove_prefix(1);
            }
            using K = TriggerAtom::Kind;
            if (tok == "*")
                a.kind = K::Always;
            else if (tok == "ctx_start")
                a.kind = K::CtxStart;
            else if (tok == "ctx_end")
                a.kind = K::CtxEnd;
            else if (tok == "wasla_initial")
                a.kind = K::WaslaInitial;
            else if (tok == "final_sukun")
                a.kind = K::FinalSukun;
            else if (tok == "noflag")
                a.kind = K::NoFlag;
            else if (tok == "next:wasla")
                a.kind = K::NextWasla;
            else if (tok == "next:article")
                a.kind = K::NextArticle;
            else if (tok.starts_with("flag:") && tok.size() == 6 && std::isalpha(static_cast<unsigned char>(tok[5]))) {
                a.kind = K::Flag;
                a.flag = static_cast<char32_t>(tok[5]);
            } else
                throw RuleError(line_no, "unknown trigger atom '" + std::string(tok) + "'");
            out.push_back(a);
            if (amp == std::string_view::npos)
                return out;
            pos = amp + 1;
        }
    }

    static Rewrite parse_rewrite(std::string_view text, std::size_t line_no)
    {
        Rewrite r;
        if (text == "wasla_keep_vowel")
            r.kind = Rewrite::Kind::WaslaKeepVowel;
        else if (text == "wasla_drop_vowel")
            r.kind = Rewrite::Kind::WaslaDropVowel;
        else if (text == "strip_flags")
            r.kind = Rewrite::Kind::StripFlags;
        else if (text == "final_vowel:a" || text == "final_vowel:i" || text == "final_vowel:u") {
            r.kind = Rewrite::Kind::FinalVowel;
            r.vowel = text.back() == 'a' ? Diacritic::Fatha : text.back() == 'u' ? Diacritic::Damma : Diacritic::Kasra;
        } else
            throw RuleError(line_no, "unknown rewrite '" + std::string(text) + "'");
        return r;
    }

    std::vector<EditRule> rules_;
    std::set<char32_t> known_flags_;
};

/// One word of a context window. Unanalyzed words are emitted verbatim but
/// still serve as neighbours.
struct EditWord {
    std::u32string form;
    bool analyzed = true;
};

namespace detail {

inline bool wasla_initial(const DiacWord& w) { return !w.segments.empty() && w.segments[0].letter == letters::alif_wasla; }

/// Neighbour test: internal Wasla or any plain word-initial Alif.
inline bool begins_with_wasla(const DiacWord& w) { return starts_with_wasla(w); }

inline bool begins_with_article(const DiacWord& w)
{
    return begins_with_wasla(w) && w.segments.size() > 2 && w.segments[1].letter == letters::lam;
}

struct WordState {
    DiacWord body;
    std::u32string flags;
};

inline void apply_rewrite(WordState& w, const Rewrite& r)
{
    auto& seg = w.body.segments;
    switch (r.kind) {
    case Rewrite::Kind::WaslaKeepVowel:
        if (!seg.empty() && seg[0].letter == letters::alif_wasla)
            seg[0].letter = letters::alif;
        break;
    case Rewrite::Kind::WaslaDropVowel:
        if (!seg.empty() && seg[0].letter == letters::alif_wasla) {
            seg[0].letter = letters::alif;
            seg[0].cluster.raw.clear();
        }
        break;
    case Rewrite::Kind::FinalVowel:
        if (!seg.empty()) {
            auto& c = seg.back().cluster;
            bool shadda = c.has(Diacritic::Shadda);
            c.raw.clear();
            if (shadda)
                c.raw.push_back(Diacritic::Shadda);
            c.raw.push_back(r.vowel);
        }
        break;
    case Rewrite::Kind::StripFlags:
        w.flags.clear();
        break;
    }
}

} // namespace detail

/// Rewrites one context window. In None mode every word is treated as
/// mid-context with no neighbours; in Solo mode as its own context.
inline std::vector<std::u32string> apply_context_edits(const std::vector<EditWord>& words, ContextMode mode,
                                                       const RuleSet& rules = RuleSet::standard())
{
    using K = TriggerAtom::Kind;
    const auto n = words.size();

    std::vector<detail::WordState> state;
    state.reserve(n);
    for (const auto& w : words) {
        auto f = split_flags(w.form);
        if (w.analyzed)
            for (char32_t c : f.flags)
                if (!rules.knows_flag(c))
                    throw UnknownFlagError(w.form, c);
        state.push_back({segment(f.body), f.flags});
    }

    std::vector<std::u32string> out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (!words[k].analyzed) {
            out.push_back(words[k].form);
            continue;
        }
        const bool start = mode == ContextMode::Solo || (mode == ContextMode::Full && k == 0);
        const bool end = mode != ContextMode::Full || k + 1 == n;
        // the neighbour is judged on its internal form, before its own rewrites
        const DiacWord* next = (mode == ContextMode::Full && k + 1 < n) ? &state[k + 1].body : nullptr;

        auto w = state[k];
        bool epenthesized = false;
        for (const auto& rule : rules.rules()) {
            bool fire = true;
            for (const auto& a : rule.trigger) {
                bool v = false;
                switch (a.kind) {
                case K::Always: v = true; break;
                case K::CtxStart: v = start; break;
                case K::CtxEnd: v = end; break;
                case K::WaslaInitial: v = detail::wasla_initial(w.body); break;
                case K::FinalSukun: v = ends_with_sukun(w.body); break;
                case K::Flag: v = w.flags.find(a.flag) != std::u32string::npos; break;
                case K::NoFlag: v = w.flags.empty(); break;
                case K::NextWasla: v = next && detail::begins_with_wasla(*next); break;
                case K::NextArticle: v = next && detail::begins_with_article(*next); break;
                }
                if (v == a.negated) {
                    fire = false;
                    break;
                }
            }
            if (!fire || (rule.rewrite.epenthetic() && epenthesized))
                continue;
            detail::apply_rewrite(w, rule.rewrite);
            epenthesized = epenthesized || rule.rewrite.epenthetic();
        }
        // surface guarantee: no flags, no internal Wasla codepoint
        out.push_back(externalize(w.body.serialize(), start));
    }
    return out;
}

inline std::vector<std::u32string> apply_context_edits(const std::vector<std::u32string>& words, ContextMode mode,
                                                       const RuleSet& rules = RuleSet::standard())
{
    std::vector<EditWord> ew;
    ew.reserve(words.size());
    for (const auto& w : words)
        ew.push_back({w, true});
    return apply_context_edits(ew, mode, rules);
}

} // namespace maxdiac

#endif
