#ifndef MAXDIAC_ANALYSIS_DB_HPP
#define MAXDIAC_ANALYSIS_DB_HPP

// Flat morphological-analysis store keyed by the dediacritized surface, plus
// the repair pass that lifts ATB-style diacritizations to internal maximal form.

#include <cctype>
#include <charconv>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hsb.hpp"
#include "script.hpp"
#include "utf8.hpp"
#include "wellformedness.hpp"

namespace maxdiac {

class LoadError : public std::runtime_error {
public:
    LoadError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
    {
    }
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class RepairError : public std::runtime_error {
public:
    RepairError(const std::string& what, WellFormedVerdict v) : std::runtime_error(what), verdict_(std::move(v)) {}
    const WellFormedVerdict& verdict() const { return verdict_; }

private:
    WellFormedVerdict verdict_;
};

// Internal forms ----------------------------------------------------------

/// An internal form split into its diacritized body and `%`-flags.
struct FlaggedForm {
    std::u32string body;
    std::u32string flags; // one ASCII letter per flag, in order of appearance
};

inline FlaggedForm split_flags(std::u32string_view internal)
{
    FlaggedForm out;
    auto pct = internal.find(U'%');
    out.body = std::u32string(internal.substr(0, pct));
    while (pct != std::u32string_view::npos) {
        auto next = internal.find(U'%', pct + 1);
        auto flag = internal.substr(pct + 1, next == std::u32string_view::npos ? next : next - pct - 1);
        out.flags += flag;
        pct = next;
    }
    return out;
}

inline std::u32string strip_flags(std::u32string_view internal) { return split_flags(internal).body; }

/// Surface spelling of an internal form: flags dropped, Alif Wasla written as
/// a plain Alif that keeps its vowel only context-initially.
inline std::u32string externalize(std::u32string_view internal, bool at_context_start)
{
    auto word = segment(strip_flags(internal));
    for (std::size_t i = 0; i < word.segments.size(); ++i) {
        auto& s = word.segments[i];
        if (s.letter != letters::alif_wasla)
            continue;
        s.letter = letters::alif;
        if (!(at_context_start && i == 0))
            s.cluster.raw.clear();
    }
    return word.serialize();
}

inline std::u32string lookup_key(std::u32string_view word) { return dediacritize(normalize(word)); }

// Analyses ----------------------------------------------------------------

struct Analysis {
    std::u32string diac_internal;
    std::u32string lemma;
    std::string pos;
    std::map<std::string, std::string> features;
    double lemma_logprob = 0;
    double pos_lemma_logprob = 0;

    std::u32string flags() const { return split_flags(diac_internal).flags; }

    /// Feature value with `pos` served from the POS column.
    const std::string* feature(const std::string& name) const
    {
        if (name == "pos")
            return &pos;
        auto it = features.find(name);
        return it == features.end() ? nullptr : &it->second;
    }

    friend bool operator==(const Analysis&, const Analysis&) = default;
};

inline std::string format_features(const std::map<std::string, std::string>& f)
{
    if (f.empty())
        return "_";
    std::string out;
    for (const auto& [k, v] : f) {
        if (!out.empty())
            out += ';';
        out += k + '=' + v;
    }
    return out;
}

inline std::map<std::string, std::string> parse_features(std::string_view text)
{
    std::map<std::string, std::string> out;
    if (text.empty() || text == "_")
        return out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find(';', pos);
        auto item = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
        auto eq = item.find('=');
        if (eq == std::string_view::npos || eq == 0)
            throw std::invalid_argument("feature item without name=value: '" + std::string(item) + "'");
        out[std::string(item.substr(0, eq))] = std::string(item.substr(eq + 1));
        if (end == std::string_view::npos)
            break;
        pos = end + 1;
    }
    return out;
}

inline std::string format_double(double d)
{
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, d);
    return std::string(buf, r.ptr);
}

inline double parse_double(std::string_view s)
{
    double d = 0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), d);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size())
        throw std::invalid_argument("not a number: '" + std::string(s) + "'");
    return d;
}

/// Checks the stored-analysis invariants against a key; empty string if fine.
inline std::string analysis_problem(std::u32string_view key, const Analysis& a,
                                    const GrammarConfig& cfg = GrammarConfig::standard())
{
    const auto surface = externalize(a.diac_internal, true);
    if (dediacritize(surface) != key)
        return "diacritization does not dediacritize to its key";
    auto v = check_word(surface, true, false, cfg);
    if (!v.ok())
        return "diacritization is not well formed (" + v.joined_codes() + ")";
    return {};
}

// Database ----------------------------------------------------------------

class AnalysisDb {
public:
    struct Metadata {
        std::string version;
        std::string source;
    };

    const std::vector<Analysis>& lookup(std::u32string_view word) const
    {
        static const std::vector<Analysis> none;
        auto it = entries_.find(lookup_key(word));
        return it == entries_.end() ? none : it->second;
    }

    std::size_t key_count() const { return entries_.size(); }
    std::size_t analysis_count() const
    {
        std::size_t n = 0;
        for (const auto& [k, v] : entries_)
            n += v.size();
        return n;
    }
    bool empty() const { return entries_.empty(); }
    const Metadata& metadata() const { return meta_; }
    const std::vector<std::u32string>& keys() const { return order_; }

    /// Writes the TSV form; keys in first-seen order, analyses in row order.
    void serialize(std::ostream& out, bool transliterated = false) const
    {
        if (!meta_.version.empty())
            out << "# version: " << meta_.version << '\n';
        if (!meta_.source.empty())
            out << "# source: " << meta_.source << '\n';
        auto text = [&](std::u32string_view s) {
            return transliterated ? hsb::line_to_latin(s) : utf8::encode(s);
        };
        auto internal = [&](std::u32string_view s) {
            auto f = split_flags(s);
            auto out = text(f.body);
            for (char32_t c : f.flags) {
                out += '%';
                utf8::append(out, c);
            }
            return out;
        };
        for (const auto& key : order_) {
            for (const auto& a : entries_.at(key)) {
                out << text(key) << '\t' << internal(a.diac_internal) << '\t' << text(a.lemma) << '\t' << a.pos << '\t'
                    << format_features(a.features) << '\t' << format_double(a.lemma_logprob) << '\t'
                    << format_double(a.pos_lemma_logprob) << '\n';
            }
        }
    }

    std::string serialize(bool transliterated = false) const
    {
        std::ostringstream ss;
        serialize(ss, transliterated);
        return ss.str();
    }

    friend AnalysisDb load_db(std::istream& in, bool transliterated, const GrammarConfig& cfg);

private:
    std::unordered_map<std::u32string, std::vector<Analysis>> entries_;
    std::vector<std::u32string> order_;
    Metadata meta_;
};

namespace detail {

inline std::vector<std::string_view> split_tabs(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        auto t = line.find('\t', pos);
        out.push_back(line.substr(pos, t == std::string_view::npos ? std::string_view::npos : t - pos));
        if (t == std::string_view::npos)
            return out;
        pos = t + 1;
    }
}

inline std::string_view trim_meta(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

} // namespace detail

/// Reads the seven-column TSV. With `transliterated`, the key, diacritization
/// and lemma columns are HSB and converted on the way in.
inline AnalysisDb load_db(std::istream& in, bool transliterated = false,
                          const GrammarConfig& cfg = GrammarConfig::standard())
{
    AnalysisDb db;
    std::string line;
    std::size_t line_no = 0;

    auto text = [&](std::string_view s) {
        return transliterated ? hsb::line_to_arabic(s) : utf8::decode(s);
    };

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (line[0] == '#') {
            std::string_view body = detail::trim_meta(std::string_view(line).substr(1));
            if (body.starts_with("version:"))
                db.meta_.version = detail::trim_meta(body.substr(8));
            else if (body.starts_with("source:"))
                db.meta_.source = detail::trim_meta(body.substr(7));
            continue;
        }

        auto cols = detail::split_tabs(line);
        if (cols.size() != 7)
            throw LoadError(line_no, "expected 7 tab-separated columns, found " + std::to_string(cols.size()));

        std::u32string key;
        Analysis a;
        try {
            key = text(cols[0]);
            auto pct = cols[1].find('%');
            a.diac_internal = text(cols[1].substr(0, pct));
            if (pct != std::string_view::npos)
                a.diac_internal += utf8::decode(cols[1].substr(pct));
            a.lemma = text(cols[2]);
            a.pos = std::string(cols[3]);
            a.features = parse_features(cols[4]);
            a.lemma_logprob = parse_double(cols[5]);
            a.pos_lemma_logprob = parse_double(cols[6]);
        } catch (const std::exception& e) {
            throw LoadError(line_no, e.what());
        }
        if (key.empty() || has_diacritic(key))
            throw LoadError(line_no, "key must be non-empty and carry no diacritics");
        if (a.pos.empty())
            throw LoadError(line_no, "empty POS");
        for (char32_t f : a.flags())
            if (!(f < 0x80 && std::isalpha(static_cast<int>(f))))
                throw LoadError(line_no, "flag must be a single ASCII letter after '%'");

        if (auto problem = analysis_problem(key, a, cfg); !problem.empty())
            throw ValidationError("line " + std::to_string(line_no) + ": entry " + utf8::encode(key) + " -> "
                                  + utf8::encode(a.diac_internal) + ": " + problem);

        auto [it, fresh] = db.entries_.try_emplace(key);
        if (fresh)
            db.order_.push_back(key);
        if (std::find(it->second.begin(), it->second.end(), a) == it->second.end())
            it->second.push_back(std::move(a));
    }
    return db;
}

inline AnalysisDb load_db_string(std::string_view text, bool transliterated = false,
                                 const GrammarConfig& cfg = GrammarConfig::standard())
{
    std::istringstream in{std::string(text)};
    return load_db(in, transliterated, cfg);
}

inline const std::vector<Analysis>& lookup(const AnalysisDb& db, std::u32string_view word) { return db.lookup(word); }

// Repair ------------------------------------------------------------------

namespace detail {

inline bool is_prefix_letter(char32_t c)
{
    return c == letters::waw || c == letters::fa || c == letters::ba || c == letters::kaf || c == letters::lam;
}

} // namespace detail

struct RepairOptions {
    bool omit_final_sukun = false; // utterance-final Sukun style
};

/// Lifts an ATB-convention diacritization to internal maximal form:
/// Fatha before long-vowel Alif, Tanwiyn Alif order, Sukun on vowel-less
/// consonants, and the article Alif as a marked Wasla.
inline std::u32string maximalize_analysis(std::u32string_view atb, const RepairOptions& opt = {},
                                          const GrammarConfig& cfg = GrammarConfig::standard())
{
    auto flagged = split_flags(atb);
    auto word = segment(flagged.body);
    auto& seg = word.segments;
    const auto n = seg.size();

    // (i) long-vowel Alif after a letter with no vowel mark
    for (std::size_t i = 1; i < n; ++i) {
        if (seg[i].letter != letters::alif || !seg[i].cluster.empty())
            continue;
        auto& prev = seg[i - 1];
        if (prev.cluster.vowel() || detail::is_alif_like(prev.letter) || prev.letter == letters::alif_madda)
            continue;
        if (i + 1 == n && prev.letter == letters::waw)
            continue; // Alif of plurality
        if (i == 1 && n > 3 && seg[i + 1].letter == letters::lam && detail::is_prefix_letter(prev.letter))
            continue; // conjunction or preposition before the article
        prev.cluster.raw.push_back(Diacritic::Fatha);
    }

    // (ii)
    word = normalize(word);

    // (iii) Sukun where the grammar wants a cluster on a silent consonant
    auto parse = parse_word(word, true, cfg);
    for (std::size_t i = 0; i < n; ++i) {
        auto& s = word.segments[i];
        auto role = parse.roles[i];
        if (role != SegmentRole::Consonant && role != SegmentRole::ArticleLamMoon)
            continue;
        if (!s.cluster.empty() || detail::is_alif_like(s.letter) || s.letter == letters::alif_maqsura)
            continue;
        if (i + 1 == n && opt.omit_final_sukun)
            continue;
        s.cluster.raw.push_back(Diacritic::Sukun);
    }

    // (iv) article-initial Alif becomes a Wasla carrying Fatha
    if (n >= 3 && word.segments[0].letter == letters::alif && word.segments[1].letter == letters::lam) {
        auto& first = word.segments[0];
        if (first.cluster.empty() || (first.cluster.raw.size() == 1 && first.cluster.has(Diacritic::Fatha))) {
            auto role = parse.roles[1];
            if (role == SegmentRole::ArticleLamMoon || role == SegmentRole::ArticleLamSun) {
                first.letter = letters::alif_wasla;
                first.cluster.raw = {Diacritic::Fatha};
            }
        }
    }

    auto out = word.serialize();
    auto v = check_word(externalize(out, true), true, opt.omit_final_sukun, cfg);
    if (opt.omit_final_sukun) {
        std::erase_if(v.violations, [&](const Violation& x) {
            return x.code == ViolationCode::MissingClusterOnLetter && x.segment + 1 == n;
        });
    }
    if (!v.ok())
        throw RepairError("cannot complete " + utf8::encode(atb) + " (" + v.joined_codes() + ")", v);
    for (char32_t f : flagged.flags) {
        out += U'%';
        out += f;
    }
    return out;
}

} // namespace maxdiac

#endif
