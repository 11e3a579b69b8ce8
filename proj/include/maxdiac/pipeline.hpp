#ifndef MAXDIAC_PIPELINE_HPP
#define MAXDIAC_PIPELINE_HPP

// End-to-end diacritization (lookup, rank, contextual post-edit) and the
// strict word-accuracy scorer.

#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "analysis_db.hpp"
#include "context_edits.hpp"
#include "ranker.hpp"
#include "tokenizer.hpp"
#include "utf8.hpp"

namespace maxdiac {

// Predictors -----------------------------------------------------------------

class Predictor {
public:
    virtual ~Predictor() = default;
    /// Prediction for the `word`-th Arabic word of input line `line`.
    virtual FeaturePrediction predict(std::size_t line, std::size_t word) const = 0;
};

class NullPredictor : public Predictor {
public:
    FeaturePrediction predict(std::size_t, std::size_t) const override { return {}; }
};

/// Token-aligned feature maps: one line per input line, one TAB field per
/// Arabic word holding `name=value;...` or `_`.
class GoldPredictor : public Predictor {
public:
    static GoldPredictor from_stream(std::istream& in)
    {
        GoldPredictor g;
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            std::vector<std::map<std::string, std::string>> row;
            if (!line.empty())
                for (auto field : detail::split_tabs(line))
                    row.push_back(parse_features(field));
            g.rows_.push_back(std::move(row));
        }
        return g;
    }

    FeaturePrediction predict(std::size_t line, std::size_t word) const override
    {
        if (line >= rows_.size() || word >= rows_[line].size())
            return {};
        return {rows_[line][word], FeaturePrediction::Source::Gold};
    }

    std::size_t line_count() const { return rows_.size(); }

private:
    std::vector<std::vector<std::map<std::string, std::string>>> rows_;
};

// Diacritization -------------------------------------------------------------

enum class Ranking : std::uint8_t { Base, Extended, Oracle };

struct PipelineConfig {
    const AnalysisDb* db = nullptr;
    const Predictor* predictor = nullptr; // null means NullPredictor
    ContextMode mode = ContextMode::Full;
    Ranking ranking = Ranking::Extended;
    const RuleSet* rules = &RuleSet::standard();
    const RankConfig* rank = &RankConfig::standard();
    /// Gold words per line for Ranking::Oracle, aligned with Arabic words.
    const std::vector<std::vector<std::u32string>>* oracle_gold = nullptr;
};

struct DiacritizeCounts {
    std::size_t words = 0;
    std::size_t no_analysis = 0;
};

inline std::u32string diacritize_line(std::u32string_view line, std::size_t line_no, const PipelineConfig& cfg,
                                      DiacritizeCounts* counts = nullptr)
{
    if (!cfg.db)
        throw std::invalid_argument("pipeline needs an analysis database");
    static const NullPredictor null_predictor;
    const Predictor& pred = cfg.predictor ? *cfg.predictor : null_predictor;

    auto tl = tokenize(line, line_no);
    std::vector<std::optional<std::u32string>> chosen(tl.tokens.size());

    std::size_t word_no = 0;
    for (std::size_t i = 0; i < tl.tokens.size(); ++i) {
        const auto& tok = tl.tokens[i];
        if (!tok.is_word())
            continue;
        const auto w = word_no++;
        if (counts)
            ++counts->words;
        const auto& as = cfg.db->lookup(tok.text);
        if (as.empty()) {
            if (counts)
                ++counts->no_analysis;
            continue;
        }
        switch (cfg.ranking) {
        case Ranking::Base:
            chosen[i] = as[rank_base_order(as, pred.predict(line_no, w), *cfg.rank)[0].index].diac_internal;
            break;
        case Ranking::Extended:
            chosen[i] = as[rank_extended_order(as, pred.predict(line_no, w), tok.text, *cfg.rank)[0].index]
                            .diac_internal;
            break;
        case Ranking::Oracle: {
            const std::u32string* gold = nullptr;
            if (cfg.oracle_gold && line_no < cfg.oracle_gold->size() && w < (*cfg.oracle_gold)[line_no].size())
                gold = &(*cfg.oracle_gold)[line_no][w];
            chosen[i] = gold ? oracle_select(as, *gold).diac_internal
                             : as[rank_extended_order(as, pred.predict(line_no, w), tok.text, *cfg.rank)[0].index]
                                   .diac_internal;
            break;
        }
        }
    }

    for (const auto& win : context_windows(tl.tokens)) {
        std::vector<EditWord> ew;
        ew.reserve(win.size());
        for (auto i : win)
            ew.push_back(chosen[i] ? EditWord{*chosen[i], true} : EditWord{tl.tokens[i].text, false});
        auto out = apply_context_edits(ew, cfg.mode, *cfg.rules);
        for (std::size_t k = 0; k < win.size(); ++k)
            tl.tokens[win[k]].text = std::move(out[k]);
    }
    return tl.join();
}

// Evaluation -----------------------------------------------------------------

class AlignmentError : public std::runtime_error {
public:
    AlignmentError(std::size_t line, std::size_t token, const std::string& what)
        : std::runtime_error("line " + std::to_string(line + 1) + ", token " + std::to_string(token + 1) + ": "
                             + what),
          line_(line), token_(token)
    {
    }
    std::size_t line() const { return line_; }   // 0-based
    std::size_t token() const { return token_; } // 0-based, first divergent index

private:
    std::size_t line_, token_;
};

struct EvalCounts {
    std::size_t total = 0;
    std::size_t correct = 0;
    double accuracy() const { return total == 0 ? 0.0 : 100.0 * double(correct) / double(total); }
};

struct EvalReport : EvalCounts {
    std::map<std::string, EvalCounts> per_genre; // empty when the reference has no genre column
};

namespace detail {

inline std::vector<std::u32string> split_on(std::u32string_view s, char32_t sep)
{
    std::vector<std::u32string> out;
    std::size_t pos = 0;
    while (true) {
        auto k = s.find(sep, pos);
        out.emplace_back(s.substr(pos, k == std::u32string_view::npos ? k : k - pos));
        if (k == std::u32string_view::npos)
            return out;
        pos = k + 1;
    }
}

} // namespace detail

/// Strict word accuracy over Arabic reference words. Reference tokens may
/// list alternatives joined by `|`; a TAB-separated trailing column names the
/// genre.
inline EvalReport evaluate(const std::vector<std::u32string>& hyp, const std::vector<std::u32string>& ref,
                           bool raw = false)
{
    if (hyp.size() != ref.size())
        throw AlignmentError(std::min(hyp.size(), ref.size()), 0,
                             "line counts differ (" + std::to_string(hyp.size()) + " vs " + std::to_string(ref.size())
                                 + ")");
    EvalReport rep;
    auto same = [&](std::u32string_view a, std::u32string_view b) { return raw ? a == b : normalize(a) == normalize(b); };

    for (std::size_t l = 0; l < ref.size(); ++l) {
        auto fields = detail::split_on(ref[l], U'\t');
        std::optional<std::string> genre;
        if (fields.size() >= 2)
            genre = utf8::encode(fields.back());
        auto h = tokenize(detail::split_on(hyp[l], U'\t')[0]).tokens;
        auto r = tokenize(fields[0]).tokens;
        const auto n = std::min(h.size(), r.size());
        for (std::size_t k = 0; k < n; ++k)
            if ((h[k].kind == Token::Kind::Punctuation) != (r[k].kind == Token::Kind::Punctuation))
                throw AlignmentError(l, k, "token kinds differ");
        if (h.size() != r.size())
            throw AlignmentError(l, n, "token counts differ (" + std::to_string(h.size()) + " vs "
                                           + std::to_string(r.size()) + ")");
        for (std::size_t k = 0; k < n; ++k) {
            if (!r[k].is_word())
                continue;
            bool hit = false;
            for (const auto& alt : detail::split_on(r[k].text, U'|'))
                hit = hit || same(h[k].text, alt);
            ++rep.total;
            rep.correct += hit;
            if (genre) {
                auto& g = rep.per_genre[*genre];
                ++g.total;
                g.correct += hit;
            }
        }
    }
    return rep;
}

} // namespace maxdiac

#endif
