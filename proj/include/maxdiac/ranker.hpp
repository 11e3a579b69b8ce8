#ifndef MAXDIAC_RANKER_HPP
#define MAXDIAC_RANKER_HPP

// Candidate ranking: the feature-match baseline and the re-ranking that
// first minimizes substitutions plus deletions against the input's own
// (partial) diacritics.

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "analysis_db.hpp"

namespace maxdiac {

class EmptyCandidates : public std::invalid_argument {
public:
    EmptyCandidates() : std::invalid_argument("no candidate analyses to rank") {}
};

struct FeaturePrediction {
    enum class Source : std::uint8_t { Null, Gold, External };

    std::map<std::string, std::string> features;
    Source source = Source::Null;
};

struct RankConfig {
    std::vector<std::string> counted_features{"pos", "asp", "cas", "gen", "mod", "num", "per", "stt", "vox"};

    static const RankConfig& standard()
    {
        static const RankConfig cfg;
        return cfg;
    }
};

inline int match_count(const Analysis& a, const FeaturePrediction& p, const RankConfig& cfg = RankConfig::standard())
{
    int m = 0;
    for (const auto& name : cfg.counted_features) {
        auto want = p.features.find(name);
        if (want == p.features.end())
            continue;
        const auto* have = a.feature(name);
        if (have && *have == want->second)
            ++m;
    }
    return m;
}

// Edit profile -------------------------------------------------------------

struct EditProfile {
    int insertions = 0;
    int substitutions = 0;
    int deletions = 0;

    int total() const { return insertions + substitutions + deletions; }
    friend bool operator==(const EditProfile&, const EditProfile&) = default;
};

/// Levenshtein edits turning `input` into `candidate`. Among minimal
/// alignments the backtrace prefers match, substitution, deletion, insertion.
inline EditProfile edit_profile(std::u32string_view input, std::u32string_view candidate)
{
    const auto n = input.size(), m = candidate.size();
    std::vector<int> dp((n + 1) * (m + 1));
    auto at = [&](std::size_t i, std::size_t j) -> int& { return dp[i * (m + 1) + j]; };
    for (std::size_t i = 0; i <= n; ++i)
        at(i, 0) = static_cast<int>(i);
    for (std::size_t j = 0; j <= m; ++j)
        at(0, j) = static_cast<int>(j);
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= m; ++j)
            at(i, j) = std::min({at(i - 1, j - 1) + (input[i - 1] != candidate[j - 1]), at(i - 1, j) + 1,
                                 at(i, j - 1) + 1});

    EditProfile p;
    std::size_t i = n, j = m;
    while (i > 0 || j > 0) {
        const int here = at(i, j);
        if (i > 0 && j > 0 && input[i - 1] == candidate[j - 1] && here == at(i - 1, j - 1)) {
            --i, --j;
        } else if (i > 0 && j > 0 && here == at(i - 1, j - 1) + 1) {
            ++p.substitutions;
            --i, --j;
        } else if (i > 0 && here == at(i - 1, j) + 1) {
            ++p.deletions;
            --i;
        } else {
            ++p.insertions;
            --j;
        }
    }
    return p;
}

/// Profile against the better of the two Wasla spellings of a candidate.
inline EditProfile candidate_profile(std::u32string_view normalized_input, const Analysis& a)
{
    auto key = [](const EditProfile& e) {
        return std::make_tuple(e.substitutions + e.deletions, e.substitutions, e.deletions, e.insertions);
    };
    auto mid = edit_profile(normalized_input, normalize(externalize(a.diac_internal, false)));
    auto start = edit_profile(normalized_input, normalize(externalize(a.diac_internal, true)));
    return key(start) < key(mid) ? start : mid;
}

// Ranking ------------------------------------------------------------------

struct RankedCandidate {
    std::size_t index; // position in the caller's list
    int matches = 0;
    EditProfile edits;
};

namespace detail {

/// Final tiebreak making every ordering total: W, then lemma, POS, features.
inline bool total_less(const Analysis& a, const Analysis& b)
{
    return std::tie(a.diac_internal, a.lemma, a.pos, a.features, a.lemma_logprob, a.pos_lemma_logprob)
        < std::tie(b.diac_internal, b.lemma, b.pos, b.features, b.lemma_logprob, b.pos_lemma_logprob);
}

inline std::vector<RankedCandidate> score(const std::vector<Analysis>& as, const FeaturePrediction& pred,
                                          const RankConfig& cfg)
{
    if (as.empty())
        throw EmptyCandidates();
    std::vector<RankedCandidate> out;
    out.reserve(as.size());
    for (std::size_t i = 0; i < as.size(); ++i)
        out.push_back({i, match_count(as[i], pred, cfg), {}});
    return out;
}

} // namespace detail

/// Baseline order: M desc, P desc, L desc, W asc.
inline std::vector<RankedCandidate> rank_base_order(const std::vector<Analysis>& as, const FeaturePrediction& pred,
                                                    const RankConfig& cfg = RankConfig::standard())
{
    auto rc = detail::score(as, pred, cfg);
    std::stable_sort(rc.begin(), rc.end(), [&](const RankedCandidate& x, const RankedCandidate& y) {
        const auto &a = as[x.index], &b = as[y.index];
        if (x.matches != y.matches)
            return x.matches > y.matches;
        if (a.pos_lemma_logprob != b.pos_lemma_logprob)
            return a.pos_lemma_logprob > b.pos_lemma_logprob;
        if (a.lemma_logprob != b.lemma_logprob)
            return a.lemma_logprob > b.lemma_logprob;
        return detail::total_less(a, b);
    });
    return rc;
}

/// Re-ranking order: exact matches first, then (S+D asc, M desc, S asc,
/// D asc, P desc, L desc, I asc, W asc).
inline std::vector<RankedCandidate> rank_extended_order(const std::vector<Analysis>& as,
                                                        const FeaturePrediction& pred, std::u32string_view input,
                                                        const RankConfig& cfg = RankConfig::standard())
{
    auto rc = detail::score(as, pred, cfg);
    const auto norm = normalize(input);
    for (auto& c : rc)
        c.edits = candidate_profile(norm, as[c.index]);
    std::stable_sort(rc.begin(), rc.end(), [&](const RankedCandidate& x, const RankedCandidate& y) {
        const auto &a = as[x.index], &b = as[y.index];
        const bool ex = x.edits.total() == 0, ey = y.edits.total() == 0;
        if (ex != ey)
            return ex;
        const int sdx = x.edits.substitutions + x.edits.deletions, sdy = y.edits.substitutions + y.edits.deletions;
        if (sdx != sdy)
            return sdx < sdy;
        if (x.matches != y.matches)
            return x.matches > y.matches;
        if (x.edits.substitutions != y.edits.substitutions)
            return x.edits.substitutions < y.edits.substitutions;
        if (x.edits.deletions != y.edits.deletions)
            return x.edits.deletions < y.edits.deletions;
        if (a.pos_lemma_logprob != b.pos_lemma_logprob)
            return a.pos_lemma_logprob > b.pos_lemma_logprob;
        if (a.lemma_logprob != b.lemma_logprob)
            return a.lemma_logprob > b.lemma_logprob;
        if (x.edits.insertions != y.edits.insertions)
            return x.edits.insertions < y.edits.insertions;
        return detail::total_less(a, b);
    });
    return rc;
}

namespace detail {

inline std::vector<Analysis> gather(const std::vector<Analysis>& as, const std::vector<RankedCandidate>& order)
{
    std::vector<Analysis> out;
    out.reserve(order.size());
    for (const auto& c : order)
        out.push_back(as[c.index]);
    return out;
}

} // namespace detail

inline std::vector<Analysis> rank_base(const std::vector<Analysis>& as, const FeaturePrediction& pred,
                                       const RankConfig& cfg = RankConfig::standard())
{
    return detail::gather(as, rank_base_order(as, pred, cfg));
}

inline std::vector<Analysis> rank_extended(const std::vector<Analysis>& as, const FeaturePrediction& pred,
                                           std::u32string_view input, const RankConfig& cfg = RankConfig::standard())
{
    return detail::gather(as, rank_extended_order(as, pred, input, cfg));
}

/// The analysis nearest to a gold diacritization (ties: W ascending).
inline const Analysis& oracle_select(const std::vector<Analysis>& as, std::u32string_view gold)
{
    if (as.empty())
        throw EmptyCandidates();
    const auto norm = normalize(gold);
    const Analysis* best = nullptr;
    int best_d = 0;
    for (const auto& a : as) {
        int d = candidate_profile(norm, a).total();
        if (!best || d < best_d || (d == best_d && detail::total_less(a, *best))) {
            best = &a;
            best_d = d;
        }
    }
    return *best;
}

} // namespace maxdiac

#endif
