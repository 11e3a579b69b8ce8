// maxdiac: stats, check, normalize, diacritize, evaluate.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <maxdiac/maxdiac.hpp>

using namespace maxdiac;
using nlohmann::json;

namespace {

constexpr int exit_usage = 1;
constexpr int exit_data = 2;

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::vector<std::string> inputs;
    std::string output;
    bool hsb = false;

    std::string db_path;
    std::string predictor = "null";
    std::string context = "full";
    std::string ranking = "extended";
    std::string rules_path;
    std::string oracle_ref;

    std::string compare;
    bool raw = false;
};

std::string strip_cr(std::string s)
{
    if (!s.empty() && s.back() == '\r')
        s.pop_back();
    return s;
}

std::vector<std::string> read_lines(std::istream& in)
{
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line))
        out.push_back(strip_cr(std::move(line)));
    return out;
}

std::vector<std::string> read_file_lines(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError("cannot open " + path);
    return read_lines(in);
}

/// Lines of every input file, or of stdin when none are given.
std::vector<std::string> read_inputs(const std::vector<std::string>& paths)
{
    if (paths.empty())
        return read_lines(std::cin);
    std::vector<std::string> out;
    for (const auto& p : paths) {
        auto lines = read_file_lines(p);
        out.insert(out.end(), lines.begin(), lines.end());
    }
    return out;
}

/// Decodes one line; in HSB mode a trailing TAB column stays as written.
std::u32string decode_line(const std::string& line, bool hsb)
{
    if (!hsb)
        return utf8::decode(line);
    auto tab = line.find('\t');
    auto text = hsb::line_to_arabic(line.substr(0, tab));
    if (tab != std::string::npos)
        text += utf8::decode(line.substr(tab));
    return text;
}

std::vector<std::u32string> decode_lines(const std::vector<std::string>& lines, bool hsb)
{
    std::vector<std::u32string> out;
    out.reserve(lines.size());
    for (std::size_t i = 0; i < lines.size(); ++i) {
        try {
            out.push_back(decode_line(lines[i], hsb));
        } catch (const std::exception& e) {
            throw DataError("input line " + std::to_string(i + 1) + ": " + e.what());
        }
    }
    return out;
}

std::string encode_text(std::u32string_view text, bool hsb) { return hsb ? hsb::line_to_latin(text) : utf8::encode(text); }

class Output {
public:
    explicit Output(const std::string& path)
    {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_)
                throw DataError("cannot write " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

// stats ----------------------------------------------------------------------

json stats_json(const StatsAccumulator& acc)
{
    const auto s = finalize(acc);
    json dist = json::object();
    for (std::size_t i = 0; i < diacritic_count; ++i)
        dist[std::string(diacritic_names[i])] = s.diac_distribution[i];
    std::vector<double> dist_vec(s.diac_distribution.begin(), s.diac_distribution.end());
    std::vector<std::uint64_t> marks(acc.marks.begin(), acc.marks.end());
    return {
        {"line_count", s.line_count},
        {"word_count", s.word_count},
        {"pct_lines_with_diac", s.pct_lines_with_diac},
        {"pct_words_with_diac", s.pct_words_with_diac},
        {"diacs_per_diac_word", s.diacs_per_diac_word},
        {"pct_maximal_words", s.pct_maximal_words},
        {"diac_distribution", dist_vec},
        {"diac_distribution_by_name", dist},
        {"pct_wellformed_of_diac_words", s.pct_wellformed_of_diac_words},
        {"tanwiyn_alif_order", {{"before", s.tanwiyn_alif_order.before}, {"after", s.tanwiyn_alif_order.after}}},
        {"shadda_vowel_order",
         {{"shadda_first", s.shadda_vowel_order.shadda_first}, {"vowel_first", s.shadda_vowel_order.vowel_first}}},
        {"empty_corpus", s.empty_corpus},
        {"empty_distribution", s.empty_distribution},
        {"empty_tanwiyn_sites", s.empty_tanwiyn_sites},
        {"empty_shadda_sites", s.empty_shadda_sites},
        {"raw",
         {{"lines", acc.lines},
          {"lines_with_diac", acc.lines_with_diac},
          {"words", acc.words},
          {"diac_words", acc.diac_words},
          {"marks_in_diac_words", acc.marks_in_diac_words},
          {"maximal_words", acc.maximal_words},
          {"wellformed_diac_words", acc.wellformed_diac_words},
          {"marks", marks},
          {"tanwiyn_before_alif", acc.tanwiyn_before_alif},
          {"tanwiyn_after_alif", acc.tanwiyn_after_alif},
          {"shadda_first", acc.shadda_first},
          {"vowel_first", acc.vowel_first}}},
    };
}

std::array<double, diacritic_count> reference_distribution(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError("cannot open " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw DataError(path + ": " + e.what());
    }
    const json* d = j.is_array() ? &j : (j.contains("diac_distribution") ? &j["diac_distribution"] : nullptr);
    if (!d || !d->is_array() || d->size() != diacritic_count)
        throw DataError(path + ": expected a diac_distribution array of " + std::to_string(diacritic_count) + " numbers");
    std::array<double, diacritic_count> out{};
    for (std::size_t i = 0; i < diacritic_count; ++i) {
        if (!(*d)[i].is_number())
            throw DataError(path + ": non-numeric distribution entry");
        out[i] = (*d)[i].get<double>();
    }
    return out;
}

int run_stats(const Options& o)
{
    StatsAccumulator acc;
    for (const auto& line : decode_lines(read_inputs(o.inputs), o.hsb))
        acc.add_line(std::u32string_view(line));
    auto j = stats_json(acc);
    if (!o.compare.empty()) {
        auto r = correlate(finalize(acc).diac_distribution, reference_distribution(o.compare));
        j["correlation"] = r ? json(*r) : json(nullptr);
    }
    Output out(o.output);
    out.stream() << j.dump(2) << '\n';
    return 0;
}

// check / normalize ----------------------------------------------------------

int run_check(const Options& o)
{
    Output out(o.output);
    auto& os = out.stream();
    for (const auto& line : decode_lines(read_inputs(o.inputs), o.hsb)) {
        auto toks = tokenize(line).tokens;
        for (const auto& win : context_windows(toks)) {
            ContextWindow cw;
            for (auto i : win)
                cw.words.push_back(toks[i].text);
            auto verdicts = check_context(cw);
            for (std::size_t k = 0; k < win.size(); ++k)
                os << encode_text(cw.words[k], o.hsb) << '\t' << (verdicts[k].ok() ? 1 : 0) << '\t'
                   << verdicts[k].joined_codes() << '\n';
        }
    }
    return 0;
}

int run_normalize(const Options& o)
{
    Output out(o.output);
    for (const auto& line : decode_lines(read_inputs(o.inputs), o.hsb)) {
        auto tl = tokenize(line);
        for (auto& t : tl.tokens)
            if (t.is_word())
                t.text = normalize(t.text);
        out.stream() << encode_text(tl.join(), o.hsb) << '\n';
    }
    return 0;
}

// diacritize -----------------------------------------------------------------

ContextMode parse_mode(const std::string& s)
{
    return s == "none" ? ContextMode::None : s == "solo" ? ContextMode::Solo : ContextMode::Full;
}

Ranking parse_ranking(const std::string& s)
{
    return s == "base" ? Ranking::Base : s == "oracle" ? Ranking::Oracle : Ranking::Extended;
}

std::vector<std::vector<std::u32string>> oracle_words(const std::vector<std::u32string>& ref)
{
    std::vector<std::vector<std::u32string>> out;
    for (const auto& line : ref) {
        std::vector<std::u32string> row;
        for (const auto& t : tokenize(line.substr(0, line.find(U'\t'))).tokens)
            if (t.is_word())
                row.push_back(t.text.substr(0, t.text.find(U'|')));
        out.push_back(std::move(row));
    }
    return out;
}

int run_diacritize(const Options& o)
{
    std::ifstream db_in(o.db_path, std::ios::binary);
    if (!db_in)
        throw DataError("cannot open " + o.db_path);
    const auto db = load_db(db_in, o.hsb);

    std::optional<RuleSet> rules;
    if (!o.rules_path.empty()) {
        std::ifstream in(o.rules_path, std::ios::binary);
        if (!in)
            throw DataError("cannot open " + o.rules_path);
        rules = RuleSet::parse(in);
    }

    std::unique_ptr<Predictor> predictor;
    if (o.predictor.starts_with("gold:")) {
        const auto path = o.predictor.substr(5);
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw DataError("cannot open " + path);
        predictor = std::make_unique<GoldPredictor>(GoldPredictor::from_stream(in));
    } else {
        predictor = std::make_unique<NullPredictor>();
    }

    std::vector<std::vector<std::u32string>> gold;
    PipelineConfig cfg;
    cfg.db = &db;
    cfg.predictor = predictor.get();
    cfg.mode = parse_mode(o.context);
    cfg.ranking = parse_ranking(o.ranking);
    if (rules)
        cfg.rules = &*rules;
    if (cfg.ranking == Ranking::Oracle) {
        gold = oracle_words(decode_lines(read_file_lines(o.oracle_ref), o.hsb));
        cfg.oracle_gold = &gold;
    }

    Output out(o.output);
    DiacritizeCounts counts;
    const auto lines = decode_lines(read_inputs(o.inputs), o.hsb);
    for (std::size_t i = 0; i < lines.size(); ++i)
        out.stream() << encode_text(diacritize_line(lines[i], i, cfg, &counts), o.hsb) << '\n';
    std::cerr << "words: " << counts.words << ", no analysis: " << counts.no_analysis << '\n';
    return 0;
}

// evaluate -------------------------------------------------------------------

int run_evaluate(const Options& o)
{
    const auto hyp = decode_lines(read_file_lines(o.inputs.at(0)), o.hsb);
    const auto ref = decode_lines(read_file_lines(o.inputs.at(1)), o.hsb);
    const auto rep = evaluate(hyp, ref, o.raw);
    json j{{"total", rep.total}, {"correct", rep.correct}, {"accuracy", rep.accuracy()}};
    if (!rep.per_genre.empty()) {
        json g = json::object();
        for (const auto& [name, c] : rep.per_genre)
            g[name] = {{"total", c.total}, {"correct", c.correct}, {"accuracy", c.accuracy()}};
        j["per_genre"] = g;
    }
    Output out(o.output);
    out.stream() << j.dump(2) << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Arabic diacritic normalization, validation, statistics and diacritization"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_flag("--hsb", o.hsb, "read and write HSB transliteration");
        sub->add_option("--output,-o", o.output, "output file (default stdout)");
    };

    auto* stats = app.add_subcommand("stats", "diacritic usage statistics as JSON");
    stats->add_option("inputs", o.inputs, "input files (default stdin)");
    stats->add_option("--compare", o.compare, "reference JSON with a diac_distribution array");
    common(stats);

    auto* check = app.add_subcommand("check", "per-word well-formedness as TSV");
    check->add_option("inputs", o.inputs, "input files (default stdin)");
    common(check);

    auto* norm = app.add_subcommand("normalize", "canonical cluster order");
    norm->add_option("inputs", o.inputs, "input files (default stdin)");
    common(norm);

    auto* diac = app.add_subcommand("diacritize", "analyze, rank and post-edit");
    diac->add_option("inputs", o.inputs, "input files (default stdin)");
    diac->add_option("--db", o.db_path, "analysis database TSV")->required();
    diac->add_option("--predictor", o.predictor, "null or gold:FILE")
        ->check([](const std::string& s) {
            return s == "null" || (s.starts_with("gold:") && s.size() > 5) ? std::string{}
                                                                           : std::string{"expected null or gold:FILE"};
        });
    diac->add_option("--context", o.context, "none, solo or full")
        ->check(CLI::IsMember({"none", "solo", "full"}));
    diac->add_option("--ranking", o.ranking, "base, extended or oracle")
        ->check(CLI::IsMember({"base", "extended", "oracle"}));
    diac->add_option("--oracle-ref", o.oracle_ref, "reference file for --ranking oracle");
    diac->add_option("--rules", o.rules_path, "context rule table");
    common(diac);

    auto* eval = app.add_subcommand("evaluate", "strict word accuracy");
    eval->add_option("hyp", o.inputs, "hypothesis file then reference file")->expected(2)->required();
    eval->add_flag("--raw", o.raw, "compare without normalizing");
    common(eval);

    try {
        app.parse(argc, argv);
        if (diac->parsed() && o.ranking == "oracle" && o.oracle_ref.empty())
            throw CLI::ValidationError("--ranking oracle", "needs --oracle-ref");
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : exit_usage;
    }

    try {
        if (stats->parsed())
            return run_stats(o);
        if (check->parsed())
            return run_check(o);
        if (norm->parsed())
            return run_normalize(o);
        if (diac->parsed())
            return run_diacritize(o);
        return run_evaluate(o);
    } catch (const std::exception& e) {
        std::cerr << "maxdiac: " << e.what() << '\n';
        return exit_data;
    }
}
