#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include <maxdiac/wellformedness.hpp>

#include "test_util.hpp"

using namespace maxdiac;
using testutil::ar;
using V = ViolationCode;

namespace {

WellFormedVerdict check(std::string_view hsb, bool start = false, bool end = false)
{
    return check_word(ar(hsb), start, end);
}

std::vector<V> codes(std::string_view hsb, bool start = false, bool end = false)
{
    return check(hsb, start, end).codes();
}

std::vector<WellFormedVerdict> context(std::initializer_list<std::string_view> words)
{
    ContextWindow w;
    for (auto h : words)
        w.words.push_back(ar(h));
    return check_context(w);
}

} // namespace

TEST(CheckWord, AppendixExamples)
{
    EXPECT_TRUE(check("kuk~aAkãA").ok());
    EXPECT_EQ(codes("kuta~AbAã"), (std::vector{V::ShaddaOrder, V::TanwiynOrder}));
}

TEST(CheckWord, InitialDiacriticIsTheOnlyConsistencyError)
{
    auto v = check("ĩktAb");
    EXPECT_TRUE(v.has(V::WordInitialDiacritic));
    for (auto c : v.codes())
        EXPECT_TRUE(c == V::WordInitialDiacritic || is_incompleteness(c)) << to_string(c);
}

TEST(CheckWord, MaximalRowOfRunningExample)
{
    EXPECT_TRUE(check("Aal.yaw.ma", true).ok());
    for (auto w : {"Âaš.raqati", "Alš~am.su", "Als~aATiςaħu", "mina", "Al.γar.bi"})
        EXPECT_TRUE(check(w).ok()) << w << ": " << check(w).joined_codes();
    EXPECT_TRUE(check("Al.γar.bi", false, true).ok());
}

TEST(CheckWord, WildErrorTaxonomy)
{
    EXPECT_TRUE(check("kata~b").has(V::ShaddaOrder));
    EXPECT_TRUE(check("kitaAbuu").has(V::IncompatibleCluster));
    EXPECT_TRUE(check("katiub").has(V::IncompatibleCluster));
    // Diacritic on the wrong letter: bare Alif after Kasra.
    EXPECT_TRUE(check("ktiAb").has(V::BareLetterNotAllowed));
}

TEST(CheckWord, StartingPatterns)
{
    EXPECT_TRUE(check("waAl.kitaAbu").ok());
    EXPECT_TRUE(check("bil.qalami").ok());
    EXPECT_TRUE(check("fabiAl.qalami").ok());
    EXPECT_TRUE(check("waAlš~am.su").ok());
    EXPECT_TRUE(check("Aib.nihi", true).ok());
    EXPECT_TRUE(check("Ab.nihi").ok());

    // Article Sukun before a sun letter.
    EXPECT_TRUE(check("Al.š~am.su").has(V::InvalidStartPattern));
    // Sun letter without its Shadda.
    EXPECT_TRUE(check("Alšam.su").has(V::InvalidStartPattern));
    // Elided Alif after a prefix carries no vowel.
    EXPECT_TRUE(check("waAal.kitaAbu").has(V::InvalidStartPattern));
    // Article Alif takes Fatha only.
    EXPECT_TRUE(check("Ail.kitaAbu", true).has(V::InvalidStartPattern));
    EXPECT_TRUE(check("A.ktb").has(V::InvalidStartPattern));
}

TEST(CheckWord, WaslaVowelAtContextStart)
{
    EXPECT_TRUE(check("Al.yaw.ma", true).has(V::WaslaMissingInitialVowel));
    EXPECT_TRUE(check("Al.yaw.ma", false).ok());
    // Internal Wasla marker behaves like the Alif it stands for.
    EXPECT_TRUE(check("Äal.γar.bi", true).ok());
}

TEST(CheckWord, EndingPatterns)
{
    EXPECT_TRUE(check("kitaAbũ").ok());
    EXPECT_TRUE(check("kitaAbĩ").ok());
    EXPECT_TRUE(check("kitaAbãA").ok());
    EXPECT_TRUE(check("hudãý").ok());
    EXPECT_TRUE(check("madiynaħã").ok());
    EXPECT_TRUE(check("mab.daÂã").ok());
    EXPECT_TRUE(check("samaA'ã").ok());
    EXPECT_TRUE(check("juz.'ãA").ok());
    EXPECT_TRUE(check("katabuwA").ok());
    EXPECT_TRUE(check("ramaw.A").ok());
    EXPECT_TRUE(check("sam~ũ").ok());

    EXPECT_TRUE(check("kitaAbã").has(V::InvalidEndingPattern));
    EXPECT_TRUE(check("madiynaħãA").has(V::InvalidEndingPattern));
    EXPECT_TRUE(check("kitũAbu").has(V::InvalidEndingPattern));
    EXPECT_TRUE(check("kitaAbũA").has(V::InvalidEndingPattern));
}

TEST(CheckWord, MiddleUnits)
{
    EXPECT_TRUE(check("haAðaA").ok());
    EXPECT_TRUE(check("haáðaA").ok());
    EXPECT_TRUE(check("kuwtibat.").ok());
    EXPECT_TRUE(check("kabiyru").ok());
    EXPECT_TRUE(check("ςalaý").ok());
    EXPECT_TRUE(check("Āmana").ok());

    EXPECT_TRUE(check("kataba~.").has(V::IncompatibleCluster));
    EXPECT_TRUE(check("k~taba").has(V::MissingClusterOnLetter));
    EXPECT_TRUE(check("kawtaba").has(V::MissingClusterOnLetter));
    EXPECT_TRUE(check("qaAat").has(V::IncompatibleCluster));
}

TEST(CheckWord, DoubleConsonants)
{
    EXPECT_TRUE(check("bin.t.").has(V::DoubleSukun));
    EXPECT_TRUE(check("bin.t.", false, true).ok());
    EXPECT_TRUE(check("yak.t~ubu").has(V::SukunBeforeShadda));
    // Relaxation covers only the final pair.
    EXPECT_TRUE(check("yak.t.bu", false, true).has(V::DoubleSukun));
}

TEST(CheckWord, Exceptions)
{
    EXPECT_TRUE(check("ςam.raw").ok());
    EXPECT_TRUE(check("ςam.rĩw").ok());
    EXPECT_TRUE(check("waςam.ruw").ok());
    auto v = check("ςamraw");
    EXPECT_TRUE(v.has(V::UnknownException));

    std::istringstream cfg("# none\n");
    auto empty = ExceptionLexicon::from_stream(cfg);
    GrammarConfig strict;
    strict.exceptions = &empty;
    EXPECT_FALSE(check_word(ar("ςam.raw"), false, false, strict).ok());
}

TEST(CheckWord, NotApplicableTokens)
{
    auto v = check_word(U"abc", false, false);
    EXPECT_FALSE(v.applicable);
    EXPECT_FALSE(check_word(U"", false, false).applicable);
    EXPECT_FALSE(check_word(U"123", false, false).applicable);
}

TEST(CheckWord, Deterministic)
{
    for (auto w : {"kuta~AbAã", "ĩktAb", "Alšmsu"})
        EXPECT_EQ(check(w).violations, check(w).violations);
}

TEST(CheckWord, MonotoneRepair)
{
    // Words failing only on Shadda/Tanwiyn order pass once normalized.
    for (auto w : {"kuta~AbAã", "kata~ba", "kitaAbAã", "Als~aATiςaħu", "hudýã"}) {
        auto before = check(w);
        bool only_order = std::all_of(before.violations.begin(), before.violations.end(), [](const Violation& v) {
            return v.code == V::ShaddaOrder || v.code == V::TanwiynOrder;
        });
        if (!only_order)
            continue;
        auto after = check_word(normalize(ar(w)), false, false);
        EXPECT_TRUE(after.ok()) << w << ": " << after.joined_codes();
    }
}

TEST(CheckWord, MonotoneRepairProperty)
{
    // Shuffle cluster orders of well-formed words and move their Tanwiyn
    // after the Alif carrier; normalize must clear exactly those codes.
    const std::vector<std::string_view> base = {"kuk~aAkãA", "kitaAbãA", "Als~aATiςaħu", "kat~aba", "hudãý",
                                                "yušar~ifu", "mu~", "haáðaA"};
    std::mt19937 rng(17);
    int tested = 0;
    for (int i = 0; i < 400; ++i) {
        auto word = segment(ar(base[i % base.size()]));
        for (auto& s : word.segments)
            std::shuffle(s.cluster.raw.begin(), s.cluster.raw.end(), rng);
        auto n = word.segments.size();
        if (n >= 2 && (rng() & 1) && word.segments[n - 2].cluster.has(Diacritic::Fathatan)
            && is_tanwiyn_carrier(word.segments[n - 1].letter)) {
            auto& raw = word.segments[n - 2].cluster.raw;
            raw.erase(std::remove(raw.begin(), raw.end(), Diacritic::Fathatan), raw.end());
            word.segments[n - 1].cluster.raw.push_back(Diacritic::Fathatan);
        }
        auto before = check_word(word, false, false);
        bool only_order = std::all_of(before.violations.begin(), before.violations.end(), [](const Violation& v) {
            return v.code == V::ShaddaOrder || v.code == V::TanwiynOrder;
        });
        if (!only_order)
            continue;
        ++tested;
        EXPECT_TRUE(check_word(normalize(word), false, false).ok()) << testutil::lat(word.serialize());
    }
    EXPECT_GT(tested, 200);
}

TEST(CheckWord, NeverPassesIncompatibleOrOrphan)
{
    std::mt19937 rng(23);
    const auto pool = ar("ktbAwymnš") + std::u32string(diacritic_codepoints.begin(), diacritic_codepoints.end());
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int i = 0; i < 20000; ++i) {
        std::u32string w;
        for (int k = 0; k < 7; ++k)
            w.push_back(pool[pick(rng)]);
        auto seg = segment(w);
        bool bad = seg.has_orphan();
        for (const auto& s : seg.segments)
            bad = bad || !s.cluster.compatible();
        if (bad && has_arabic_letter(w))
            EXPECT_FALSE(check_word(seg, false, false).ok()) << testutil::lat(w);
        // Every failing word carries at least one code.
        auto v = check_word(seg, i % 2 == 0, i % 3 == 0);
        EXPECT_EQ(v.ok(), v.violations.empty());
    }
}

TEST(CheckContext, EpenthesisAndWasla)
{
    auto ok = context({"mini", "Ab.nihi"});
    ASSERT_EQ(ok.size(), 2u);
    EXPECT_TRUE(ok[0].ok());
    EXPECT_TRUE(ok[1].ok());

    auto bad = context({"min.", "Ab.nihi"});
    EXPECT_EQ(bad[0].codes(), (std::vector{V::ContextFinalSukunBeforeWasla}));
    EXPECT_TRUE(bad[1].ok());

    EXPECT_EQ(context({"Al.yaw.ma"})[0].codes(), (std::vector{V::WaslaMissingInitialVowel}));
    EXPECT_TRUE(context({"Aal.yaw.ma"})[0].ok());
}

TEST(CheckContext, FullSentence)
{
    auto v = context({"Aal.yaw.ma", "Âaš.raqati", "Alš~am.su", "Als~aATiςaħu", "mina", "Al.γar.bi"});
    for (const auto& x : v)
        EXPECT_TRUE(x.ok()) << x.joined_codes();

    auto unrepaired = context({"Aal.yaw.ma", "Âaš.raqat.", "Alš~am.su"});
    EXPECT_TRUE(unrepaired[1].has(V::ContextFinalSukunBeforeWasla));
}

TEST(CheckContext, TanwiynAndLongVowelBeforeWasla)
{
    for (const auto& x : context({"kitaAbũ", "Al.γar.bi"}))
        EXPECT_TRUE(x.ok());
    for (const auto& x : context({"fiy", "Al.γar.bi"}))
        EXPECT_TRUE(x.ok());
}

TEST(CheckContext, PausalSukunOnlyAtEnd)
{
    auto v = context({"hum.", "bin.t."});
    EXPECT_TRUE(v[1].ok());
    auto mid = context({"bin.t.", "hum."});
    EXPECT_TRUE(mid[0].has(V::DoubleSukun));
}

TEST(IsMaximal, Examples)
{
    EXPECT_TRUE(is_maximally_diacritized(ar("Alš~am.su"), false, false));
    EXPECT_FALSE(is_maximally_diacritized(ar("Alšmsu"), false, false));
    EXPECT_FALSE(is_maximally_diacritized(U"", false, false));
    EXPECT_FALSE(is_maximally_diacritized(ar("Alš~am.su"), true, false));
    EXPECT_TRUE(is_maximally_diacritized(ar("Aalš~am.su"), true, false));
}
