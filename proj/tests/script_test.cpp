#include <gtest/gtest.h>

#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include <maxdiac/hsb.hpp>
#include <maxdiac/script.hpp>

#include "test_util.hpp"

using namespace maxdiac;
using testutil::ar;
using testutil::lat;

namespace {

// Random words over letters, the nine marks and Alif/Alif-Maqsura, with
// marks free to land anywhere (including word-initially).
std::u32string random_word(std::mt19937& rng, std::size_t max_len = 10)
{
    static const std::u32string pool = ar("ktbAýwylšsmnħ") + std::u32string(diacritic_codepoints.begin(),
                                                                              diacritic_codepoints.end());
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::u32string w;
    for (auto n = len(rng); n > 0; --n)
        w.push_back(pool[pick(rng)]);
    return w;
}

std::multiset<char32_t> marks(std::u32string_view w)
{
    std::multiset<char32_t> out;
    for (char32_t c : w)
        if (is_diacritic(c))
            out.insert(c);
    return out;
}

} // namespace

TEST(ClassifyChar, Examples)
{
    auto fatha = classify_char(0x064E);
    EXPECT_EQ(fatha.kind, CharClass::Kind::ArabicDiacritic);
    EXPECT_EQ(fatha.diacritic, Diacritic::Fatha);

    EXPECT_EQ(classify_char(U'A').kind, CharClass::Kind::Other);

    auto shin = classify_char(0x0634);
    EXPECT_EQ(shin.kind, CharClass::Kind::ArabicLetter);
    EXPECT_EQ(shin.letter, LetterKind::Sun);
}

TEST(ClassifyChar, NineDiacriticsMapInjectively)
{
    std::set<char32_t> seen;
    for (std::size_t i = 0; i < diacritic_count; ++i) {
        auto d = static_cast<Diacritic>(i);
        EXPECT_EQ(as_diacritic(codepoint(d)), d);
        seen.insert(codepoint(d));
        EXPECT_EQ(classify_char(codepoint(d)).kind, CharClass::Kind::ArabicDiacritic);
    }
    EXPECT_EQ(seen.size(), 9u);
}

TEST(ClassifyChar, EveryArabicLetterIsClassified)
{
    for (char32_t c = 0x0600; c <= 0x06FF; ++c)
        if (is_arabic_letter(c))
            EXPECT_EQ(classify_char(c).kind, CharClass::Kind::ArabicLetter) << std::hex << static_cast<std::uint32_t>(c);
}

TEST(ClassifyChar, SunMoonWeakTables)
{
    // Article l assimilates before š and s in the running example.
    EXPECT_EQ(classify_char(ar("š")[0]).letter, LetterKind::Sun);
    EXPECT_EQ(classify_char(ar("s")[0]).letter, LetterKind::Sun);
    EXPECT_EQ(classify_char(ar("γ")[0]).letter, LetterKind::Moon);
    EXPECT_EQ(classify_char(ar("y")[0]).letter, LetterKind::Weak);
    for (char32_t c : ar("AwyýÄ"))
        EXPECT_EQ(classify_char(c).letter, LetterKind::Weak);
    std::size_t sun = 0;
    for (char32_t c = 0x0621; c <= 0x064A; ++c)
        sun += LetterTable::standard().is_sun(c);
    EXPECT_EQ(sun, 14u);
}

TEST(ClassifyChar, TableOverride)
{
    std::istringstream cfg("# custom\nsun\t" + utf8::encode(ar("t")) + "\n");
    auto table = LetterTable::from_stream(cfg);
    EXPECT_TRUE(table.is_sun(ar("t")[0]));
    EXPECT_FALSE(table.is_sun(ar("š")[0]));
    EXPECT_EQ(classify_char(ar("š")[0], table).letter, LetterKind::Other);
}

TEST(ClassifyChar, OtherClasses)
{
    EXPECT_EQ(classify_char(U'7').kind, CharClass::Kind::Digit);
    EXPECT_EQ(classify_char(0x0663).kind, CharClass::Kind::Digit);
    EXPECT_EQ(classify_char(U' ').kind, CharClass::Kind::Whitespace);
    EXPECT_EQ(classify_char(0x060C).kind, CharClass::Kind::Punctuation);
    EXPECT_EQ(classify_char(U'.').kind, CharClass::Kind::Punctuation);
}

TEST(Segment, Examples)
{
    auto w = segment(ar("kat~ab"));
    ASSERT_EQ(w.segments.size(), 3u);
    EXPECT_FALSE(w.has_orphan());
    EXPECT_EQ(w.segments[0].cluster.raw, (std::vector{Diacritic::Fatha}));
    EXPECT_EQ(w.segments[1].cluster.raw, (std::vector{Diacritic::Shadda, Diacritic::Fatha}));
    EXPECT_TRUE(w.segments[2].cluster.empty());

    auto bare = segment(ar("ktb"));
    ASSERT_EQ(bare.segments.size(), 3u);
    for (const auto& s : bare.segments)
        EXPECT_TRUE(s.cluster.empty());

    auto orphan = segment(ar("ĩktAb"));
    EXPECT_EQ(orphan.initial_orphan.raw, (std::vector{Diacritic::Kasratan}));
    EXPECT_EQ(orphan.segments.size(), 4u);
}

TEST(Segment, RoundTripProperty)
{
    std::mt19937 rng(7);
    for (int i = 0; i < 5000; ++i) {
        auto w = random_word(rng);
        EXPECT_EQ(segment(w).serialize(), w);
    }
}

TEST(Cluster, CanonicalView)
{
    auto c = segment(ar("ta~á")).segments[0].cluster;
    ASSERT_TRUE(c.compatible());
    EXPECT_TRUE(c.canonical()->shadda);
    EXPECT_EQ(c.canonical()->vowel, Diacritic::Fatha);
    EXPECT_TRUE(c.canonical()->dagger);
    EXPECT_FALSE(c.in_canonical_order());

    EXPECT_FALSE(segment(ar("tau")).segments[0].cluster.compatible());
    EXPECT_FALSE(segment(ar("tuu")).segments[0].cluster.compatible());
    EXPECT_FALSE(segment(ar("tiá")).segments[0].cluster.compatible());
    EXPECT_FALSE(segment(ar("t~~a")).segments[0].cluster.compatible());
}

TEST(Normalize, Examples)
{
    EXPECT_EQ(lat(normalize(ar("kata~b"))), "kat~ab");
    EXPECT_EQ(lat(normalize(ar("kitaAbAã"))), "kitaAbãA");
    EXPECT_EQ(lat(normalize(ar("hudýã"))), "hudãý");
    EXPECT_EQ(lat(normalize(ar("kitaAbãA"))), "kitaAbãA");
    EXPECT_EQ(lat(normalize(ar("haáa"))), "haá");
}

TEST(Normalize, MedialFathatanUntouched)
{
    EXPECT_EQ(lat(normalize(ar("kAãtb"))), "kAãtb");
}

TEST(Normalize, DuplicatesCollapseIncompatiblesKept)
{
    EXPECT_EQ(lat(normalize(ar("ktAbuu"))), "ktAbu");
    EXPECT_EQ(lat(normalize(ar("kau~"))), "k~au");
}

TEST(Normalize, Properties)
{
    std::mt19937 rng(11);
    for (int i = 0; i < 5000; ++i) {
        auto w = random_word(rng);
        auto n = normalize(w);
        EXPECT_EQ(normalize(n), n) << lat(w);
        EXPECT_EQ(dediacritize(n), dediacritize(w)) << lat(w);

        // Multiset of marks changes only by dropping exact duplicates inside
        // one cluster.
        auto before = segment(w);
        std::multiset<char32_t> expected;
        for (auto d : before.initial_orphan.normalized().raw)
            expected.insert(codepoint(d));
        for (const auto& s : before.segments)
            for (auto d : s.cluster.normalized().raw)
                expected.insert(codepoint(d));
        EXPECT_EQ(marks(n), expected) << lat(w);
    }
}

TEST(Dediacritize, Examples)
{
    EXPECT_EQ(lat(dediacritize(ar("Aal.yaw.ma"))), "Alywm");
    EXPECT_EQ(lat(dediacritize(ar("ktb"))), "ktb");
    EXPECT_EQ(lat(dediacritize(ar("Al.γar.bi"))), "Alγrb");
}

TEST(DiacriticProfile, Examples)
{
    auto p = diacritic_profile(ar("kat~ab"));
    EXPECT_EQ(p[index(Diacritic::Fatha)], 2u);
    EXPECT_EQ(p[index(Diacritic::Shadda)], 1u);
    EXPECT_EQ(std::accumulate(p.begin(), p.end(), std::size_t{0}), 3u);

    auto zero = diacritic_profile(ar("ktb"));
    EXPECT_EQ(std::accumulate(zero.begin(), zero.end(), std::size_t{0}), 0u);

    // Hand count: s~a, Ti, Ea, ħu.
    auto q = diacritic_profile(ar("Als~aATiEaħu"));
    EXPECT_EQ(q[index(Diacritic::Fatha)], 2u);
    EXPECT_EQ(q[index(Diacritic::Kasra)], 1u);
    EXPECT_EQ(q[index(Diacritic::Damma)], 1u);
    EXPECT_EQ(q[index(Diacritic::Shadda)], 1u);
    EXPECT_EQ(std::accumulate(q.begin(), q.end(), std::size_t{0}), 5u);
}

TEST(DiacriticProfile, SumsToMarkCount)
{
    std::mt19937 rng(3);
    for (int i = 0; i < 1000; ++i) {
        auto w = random_word(rng);
        auto p = diacritic_profile(w);
        EXPECT_EQ(std::accumulate(p.begin(), p.end(), std::size_t{0}), marks(w).size());
    }
}

TEST(Hsb, Examples)
{
    EXPECT_EQ(lat(std::u32string{0x0634}), "š");
    EXPECT_EQ(ar("š"), std::u32string{0x0634});
    EXPECT_EQ(to_hsb(U""), "");
    EXPECT_EQ(from_hsb(std::string_view("")), U"");
    EXPECT_EQ(to_hsb(U"الشمس"), "Alšms");
}

TEST(Hsb, BijectionOnInventory)
{
    std::set<char32_t> latin, arabic;
    for (const auto& e : hsb::table) {
        latin.insert(e.latin);
        arabic.insert(e.arabic);
        EXPECT_TRUE(hsb::to_arabic(e.latin) == e.arabic);
        EXPECT_TRUE(hsb::to_latin(e.arabic) == e.latin);
    }
    EXPECT_EQ(latin.size(), hsb::table.size());
    EXPECT_EQ(arabic.size(), hsb::table.size());

    std::mt19937 rng(5);
    std::uniform_int_distribution<std::size_t> pick(0, hsb::table.size() - 1);
    for (int i = 0; i < 500; ++i) {
        std::u32string w;
        for (int k = 0; k < 8; ++k)
            w.push_back(hsb::table[pick(rng)].arabic);
        EXPECT_EQ(from_hsb(to_hsb(w)), w);
    }
}

TEST(Hsb, AynAliases)
{
    EXPECT_EQ(ar("E"), ar("ς"));
    EXPECT_EQ(ar("ʿ"), ar("ς"));
    EXPECT_EQ(lat(ar("AlsATEħ")), "AlsATςħ");
}

TEST(Hsb, MappingErrorNamesOffender)
{
    try {
        to_hsb(U"بX");
        FAIL() << "expected MappingError";
    } catch (const MappingError& e) {
        EXPECT_EQ(static_cast<std::uint32_t>(e.offender()), 0x58u);
        EXPECT_NE(std::string(e.what()).find("U+0058"), std::string::npos);
    }
    EXPECT_THROW(from_hsb(std::string_view("kQ")), MappingError);
}

TEST(Hsb, LineLevelPassThrough)
{
    auto line = hsb::line_to_arabic(std::string_view("ktb 12, mn|mn%n"));
    EXPECT_EQ(hsb::line_to_latin(line), "ktb 12, mn|mn%n");
}

TEST(Hsb, DataFileMatchesTable)
{
    std::ifstream in(std::string(MAXDIAC_FIXTURE_DIR) + "/../../data/hsb.tsv");
    ASSERT_TRUE(in);
    std::string line;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream fields(line);
        std::string latin, arabic;
        std::getline(fields, latin, '\t');
        std::getline(fields, arabic, '\t');
        auto l = utf8::decode(latin);
        auto a = utf8::decode(arabic);
        ASSERT_EQ(l.size(), 1u) << line;
        ASSERT_EQ(a.size(), 1u) << line;
        EXPECT_TRUE(hsb::to_arabic(l[0]) == a[0]) << line;
        ++rows;
    }
    EXPECT_EQ(rows, hsb::table.size());
}

TEST(Utf8, RejectsMalformed)
{
    EXPECT_THROW(utf8::decode("\xC3"), Utf8Error);
    EXPECT_THROW(utf8::decode("\xC0\x80"), Utf8Error);
    EXPECT_THROW(utf8::decode("\xED\xA0\x80"), Utf8Error);
    EXPECT_EQ(utf8::encode(utf8::decode("\xD9\x85\xF0\x9F\x98\x80")), "\xD9\x85\xF0\x9F\x98\x80");
}
