#include <gtest/gtest.h>

#include <sstream>

#include "fixtures.hpp"

using namespace pivotlex;
using namespace pivotlex::testing;

TEST(LanguageTag, RejectsEmptyUppercaseAndWhitespace) {
  EXPECT_NO_THROW(LanguageTag("zlm"));
  EXPECT_THROW(LanguageTag(""), Error);
  EXPECT_THROW(LanguageTag("Ind"), Error);
  EXPECT_THROW(LanguageTag("in d"), Error);
}

TEST(ParseDictionary, SingleLine) {
  const auto d = parse_dictionary("hond\tdog\n", LanguageTag("nld"), LanguageTag("eng"));
  ASSERT_EQ(d.entries.size(), 1u);
  const auto& [s, t] = *d.entries.begin();
  EXPECT_EQ(s.surface, "hond");
  EXPECT_EQ(t.surface, "dog");
  EXPECT_EQ(s.lang.code(), "nld");
  EXPECT_EQ(t.lang.code(), "eng");
}

TEST(ParseDictionary, DuplicatesCollapse) {
  EXPECT_EQ(parse_dictionary("a\tx\na\tx\n", kA, kB).entries.size(), 1u);
}

TEST(ParseDictionary, NormalizedDuplicatesCollapse) {
  EXPECT_EQ(parse_dictionary("A\tX\na \t x\n", kA, kB).entries.size(), 1u);
  EXPECT_EQ(parse_dictionary("A\tX\na\tx\n", kA, kB, false).entries.size(), 2u);
}

TEST(ParseDictionary, WrongFieldCountReportsLine) {
  try {
    parse_dictionary("a\tx\tz\n", kA, kB);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
  }
  try {
    parse_dictionary("# header\na\tx\n\nb\n", kA, kB);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
}

TEST(ParseDictionary, CommentsBlankLinesAndCrlf) {
  const auto d = parse_dictionary("# comment\n\n  \r\na\tx\r\nb\ty\n", kA, kB);
  EXPECT_EQ(d.entries.size(), 2u);
  EXPECT_TRUE(d.entries.contains({wa("a"), wb("x")}));
}

TEST(ParseDictionary, EmptyAndSameLanguageAreErrors) {
  EXPECT_THROW(parse_dictionary("# nothing\n", kA, kB), Error);
  EXPECT_THROW(parse_dictionary("a\tx\n", kA, kA), Error);
}

TEST(ParseDictionary, InvalidUtf8IsAnError) {
  EXPECT_THROW(parse_dictionary(std::string("a\t\xff\xfe\n"), kA, kB), Error);
}

TEST(ParseDictionary, EmptyFieldIsAnError) {
  EXPECT_THROW(parse_dictionary("a\t \n", kA, kB), ParseError);
}

TEST(Inverted, SwapsOrientation) {
  const auto bc = parse_dictionary("x\tc1\n", kB, kC);
  const auto cb = bc.inverted();
  EXPECT_EQ(cb.source, kC);
  EXPECT_EQ(cb.target, kB);
  EXPECT_TRUE(cb.entries.contains({wc("c1"), wb("x")}));
}

TEST(NormalizeWord, Examples) {
  EXPECT_EQ(normalize_word("  Hond "), "hond");
  EXPECT_EQ(normalize_word("ice  cream"), "ice cream");
  EXPECT_THROW(normalize_word(""), Error);
  EXPECT_THROW(normalize_word(" \t "), Error);
}

TEST(NormalizeWord, ComposesAndFolds) {
  // "E" + combining acute -> "é"
  EXPECT_EQ(normalize_word("E\xCC\x81t\xC3\xA9"), "\xC3\xA9t\xC3\xA9");
  EXPECT_EQ(normalize_word("STRASSE"), "strasse");
}

TEST(NormalizeWord, Idempotent) {
  for (const char* raw : {"  Hond ", "ice \t cream", "E\xCC\x81T\xC3\x89", "\xC3\x9F", "\xE1\xBA\x9E",
                          "K\xE2\x84\xAA", "\xCE\xA3\xCE\xB9\xCF\x82"}) {
    const auto once = normalize_word(raw);
    EXPECT_EQ(normalize_word(once), once) << raw;
  }
}

TEST(WriteResultPairs, SingleLine) {
  std::ostringstream out;
  std::vector<InducedPair> pairs{{wa("a"), wc("x"), Stage::Cognate, 0.0, 0}};
  write_result_pairs(pairs, out);
  EXPECT_EQ(out.str(), "a\tx\tcognate\t0.000000\n");
}

TEST(WriteResultPairs, EmptyAndSorted) {
  std::ostringstream empty;
  write_result_pairs({}, empty);
  EXPECT_EQ(empty.str(), "");

  std::ostringstream out;
  std::vector<InducedPair> pairs{{wa("b"), wc("y"), Stage::Synonym, 0.25, 1},
                                 {wa("a"), wc("z"), Stage::Cognate, 1.5, 0},
                                 {wa("a"), wc("x"), Stage::Cognate, -0.0, 0}};
  write_result_pairs(pairs, out);
  EXPECT_EQ(out.str(),
            "a\tx\tcognate\t0.000000\na\tz\tcognate\t1.500000\nb\ty\tsynonym\t0.250000\n");
}

TEST(ParseGoldStandard, Examples) {
  const auto g = parse_gold_standard("a\tx\n", kA, kC);
  EXPECT_EQ(g.size(), 1u);
  EXPECT_TRUE(g.contains({wa("a"), wc("x")}));
  EXPECT_EQ(parse_gold_standard("a\tx\na\tx\n", kA, kC).size(), 1u);
  EXPECT_THROW(parse_gold_standard("a\n", kA, kC), ParseError);
}

TEST(ParsePairList, AcceptsResultFiles) {
  std::istringstream in("a\tx\tcognate\t0.000000\nb\ty\n");
  const auto s = parse_pair_list(in, kA, kC);
  EXPECT_EQ(s.size(), 2u);
  std::istringstream bad("a\tx\tcognate\n");
  EXPECT_THROW(parse_pair_list(bad, kA, kC), ParseError);
}

TEST(RoundTrip, ParseWriteParse) {
  const auto g = parse_gold_standard("Kitab\tkitap\nice cream\tes krim\nb\tY\n", kA, kC);
  std::ostringstream out;
  write_pair_set(g, out);
  EXPECT_EQ(parse_gold_standard(out.str(), kA, kC), g);

  std::vector<InducedPair> pairs;
  for (const auto& [a, c] : g.pairs) pairs.push_back({a, c, Stage::Cognate, 0.5, 0});
  std::ostringstream res;
  write_result_pairs(pairs, res);
  std::istringstream in(res.str());
  EXPECT_EQ(parse_pair_list(in, kA, kC), g);
}

TEST(FormatFixed6, NegativeZero) {
  EXPECT_EQ(format_fixed6(-0.0), "0.000000");
  EXPECT_EQ(format_fixed6(-1e-9), "0.000000");
  EXPECT_EQ(format_fixed6(0.3333333), "0.333333");
}
