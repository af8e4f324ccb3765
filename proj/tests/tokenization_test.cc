// Copyright 2026 The itemidx Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "itemidx/tokenization.h"

#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "itemidx/error.h"
#include "itemidx/random.h"
#include "oracles.h"
#include "test_util.h"

namespace itemidx {
namespace {

using Pieces = std::vector<std::string>;

SegmenterModel Model(std::map<std::string, double, std::less<>> pieces) {
  return SegmenterModel(std::move(pieces));
}

std::vector<std::string> StripMarkers(std::vector<std::string> pieces) {
  const std::string marker = "\xE2\x96\x81";
  for (auto& p : pieces) {
    for (std::size_t pos; (pos = p.find(marker)) != std::string::npos;) {
      p.erase(pos, marker.size());
    }
  }
  return pieces;
}

TEST(TokenRegistryTest, ExtraTokensRenderWithBrackets) {
  TokenRegistry registry;
  const Token& t = registry.RegisterExtra("IID5");
  EXPECT_EQ(t.kind, TokenKind::kExtra);
  EXPECT_EQ(t.Render(), "<IID5>");
}

TEST(TokenRegistryTest, DistinctLabelsDistinctTokens) {
  TokenRegistry registry;
  const TokenId a = registry.RegisterExtra("Eyes1").id;
  const TokenId b = registry.RegisterExtra("Eyes2").id;
  EXPECT_NE(a, b);
}

TEST(TokenRegistryTest, RegistrationIsIdempotent) {
  TokenRegistry registry;
  const TokenId first = registry.RegisterExtra("X").id;
  registry.RegisterBase("x");
  EXPECT_EQ(registry.RegisterExtra("X").id, first);
  EXPECT_EQ(registry.size(), 2u);
}

TEST(TokenRegistryTest, RejectsBadLabelsAndPieces) {
  TokenRegistry registry;
  EXPECT_THROW(registry.RegisterExtra(""), std::invalid_argument);
  EXPECT_THROW(registry.RegisterExtra("a b"), std::invalid_argument);
  EXPECT_THROW(registry.RegisterBase("<x"), std::invalid_argument);
  EXPECT_THROW(registry.RegisterBase(""), std::invalid_argument);
}

TEST(TokenRegistryTest, RenderedFormRoundTrips) {
  TokenRegistry registry;
  std::vector<TokenId> ids = {registry.RegisterExtra("IID3").id,
                              registry.RegisterBase("43").id,
                              registry.RegisterExtra("Lip_Liners").id,
                              registry.RegisterBase("x>y").id};
  TokenRegistry parsed;
  for (TokenId id : ids) {
    const Token& original = registry.token(id);
    const Token& back = parsed.RegisterRendered(original.Render());
    EXPECT_EQ(back.kind, original.kind);
    EXPECT_EQ(back.text, original.text);
    if (original.kind == TokenKind::kBase) {
      EXPECT_NE(original.Render().front(), '<');
    }
  }
}

TEST(LoadUnigramModelTest, ThreeRows) {
  const SegmenterModel m = ParseUnigramModel("a\t-1\nb\t-2.5\nab\t-0.5\n");
  EXPECT_EQ(m.size(), 3u);
  EXPECT_DOUBLE_EQ(*m.Score("b"), -2.5);
}

TEST(LoadUnigramModelTest, EmptyModel) {
  const SegmenterModel m = ParseUnigramModel("");
  EXPECT_EQ(m.size(), 0u);
  EXPECT_THROW(Segment(m, "a"), CoverageError);
}

TEST(LoadUnigramModelTest, NonNumericScore) {
  EXPECT_THROW(ParseUnigramModel("10\tabc\n"), ParseError);
  EXPECT_THROW(ParseUnigramModel("no-tab-here\n"), ParseError);
}

TEST(LoadUnigramModelTest, DuplicateKeepsLast) {
  const SegmenterModel m = ParseUnigramModel("a\t-1\na\t-3\n");
  EXPECT_EQ(m.size(), 1u);
  EXPECT_DOUBLE_EQ(*m.Score("a"), -3.0);
}

TEST(SegmentTest, PrefersHighestScore) {
  const auto m = Model({{"10", -1.0}, {"18", -1.0}, {"100", -2.5},
                        {"1", -2.0}, {"8", -2.0}});
  EXPECT_EQ(Segment(m, "1018"), (Pieces{"10", "18"}));
  // Enumeration of the alternatives named in the example.
  EXPECT_DOUBLE_EQ(SegmentationScore(m, {"10", "18"}), -2.0);
  EXPECT_DOUBLE_EQ(SegmentationScore(m, {"10", "1", "8"}), -5.0);
  double best = 0;
  testing::BestByEnumeration("1018", m.pieces(), &best);
  EXPECT_DOUBLE_EQ(best, -2.0);
}

TEST(SegmentTest, SingleCharacter) {
  EXPECT_EQ(Segment(Model({{"a", -1}}), "a"), (Pieces{"a"}));
}

TEST(SegmentTest, T5PieceExamples) {
  const SegmenterModel t5 = testing::T5Subset();
  EXPECT_EQ(Segment(t5, "1001"), (Pieces{"100", "1"}));
  EXPECT_EQ(Segment(t5, "1002"), (Pieces{"100", "2"}));
  EXPECT_EQ(Segment(t5, "1018"), (Pieces{"10", "18"}));
  EXPECT_EQ(Segment(t5, "1014"), (Pieces{"10", "14"}));
  EXPECT_EQ(Segment(t5, "4332"), (Pieces{"43", "32"}));
  EXPECT_EQ(StripMarkers(Segment(t5, EscapeWhitespace("Las Vegas Cigar Outlet"))),
            (Pieces{"Las", "Vegas", "Ci", "gar", "Outlet"}));
}

TEST(SegmentTest, TieBreakPrefersLongerFirstPiece) {
  // "abc": [ab, c] and [a, bc] both score -2.
  const auto m = Model({{"a", -1}, {"b", -5}, {"c", -1}, {"ab", -1}, {"bc", -1}});
  EXPECT_EQ(Segment(m, "abc"), (Pieces{"ab", "c"}));
  // Equal scores, divergence only at the second piece.
  const auto m2 = Model({{"x", -1}, {"y", -1}, {"z", -1}, {"yz", -2}});
  EXPECT_EQ(Segment(m2, "xyz"), (Pieces{"x", "yz"}));
}

TEST(SegmentTest, CoverageErrorNamesPosition) {
  const auto m = Model({{"ab", -1}});
  try {
    Segment(m, "aba");
    FAIL();
  } catch (const CoverageError& e) {
    EXPECT_EQ(e.position(), 2u);
  }
  EXPECT_THROW(Segment(m, ""), std::invalid_argument);
}

TEST(SegmentTest, NeverCutsInsideUtf8Characters) {
  // "é" is two bytes; a stray single-byte piece must not split it.
  const auto m = Model({{"\xC3\xA9", -3}, {"\xC3", -0.1}, {"\xA9", -0.1}});
  EXPECT_EQ(Segment(m, "\xC3\xA9"), (Pieces{"\xC3\xA9"}));
}

TEST(SegmentGreedyTest, LongestPrefixFirst) {
  const auto m = Model({{"100", -9}, {"10", -1}, {"1", -1}, {"8", -1}});
  EXPECT_EQ(SegmentGreedy(m, "1018"), (Pieces{"10", "1", "8"}));
  EXPECT_EQ(SegmentGreedy(m, "1008"), (Pieces{"100", "8"}));
}

TEST(SegmentGreedyTest, RepeatsSinglePiece) {
  EXPECT_EQ(SegmentGreedy(Model({{"a", -1}}), "aaa"), (Pieces{"a", "a", "a"}));
}

TEST(SegmentGreedyTest, CoverageError) {
  try {
    SegmentGreedy(Model({{"ab", -1}}), "aba");
    FAIL();
  } catch (const CoverageError& e) {
    EXPECT_EQ(e.position(), 2u);
  }
}

TEST(SegmentTest, MatchesExhaustiveEnumeration) {
  Rng rng(2024);
  const std::string alphabet = "abc";
  for (int trial = 0; trial < 200; ++trial) {
    std::map<std::string, double, std::less<>> pieces;
    for (char ch : alphabet) {
      pieces[std::string(1, ch)] = -1.0 - static_cast<double>(UniformBelow(rng, 16)) / 8;
    }
    const int extra = 2 + static_cast<int>(UniformBelow(rng, 10));
    for (int i = 0; i < extra; ++i) {
      std::string p;
      const int len = 2 + static_cast<int>(UniformBelow(rng, 3));
      for (int j = 0; j < len; ++j) p += alphabet[UniformBelow(rng, alphabet.size())];
      pieces[p] = -static_cast<double>(UniformBelow(rng, 40)) / 8;
    }
    std::string text;
    const int len = 1 + static_cast<int>(UniformBelow(rng, 10));
    for (int j = 0; j < len; ++j) text += alphabet[UniformBelow(rng, alphabet.size())];

    const SegmenterModel m(pieces);
    double best = 0;
    const auto expected = testing::BestByEnumeration(text, pieces, &best);
    const auto got = Segment(m, text);
    EXPECT_EQ(SegmentationScore(m, got), best) << text;
    EXPECT_EQ(got, expected) << text;
    std::string joined;
    for (const auto& p : got) joined += p;
    EXPECT_EQ(joined, text);
  }
}

TEST(EscapeWhitespaceTest, MarksWordStarts) {
  EXPECT_EQ(EscapeWhitespace("A B"), "\xE2\x96\x81" "A" "\xE2\x96\x81" "B");
}

}  // namespace
}  // namespace itemidx
