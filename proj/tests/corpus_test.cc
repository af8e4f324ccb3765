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

#include "itemidx/corpus.h"

#include <algorithm>
#include <set>

#include "gtest/gtest.h"
#include "itemidx/error.h"
#include "test_util.h"

namespace itemidx {
namespace {

using ::itemidx::testing::FiveUserCorpus;
using ::itemidx::testing::FiveUserRows;

TEST(LoadInteractionsTest, SortsByTimestamp) {
  const Corpus c = ParseInteractions("u1\ta\t10\nu1\tb\t5\nu2\tc\t7\n");
  EXPECT_EQ(c.users(), (std::vector<std::string>{"u1", "u2"}));
  EXPECT_EQ(c.SequenceItems("u1"), (std::vector<std::string>{"b", "a"}));
  EXPECT_EQ(c.SequenceItems("u2"), (std::vector<std::string>{"c"}));
  EXPECT_EQ(c.items(), (std::vector<std::string>{"a", "b", "c"}));
}

TEST(LoadInteractionsTest, KeepsDuplicates) {
  const Corpus c = ParseInteractions("u1\ta\t10\nu1\tb\t5\nu1\ta\t10\n");
  EXPECT_EQ(c.SequenceItems("u1"), (std::vector<std::string>{"b", "a", "a"}));
}

TEST(LoadInteractionsTest, TiesKeepInputOrder) {
  const Corpus c = ParseInteractions("u\tx\t3\nu\ty\t3\nu\tz\t1\n");
  EXPECT_EQ(c.SequenceItems("u"), (std::vector<std::string>{"z", "x", "y"}));
}

TEST(LoadInteractionsTest, MissingFieldReportsLine) {
  try {
    ParseInteractions("u1\ta\t1\nu1,a\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(ParseInteractions("u1\ta\tnot-a-number\n"), ParseError);
  EXPECT_THROW(ParseInteractions("u1\ta\t-4\n"), ParseError);
  EXPECT_THROW(ParseInteractions("u1\t\t4\n"), ParseError);
}

TEST(LoadInteractionsTest, EmptyInputIsAnError) {
  EXPECT_THROW(ParseInteractions(""), EmptyCorpusError);
  EXPECT_THROW(ParseInteractions("\n\n"), EmptyCorpusError);
}

TEST(LoadInteractionsTest, ReadsFile) {
  const Corpus c = LoadInteractions(testing::TestData("tiny_interactions.tsv"));
  EXPECT_EQ(c.users().size(), 3u);
  EXPECT_THROW(LoadInteractions(testing::TestData("does_not_exist.tsv")), Error);
}

TEST(MetadataTest, ParsesTitlesAndPaths) {
  const auto meta = ParseMetadata(
      R"({"item": "a", "title": "Soap", "categories": [["Beauty", "Bath"]]})"
      "\n"
      R"({"item": "b", "title": null})"
      "\n");
  ASSERT_EQ(meta.size(), 2u);
  EXPECT_EQ(*meta.at("a").title, "Soap");
  EXPECT_EQ(meta.at("a").category_paths.size(), 1u);
  EXPECT_FALSE(meta.at("b").title.has_value());
  EXPECT_THROW(ParseMetadata(R"({"item": "a", "categories": [[]]})"), ParseError);
  EXPECT_THROW(ParseMetadata("{not json"), ParseError);
}

TEST(LeaveOneOutTest, FiveItems) {
  const Corpus c = ParseInteractions(
      "u\ti1\t1\nu\ti2\t2\nu\ti3\t3\nu\ti4\t4\nu\ti5\t5\n");
  const SplitCorpus s = LeaveOneOutSplit(c);
  EXPECT_EQ(s.train.at("u"), (std::vector<std::string>{"i1", "i2", "i3"}));
  EXPECT_EQ(s.validation_target.at("u"), "i4");
  EXPECT_EQ(s.test_target.at("u"), "i5");
}

TEST(LeaveOneOutTest, ShortUsersGoToTrain) {
  const Corpus c = ParseInteractions("u\ti1\t1\nu\ti2\t2\n");
  const SplitCorpus s = LeaveOneOutSplit(c);
  EXPECT_EQ(s.train.at("u"), (std::vector<std::string>{"i1", "i2"}));
  EXPECT_FALSE(s.validation_target.count("u"));
  EXPECT_FALSE(s.test_target.count("u"));
}

TEST(LeaveOneOutTest, MinimalEligibleUser) {
  const Corpus c = ParseInteractions("u\ti1\t1\nu\ti2\t2\nu\ti3\t3\n");
  const SplitCorpus s = LeaveOneOutSplit(c);
  EXPECT_EQ(s.train.at("u"), (std::vector<std::string>{"i1"}));
  EXPECT_EQ(s.validation_target.at("u"), "i2");
  EXPECT_EQ(s.test_target.at("u"), "i3");
}

TEST(LeaveOneOutTest, ConcatenationRestoresSequences) {
  Rng rng(7);
  std::vector<Interaction> rows;
  for (int u = 0; u < 60; ++u) {
    const int len = 1 + static_cast<int>(UniformBelow(rng, 9));
    for (int t = 0; t < len; ++t) {
      rows.push_back({"u" + std::to_string(u),
                      "i" + std::to_string(UniformBelow(rng, 30)),
                      static_cast<std::int64_t>(UniformBelow(rng, 5))});
    }
  }
  const Corpus c = Corpus::FromInteractions(rows);
  const SplitCorpus s = LeaveOneOutSplit(c);
  for (const auto& user : c.users()) {
    std::vector<std::string> joined = s.train.at(user);
    if (s.validation_target.count(user)) {
      joined.push_back(s.validation_target.at(user));
      joined.push_back(s.test_target.at(user));
    }
    EXPECT_EQ(joined, c.SequenceItems(user)) << user;
  }
}

TEST(OrderUsersTest, ShortToLongOnFiveUsers) {
  const Corpus c = FiveUserCorpus();
  EXPECT_EQ(OrderUsers(c, {OrderingKind::kShortToLong}),
            (std::vector<std::string>{"User4", "User2", "User1", "User3",
                                      "User5"}));
  EXPECT_EQ(OrderUsers(c, {OrderingKind::kLongToShort}),
            (std::vector<std::string>{"User5", "User1", "User3", "User2",
                                      "User4"}));
  EXPECT_EQ(OrderUsers(c, {OrderingKind::kTimeSensitive}), c.users());
}

TEST(OrderUsersTest, TimeSensitiveUsesFirstInteraction) {
  const Corpus c =
      ParseInteractions("a\tx\t50\nb\ty\t10\nc\tz\t50\na\tw\t1\n");
  // a's first interaction is at t=1.
  EXPECT_EQ(OrderUsers(c, {OrderingKind::kTimeSensitive}),
            (std::vector<std::string>{"a", "b", "c"}));
}

TEST(OrderUsersTest, SingleUser) {
  const Corpus c = ParseInteractions("only\tx\t1\n");
  for (auto kind : {OrderingKind::kTimeSensitive, OrderingKind::kRandom,
                    OrderingKind::kShortToLong, OrderingKind::kLongToShort}) {
    EXPECT_EQ(OrderUsers(c, {kind, 3}), (std::vector<std::string>{"only"}));
  }
}

TEST(OrderUsersTest, RandomIsSeededPermutation) {
  std::vector<Interaction> rows;
  for (int u = 0; u < 50; ++u) rows.push_back({"u" + std::to_string(u), "i", u});
  const Corpus c = Corpus::FromInteractions(rows);
  const auto a = OrderUsers(c, {OrderingKind::kRandom, 11});
  const auto b = OrderUsers(c, {OrderingKind::kRandom, 11});
  const auto other = OrderUsers(c, {OrderingKind::kRandom, 12});
  EXPECT_EQ(a, b);
  EXPECT_NE(a, other);
  for (auto kind : {OrderingKind::kTimeSensitive, OrderingKind::kRandom,
                    OrderingKind::kShortToLong, OrderingKind::kLongToShort}) {
    auto order = OrderUsers(c, {kind, 5});
    auto expected = c.users();
    std::sort(order.begin(), order.end());
    std::sort(expected.begin(), expected.end());
    EXPECT_EQ(order, expected);
  }
}

TEST(OrderUsersTest, TimeSensitiveIsIdempotent) {
  const Corpus c = ParseInteractions(
      "c\tx\t30\nb\ty\t10\na\tz\t20\nb\tw\t40\n");
  const auto once = OrderUsers(c, {OrderingKind::kTimeSensitive});
  std::vector<Interaction> reordered;
  for (const auto& user : once) {
    for (const Event& e : c.sequence(user)) {
      reordered.push_back({user, e.item, e.timestamp});
    }
  }
  const Corpus sorted = Corpus::FromInteractions(reordered);
  EXPECT_EQ(sorted.users(), once);
  EXPECT_EQ(OrderUsers(sorted, {OrderingKind::kTimeSensitive}), once);
}

TEST(ParseOrderingTest, Names) {
  EXPECT_EQ(ParseOrdering("tso").kind, OrderingKind::kTimeSensitive);
  EXPECT_EQ(ParseOrdering("S2LO").kind, OrderingKind::kShortToLong);
  EXPECT_EQ(ParseOrdering("ro", 4).seed, 4u);
  EXPECT_THROW(ParseOrdering("sideways"), std::invalid_argument);
}

TEST(CooccurrenceTest, FiveUserWeights) {
  const Corpus c = FiveUserCorpus();
  const CooccurrenceGraph g = BuildCooccurrenceGraph(c, LeaveOneOutSplit(c));
  auto w = [&](const char* a, const char* b) {
    return g.Weight(g.NodeIndex(a), g.NodeIndex(b));
  };
  EXPECT_EQ(w("1001", "1008"), 2u);  // User 1 and User 2
  EXPECT_EQ(w("1008", "1001"), 2u);
  EXPECT_EQ(w("1009", "1007"), 2u);  // User 1 and User 3
  EXPECT_EQ(w("1001", "1015"), 0u);
  // 1033/1034 only appear as User 5 targets: isolated nodes.
  EXPECT_TRUE(g.neighbors(g.NodeIndex("1033")).empty());
  EXPECT_EQ(g.node_count(), c.items().size());
}

TEST(CooccurrenceTest, SingleEdge) {
  const Corpus c = ParseInteractions("u\ta\t1\nu\tb\t2\n");
  const CooccurrenceGraph g = BuildCooccurrenceGraph(c, LeaveOneOutSplit(c));
  EXPECT_EQ(g.edge_count(), 1u);
  EXPECT_EQ(g.Weight(0, 1), 1u);
}

TEST(CooccurrenceTest, CountsDistinctUsers) {
  const Corpus c = ParseInteractions("u\ta\t1\nu\ta\t2\nu\tb\t3\n");
  SplitCorpus s;
  s.users = c.users();
  s.train["u"] = c.SequenceItems("u");  // [a, a, b] all in train
  const CooccurrenceGraph g = BuildCooccurrenceGraph(c, s);
  EXPECT_EQ(g.Weight(c.ItemIndex("a"), c.ItemIndex("b")), 1u);
  EXPECT_EQ(g.Weight(c.ItemIndex("a"), c.ItemIndex("a")), 0u);
}

TEST(CooccurrenceTest, TotalWeightIsSumOfDistinctPairs) {
  Rng rng(3);
  std::vector<Interaction> rows;
  for (int u = 0; u < 40; ++u) {
    const int len = 1 + static_cast<int>(UniformBelow(rng, 12));
    for (int t = 0; t < len; ++t) {
      rows.push_back({"u" + std::to_string(u),
                      "i" + std::to_string(UniformBelow(rng, 25)), t});
    }
  }
  const Corpus c = Corpus::FromInteractions(rows);
  const SplitCorpus s = LeaveOneOutSplit(c);
  const CooccurrenceGraph g = BuildCooccurrenceGraph(c, s);
  std::uint64_t expected = 0;
  for (const auto& [user, items] : s.train) {
    const std::set<std::string> distinct(items.begin(), items.end());
    expected += distinct.size() * (distinct.size() - 1) / 2;
  }
  EXPECT_EQ(g.total_weight(), expected);
  for (std::uint32_t a = 0; a < g.node_count(); ++a) {
    EXPECT_EQ(g.Weight(a, a), 0u);
    for (const auto& e : g.neighbors(a)) {
      EXPECT_EQ(g.Weight(e.node, a), e.weight);
      EXPECT_GT(e.weight, 0u);
    }
  }
}

}  // namespace
}  // namespace itemidx
