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

#include "itemidx/analysis.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "test_util.h"

namespace itemidx {
namespace {

IndexAssignment Assignment(const std::vector<std::string>& items,
                           const std::vector<std::vector<std::string>>& ids) {
  IndexAssignment out;
  out.registry = std::make_shared<TokenRegistry>();
  out.items = items;
  for (const auto& id : ids) {
    std::vector<TokenId> tokens;
    for (const auto& r : id) tokens.push_back(out.registry->RegisterRendered(r).id);
    out.ids.push_back(tokens);
  }
  return out;
}

// Textbook Spearman for series without ties: 1 - 6 sum d^2 / (n (n^2 - 1)).
double SpearmanNoTies(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  auto ranks = [n](const std::vector<double>& v) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return v[i] < v[j]; });
    std::vector<double> r(n);
    for (std::size_t k = 0; k < n; ++k) r[order[k]] = static_cast<double>(k);
    return r;
  };
  const auto rx = ranks(x), ry = ranks(y);
  double sum = 0;
  for (std::size_t i = 0; i < n; ++i) sum += (rx[i] - ry[i]) * (rx[i] - ry[i]);
  const double dn = static_cast<double>(n);
  return 1 - 6 * sum / (dn * (dn * dn - 1));
}

TEST(AvgIdLengthTest, Examples) {
  EXPECT_DOUBLE_EQ(
      AvgIdLength(Assignment({"a", "b"}, {{"<1>", "<9>", "<5>", "<4>"},
                                          {"<1>", "<9>", "<5>", "<0>"}})),
      4.0);
  EXPECT_DOUBLE_EQ(
      AvgIdLength(Assignment({"a", "b", "c"}, {{"x"}, {"x", "y"}, {"x", "y", "z"}})),
      2.0);
  EXPECT_THROW(AvgIdLength(Assignment({}, {})), std::invalid_argument);
}

TEST(AvgIdLengthTest, InvariantUnderRelabeling) {
  const auto a = Assignment({"a", "b", "c"}, {{"x"}, {"x", "y"}, {"q", "r", "s", "t"}});
  const auto b = Assignment({"z", "y", "w"}, {{"q", "r", "s", "t"}, {"x"}, {"x", "y"}});
  EXPECT_DOUBLE_EQ(AvgIdLength(a), AvgIdLength(b));
}

TEST(SharedPrefixLengthTest, Examples) {
  const auto a = Assignment({"p", "q", "r"}, {{"<1>", "<9>", "<5>", "<4>"},
                                              {"<1>", "<9>", "<5>", "<0>"},
                                              {"<2>", "<9>"}});
  EXPECT_EQ(SharedPrefixLength(a, "p", "q"), 3u);
  EXPECT_EQ(SharedPrefixLength(a, "q", "p"), 3u);
  EXPECT_EQ(SharedPrefixLength(a, "p", "p"), 4u);
  EXPECT_EQ(SharedPrefixLength(a, "p", "r"), 0u);
}

TEST(SpearmanCorrelationTest, PerfectMonotone) {
  std::vector<double> x, y;
  for (int i = 0; i < 12; ++i) {
    x.push_back(i);
    y.push_back(std::exp(0.3 * i));
  }
  const auto r = SpearmanCorrelation(x, y);
  EXPECT_EQ(r.status, Correlation::Status::kOk);
  EXPECT_NEAR(r.rho, 1.0, 1e-12);
  std::reverse(y.begin(), y.end());
  EXPECT_NEAR(SpearmanCorrelation(x, y).rho, -1.0, 1e-12);
}

TEST(SpearmanCorrelationTest, MatchesTextbookFormulaWithoutTies) {
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x(15), y(15);
    for (auto& v : x) v = UniformUnit(rng);
    for (auto& v : y) v = UniformUnit(rng);
    EXPECT_NEAR(SpearmanCorrelation(x, y).rho, SpearmanNoTies(x, y), 1e-12);
  }
}

TEST(SpearmanCorrelationTest, AverageRanksForTies) {
  // x ranks: 1.5 1.5 3 4 ... ; Pearson on average ranks.
  std::vector<double> x = {1, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  std::vector<double> y = {2, 1, 3, 4, 5, 6, 7, 8, 9, 10};
  // Pearson of ranks (1.5,1.5,3..10) vs (2,1,3..10).
  std::vector<double> rx = {1.5, 1.5, 3, 4, 5, 6, 7, 8, 9, 10};
  std::vector<double> ry = {2, 1, 3, 4, 5, 6, 7, 8, 9, 10};
  const double mx = 5.5, my = 5.5;
  double sxy = 0, sxx = 0, syy = 0;
  for (int i = 0; i < 10; ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  EXPECT_NEAR(SpearmanCorrelation(x, y).rho, sxy / std::sqrt(sxx * syy), 1e-12);
}

TEST(SpearmanCorrelationTest, ConstantSeriesIsDegenerate) {
  std::vector<double> x(12, 0.0), y(12);
  std::iota(y.begin(), y.end(), 0.0);
  const auto r = SpearmanCorrelation(x, y);
  EXPECT_EQ(r.status, Correlation::Status::kDegenerate);
  EXPECT_EQ(r.rho, 0.0);
}

TEST(SpearmanCorrelationTest, TooFewPairs) {
  std::vector<double> x = {1, 2, 3}, y = {1, 2, 3};
  const auto r = SpearmanCorrelation(x, y);
  EXPECT_EQ(r.status, Correlation::Status::kInsufficient);
  EXPECT_EQ(r.pairs, 3u);
}

TEST(OverlapCooccurrenceCorrelationTest, IidIsDegenerate) {
  Rng rng(1);
  const auto g = testing::RandomGraph(30, 0.3, 4, rng);
  const auto iid = IndexIid(g.nodes(), std::make_shared<TokenRegistry>());
  const auto r = OverlapCooccurrenceCorrelation(iid, g);
  EXPECT_EQ(r.status, Correlation::Status::kDegenerate);
  EXPECT_EQ(r.rho, 0.0);
  EXPECT_EQ(r.pairs, g.edge_count());
}

TEST(OverlapCooccurrenceCorrelationTest, CidOnTwoPopulationsIsPositive) {
  testing::TwoPopulationSpec spec;
  spec.items_per_population = 100;
  spec.users_per_population = 80;
  const Corpus c = testing::TwoPopulationCorpus(spec, 5);
  const auto g = BuildCooccurrenceGraph(c, LeaveOneOutSplit(c));
  const auto cid = IndexCid(g, 4, 20, 0, std::make_shared<TokenRegistry>());
  const auto r = OverlapCooccurrenceCorrelation(cid, g);
  EXPECT_EQ(r.status, Correlation::Status::kOk);
  EXPECT_GT(r.rho, 0.0);
}

TEST(ClusterSizeHistogramTest, Examples) {
  const auto single = BuildClusterTree(testing::Cliques({10}), 4, 20, 0);
  EXPECT_EQ(ClusterSizeHistogram(single),
            (std::map<std::size_t, std::size_t>{{10, 1}}));
  const auto two = BuildClusterTree(testing::Cliques({5, 5}), 2, 5, 0);
  EXPECT_EQ(ClusterSizeHistogram(two),
            (std::map<std::size_t, std::size_t>{{5, 2}}));
  EXPECT_TRUE(ClusterSizeHistogram(ClusterTree{}).empty());
}

TEST(PrefixGroupHistogramTest, GroupsByIdMinusLeaf) {
  const auto a = Assignment({"p", "q", "r"}, {{"<1>", "<0>"}, {"<1>", "<1>"}, {"<2>", "<0>"}});
  EXPECT_EQ(PrefixGroupHistogram(a),
            (std::map<std::size_t, std::size_t>{{1, 1}, {2, 1}}));
}

TEST(ClusterTreeDepthTest, LargerClustersNeverDeepen) {
  Rng rng(23);
  for (int trial = 0; trial < 8; ++trial) {
    const auto g = testing::RandomGraph(150, 0.03, 3, rng);
    std::size_t previous = SIZE_MAX;
    for (int k : {4, 8, 16, 32, 64, 160}) {
      const std::size_t depth = BuildClusterTree(g, 4, k, trial).Depth();
      EXPECT_LE(depth, previous) << "k=" << k;
      previous = depth;
    }
  }
}

}  // namespace
}  // namespace itemidx
