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
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace itemidx {

double AvgIdLength(const IndexAssignment& assignment) {
  if (assignment.ids.empty()) {
    throw std::invalid_argument("average ID length of an empty assignment");
  }
  std::size_t total = 0;
  for (const auto& id : assignment.ids) total += id.size();
  return static_cast<double>(total) / static_cast<double>(assignment.ids.size());
}

std::size_t SharedPrefixLength(std::span<const TokenId> a,
                               std::span<const TokenId> b) {
  const std::size_t n = std::min(a.size(), b.size());
  std::size_t i = 0;
  while (i < n && a[i] == b[i]) ++i;
  return i;
}

std::size_t SharedPrefixLength(const IndexAssignment& assignment,
                               std::string_view a, std::string_view b) {
  return SharedPrefixLength(assignment.IdOf(a), assignment.IdOf(b));
}

std::string CorrelationStatusName(Correlation::Status status) {
  switch (status) {
    case Correlation::Status::kOk: return "ok";
    case Correlation::Status::kDegenerate: return "degenerate";
    case Correlation::Status::kInsufficient: return "insufficient";
  }
  return "?";
}

namespace {

std::vector<double> AverageRanks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

Correlation SpearmanCorrelation(std::span<const double> x,
                                std::span<const double> y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("correlation series differ in length");
  }
  Correlation out;
  out.pairs = x.size();
  if (x.size() < Correlation::kMinPairs) {
    out.status = Correlation::Status::kInsufficient;
    return out;
  }
  const std::vector<double> rx = AverageRanks(x);
  const std::vector<double> ry = AverageRanks(y);
  const double n = static_cast<double>(rx.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0 || syy == 0) {
    out.status = Correlation::Status::kDegenerate;
    return out;
  }
  out.rho = sxy / std::sqrt(sxx * syy);
  return out;
}

Correlation OverlapCooccurrenceCorrelation(const IndexAssignment& assignment,
                                           const CooccurrenceGraph& graph) {
  std::unordered_map<std::string_view, std::size_t> position;
  for (std::size_t i = 0; i < assignment.items.size(); ++i) {
    position.emplace(assignment.items[i], i);
  }
  std::vector<double> weights, overlaps;
  for (std::uint32_t a = 0; a < graph.node_count(); ++a) {
    auto pa = position.find(graph.node(a));
    if (pa == position.end()) continue;
    for (const auto& e : graph.neighbors(a)) {
      if (e.node <= a) continue;
      auto pb = position.find(graph.node(e.node));
      if (pb == position.end()) continue;
      weights.push_back(e.weight);
      overlaps.push_back(static_cast<double>(SharedPrefixLength(
          assignment.ids[pa->second], assignment.ids[pb->second])));
    }
  }
  return SpearmanCorrelation(weights, overlaps);
}

std::map<std::size_t, std::size_t> ClusterSizeHistogram(
    const ClusterTree& tree) {
  std::map<std::size_t, std::size_t> histogram;
  for (std::size_t node : tree.FinalClusters()) {
    ++histogram[tree.nodes[node].items.size()];
  }
  return histogram;
}

std::map<std::size_t, std::size_t> PrefixGroupHistogram(
    const IndexAssignment& assignment) {
  std::map<std::vector<TokenId>, std::size_t> groups;
  for (const auto& id : assignment.ids) {
    if (id.empty()) continue;
    ++groups[std::vector<TokenId>(id.begin(), id.end() - 1)];
  }
  std::map<std::size_t, std::size_t> histogram;
  for (const auto& [prefix, size] : groups) ++histogram[size];
  return histogram;
}

}  // namespace itemidx
