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

#ifndef ITEMIDX_ANALYSIS_H_
#define ITEMIDX_ANALYSIS_H_

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "itemidx/cluster_tree.h"
#include "itemidx/corpus.h"
#include "itemidx/indexing.h"

namespace itemidx {

// Mean token count. Throws std::invalid_argument on an empty assignment.
double AvgIdLength(const IndexAssignment& assignment);

std::size_t SharedPrefixLength(std::span<const TokenId> a,
                               std::span<const TokenId> b);
std::size_t SharedPrefixLength(const IndexAssignment& assignment,
                               std::string_view a, std::string_view b);

// Spearman rank correlation with average ranks for ties.
struct Correlation {
  enum class Status {
    kOk,
    kDegenerate,    // one series is constant; rho reported as 0
    kInsufficient,  // fewer than kMinPairs pairs; rho reported as 0
  };
  double rho = 0.0;
  Status status = Status::kOk;
  std::size_t pairs = 0;

  static constexpr std::size_t kMinPairs = 10;
};

std::string CorrelationStatusName(Correlation::Status status);

Correlation SpearmanCorrelation(std::span<const double> x,
                                std::span<const double> y);

// Over every positive-weight edge whose endpoints are both indexed:
// co-occurrence weight against shared prefix length.
Correlation OverlapCooccurrenceCorrelation(const IndexAssignment& assignment,
                                           const CooccurrenceGraph& graph);

// Final-cluster size -> count.
std::map<std::size_t, std::size_t> ClusterSizeHistogram(
    const ClusterTree& tree);

// Groups items by their ID without the last token; for tree-derived
// schemes the groups are exactly the final clusters.
std::map<std::size_t, std::size_t> PrefixGroupHistogram(
    const IndexAssignment& assignment);

}  // namespace itemidx

#endif  // ITEMIDX_ANALYSIS_H_
