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

#ifndef ITEMIDX_CLUSTER_TREE_H_
#define ITEMIDX_CLUSTER_TREE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "itemidx/corpus.h"
#include "itemidx/spectral.h"
#include "itemidx/tokenization.h"
#include "json.hpp"

namespace itemidx {

struct ClusterNode {
  // Ordered by smallest contained item.
  std::vector<std::size_t> children;
  // Non-empty only for final clusters; ascending (ingest order).
  std::vector<std::uint32_t> items;
  // Set by token assignment; never set on the root.
  std::optional<TokenId> token;
  // Parallel to `items` once labeled.
  std::vector<TokenId> item_tokens;
  // Category name (category trees only).
  std::string name;
  // Synthetic node introduced to narrow an over-wide root.
  bool grouping = false;
};

// Arena-backed tree; node 0 is the root. The same shape serves spectral
// cluster trees and category trees.
struct ClusterTree {
  std::vector<ClusterNode> nodes;

  static constexpr std::size_t kRoot = 0;

  const ClusterNode& root() const { return nodes[kRoot]; }
  bool empty() const { return nodes.empty(); }
  // Holds items directly. Cluster trees keep items only on childless
  // nodes; category trees may attach items to inner categories too.
  bool IsFinal(std::size_t node) const { return !nodes[node].items.empty(); }
  // Nodes holding items, in depth-first child order.
  std::vector<std::size_t> FinalClusters() const;
  // Smallest item anywhere under `node`; UINT32_MAX if none.
  std::uint32_t MinItem(std::size_t node) const;
  std::size_t ItemCount(std::size_t node) const;
  // Number of edges from the root to the deepest item.
  std::size_t Depth() const;
  // Root-excluded chain of cluster nodes above each item, keyed by item.
  std::vector<std::pair<std::uint32_t, std::vector<std::size_t>>>
  ItemAncestors() const;
};

struct ClusterTreeOptions {
  SpectralOptions spectral;
};

// Recursive spectral clustering: clusters with more than `max_cluster`
// items are split into min(branching, size) parts until every final
// cluster holds at most `max_cluster` items. Isolated nodes are batched
// into final clusters of at most `max_cluster` in node order; each
// connected component is clustered separately; a root wider than
// `branching` is narrowed with grouping nodes of at most `max_cluster`
// children; a split that fails to shrink falls back to contiguous chunks.
//
// Throws ConstraintError unless 2 <= branching <= max_cluster.
ClusterTree BuildClusterTree(const CooccurrenceGraph& graph, int branching,
                             int max_cluster, std::uint64_t seed,
                             const ClusterTreeOptions& options = {});

// Labels non-root cluster nodes breadth first with <0>, <1>, ...,
// <cycle-1>, wrapping around, then labels the items of each final cluster
// <0>, <1>, ... in item order. Throws StructureError when a node has more
// than `cycle` children or a final cluster more than `cycle` items.
void AssignTokensToTree(ClusterTree& tree, int cycle, TokenRegistry& registry);

// Token sequence of every item: tokens of its non-root ancestors followed
// by its leaf token. Requires a labeled tree.
std::vector<std::pair<std::uint32_t, std::vector<TokenId>>> TreeItemIds(
    const ClusterTree& tree);

// {"token": "<1>"|null, "children": [...]} for cluster nodes and
// {"token": ..., "items": [{"item": name, "token": "<0>"}, ...]} for final
// clusters.
nlohmann::json ClusterTreeToJson(const ClusterTree& tree,
                                 std::span<const std::string> item_names,
                                 const TokenRegistry& registry);

}  // namespace itemidx

#endif  // ITEMIDX_CLUSTER_TREE_H_
