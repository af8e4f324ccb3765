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

#include "itemidx/cluster_tree.h"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <string>

#include "itemidx/error.h"
#include "itemidx/random.h"

namespace itemidx {

std::vector<std::size_t> ClusterTree::FinalClusters() const {
  std::vector<std::size_t> out;
  if (nodes.empty()) return out;
  std::vector<std::size_t> stack{kRoot};
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    if (IsFinal(v)) out.push_back(v);
    const auto& children = nodes[v].children;
    for (auto it = children.rbegin(); it != children.rend(); ++it) {
      stack.push_back(*it);
    }
  }
  return out;
}

std::uint32_t ClusterTree::MinItem(std::size_t node) const {
  std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
  const ClusterNode& n = nodes[node];
  if (!n.items.empty()) {
    best = *std::min_element(n.items.begin(), n.items.end());
  }
  for (std::size_t c : n.children) best = std::min(best, MinItem(c));
  return best;
}

std::size_t ClusterTree::ItemCount(std::size_t node) const {
  std::size_t total = nodes[node].items.size();
  for (std::size_t c : nodes[node].children) total += ItemCount(c);
  return total;
}

std::size_t ClusterTree::Depth() const {
  std::size_t depth = 0;
  for (const auto& [item, ancestors] : ItemAncestors()) {
    depth = std::max(depth, ancestors.size() + 1);
  }
  return depth;
}

std::vector<std::pair<std::uint32_t, std::vector<std::size_t>>>
ClusterTree::ItemAncestors() const {
  std::vector<std::pair<std::uint32_t, std::vector<std::size_t>>> out;
  if (nodes.empty()) return out;
  std::vector<std::size_t> path;
  auto visit = [&](auto&& self, std::size_t v) -> void {
    if (v != kRoot) path.push_back(v);
    for (std::uint32_t item : nodes[v].items) out.emplace_back(item, path);
    for (std::size_t c : nodes[v].children) self(self, c);
    if (v != kRoot) path.pop_back();
  };
  visit(visit, kRoot);
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

namespace {

class TreeBuilder {
 public:
  TreeBuilder(const CooccurrenceGraph& graph, int branching, int max_cluster,
              std::uint64_t seed, const ClusterTreeOptions& options)
      : graph_(graph),
        branching_(branching),
        max_cluster_(max_cluster),
        seed_(seed),
        options_(options) {}

  ClusterTree Build() {
    tree_.nodes.emplace_back();  // root

    std::vector<std::size_t> top;
    for (const auto& component : ConnectedComponents(graph_)) {
      top.push_back(Cluster(component));
    }
    std::vector<std::uint32_t> batch;
    for (std::uint32_t v = 0; v < graph_.node_count(); ++v) {
      if (!graph_.neighbors(v).empty()) continue;
      batch.push_back(v);
      if (batch.size() == static_cast<std::size_t>(max_cluster_)) {
        top.push_back(Final(std::move(batch)));
        batch.clear();
      }
    }
    if (!batch.empty()) top.push_back(Final(std::move(batch)));

    NarrowRoot(top);
    SortByMinItem(top);
    if (top.size() == 1) {
      // A lone child becomes the root itself.
      ClusterNode only = std::move(tree_.nodes[top.front()]);
      only.grouping = false;
      tree_.nodes[ClusterTree::kRoot] = std::move(only);
      Compact();
    } else {
      tree_.nodes[ClusterTree::kRoot].children = std::move(top);
    }
    return std::move(tree_);
  }

 private:
  std::size_t Final(std::vector<std::uint32_t> items) {
    ClusterNode node;
    node.items = std::move(items);
    tree_.nodes.push_back(std::move(node));
    return tree_.nodes.size() - 1;
  }

  // `items` sorted ascending.
  std::size_t Cluster(const std::vector<std::uint32_t>& items) {
    if (items.size() <= static_cast<std::size_t>(max_cluster_)) {
      return Final(items);
    }
    const int parts =
        static_cast<int>(std::min<std::size_t>(branching_, items.size()));
    // Seed depends only on the cluster's contents, not traversal order.
    const std::uint64_t seed = DeriveSeed(seed_, items.front());
    auto groups =
        SpectralPartition(graph_, items, parts, seed, options_.spectral);
    if (groups.size() <= 1) groups = Chunk(items, parts);

    std::vector<std::size_t> children;
    for (const auto& group : groups) children.push_back(Cluster(group));
    SortByMinItem(children);
    tree_.nodes.emplace_back();
    tree_.nodes.back().children = std::move(children);
    return tree_.nodes.size() - 1;
  }

  static std::vector<std::vector<std::uint32_t>> Chunk(
      const std::vector<std::uint32_t>& items, int parts) {
    std::vector<std::vector<std::uint32_t>> out(parts);
    const std::size_t base = items.size() / parts;
    const std::size_t extra = items.size() % parts;
    std::size_t pos = 0;
    for (int p = 0; p < parts; ++p) {
      const std::size_t len = base + (static_cast<std::size_t>(p) < extra);
      out[p].assign(items.begin() + pos, items.begin() + pos + len);
      pos += len;
    }
    return out;
  }

  void NarrowRoot(std::vector<std::size_t>& top) {
    while (top.size() > static_cast<std::size_t>(branching_)) {
      std::vector<std::size_t> by_size = top;
      std::sort(by_size.begin(), by_size.end(),
                [&](std::size_t a, std::size_t b) {
                  const auto sa = tree_.ItemCount(a), sb = tree_.ItemCount(b);
                  if (sa != sb) return sa < sb;
                  return tree_.MinItem(a) < tree_.MinItem(b);
                });
      const std::size_t take = std::min<std::size_t>(
          max_cluster_, top.size() - branching_ + 1);
      std::vector<std::size_t> merged(by_size.begin(), by_size.begin() + take);
      SortByMinItem(merged);
      std::erase_if(top, [&](std::size_t v) {
        return std::find(merged.begin(), merged.end(), v) != merged.end();
      });
      tree_.nodes.emplace_back();
      tree_.nodes.back().children = std::move(merged);
      tree_.nodes.back().grouping = true;
      top.push_back(tree_.nodes.size() - 1);
    }
  }

  void SortByMinItem(std::vector<std::size_t>& v) const {
    std::sort(v.begin(), v.end(), [&](std::size_t a, std::size_t b) {
      return tree_.MinItem(a) < tree_.MinItem(b);
    });
  }

  // Drops nodes unreachable from the root and renumbers breadth first.
  void Compact() {
    std::vector<std::size_t> order{ClusterTree::kRoot};
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (std::size_t c : tree_.nodes[order[i]].children) order.push_back(c);
    }
    std::vector<std::size_t> remap(tree_.nodes.size(), 0);
    for (std::size_t i = 0; i < order.size(); ++i) remap[order[i]] = i;
    std::vector<ClusterNode> nodes;
    nodes.reserve(order.size());
    for (std::size_t old : order) {
      ClusterNode node = std::move(tree_.nodes[old]);
      for (std::size_t& c : node.children) c = remap[c];
      nodes.push_back(std::move(node));
    }
    tree_.nodes = std::move(nodes);
  }

  const CooccurrenceGraph& graph_;
  int branching_;
  int max_cluster_;
  std::uint64_t seed_;
  const ClusterTreeOptions& options_;
  ClusterTree tree_;
};

}  // namespace

ClusterTree BuildClusterTree(const CooccurrenceGraph& graph, int branching,
                             int max_cluster, std::uint64_t seed,
                             const ClusterTreeOptions& options) {
  if (branching > max_cluster) {
    throw ConstraintError("branching factor N=" + std::to_string(branching) +
                          " exceeds final cluster size k=" +
                          std::to_string(max_cluster) + " (need N <= k)");
  }
  if (branching < 2) {
    throw ConstraintError("branching factor N must be at least 2");
  }
  return TreeBuilder(graph, branching, max_cluster, seed, options).Build();
}

void AssignTokensToTree(ClusterTree& tree, int cycle, TokenRegistry& registry) {
  if (cycle < 1) throw std::invalid_argument("token cycle must be positive");
  if (tree.empty()) return;
  const auto limit = static_cast<std::size_t>(cycle);
  for (std::size_t v = 0; v < tree.nodes.size(); ++v) {
    if (tree.nodes[v].children.size() > limit) {
      throw StructureError("node has " +
                           std::to_string(tree.nodes[v].children.size()) +
                           " children but only " + std::to_string(cycle) +
                           " tokens");
    }
    if (tree.nodes[v].items.size() > limit) {
      throw StructureError("final cluster has " +
                           std::to_string(tree.nodes[v].items.size()) +
                           " items but only " + std::to_string(cycle) +
                           " tokens");
    }
  }

  auto label = [&](std::size_t i) {
    return registry.RegisterExtra(std::to_string(i % limit)).id;
  };

  std::size_t counter = 0;
  std::deque<std::size_t> queue(tree.nodes[ClusterTree::kRoot].children.begin(),
                                tree.nodes[ClusterTree::kRoot].children.end());
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    tree.nodes[v].token = label(counter++);
    for (std::size_t c : tree.nodes[v].children) queue.push_back(c);
  }
  tree.nodes[ClusterTree::kRoot].token.reset();

  for (ClusterNode& node : tree.nodes) {
    std::sort(node.items.begin(), node.items.end());
    node.item_tokens.clear();
    for (std::size_t i = 0; i < node.items.size(); ++i) {
      node.item_tokens.push_back(label(i));
    }
  }
}

std::vector<std::pair<std::uint32_t, std::vector<TokenId>>> TreeItemIds(
    const ClusterTree& tree) {
  std::vector<std::pair<std::uint32_t, std::vector<TokenId>>> out;
  if (tree.empty()) return out;
  std::vector<TokenId> prefix;
  auto visit = [&](auto&& self, std::size_t v) -> void {
    const ClusterNode& node = tree.nodes[v];
    if (v != ClusterTree::kRoot) {
      if (!node.token) throw StructureError("tree is not labeled");
      prefix.push_back(*node.token);
    }
    if (node.item_tokens.size() != node.items.size()) {
      throw StructureError("tree items are not labeled");
    }
    for (std::size_t i = 0; i < node.items.size(); ++i) {
      std::vector<TokenId> id = prefix;
      id.push_back(node.item_tokens[i]);
      out.emplace_back(node.items[i], std::move(id));
    }
    for (std::size_t c : node.children) self(self, c);
    if (v != ClusterTree::kRoot) prefix.pop_back();
  };
  visit(visit, ClusterTree::kRoot);
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

nlohmann::json ClusterTreeToJson(const ClusterTree& tree,
                                 std::span<const std::string> item_names,
                                 const TokenRegistry& registry) {
  if (tree.empty()) return nlohmann::json::object();
  auto visit = [&](auto&& self, std::size_t v) -> nlohmann::json {
    const ClusterNode& node = tree.nodes[v];
    nlohmann::json out;
    out["token"] = node.token ? nlohmann::json(registry.Render(*node.token))
                              : nlohmann::json(nullptr);
    if (!node.name.empty()) out["name"] = node.name;
    if (!node.items.empty()) {
      nlohmann::json items = nlohmann::json::array();
      for (std::size_t i = 0; i < node.items.size(); ++i) {
        nlohmann::json entry;
        entry["item"] = node.items[i] < item_names.size()
                            ? item_names[node.items[i]]
                            : std::to_string(node.items[i]);
        if (i < node.item_tokens.size()) {
          entry["token"] = registry.Render(node.item_tokens[i]);
        }
        items.push_back(std::move(entry));
      }
      out["items"] = std::move(items);
    }
    if (!node.children.empty()) {
      nlohmann::json children = nlohmann::json::array();
      for (std::size_t c : node.children) children.push_back(self(self, c));
      out["children"] = std::move(children);
    }
    return out;
  };
  return visit(visit, ClusterTree::kRoot);
}

}  // namespace itemidx
