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

#ifndef ITEMIDX_CORPUS_H_
#define ITEMIDX_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

namespace itemidx {

struct Interaction {
  std::string user;
  std::string item;
  std::int64_t timestamp = 0;
};

struct ItemMeta {
  std::optional<std::string> title;
  // Root-to-leaf category names; each path is non-empty.
  std::vector<std::vector<std::string>> category_paths;
};

struct Event {
  std::string item;
  std::int64_t timestamp = 0;
};

// Per-user interaction sequences, each stably sorted by timestamp.
//
// Users keep the order of their first line in the input; items keep the
// order of their first appearance ("ingest order"), which is the canonical
// item order used by every index scheme.
class Corpus {
 public:
  Corpus() = default;

  // Throws std::invalid_argument on an empty user/item or a negative
  // timestamp.
  static Corpus FromInteractions(std::span<const Interaction> interactions);

  // Reassembles a corpus from its parts (archive loading). Sequences are
  // re-sorted stably; every sequence item must be listed in `items`.
  static Corpus FromParts(std::vector<std::string> users,
                          std::map<std::string, std::vector<Event>, std::less<>>
                              sequences,
                          std::vector<std::string> items);

  const std::vector<std::string>& users() const { return users_; }
  const std::vector<std::string>& items() const { return items_; }
  const std::vector<Event>& sequence(std::string_view user) const;
  std::vector<std::string> SequenceItems(std::string_view user) const;

  bool HasItem(std::string_view item) const;
  // Position of `item` in ingest order. Throws std::out_of_range.
  std::uint32_t ItemIndex(std::string_view item) const;

  const std::map<std::string, ItemMeta, std::less<>>& metadata() const {
    return metadata_;
  }
  const ItemMeta* FindMeta(std::string_view item) const;
  void SetMetadata(std::map<std::string, ItemMeta, std::less<>> metadata) {
    metadata_ = std::move(metadata);
  }

  std::size_t interaction_count() const;

 private:
  std::vector<std::string> users_;
  std::map<std::string, std::vector<Event>, std::less<>> sequences_;
  std::vector<std::string> items_;
  std::map<std::string, std::uint32_t, std::less<>> item_index_;
  std::map<std::string, ItemMeta, std::less<>> metadata_;
};

// Reads `user<TAB>item<TAB>timestamp` lines. Throws ParseError (with the
// 1-based line number) or EmptyCorpusError.
Corpus LoadInteractions(const std::filesystem::path& path);
Corpus ParseInteractions(std::string_view text);

// JSON lines: {"item": str, "title": str|null, "categories": [[str,...],...]}
std::map<std::string, ItemMeta, std::less<>> LoadMetadata(
    const std::filesystem::path& path);
std::map<std::string, ItemMeta, std::less<>> ParseMetadata(
    std::string_view text);

struct SplitCorpus {
  // Same order as Corpus::users().
  std::vector<std::string> users;
  std::map<std::string, std::vector<std::string>, std::less<>> train;
  // Only users with at least three interactions have targets.
  std::map<std::string, std::string, std::less<>> validation_target;
  std::map<std::string, std::string, std::less<>> test_target;
};

SplitCorpus LeaveOneOutSplit(const Corpus& corpus);

enum class OrderingKind {
  kTimeSensitive,  // TSO
  kRandom,         // RO
  kShortToLong,    // S2LO
  kLongToShort,    // L2SO
};

struct UserOrdering {
  OrderingKind kind = OrderingKind::kTimeSensitive;
  std::uint64_t seed = 0;  // RO only
};

// Accepts TSO, RO, S2LO, L2SO (case-insensitive).
UserOrdering ParseOrdering(std::string_view name, std::uint64_t seed = 0);
std::string OrderingName(OrderingKind kind);

std::vector<std::string> OrderUsers(const Corpus& corpus,
                                    const UserOrdering& ordering);

// Weighted undirected item graph. Node i is corpus item i (ingest order);
// weight(a, b) counts distinct users whose training sequence contains both.
class CooccurrenceGraph {
 public:
  struct Edge {
    std::uint32_t node;
    std::uint32_t weight;
  };

  CooccurrenceGraph() = default;
  CooccurrenceGraph(std::vector<std::string> nodes,
                    std::vector<std::vector<Edge>> adjacency);

  std::size_t node_count() const { return nodes_.size(); }
  const std::vector<std::string>& nodes() const { return nodes_; }
  const std::string& node(std::uint32_t i) const { return nodes_[i]; }
  std::uint32_t NodeIndex(std::string_view item) const;

  // Sorted by neighbour index; no self loops.
  std::span<const Edge> neighbors(std::uint32_t i) const {
    return adjacency_[i];
  }
  std::uint32_t Weight(std::uint32_t a, std::uint32_t b) const;
  std::uint64_t WeightedDegree(std::uint32_t i) const;
  std::size_t edge_count() const;
  std::uint64_t total_weight() const;

 private:
  std::vector<std::string> nodes_;
  std::map<std::string, std::uint32_t, std::less<>> index_;
  std::vector<std::vector<Edge>> adjacency_;
};

// Node set is the corpus item universe; items outside any training
// sequence become isolated nodes.
CooccurrenceGraph BuildCooccurrenceGraph(const Corpus& corpus,
                                         const SplitCorpus& split);

// Builds a graph directly from weighted edges between node indices. Used
// for synthetic graphs; duplicate pairs accumulate.
CooccurrenceGraph GraphFromEdges(
    std::vector<std::string> nodes,
    std::span<const std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>>
        edges);

}  // namespace itemidx

#endif  // ITEMIDX_CORPUS_H_
