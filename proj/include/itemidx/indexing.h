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

#ifndef ITEMIDX_INDEXING_H_
#define ITEMIDX_INDEXING_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "itemidx/cluster_tree.h"
#include "itemidx/corpus.h"
#include "itemidx/tokenization.h"

namespace itemidx {

enum class Scheme { kRid, kTid, kIid, kSid, kCid, kSemId, kHid, kUnknown };

std::string SchemeName(Scheme scheme);
// rid, tid, iid, sid, cid, semid, hid (case-insensitive).
Scheme ParseScheme(std::string_view name);

enum class SemIdMode { kTree, kNonTree };
enum class HidVariant { kSidIid, kCidIid, kSemIdIid, kSemIdCid };
enum class HidOrder { kSemIdFirst, kCidFirst };

SemIdMode ParseSemIdMode(std::string_view name);   // tree | non-tree
HidVariant ParseHidVariant(std::string_view name);  // sid+iid, cid+iid, ...
HidOrder ParseHidOrder(std::string_view name);      // semid-first | cid-first
std::string SemIdModeName(SemIdMode mode);
std::string HidVariantName(HidVariant variant);
std::string HidOrderName(HidOrder order);

struct IndexParams {
  std::uint64_t seed = 0;
  int branching = 0;    // CID N
  int max_cluster = 0;  // CID k
  std::optional<UserOrdering> ordering;
  std::optional<SemIdMode> semid_mode;
  std::optional<HidVariant> hid_variant;
  std::optional<HidOrder> hid_order;
};

// Item -> token sequence under one scheme. Items are kept in corpus ingest
// order; `ids[i]` belongs to `items[i]`.
struct IndexAssignment {
  Scheme scheme = Scheme::kUnknown;
  IndexParams params;
  std::shared_ptr<TokenRegistry> registry;
  std::vector<std::string> items;
  std::vector<std::vector<TokenId>> ids;
  // SID: item was first seen outside training and numbered after all
  // training items. Empty for other schemes.
  std::vector<bool> cold;
  // CID and SemID keep the labeled tree they were read from.
  std::optional<ClusterTree> tree;

  std::size_t size() const { return items.size(); }
  // Position of `item`, or nullopt.
  std::optional<std::size_t> Find(std::string_view item) const;
  const std::vector<TokenId>& IdOf(std::string_view item) const;
  std::string Render(std::size_t i, std::string_view sep = " ") const {
    return registry->Render(ids[i], sep);
  }
};

// Distinct integers from [1, 10 * |items|], rendered and segmented.
IndexAssignment IndexRid(std::span<const std::string> items, std::uint64_t seed,
                         const SegmenterModel& model,
                         std::shared_ptr<TokenRegistry> registry);

// Whitespace-normalized, whitespace-escaped titles. Repeated titles get
// " (2)", " (3)", ... appended. Throws IndexError listing untitled items.
IndexAssignment IndexTid(const Corpus& corpus, const SegmenterModel& model,
                         std::shared_ptr<TokenRegistry> registry);

// Collapses whitespace runs to one space and trims.
std::string NormalizeTitle(std::string_view title);

IndexAssignment IndexIid(std::span<const std::string> items,
                         std::shared_ptr<TokenRegistry> registry);

// Consecutive integers from 1001 following the user ordering over training
// sequences; items first seen in validation/test are numbered afterwards
// (time-sensitive user order) and flagged cold.
IndexAssignment IndexSid(const Corpus& corpus, const SplitCorpus& split,
                         const UserOrdering& ordering,
                         const SegmenterModel& model,
                         std::shared_ptr<TokenRegistry> registry);

// Raw SID integers, before rendering; exposed for inspection.
struct SequentialNumbers {
  std::vector<std::string> items;  // ingest order
  std::vector<std::uint64_t> numbers;
  std::vector<bool> cold;
};
SequentialNumbers SequentialNumbering(const Corpus& corpus,
                                      const SplitCorpus& split,
                                      const UserOrdering& ordering);

inline constexpr std::uint64_t kFirstSequentialId = 1001;

IndexAssignment IndexCid(const CooccurrenceGraph& graph, int branching,
                         int max_cluster, std::uint64_t seed,
                         std::shared_ptr<TokenRegistry> registry,
                         const ClusterTreeOptions& options = {});

// Category tree over the corpus items (ingest order). Exposed for tests and
// debugging; IndexSemId builds and labels it.
ClusterTree BuildCategoryTree(const Corpus& corpus, SemIdMode mode,
                              TokenRegistry& registry);

IndexAssignment IndexSemId(const Corpus& corpus, SemIdMode mode,
                           std::shared_ptr<TokenRegistry> registry);

// parts: {SID, IID}, {CID, IID}, {SemID, IID} or {SemID, CID}. Throws
// IndexError when the parts cover different item sets.
IndexAssignment ComposeHid(HidVariant variant,
                           std::span<const IndexAssignment> parts,
                           HidOrder order = HidOrder::kSemIdFirst);

}  // namespace itemidx

#endif  // ITEMIDX_INDEXING_H_
