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

#include "itemidx/indexing.h"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <stdexcept>

#include "itemidx/error.h"
#include "itemidx/random.h"

namespace itemidx {
namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(c));
  return out;
}

std::vector<TokenId> SegmentToIds(const SegmenterModel& model,
                                  std::string_view text,
                                  TokenRegistry& registry) {
  std::vector<TokenId> ids;
  for (const std::string& piece : Segment(model, text)) {
    ids.push_back(registry.RegisterBase(piece).id);
  }
  return ids;
}

IndexAssignment MakeAssignment(Scheme scheme,
                               std::shared_ptr<TokenRegistry> registry) {
  if (!registry) registry = std::make_shared<TokenRegistry>();
  IndexAssignment out;
  out.scheme = scheme;
  out.registry = std::move(registry);
  return out;
}

}  // namespace

std::string SchemeName(Scheme scheme) {
  switch (scheme) {
    case Scheme::kRid: return "rid";
    case Scheme::kTid: return "tid";
    case Scheme::kIid: return "iid";
    case Scheme::kSid: return "sid";
    case Scheme::kCid: return "cid";
    case Scheme::kSemId: return "semid";
    case Scheme::kHid: return "hid";
    case Scheme::kUnknown: return "unknown";
  }
  return "unknown";
}

Scheme ParseScheme(std::string_view name) {
  const std::string s = Lower(name);
  for (Scheme scheme : {Scheme::kRid, Scheme::kTid, Scheme::kIid, Scheme::kSid,
                        Scheme::kCid, Scheme::kSemId, Scheme::kHid}) {
    if (s == SchemeName(scheme)) return scheme;
  }
  throw std::invalid_argument("unknown scheme " + std::string(name));
}

SemIdMode ParseSemIdMode(std::string_view name) {
  const std::string s = Lower(name);
  if (s == "tree") return SemIdMode::kTree;
  if (s == "non-tree" || s == "nontree") return SemIdMode::kNonTree;
  throw std::invalid_argument("unknown semid mode " + std::string(name));
}

HidVariant ParseHidVariant(std::string_view name) {
  const std::string s = Lower(name);
  for (HidVariant v : {HidVariant::kSidIid, HidVariant::kCidIid,
                       HidVariant::kSemIdIid, HidVariant::kSemIdCid}) {
    if (s == HidVariantName(v)) return v;
  }
  throw std::invalid_argument("unknown hid variant " + std::string(name));
}

HidOrder ParseHidOrder(std::string_view name) {
  const std::string s = Lower(name);
  if (s == "semid-first" || s == "semid") return HidOrder::kSemIdFirst;
  if (s == "cid-first" || s == "cid") return HidOrder::kCidFirst;
  throw std::invalid_argument("unknown hid order " + std::string(name));
}

std::string SemIdModeName(SemIdMode mode) {
  return mode == SemIdMode::kTree ? "tree" : "non-tree";
}

std::string HidVariantName(HidVariant variant) {
  switch (variant) {
    case HidVariant::kSidIid: return "sid+iid";
    case HidVariant::kCidIid: return "cid+iid";
    case HidVariant::kSemIdIid: return "semid+iid";
    case HidVariant::kSemIdCid: return "semid+cid";
  }
  return "?";
}

std::string HidOrderName(HidOrder order) {
  return order == HidOrder::kSemIdFirst ? "semid-first" : "cid-first";
}

std::optional<std::size_t> IndexAssignment::Find(std::string_view item) const {
  auto it = std::find(items.begin(), items.end(), item);
  if (it == items.end()) return std::nullopt;
  return static_cast<std::size_t>(it - items.begin());
}

const std::vector<TokenId>& IndexAssignment::IdOf(std::string_view item) const {
  auto pos = Find(item);
  if (!pos) throw std::out_of_range("item not indexed: " + std::string(item));
  return ids[*pos];
}

// ---------------------------------------------------------------- RID / IID

IndexAssignment IndexRid(std::span<const std::string> items, std::uint64_t seed,
                         const SegmenterModel& model,
                         std::shared_ptr<TokenRegistry> registry) {
  IndexAssignment out = MakeAssignment(Scheme::kRid, std::move(registry));
  out.params.seed = seed;
  const std::uint64_t range = 10 * static_cast<std::uint64_t>(items.size());
  std::vector<std::uint64_t> pool(range);
  std::iota(pool.begin(), pool.end(), 1);
  Rng rng(DeriveSeed(seed, SeedStream::kRandomIndex));
  for (std::size_t i = 0; i < items.size(); ++i) {
    std::swap(pool[i], pool[i + UniformBelow(rng, range - i)]);
    out.items.push_back(items[i]);
    out.ids.push_back(
        SegmentToIds(model, std::to_string(pool[i]), *out.registry));
  }
  return out;
}

IndexAssignment IndexIid(std::span<const std::string> items,
                         std::shared_ptr<TokenRegistry> registry) {
  IndexAssignment out = MakeAssignment(Scheme::kIid, std::move(registry));
  for (std::size_t i = 0; i < items.size(); ++i) {
    out.items.push_back(items[i]);
    out.ids.push_back(
        {out.registry->RegisterExtra("IID" + std::to_string(i)).id});
  }
  return out;
}

// ---------------------------------------------------------------- TID

std::string NormalizeTitle(std::string_view title) {
  std::string out;
  bool pending_space = false;
  for (char c : title) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += c;
  }
  return out;
}

IndexAssignment IndexTid(const Corpus& corpus, const SegmenterModel& model,
                         std::shared_ptr<TokenRegistry> registry) {
  IndexAssignment out = MakeAssignment(Scheme::kTid, std::move(registry));
  std::vector<std::string> titles;
  std::vector<std::string> missing;
  for (const std::string& item : corpus.items()) {
    const ItemMeta* meta = corpus.FindMeta(item);
    std::string title =
        meta && meta->title ? NormalizeTitle(*meta->title) : std::string();
    if (title.empty()) missing.push_back(item);
    titles.push_back(std::move(title));
  }
  if (!missing.empty()) {
    std::string msg = "items without a title:";
    for (std::size_t i = 0; i < missing.size() && i < 20; ++i) {
      msg += " " + missing[i];
    }
    if (missing.size() > 20) {
      msg += " ... (" + std::to_string(missing.size()) + " total)";
    }
    throw IndexError(msg);
  }

  std::set<std::string, std::less<>> used(titles.begin(), titles.end());
  std::set<std::string, std::less<>> taken;
  std::map<std::string, int, std::less<>> seen;
  for (std::size_t i = 0; i < titles.size(); ++i) {
    std::string title = titles[i];
    if (!taken.insert(title).second) {
      int& n = seen[titles[i]];
      std::string candidate;
      do {
        candidate = titles[i] + " (" + std::to_string(++n + 1) + ")";
      } while (used.count(candidate) || taken.count(candidate));
      taken.insert(candidate);
      title = std::move(candidate);
    }
    out.items.push_back(corpus.items()[i]);
    out.ids.push_back(
        SegmentToIds(model, EscapeWhitespace(title), *out.registry));
  }
  return out;
}

// ---------------------------------------------------------------- SID

SequentialNumbers SequentialNumbering(const Corpus& corpus,
                                      const SplitCorpus& split,
                                      const UserOrdering& ordering) {
  std::map<std::string, std::uint64_t, std::less<>> number;
  std::uint64_t next = kFirstSequentialId;
  for (const std::string& user : OrderUsers(corpus, ordering)) {
    auto it = split.train.find(user);
    if (it == split.train.end()) continue;
    for (const std::string& item : it->second) {
      if (number.try_emplace(item, next).second) ++next;
    }
  }
  std::set<std::string, std::less<>> cold;
  for (const std::string& user :
       OrderUsers(corpus, {OrderingKind::kTimeSensitive, 0})) {
    for (const auto* targets : {&split.validation_target, &split.test_target}) {
      auto it = targets->find(user);
      if (it == targets->end()) continue;
      if (number.try_emplace(it->second, next).second) {
        ++next;
        cold.insert(it->second);
      }
    }
  }

  SequentialNumbers out;
  for (const std::string& item : corpus.items()) {
    auto it = number.find(item);
    if (it == number.end()) {
      throw IndexError("item " + item + " missing from every split");
    }
    out.items.push_back(item);
    out.numbers.push_back(it->second);
    out.cold.push_back(cold.count(item) > 0);
  }
  return out;
}

IndexAssignment IndexSid(const Corpus& corpus, const SplitCorpus& split,
                         const UserOrdering& ordering,
                         const SegmenterModel& model,
                         std::shared_ptr<TokenRegistry> registry) {
  IndexAssignment out = MakeAssignment(Scheme::kSid, std::move(registry));
  out.params.ordering = ordering;
  out.params.seed = ordering.seed;
  const SequentialNumbers numbers = SequentialNumbering(corpus, split, ordering);
  out.items = numbers.items;
  out.cold = numbers.cold;
  for (std::uint64_t n : numbers.numbers) {
    out.ids.push_back(SegmentToIds(model, std::to_string(n), *out.registry));
  }
  return out;
}

// ---------------------------------------------------------------- CID

IndexAssignment IndexCid(const CooccurrenceGraph& graph, int branching,
                         int max_cluster, std::uint64_t seed,
                         std::shared_ptr<TokenRegistry> registry,
                         const ClusterTreeOptions& options) {
  IndexAssignment out = MakeAssignment(Scheme::kCid, std::move(registry));
  out.params.seed = seed;
  out.params.branching = branching;
  out.params.max_cluster = max_cluster;
  ClusterTree tree =
      BuildClusterTree(graph, branching, max_cluster, seed, options);
  AssignTokensToTree(tree, max_cluster, *out.registry);
  for (auto& [item, id] : TreeItemIds(tree)) {
    out.items.push_back(graph.node(item));
    out.ids.push_back(std::move(id));
  }
  out.tree = std::move(tree);
  return out;
}

// ---------------------------------------------------------------- SemID

namespace {

// Extra-token label for a category name: whitespace runs become '_',
// angle brackets are dropped, and purely numeric names get a leading '_'
// so they never look like a leaf counter.
std::string CategoryLabel(std::string_view name) {
  std::string out;
  bool in_space = false;
  for (char c : name) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      in_space = true;
      continue;
    }
    if (c == '<' || c == '>') continue;
    if (in_space && !out.empty()) out += '_';
    in_space = false;
    out += c;
  }
  if (out.empty()) return "_";
  if (std::all_of(out.begin(), out.end(),
                  [](unsigned char c) { return std::isdigit(c); })) {
    out.insert(out.begin(), '_');
  }
  return out;
}

const std::vector<std::string>* ChoosePath(const ItemMeta* meta) {
  if (!meta || meta->category_paths.empty()) return nullptr;
  const std::vector<std::string>* best = &meta->category_paths.front();
  for (const auto& path : meta->category_paths) {
    if (path.size() > best->size() ||
        (path.size() == best->size() && path < *best)) {
      best = &path;
    }
  }
  return best;
}

constexpr std::string_view kUnknownCategory = "Unknown";

}  // namespace

ClusterTree BuildCategoryTree(const Corpus& corpus, SemIdMode mode,
                              TokenRegistry& registry) {
  const auto& items = corpus.items();
  std::vector<std::optional<std::vector<std::string>>> paths(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (const auto* path = ChoosePath(corpus.FindMeta(items[i]))) {
      paths[i] = *path;
    }
  }

  // A first level shared by every categorized item is the dataset root.
  std::optional<std::string> root;
  for (const auto& path : paths) {
    if (!path) continue;
    if (!root) {
      root = path->front();
    } else if (*root != path->front()) {
      root.reset();
      break;
    }
  }
  const bool drop_root =
      root && std::any_of(paths.begin(), paths.end(),
                          [](const auto& p) { return p.has_value(); });
  for (auto& path : paths) {
    if (!path) {
      path = std::vector<std::string>{std::string(kUnknownCategory)};
    } else if (drop_root) {
      path->erase(path->begin());
    }
  }

  ClusterTree tree;
  tree.nodes.emplace_back();
  std::map<std::vector<std::string>, std::size_t> node_of;
  node_of[{}] = ClusterTree::kRoot;
  // Nodes in order of first appearance, for deterministic labeling.
  std::vector<std::pair<std::size_t, std::vector<std::string>>> created;
  for (std::size_t i = 0; i < items.size(); ++i) {
    std::vector<std::string> prefix;
    std::size_t parent = ClusterTree::kRoot;
    for (const std::string& name : *paths[i]) {
      prefix.push_back(name);
      auto [it, inserted] = node_of.try_emplace(prefix, tree.nodes.size());
      if (inserted) {
        tree.nodes.emplace_back();
        tree.nodes.back().name = name;
        tree.nodes[parent].children.push_back(it->second);
        created.emplace_back(it->second, prefix);
      }
      parent = it->second;
    }
    tree.nodes[parent].items.push_back(static_cast<std::uint32_t>(i));
  }

  // Node labels.
  std::map<std::string, std::vector<std::size_t>> by_label;
  for (const auto& [node, path] : created) {
    by_label[CategoryLabel(tree.nodes[node].name)].push_back(node);
  }
  std::set<std::string> assigned;
  std::map<std::size_t, std::string> label_of;
  for (const auto& [node, path] : created) {
    const std::string base = CategoryLabel(tree.nodes[node].name);
    const auto& holders = by_label[base];
    std::string label = base;
    if (mode == SemIdMode::kTree && holders.size() > 1) {
      const auto rank =
          std::find(holders.begin(), holders.end(), node) - holders.begin();
      label = base + std::to_string(rank + 1);
      while (by_label.count(label) || assigned.count(label)) label += "_";
    }
    if (mode == SemIdMode::kTree) assigned.insert(label);
    label_of[node] = label;
  }
  for (const auto& [node, label] : label_of) {
    tree.nodes[node].token = registry.RegisterExtra(label).id;
  }

  // Leaf counters within each category node, in item order.
  for (ClusterNode& node : tree.nodes) {
    node.item_tokens.clear();
    for (std::size_t i = 0; i < node.items.size(); ++i) {
      node.item_tokens.push_back(registry.RegisterExtra(std::to_string(i)).id);
    }
  }
  return tree;
}

IndexAssignment IndexSemId(const Corpus& corpus, SemIdMode mode,
                           std::shared_ptr<TokenRegistry> registry) {
  IndexAssignment out = MakeAssignment(Scheme::kSemId, std::move(registry));
  out.params.semid_mode = mode;
  ClusterTree tree = BuildCategoryTree(corpus, mode, *out.registry);
  for (auto& [item, id] : TreeItemIds(tree)) {
    out.items.push_back(corpus.items()[item]);
    out.ids.push_back(std::move(id));
  }

  if (mode == SemIdMode::kNonTree) {
    std::set<std::vector<TokenId>> distinct(out.ids.begin(), out.ids.end());
    if (distinct.size() != out.ids.size()) {
      // Bare names merged distinct paths; count leaves per prefix instead.
      std::map<std::vector<TokenId>, std::size_t> counters;
      for (auto& id : out.ids) {
        id.pop_back();
        const std::size_t n = counters[id]++;
        id.push_back(out.registry->RegisterExtra(std::to_string(n)).id);
      }
    }
  }
  out.tree = std::move(tree);
  return out;
}

// ---------------------------------------------------------------- HID

IndexAssignment ComposeHid(HidVariant variant,
                           std::span<const IndexAssignment> parts,
                           HidOrder order) {
  if (parts.size() != 2) {
    throw std::invalid_argument("hybrid composition takes two assignments");
  }
  const IndexAssignment& first = parts[0];
  const IndexAssignment& second = parts[1];
  if (first.registry != second.registry) {
    throw IndexError("hybrid parts must share one token registry");
  }
  {
    std::vector<std::string> a = first.items, b = second.items;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b || std::adjacent_find(a.begin(), a.end()) != a.end()) {
      throw IndexError("hybrid parts cover different item sets");
    }
  }

  IndexAssignment out = MakeAssignment(Scheme::kHid, first.registry);
  out.params = first.params;
  out.params.hid_variant = variant;
  if (variant == HidVariant::kSemIdCid) {
    out.params.hid_order = order;
    out.params.branching = second.params.branching;
    out.params.max_cluster = second.params.max_cluster;
    out.params.seed = second.params.seed;
  }

  std::map<std::string_view, std::size_t> second_pos;
  for (std::size_t i = 0; i < second.items.size(); ++i) {
    second_pos[second.items[i]] = i;
  }
  for (std::size_t i = 0; i < first.items.size(); ++i) {
    std::vector<TokenId> head = first.ids[i];
    const std::vector<TokenId>& tail = second.ids[second_pos[first.items[i]]];
    std::vector<TokenId> id;
    switch (variant) {
      case HidVariant::kSidIid:
        id = head;
        id.insert(id.end(), tail.begin(), tail.end());
        break;
      case HidVariant::kCidIid:
      case HidVariant::kSemIdIid:
        head.pop_back();
        id = head;
        id.insert(id.end(), tail.begin(), tail.end());
        break;
      case HidVariant::kSemIdCid:
        head.pop_back();
        if (order == HidOrder::kSemIdFirst) {
          id = head;
          id.insert(id.end(), tail.begin(), tail.end());
        } else {
          id = tail;
          id.insert(id.end(), head.begin(), head.end());
        }
        break;
    }
    out.items.push_back(first.items[i]);
    out.ids.push_back(std::move(id));
  }

  std::set<std::vector<TokenId>> distinct(out.ids.begin(), out.ids.end());
  if (distinct.size() != out.ids.size()) {
    throw DuplicateIdError("hybrid composition produced duplicate IDs");
  }
  return out;
}

}  // namespace itemidx
