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

#include "itemidx/trie.h"

#include <algorithm>
#include <stdexcept>

#include "itemidx/error.h"

namespace itemidx {

PrefixTrie::PrefixTrie() : nodes_(1) {}

void PrefixTrie::Insert(std::span<const TokenId> id, std::size_t item) {
  if (id.empty()) throw std::invalid_argument("empty ID");
  std::uint32_t v = 0;
  for (TokenId t : id) {
    auto it = nodes_[v].children.find(t);
    if (it == nodes_[v].children.end()) {
      const auto child = static_cast<std::uint32_t>(nodes_.size());
      nodes_[v].children.emplace(t, child);
      nodes_.emplace_back();
      v = child;
    } else {
      v = it->second;
    }
  }
  if (nodes_[v].item) {
    throw DuplicateIdError("ID of item " + std::to_string(item) +
                           " already belongs to item " +
                           std::to_string(*nodes_[v].item));
  }
  nodes_[v].item = item;
  ++terminals_;
}

const PrefixTrie::Node* PrefixTrie::Walk(
    std::span<const TokenId> prefix) const {
  std::uint32_t v = 0;
  for (TokenId t : prefix) {
    auto it = nodes_[v].children.find(t);
    if (it == nodes_[v].children.end()) return nullptr;
    v = it->second;
  }
  return &nodes_[v];
}

PrefixTrie::Next PrefixTrie::AllowedNext(
    std::span<const TokenId> prefix) const {
  Next next;
  const Node* node = Walk(prefix);
  if (!node) return next;
  for (const auto& [token, child] : node->children) {
    next.tokens.push_back(token);
  }
  next.end_of_id = node->item.has_value();
  return next;
}

std::optional<std::size_t> PrefixTrie::Lookup(
    std::span<const TokenId> id) const {
  const Node* node = Walk(id);
  return node ? node->item : std::nullopt;
}

bool PrefixTrie::PrefixFree() const {
  return std::none_of(nodes_.begin(), nodes_.end(), [](const Node& n) {
    return n.item && !n.children.empty();
  });
}

PrefixTrie BuildTrie(const IndexAssignment& assignment) {
  PrefixTrie trie;
  for (std::size_t i = 0; i < assignment.ids.size(); ++i) {
    trie.Insert(assignment.ids[i], i);
  }
  return trie;
}

namespace {

bool IsPrefix(const std::vector<TokenId>& shorter,
              const std::vector<TokenId>& longer) {
  return shorter.size() < longer.size() &&
         std::equal(shorter.begin(), shorter.end(), longer.begin());
}

void PairwiseCheck(const std::vector<std::vector<TokenId>>& ids,
                   VerificationReport& report) {
  std::vector<bool> grouped(ids.size(), false);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    std::vector<std::size_t> group{i};
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      if (!grouped[i] && !grouped[j] && ids[i] == ids[j]) {
        group.push_back(j);
        grouped[j] = true;
      }
      if (IsPrefix(ids[i], ids[j])) report.prefix_pairs.emplace_back(i, j);
      if (IsPrefix(ids[j], ids[i])) report.prefix_pairs.emplace_back(j, i);
    }
    if (group.size() > 1) report.collisions.push_back(std::move(group));
  }
}

// Sort-based check: in lexicographic order every prefix of an ID is
// immediately followed by the IDs it prefixes.
void SortedCheck(const std::vector<std::vector<TokenId>>& ids,
                 VerificationReport& report) {
  std::vector<std::size_t> order(ids.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return ids[a] < ids[b]; });
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i + 1;
    while (j < order.size() && ids[order[j]] == ids[order[i]]) ++j;
    if (j - i > 1) {
      std::vector<std::size_t> group(order.begin() + i, order.begin() + j);
      std::sort(group.begin(), group.end());
      report.collisions.push_back(std::move(group));
    }
    for (std::size_t k = j; k < order.size() && IsPrefix(ids[order[i]], ids[order[k]]);
         ++k) {
      for (std::size_t a = i; a < j; ++a) {
        report.prefix_pairs.emplace_back(order[a], order[k]);
      }
    }
    i = j;
  }
  std::sort(report.collisions.begin(), report.collisions.end());
}

}  // namespace

VerificationReport VerifyAssignment(const IndexAssignment& assignment,
                                    std::size_t pairwise_limit) {
  VerificationReport report;
  if (assignment.ids.size() <= pairwise_limit) {
    PairwiseCheck(assignment.ids, report);
  } else {
    SortedCheck(assignment.ids, report);
  }
  report.unique = report.collisions.empty();
  report.prefix_free = report.prefix_pairs.empty();
  return report;
}

}  // namespace itemidx
