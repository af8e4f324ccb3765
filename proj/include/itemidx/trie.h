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

#ifndef ITEMIDX_TRIE_H_
#define ITEMIDX_TRIE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "itemidx/indexing.h"
#include "itemidx/tokenization.h"

namespace itemidx {

// Prefix tree over the token sequences of an assignment. Answers the
// allowed-next-token question of constrained decoding.
class PrefixTrie {
 public:
  struct Next {
    std::vector<TokenId> tokens;  // ascending
    bool end_of_id = false;       // the prefix itself is a complete ID
    bool operator==(const Next&) const = default;
  };

  PrefixTrie();

  // Throws DuplicateIdError when the sequence is already present and
  // std::invalid_argument on an empty sequence.
  void Insert(std::span<const TokenId> id, std::size_t item);

  Next AllowedNext(std::span<const TokenId> prefix) const;
  std::optional<std::size_t> Lookup(std::span<const TokenId> id) const;

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t terminal_count() const { return terminals_; }
  // True when no terminal node has children.
  bool PrefixFree() const;

 private:
  struct Node {
    std::map<TokenId, std::uint32_t> children;
    std::optional<std::size_t> item;
  };
  const Node* Walk(std::span<const TokenId> prefix) const;

  std::vector<Node> nodes_;
  std::size_t terminals_ = 0;
};

// Values of `terminal` in the trie are positions in `assignment.items`.
PrefixTrie BuildTrie(const IndexAssignment& assignment);

struct VerificationReport {
  bool unique = true;
  bool prefix_free = true;
  // Groups of item positions sharing one ID.
  std::vector<std::vector<std::size_t>> collisions;
  // (shorter, longer) item positions where one ID prefixes the other.
  std::vector<std::pair<std::size_t, std::size_t>> prefix_pairs;
};

// Pairwise comparison up to `pairwise_limit` items, trie walk above.
VerificationReport VerifyAssignment(const IndexAssignment& assignment,
                                    std::size_t pairwise_limit = 10000);

}  // namespace itemidx

#endif  // ITEMIDX_TRIE_H_
