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

#include "itemidx/corpus.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "itemidx/error.h"
#include "itemidx/random.h"
#include "json.hpp"

namespace itemidx {
namespace {

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Splits on '\n', dropping a trailing '\r'. The final empty line after a
// terminating newline is not reported.
template <typename Fn>
void ForEachLine(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    fn(++line_no, line);
    start = end + 1;
  }
}

std::string ToUpper(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::toupper(c));
  return out;
}

}  // namespace

Corpus Corpus::FromInteractions(std::span<const Interaction> interactions) {
  Corpus corpus;
  for (const Interaction& x : interactions) {
    if (x.user.empty() || x.item.empty()) {
      throw std::invalid_argument("interaction with empty user or item");
    }
    if (x.timestamp < 0) {
      throw std::invalid_argument("negative timestamp for user " + x.user);
    }
    auto [it, inserted] = corpus.sequences_.try_emplace(x.user);
    if (inserted) corpus.users_.push_back(x.user);
    it->second.push_back({x.item, x.timestamp});
    if (corpus.item_index_.try_emplace(x.item, corpus.items_.size()).second) {
      corpus.items_.push_back(x.item);
    }
  }
  for (auto& [user, events] : corpus.sequences_) {
    std::stable_sort(events.begin(), events.end(),
                     [](const Event& a, const Event& b) {
                       return a.timestamp < b.timestamp;
                     });
  }
  return corpus;
}

Corpus Corpus::FromParts(
    std::vector<std::string> users,
    std::map<std::string, std::vector<Event>, std::less<>> sequences,
    std::vector<std::string> items) {
  Corpus corpus;
  corpus.users_ = std::move(users);
  corpus.items_ = std::move(items);
  for (std::uint32_t i = 0; i < corpus.items_.size(); ++i) {
    if (!corpus.item_index_.try_emplace(corpus.items_[i], i).second) {
      throw std::invalid_argument("duplicate item " + corpus.items_[i]);
    }
  }
  if (sequences.size() != corpus.users_.size()) {
    throw std::invalid_argument("user list does not match sequences");
  }
  for (const std::string& user : corpus.users_) {
    auto it = sequences.find(user);
    if (it == sequences.end() || it->second.empty()) {
      throw std::invalid_argument("missing or empty sequence for " + user);
    }
    for (const Event& e : it->second) {
      if (!corpus.HasItem(e.item)) {
        throw std::invalid_argument("sequence item not in universe: " + e.item);
      }
    }
    std::stable_sort(it->second.begin(), it->second.end(),
                     [](const Event& a, const Event& b) {
                       return a.timestamp < b.timestamp;
                     });
  }
  corpus.sequences_ = std::move(sequences);
  return corpus;
}

const std::vector<Event>& Corpus::sequence(std::string_view user) const {
  auto it = sequences_.find(user);
  if (it == sequences_.end()) {
    throw std::out_of_range("unknown user " + std::string(user));
  }
  return it->second;
}

std::vector<std::string> Corpus::SequenceItems(std::string_view user) const {
  std::vector<std::string> out;
  for (const Event& e : sequence(user)) out.push_back(e.item);
  return out;
}

bool Corpus::HasItem(std::string_view item) const {
  return item_index_.find(item) != item_index_.end();
}

std::uint32_t Corpus::ItemIndex(std::string_view item) const {
  auto it = item_index_.find(item);
  if (it == item_index_.end()) {
    throw std::out_of_range("unknown item " + std::string(item));
  }
  return it->second;
}

const ItemMeta* Corpus::FindMeta(std::string_view item) const {
  auto it = metadata_.find(item);
  return it == metadata_.end() ? nullptr : &it->second;
}

std::size_t Corpus::interaction_count() const {
  std::size_t n = 0;
  for (const auto& [user, events] : sequences_) n += events.size();
  return n;
}

Corpus ParseInteractions(std::string_view text) {
  std::vector<Interaction> rows;
  ForEachLine(text, [&](std::size_t line_no, std::string_view line) {
    if (line.empty()) return;
    std::size_t t1 = line.find('\t');
    std::size_t t2 = t1 == std::string_view::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string_view::npos ||
        line.find('\t', t2 + 1) != std::string_view::npos) {
      throw ParseError("expected user<TAB>item<TAB>timestamp", line_no);
    }
    Interaction row;
    row.user = std::string(line.substr(0, t1));
    row.item = std::string(line.substr(t1 + 1, t2 - t1 - 1));
    std::string_view ts = line.substr(t2 + 1);
    if (row.user.empty() || row.item.empty()) {
      throw ParseError("empty user or item", line_no);
    }
    auto [end, ec] = std::from_chars(ts.data(), ts.data() + ts.size(),
                                     row.timestamp);
    if (ec != std::errc() || end != ts.data() + ts.size() ||
        row.timestamp < 0) {
      throw ParseError("bad timestamp \"" + std::string(ts) + "\"", line_no);
    }
    rows.push_back(std::move(row));
  });
  if (rows.empty()) throw EmptyCorpusError("no interactions");
  return Corpus::FromInteractions(rows);
}

Corpus LoadInteractions(const std::filesystem::path& path) {
  return ParseInteractions(ReadFile(path));
}

std::map<std::string, ItemMeta, std::less<>> ParseMetadata(
    std::string_view text) {
  std::map<std::string, ItemMeta, std::less<>> out;
  ForEachLine(text, [&](std::size_t line_no, std::string_view line) {
    if (line.find_first_not_of(" \t") == std::string_view::npos) return;
    nlohmann::json row;
    try {
      row = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(e.what(), line_no);
    }
    if (!row.is_object() || !row.contains("item") ||
        !row["item"].is_string() || row["item"].get<std::string>().empty()) {
      throw ParseError("metadata row needs a non-empty \"item\"", line_no);
    }
    ItemMeta meta;
    if (row.contains("title") && !row["title"].is_null()) {
      if (!row["title"].is_string()) {
        throw ParseError("\"title\" must be a string or null", line_no);
      }
      meta.title = row["title"].get<std::string>();
    }
    if (row.contains("categories") && !row["categories"].is_null()) {
      const auto& cats = row["categories"];
      if (!cats.is_array()) {
        throw ParseError("\"categories\" must be a list of lists", line_no);
      }
      for (const auto& path : cats) {
        if (!path.is_array() || path.empty()) {
          throw ParseError("category path must be a non-empty list", line_no);
        }
        std::vector<std::string> names;
        for (const auto& name : path) {
          if (!name.is_string()) {
            throw ParseError("category names must be strings", line_no);
          }
          names.push_back(name.get<std::string>());
        }
        meta.category_paths.push_back(std::move(names));
      }
    }
    out[row["item"].get<std::string>()] = std::move(meta);
  });
  return out;
}

std::map<std::string, ItemMeta, std::less<>> LoadMetadata(
    const std::filesystem::path& path) {
  return ParseMetadata(ReadFile(path));
}

SplitCorpus LeaveOneOutSplit(const Corpus& corpus) {
  SplitCorpus split;
  split.users = corpus.users();
  for (const std::string& user : corpus.users()) {
    std::vector<std::string> items = corpus.SequenceItems(user);
    if (items.size() >= 3) {
      split.test_target[user] = items.back();
      items.pop_back();
      split.validation_target[user] = items.back();
      items.pop_back();
    }
    split.train[user] = std::move(items);
  }
  return split;
}

UserOrdering ParseOrdering(std::string_view name, std::uint64_t seed) {
  const std::string upper = ToUpper(name);
  if (upper == "TSO") return {OrderingKind::kTimeSensitive, seed};
  if (upper == "RO") return {OrderingKind::kRandom, seed};
  if (upper == "S2LO") return {OrderingKind::kShortToLong, seed};
  if (upper == "L2SO") return {OrderingKind::kLongToShort, seed};
  throw std::invalid_argument("unknown user ordering " + std::string(name));
}

std::string OrderingName(OrderingKind kind) {
  switch (kind) {
    case OrderingKind::kTimeSensitive:
      return "TSO";
    case OrderingKind::kRandom:
      return "RO";
    case OrderingKind::kShortToLong:
      return "S2LO";
    case OrderingKind::kLongToShort:
      return "L2SO";
  }
  return "?";
}

std::vector<std::string> OrderUsers(const Corpus& corpus,
                                    const UserOrdering& ordering) {
  const std::vector<std::string>& users = corpus.users();
  std::vector<std::size_t> order(users.size());
  std::iota(order.begin(), order.end(), 0);

  auto train_length = [&](std::size_t u) {
    std::size_t n = corpus.sequence(users[u]).size();
    return n >= 3 ? n - 2 : n;
  };

  switch (ordering.kind) {
    case OrderingKind::kTimeSensitive: {
      std::vector<std::int64_t> first(users.size());
      for (std::size_t u = 0; u < users.size(); ++u) {
        first[u] = corpus.sequence(users[u]).front().timestamp;
      }
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) {
                         return first[a] < first[b];
                       });
      break;
    }
    case OrderingKind::kRandom: {
      Rng rng(DeriveSeed(ordering.seed, SeedStream::kUserShuffle));
      // Fisher-Yates with a portable index draw.
      for (std::size_t i = order.size(); i > 1; --i) {
        std::swap(order[i - 1], order[UniformBelow(rng, i)]);
      }
      break;
    }
    case OrderingKind::kShortToLong:
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) {
                         return train_length(a) < train_length(b);
                       });
      break;
    case OrderingKind::kLongToShort:
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) {
                         return train_length(a) > train_length(b);
                       });
      break;
  }

  std::vector<std::string> out;
  out.reserve(order.size());
  for (std::size_t u : order) out.push_back(users[u]);
  return out;
}

CooccurrenceGraph::CooccurrenceGraph(std::vector<std::string> nodes,
                                     std::vector<std::vector<Edge>> adjacency)
    : nodes_(std::move(nodes)), adjacency_(std::move(adjacency)) {
  if (adjacency_.size() != nodes_.size()) {
    throw std::invalid_argument("adjacency size does not match node count");
  }
  for (std::uint32_t i = 0; i < nodes_.size(); ++i) {
    if (!index_.try_emplace(nodes_[i], i).second) {
      throw std::invalid_argument("duplicate graph node " + nodes_[i]);
    }
  }
}

std::uint32_t CooccurrenceGraph::NodeIndex(std::string_view item) const {
  auto it = index_.find(item);
  if (it == index_.end()) {
    throw std::out_of_range("unknown graph node " + std::string(item));
  }
  return it->second;
}

std::uint32_t CooccurrenceGraph::Weight(std::uint32_t a,
                                        std::uint32_t b) const {
  const auto& row = adjacency_[a];
  auto it = std::lower_bound(
      row.begin(), row.end(), b,
      [](const Edge& e, std::uint32_t target) { return e.node < target; });
  return it != row.end() && it->node == b ? it->weight : 0;
}

std::uint64_t CooccurrenceGraph::WeightedDegree(std::uint32_t i) const {
  std::uint64_t d = 0;
  for (const Edge& e : adjacency_[i]) d += e.weight;
  return d;
}

std::size_t CooccurrenceGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& row : adjacency_) n += row.size();
  return n / 2;
}

std::uint64_t CooccurrenceGraph::total_weight() const {
  std::uint64_t w = 0;
  for (std::uint32_t i = 0; i < adjacency_.size(); ++i) w += WeightedDegree(i);
  return w / 2;
}

namespace {

std::vector<std::vector<CooccurrenceGraph::Edge>> ToAdjacency(
    std::size_t n,
    const std::unordered_map<std::uint64_t, std::uint32_t>& pair_weights) {
  std::vector<std::vector<CooccurrenceGraph::Edge>> adjacency(n);
  for (const auto& [key, weight] : pair_weights) {
    const auto a = static_cast<std::uint32_t>(key >> 32);
    const auto b = static_cast<std::uint32_t>(key & 0xffffffffu);
    adjacency[a].push_back({b, weight});
    adjacency[b].push_back({a, weight});
  }
  for (auto& row : adjacency) {
    std::sort(row.begin(), row.end(),
              [](const auto& x, const auto& y) { return x.node < y.node; });
  }
  return adjacency;
}

std::uint64_t PairKey(std::uint32_t a, std::uint32_t b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

}  // namespace

CooccurrenceGraph BuildCooccurrenceGraph(const Corpus& corpus,
                                         const SplitCorpus& split) {
  std::unordered_map<std::uint64_t, std::uint32_t> pair_weights;
  std::vector<std::uint32_t> distinct;
  for (const auto& [user, items] : split.train) {
    distinct.clear();
    for (const std::string& item : items) {
      distinct.push_back(corpus.ItemIndex(item));
    }
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()),
                   distinct.end());
    for (std::size_t i = 0; i < distinct.size(); ++i) {
      for (std::size_t j = i + 1; j < distinct.size(); ++j) {
        ++pair_weights[PairKey(distinct[i], distinct[j])];
      }
    }
  }
  return CooccurrenceGraph(corpus.items(),
                           ToAdjacency(corpus.items().size(), pair_weights));
}

CooccurrenceGraph GraphFromEdges(
    std::vector<std::string> nodes,
    std::span<const std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>>
        edges) {
  std::unordered_map<std::uint64_t, std::uint32_t> pair_weights;
  for (const auto& [a, b, w] : edges) {
    if (a >= nodes.size() || b >= nodes.size()) {
      throw std::out_of_range("edge endpoint out of range");
    }
    if (a == b || w == 0) continue;
    pair_weights[PairKey(a, b)] += w;
  }
  const std::size_t n = nodes.size();
  return CooccurrenceGraph(std::move(nodes), ToAdjacency(n, pair_weights));
}

}  // namespace itemidx
