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

// Shared fixtures for the unit and acceptance suites.

#ifndef ITEMIDX_TESTS_TEST_UTIL_H_
#define ITEMIDX_TESTS_TEST_UTIL_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <tuple>
#include <vector>

#include "itemidx/corpus.h"
#include "itemidx/random.h"
#include "itemidx/tokenization.h"

namespace itemidx::testing {

inline std::filesystem::path TestData(const std::string& name) {
  return std::filesystem::path(ITEMIDX_TESTDATA_DIR) / name;
}

inline SegmenterModel T5Subset() { return LoadUnigramModel(TestData("t5_subset.tsv")); }

// The five users of the reference sequential-indexing example. Each cell holds
// the number shown in the example and is used as the item label, so a
// correct SID run maps every item back to its own label. Sequences are
// train..., validation, test.
struct FiveUserRow {
  std::string user;
  std::vector<int> train;
  int validation;
  int test;
};

inline std::vector<FiveUserRow> FiveUserRows() {
  return {
      {"User1", {1001, 1002, 1003, 1004, 1005, 1006, 1007, 1008, 1009}, 1018, 1019},
      {"User2", {1010, 1011, 1001, 1012, 1008, 1009, 1013, 1014}, 1022, 1023},
      {"User3", {1015, 1016, 1017, 1007, 1018, 1019, 1020, 1021, 1009}, 1015, 1016},
      {"User4", {1022, 1023, 1005, 1002, 1006, 1024}, 1002, 1008},
      {"User5", {1025, 1026, 1027, 1028, 1029, 1030, 1024, 1020, 1021, 1031}, 1033, 1034},
  };
}

inline std::vector<Interaction> FiveUserInteractions(
    const std::vector<FiveUserRow>& rows = FiveUserRows()) {
  std::vector<Interaction> out;
  for (std::size_t u = 0; u < rows.size(); ++u) {
    std::int64_t t = static_cast<std::int64_t>(u + 1) * 1000;
    auto push = [&](int item) {
      out.push_back({rows[u].user, std::to_string(item), t++});
    };
    for (int item : rows[u].train) push(item);
    push(rows[u].validation);
    push(rows[u].test);
  }
  return out;
}

inline Corpus FiveUserCorpus() {
  const auto rows = FiveUserInteractions();
  return Corpus::FromInteractions(rows);
}

using WeightedEdge = std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>;

inline std::vector<std::string> NodeNames(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("n" + std::to_string(i));
  return names;
}

// Each pair present with probability `density`, weight in [1, max_weight].
inline CooccurrenceGraph RandomGraph(std::size_t n, double density,
                                     std::uint32_t max_weight, Rng& rng) {
  std::vector<WeightedEdge> edges;
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      if (UniformUnit(rng) < density) {
        edges.emplace_back(i, j, 1 + UniformBelow(rng, max_weight));
      }
    }
  }
  return GraphFromEdges(NodeNames(n), edges);
}

// Cliques of the given sizes, unit weights, no edges between them.
inline CooccurrenceGraph Cliques(const std::vector<std::uint32_t>& sizes) {
  std::vector<WeightedEdge> edges;
  std::uint32_t base = 0;
  for (std::uint32_t s : sizes) {
    for (std::uint32_t i = 0; i < s; ++i) {
      for (std::uint32_t j = i + 1; j < s; ++j) {
        edges.emplace_back(base + i, base + j, 1);
      }
    }
    base += s;
  }
  return GraphFromEdges(NodeNames(base), edges);
}

// Two disjoint populations of users and items. Each population's items
// form `communities` equal groups; a user draws most of a sequence from one
// community and the rest from anywhere in the population.
struct TwoPopulationSpec {
  std::size_t items_per_population = 500;
  std::size_t users_per_population = 200;
  std::size_t communities = 5;
  std::size_t sequence_length = 20;
  double in_community = 0.8;
};

inline Corpus TwoPopulationCorpus(const TwoPopulationSpec& spec,
                                  std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Interaction> rows;
  const std::size_t per_community = spec.items_per_population / spec.communities;
  for (std::size_t pop = 0; pop < 2; ++pop) {
    for (std::size_t u = 0; u < spec.users_per_population; ++u) {
      const std::string user =
          "p" + std::to_string(pop) + "u" + std::to_string(u);
      const std::size_t community = UniformBelow(rng, spec.communities);
      for (std::size_t t = 0; t < spec.sequence_length; ++t) {
        std::size_t item;
        if (UniformUnit(rng) < spec.in_community) {
          item = community * per_community + UniformBelow(rng, per_community);
        } else {
          item = UniformBelow(rng, spec.items_per_population);
        }
        rows.push_back({user,
                        "p" + std::to_string(pop) + "i" + std::to_string(item),
                        static_cast<std::int64_t>(u * 100 + t)});
      }
    }
  }
  return Corpus::FromInteractions(rows);
}

inline bool SamePopulation(const std::string& a, const std::string& b) {
  return a.substr(0, 2) == b.substr(0, 2);
}

}  // namespace itemidx::testing

#endif  // ITEMIDX_TESTS_TEST_UTIL_H_
