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

#include "itemidx/spectral.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "itemidx/random.h"

namespace itemidx {

SparseSymMatrix<double> NormalizedLaplacian(
    const CooccurrenceGraph& graph, std::span<const std::uint32_t> nodes) {
  if (nodes.empty()) throw std::invalid_argument("empty node subset");
  const auto n = static_cast<Eigen::Index>(nodes.size());
  std::unordered_map<std::uint32_t, Eigen::Index> local;
  local.reserve(nodes.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!local.emplace(nodes[i], i).second) {
      throw std::invalid_argument("duplicate node in subset");
    }
  }

  Eigen::VectorXd degree = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (const auto& e : graph.neighbors(nodes[i])) {
      if (local.count(e.node)) degree(i) += e.weight;
    }
  }

  std::vector<Eigen::Triplet<double>> triplets;
  for (Eigen::Index i = 0; i < n; ++i) {
    triplets.emplace_back(i, i, 1.0);
    if (degree(i) == 0) continue;
    for (const auto& e : graph.neighbors(nodes[i])) {
      auto it = local.find(e.node);
      if (it == local.end()) continue;
      const Eigen::Index j = it->second;
      triplets.emplace_back(
          i, j, -static_cast<double>(e.weight) / std::sqrt(degree(i) * degree(j)));
    }
  }
  SparseSymMatrix<double> laplacian(n, n);
  laplacian.setFromTriplets(triplets.begin(), triplets.end());
  laplacian.makeCompressed();
  return laplacian;
}

Eigen::MatrixXd SpectralEmbedding(const SparseSymMatrix<double>& laplacian,
                                  Eigen::Index dims,
                                  const EigenSolverOptions& options) {
  Eigen::MatrixXd embedding =
      SmallestEigenpairs(laplacian, dims, options).vectors;
  for (Eigen::Index i = 0; i < embedding.rows(); ++i) {
    const double norm = embedding.row(i).norm();
    if (norm > 0) embedding.row(i) /= norm;
  }
  return embedding;
}

std::vector<std::vector<std::uint32_t>> SpectralPartition(
    const CooccurrenceGraph& graph, std::span<const std::uint32_t> nodes,
    int parts, std::uint64_t seed, const SpectralOptions& options) {
  if (parts < 1 || static_cast<std::size_t>(parts) > nodes.size()) {
    throw std::invalid_argument("parts must be in [1, |nodes|]");
  }
  std::vector<std::vector<std::uint32_t>> groups;
  if (parts == 1) {
    groups.emplace_back(nodes.begin(), nodes.end());
  } else if (static_cast<std::size_t>(parts) == nodes.size()) {
    for (std::uint32_t v : nodes) groups.push_back({v});
  } else {
    EigenSolverOptions eigen = options.eigen;
    eigen.seed = DeriveSeed(seed, SeedStream::kLanczos);
    const Eigen::MatrixXd embedding =
        SpectralEmbedding(NormalizedLaplacian(graph, nodes), parts, eigen);
    const auto clustering =
        KMeans(embedding, parts, DeriveSeed(seed, SeedStream::kKMeans),
               options.kmeans);
    groups.resize(parts);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      groups[clustering.labels[i]].push_back(nodes[i]);
    }
  }
  std::erase_if(groups, [](const auto& g) { return g.empty(); });
  for (auto& g : groups) std::sort(g.begin(), g.end());
  std::sort(groups.begin(), groups.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return groups;
}

std::vector<std::vector<std::uint32_t>> ConnectedComponents(
    const CooccurrenceGraph& graph) {
  const std::size_t n = graph.node_count();
  std::vector<bool> seen(n, false);
  std::vector<std::vector<std::uint32_t>> components;
  std::vector<std::uint32_t> stack;
  for (std::uint32_t s = 0; s < n; ++s) {
    if (seen[s] || graph.neighbors(s).empty()) continue;
    std::vector<std::uint32_t> component;
    seen[s] = true;
    stack.push_back(s);
    while (!stack.empty()) {
      const std::uint32_t v = stack.back();
      stack.pop_back();
      component.push_back(v);
      for (const auto& e : graph.neighbors(v)) {
        if (!seen[e.node]) {
          seen[e.node] = true;
          stack.push_back(e.node);
        }
      }
    }
    std::sort(component.begin(), component.end());
    components.push_back(std::move(component));
  }
  return components;
}

}  // namespace itemidx
