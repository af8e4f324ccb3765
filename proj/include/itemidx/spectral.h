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

#ifndef ITEMIDX_SPECTRAL_H_
#define ITEMIDX_SPECTRAL_H_

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/SparseCore>

#include "itemidx/corpus.h"
#include "itemidx/eigensolver.h"
#include "itemidx/kmeans.h"

namespace itemidx {

// Symmetric matrices are stored with both triangles.
template <typename Scalar>
using SparseSymMatrix = Eigen::SparseMatrix<Scalar>;

// L = I - D^{-1/2} A D^{-1/2} on the subgraph induced by `nodes` (rows in
// the order given). Degrees count only edges inside the subset; a node
// with no such edge gets an identity row.
SparseSymMatrix<double> NormalizedLaplacian(
    const CooccurrenceGraph& graph, std::span<const std::uint32_t> nodes);

// Rows of the m smallest Laplacian eigenvectors, each scaled to unit
// length (zero rows stay zero).
Eigen::MatrixXd SpectralEmbedding(const SparseSymMatrix<double>& laplacian,
                                  Eigen::Index dims,
                                  const EigenSolverOptions& options = {});

struct SpectralOptions {
  EigenSolverOptions eigen;
  KMeansOptions kmeans;
};

// Splits `nodes` into at most `parts` groups: k-means on the spectral
// embedding. Empty groups are dropped; each group is sorted and groups are
// ordered by their smallest node.
std::vector<std::vector<std::uint32_t>> SpectralPartition(
    const CooccurrenceGraph& graph, std::span<const std::uint32_t> nodes,
    int parts, std::uint64_t seed, const SpectralOptions& options = {});

// Connected components over nodes with at least one edge, each sorted,
// ordered by smallest node. Isolated nodes are not reported.
std::vector<std::vector<std::uint32_t>> ConnectedComponents(
    const CooccurrenceGraph& graph);

}  // namespace itemidx

#endif  // ITEMIDX_SPECTRAL_H_
