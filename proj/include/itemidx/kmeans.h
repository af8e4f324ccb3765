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

#ifndef ITEMIDX_KMEANS_H_
#define ITEMIDX_KMEANS_H_

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "itemidx/random.h"

namespace itemidx {

struct KMeansOptions {
  int restarts = 10;
  int max_iterations = 300;
};

template <typename Scalar>
struct KMeansResult {
  // Cluster of each row; clusters numbered by first appearance.
  std::vector<int> labels;
  Scalar inertia = 0;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> centers;
};

namespace internal {

template <typename Scalar>
using RowMatrix =
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <typename Scalar>
std::vector<Eigen::Index> PlusPlusSeeds(const RowMatrix<Scalar>& points,
                                        Eigen::Index clusters, Rng& rng) {
  const Eigen::Index n = points.rows();
  std::vector<Eigen::Index> seeds;
  seeds.push_back(static_cast<Eigen::Index>(UniformBelow(rng, n)));
  Eigen::Vector<Scalar, Eigen::Dynamic> d2 =
      (points.rowwise() - points.row(seeds[0])).rowwise().squaredNorm();
  while (static_cast<Eigen::Index>(seeds.size()) < clusters) {
    const Scalar total = d2.sum();
    Eigen::Index pick = -1;
    if (total > 0) {
      const Scalar target = static_cast<Scalar>(UniformUnit(rng)) * total;
      Scalar acc = 0;
      for (Eigen::Index i = 0; i < n; ++i) {
        acc += d2(i);
        if (d2(i) > 0 && acc > target) {
          pick = i;
          break;
        }
      }
      if (pick < 0) {
        for (Eigen::Index i = n; i-- > 0;) {
          if (d2(i) > 0) {
            pick = i;
            break;
          }
        }
      }
    } else {
      // All points coincide with a chosen center; take unused rows in order.
      for (Eigen::Index i = 0; i < n && pick < 0; ++i) {
        if (std::find(seeds.begin(), seeds.end(), i) == seeds.end()) pick = i;
      }
    }
    seeds.push_back(pick);
    d2 = d2.cwiseMin(
        (points.rowwise() - points.row(pick)).rowwise().squaredNorm());
  }
  return seeds;
}

template <typename Scalar>
KMeansResult<Scalar> Lloyd(const RowMatrix<Scalar>& points,
                           RowMatrix<Scalar> centers, int max_iterations) {
  const Eigen::Index n = points.rows();
  const Eigen::Index k = centers.rows();
  std::vector<int> labels(n, -1);
  Eigen::Vector<Scalar, Eigen::Dynamic> dist(n);

  auto assign = [&]() {
    bool changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      Eigen::Index best = 0;
      const Scalar d =
          (centers.rowwise() - points.row(i)).rowwise().squaredNorm().minCoeff(
              &best);
      dist(i) = d;
      if (labels[i] != best) {
        labels[i] = static_cast<int>(best);
        changed = true;
      }
    }
    return changed;
  };

  assign();
  for (int iter = 0; iter < max_iterations; ++iter) {
    RowMatrix<Scalar> sums = RowMatrix<Scalar>::Zero(k, points.cols());
    std::vector<Eigen::Index> counts(k, 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      sums.row(labels[i]) += points.row(i);
      ++counts[labels[i]];
    }
    for (Eigen::Index c = 0; c < k; ++c) {
      if (counts[c] > 0) {
        centers.row(c) = sums.row(c) / static_cast<Scalar>(counts[c]);
        continue;
      }
      // Empty cluster: move it onto the point farthest from its center,
      // never emptying another cluster.
      Eigen::Index far = -1;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (counts[labels[i]] <= 1) continue;
        if (far < 0 || dist(i) > dist(far)) far = i;
      }
      if (far < 0) continue;
      --counts[labels[far]];
      labels[far] = static_cast<int>(c);
      counts[c] = 1;
      dist(far) = 0;
      centers.row(c) = points.row(far);
    }
    if (!assign()) break;
  }

  KMeansResult<Scalar> out;
  out.labels = std::move(labels);
  out.inertia = dist.sum();
  out.centers = centers;
  return out;
}

}  // namespace internal

// k-means with k-means++ seeding; the lowest-inertia run of
// `options.restarts` seeded restarts wins (earliest on ties).
template <typename Derived>
KMeansResult<typename Derived::Scalar> KMeans(
    const Eigen::MatrixBase<Derived>& points, Eigen::Index clusters,
    std::uint64_t seed, const KMeansOptions& options = {}) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = points.rows();
  if (clusters < 1 || clusters > n) {
    throw std::invalid_argument("cluster count must be in [1, rows]");
  }
  const internal::RowMatrix<Scalar> data = points;

  KMeansResult<Scalar> best;
  best.inertia = std::numeric_limits<Scalar>::infinity();
  for (int r = 0; r < std::max(1, options.restarts); ++r) {
    Rng rng(DeriveSeed(seed, static_cast<std::uint64_t>(r)));
    const std::vector<Eigen::Index> seeds =
        internal::PlusPlusSeeds(data, clusters, rng);
    internal::RowMatrix<Scalar> centers(clusters, data.cols());
    for (Eigen::Index c = 0; c < clusters; ++c) {
      centers.row(c) = data.row(seeds[c]);
    }
    KMeansResult<Scalar> run =
        internal::Lloyd(data, std::move(centers), options.max_iterations);
    if (run.inertia < best.inertia) best = std::move(run);
  }

  // Renumber clusters by first appearance; empty clusters go last.
  std::vector<int> remap(clusters, -1);
  int next = 0;
  for (int& label : best.labels) {
    if (remap[label] < 0) remap[label] = next++;
    label = remap[label];
  }
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> centers(
      clusters, data.cols());
  for (Eigen::Index c = 0; c < clusters; ++c) {
    if (remap[c] < 0) remap[c] = next++;
    centers.row(remap[c]) = best.centers.row(c);
  }
  best.centers = std::move(centers);
  return best;
}

// Sum of squared distances from each row to the mean of its cluster.
template <typename Derived>
typename Derived::Scalar PartitionInertia(
    const Eigen::MatrixBase<Derived>& points, const std::vector<int>& labels) {
  using Scalar = typename Derived::Scalar;
  int k = 0;
  for (int l : labels) k = std::max(k, l + 1);
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> sums =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(
          k, points.cols());
  std::vector<Scalar> counts(k, 0);
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    sums.row(labels[i]) += points.row(i);
    counts[labels[i]] += 1;
  }
  Scalar total = 0;
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    total += (points.row(i) - sums.row(labels[i]) / counts[labels[i]])
                 .squaredNorm();
  }
  return total;
}

}  // namespace itemidx

#endif  // ITEMIDX_KMEANS_H_
