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

#ifndef ITEMIDX_EIGENSOLVER_H_
#define ITEMIDX_EIGENSOLVER_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "itemidx/error.h"
#include "itemidx/random.h"

namespace itemidx {

template <typename Scalar>
struct EigenPairs {
  Eigen::Vector<Scalar, Eigen::Dynamic> values;           // ascending
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> vectors;  // columns
};

struct EigenSolverOptions {
  double tol = 1e-8;
  // Matrix-vector products allowed per eigenpair before giving up.
  int max_iterations = 5000;
  // Dimensions up to this use the dense solver.
  Eigen::Index dense_threshold = 512;
  // Krylov basis size per restart cycle; 0 picks a default.
  Eigen::Index max_basis = 0;
  std::uint64_t seed = 0;
};

// max_i sum_j |a_ij|
template <typename Derived>
typename Derived::Scalar InfNorm(const Eigen::SparseMatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  const auto& m = a.derived();
  Eigen::Vector<Scalar, Eigen::Dynamic> sums =
      Eigen::Vector<Scalar, Eigen::Dynamic>::Zero(m.rows());
  for (Eigen::Index k = 0; k < m.outerSize(); ++k) {
    for (typename Derived::InnerIterator it(m, k); it; ++it) {
      sums(it.row()) += std::abs(it.value());
    }
  }
  return m.rows() == 0 ? Scalar(0) : sums.maxCoeff();
}

template <typename Derived>
typename Derived::Scalar InfNorm(const Eigen::MatrixBase<Derived>& a) {
  return a.rows() == 0 ? typename Derived::Scalar(0)
                       : a.cwiseAbs().rowwise().sum().maxCoeff();
}

namespace internal {

// Flips the sign so the largest-magnitude entry (first on ties) is
// positive. Makes solver output reproducible as a value, not up to sign.
template <typename Derived>
void CanonicalizeSign(Eigen::MatrixBase<Derived>&& v) {
  Eigen::Index arg = 0;
  v.cwiseAbs().maxCoeff(&arg);
  if (v(arg) < 0) v = -v;
}

template <typename Derived>
void CanonicalizeSign(Eigen::MatrixBase<Derived>& v) {
  Eigen::Index arg = 0;
  v.cwiseAbs().maxCoeff(&arg);
  if (v(arg) < 0) v = -v;
}

template <typename Scalar>
void RandomFill(Eigen::Vector<Scalar, Eigen::Dynamic>& v, Rng& rng) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    v(i) = static_cast<Scalar>(2.0 * UniformUnit(rng) - 1.0);
  }
}

// Two passes of classical Gram-Schmidt against the first `count` columns.
template <typename Scalar>
void Orthogonalize(Eigen::Vector<Scalar, Eigen::Dynamic>& v,
                   const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>&
                       basis,
                   Eigen::Index count) {
  if (count == 0) return;
  for (int pass = 0; pass < 2; ++pass) {
    auto block = basis.leftCols(count);
    v.noalias() -= block * (block.transpose() * v);
  }
}

}  // namespace internal

template <typename MatrixType>
void CheckEigenRequest(const MatrixType& a, Eigen::Index m, double tol) {
  if (a.rows() != a.cols()) throw std::invalid_argument("matrix not square");
  if (m < 1 || m > a.rows()) {
    throw std::invalid_argument("eigenpair count must be in [1, n]");
  }
  if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
}

// Smallest m eigenpairs by full dense decomposition.
template <typename Derived>
EigenPairs<typename Derived::Scalar> DenseSmallestEigenpairs(
    const Eigen::MatrixBase<Derived>& a, Eigen::Index m) {
  using Scalar = typename Derived::Scalar;
  CheckEigenRequest(a, m, 1.0);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Scalar, Eigen::Dynamic,
                                              Eigen::Dynamic>>
      solver(a.derived());
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("dense eigensolver failed", std::nan(""));
  }
  EigenPairs<Scalar> out;
  out.values = solver.eigenvalues().head(m);
  out.vectors = solver.eigenvectors().leftCols(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    internal::CanonicalizeSign(out.vectors.col(j));
  }
  return out;
}

template <typename Scalar, int Options, typename StorageIndex>
EigenPairs<Scalar> DenseSmallestEigenpairs(
    const Eigen::SparseMatrix<Scalar, Options, StorageIndex>& a,
    Eigen::Index m) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> dense = a;
  return DenseSmallestEigenpairs(dense, m);
}

// Smallest m eigenpairs of a symmetric matrix by explicitly restarted
// Lanczos with full reorthogonalization. One eigenpair is locked per
// restart cycle; later cycles run on the complement of the locked vectors,
// which also uncovers repeated eigenvalues. Each returned pair satisfies
// ||A v - lambda v|| <= tol * max(1, ||A||_inf).
template <typename Scalar, int Options, typename StorageIndex>
EigenPairs<Scalar> LanczosSmallestEigenpairs(
    const Eigen::SparseMatrix<Scalar, Options, StorageIndex>& a,
    Eigen::Index m, const EigenSolverOptions& options = {}) {
  using Vector = Eigen::Vector<Scalar, Eigen::Dynamic>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  CheckEigenRequest(a, m, options.tol);

  const Eigen::Index n = a.rows();
  const Scalar scale = std::max<Scalar>(Scalar(1), InfNorm(a));
  const Scalar threshold = static_cast<Scalar>(options.tol) * scale;
  const Scalar breakdown = Scalar(1e-12) * scale;
  const Eigen::Index basis_cap =
      options.max_basis > 0 ? options.max_basis
                            : std::max<Eigen::Index>(100, 4 * m);

  Rng rng(options.seed);
  Matrix locked(n, m);
  Vector locked_values(m);
  Eigen::Index found = 0;

  Vector start(n);
  internal::RandomFill(start, rng);

  while (found < m) {
    const Eigen::Index p = std::min(basis_cap, n - found);
    Matrix basis(n, p);
    Vector alpha(p), beta(p);
    Vector v = start;
    int used = 0;
    Scalar best_residual = std::numeric_limits<Scalar>::infinity();

    while (true) {
      internal::Orthogonalize(v, locked, found);
      Scalar norm = v.norm();
      if (norm <= breakdown) {
        internal::RandomFill(v, rng);
        internal::Orthogonalize(v, locked, found);
        norm = v.norm();
      }
      v /= norm;

      Eigen::Index steps = 0;
      Vector w(n);
      for (Eigen::Index j = 0; j < p; ++j) {
        basis.col(j) = v;
        w.noalias() = a * v;
        ++used;
        alpha(j) = v.dot(w);
        w -= alpha(j) * v;
        if (j > 0) w -= beta(j - 1) * basis.col(j - 1);
        internal::Orthogonalize(w, basis, j + 1);
        internal::Orthogonalize(w, locked, found);
        beta(j) = w.norm();
        steps = j + 1;
        if (beta(j) <= breakdown) {
          beta(j) = 0;
          break;
        }
        v = w / beta(j);
      }

      Eigen::SelfAdjointEigenSolver<Matrix> tri;
      Vector diag = alpha.head(steps);
      Vector sub = beta.head(std::max<Eigen::Index>(steps - 1, 0));
      tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);

      Vector ritz = basis.leftCols(steps) * tri.eigenvectors().col(0);
      internal::Orthogonalize(ritz, locked, found);
      ritz.normalize();
      Vector image = a * ritz;
      const Scalar theta = ritz.dot(image);
      const Scalar residual = (image - theta * ritz).norm();
      best_residual = std::min(best_residual, residual);

      if (residual <= threshold) {
        internal::CanonicalizeSign(ritz);
        locked.col(found) = ritz;
        locked_values(found) = theta;
        ++found;
        // Next cycle: the runner-up Ritz vector mixed with fresh noise so a
        // hidden copy of a repeated eigenvalue is still reachable.
        internal::RandomFill(start, rng);
        if (steps > 1) {
          Vector second = basis.leftCols(steps) * tri.eigenvectors().col(1);
          start = start.normalized() + second.normalized();
        }
        break;
      }
      if (used >= options.max_iterations) {
        throw ConvergenceError("Lanczos did not converge for eigenpair " +
                                   std::to_string(found),
                               static_cast<double>(best_residual));
      }
      v = ritz;
    }
  }

  std::vector<Eigen::Index> order(m);
  for (Eigen::Index i = 0; i < m; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) {
                     return locked_values(x) < locked_values(y);
                   });
  EigenPairs<Scalar> out;
  out.values.resize(m);
  out.vectors.resize(n, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    out.values(i) = locked_values(order[i]);
    out.vectors.col(i) = locked.col(order[i]);
  }
  return out;
}

// Dense decomposition up to options.dense_threshold, Lanczos above.
template <typename Scalar, int Options, typename StorageIndex>
EigenPairs<Scalar> SmallestEigenpairs(
    const Eigen::SparseMatrix<Scalar, Options, StorageIndex>& a,
    Eigen::Index m, const EigenSolverOptions& options = {}) {
  CheckEigenRequest(a, m, options.tol);
  if (a.rows() <= options.dense_threshold) {
    return DenseSmallestEigenpairs(a, m);
  }
  return LanczosSmallestEigenpairs(a, m, options);
}

}  // namespace itemidx

#endif  // ITEMIDX_EIGENSOLVER_H_
