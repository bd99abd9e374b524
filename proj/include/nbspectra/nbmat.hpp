// Copyright 2026 The nbspectra Authors.
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

#ifndef NBSPECTRA_NBMAT_HPP
#define NBSPECTRA_NBMAT_HPP

#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "nbspectra/error.hpp"
#include "nbspectra/graph.hpp"
#include "nbspectra/sparse.hpp"

namespace nbspectra {

/// Non-backtracking matrix: entry (e, f) is 1 iff e ends where f starts and
/// f is not the reverse of e. Dimension 2m, sum_j d_j (d_j - 1) ones.
inline SparseOperator build_B(const OrientedEdgeIndex& idx) {
  const std::size_t dim = idx.oriented_count();
  std::vector<Triplet> t;
  for (EdgeId e = 0; e < dim; ++e) {
    const EdgeId back = idx.reverse(e);
    for (EdgeId f : idx.edges_from(idx.endpoint(e))) {
      if (f != back) t.push_back({e, f, 1.0});
    }
  }
  return SparseOperator::from_triplets(dim, dim, std::move(t));
}

/// Index permutation realizing the reversal involution: e <-> e + m.
inline std::vector<std::size_t> reversal_permutation(std::size_t m) {
  std::vector<std::size_t> p(2 * m);
  for (std::size_t e = 0; e < m; ++e) {
    p[e] = e + m;
    p[e + m] = e;
  }
  return p;
}

/// Swaps the first and second halves of a length-2m vector.
template <class T>
std::vector<T> apply_V(std::span<const T> x, std::size_t m) {
  if (x.size() != 2 * m) {
    throw Error(Errc::LengthMismatch, "apply_V: expected length " + std::to_string(2 * m) +
                                          ", got " + std::to_string(x.size()));
  }
  std::vector<T> out(x.size());
  std::copy(x.begin() + static_cast<std::ptrdiff_t>(m), x.end(), out.begin());
  std::copy(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(m),
            out.begin() + static_cast<std::ptrdiff_t>(m));
  return out;
}

template <class T>
std::vector<T> apply_V(const std::vector<T>& x, std::size_t m) {
  return apply_V(std::span<const T>(x), m);
}

/// Half-swap on the rows of a dense block (one vector per column).
inline Eigen::MatrixXd apply_V(const Eigen::MatrixXd& x) {
  const Eigen::Index m = x.rows() / 2;
  if (x.rows() != 2 * m) throw Error(Errc::LengthMismatch, "apply_V: odd row count");
  Eigen::MatrixXd out(x.rows(), x.cols());
  out.topRows(m) = x.bottomRows(m);
  out.bottomRows(m) = x.topRows(m);
  return out;
}

/// V M V for a 2m x 2m operator.
inline SparseOperator conjugate_V(const SparseOperator& mat) {
  if (mat.rows() != mat.cols() || mat.rows() % 2 != 0) {
    throw Error(Errc::ShapeMismatch, "conjugate_V: needs an even square operator");
  }
  auto p = reversal_permutation(mat.rows() / 2);
  return permute(mat, p, p);
}

/// M V: columns of M permuted by the reversal.
inline SparseOperator times_V(const SparseOperator& mat) {
  if (mat.cols() % 2 != 0) throw Error(Errc::ShapeMismatch, "times_V: odd column count");
  std::vector<std::size_t> rows(mat.rows());
  std::iota(rows.begin(), rows.end(), 0);
  return permute(mat, rows, reversal_permutation(mat.cols() / 2));
}

/// V M: rows of M permuted by the reversal.
inline SparseOperator V_times(const SparseOperator& mat) {
  if (mat.rows() % 2 != 0) throw Error(Errc::ShapeMismatch, "V_times: odd row count");
  std::vector<std::size_t> cols(mat.cols());
  std::iota(cols.begin(), cols.end(), 0);
  return permute(mat, reversal_permutation(mat.rows() / 2), cols);
}

/// Row sums of B: d_{endpoint(e)} - 1. Zero entries (edges into a leaf) are
/// kept as-is; build_T rejects them.
inline DiagonalOperator build_D_row(const OrientedEdgeIndex& idx) {
  DiagonalOperator d;
  d.diagonal.resize(idx.oriented_count());
  for (EdgeId e = 0; e < idx.oriented_count(); ++e) {
    d.diagonal[e] = static_cast<double>(idx.degree(idx.endpoint(e))) - 1.0;
  }
  return d;
}

/// Column sums of B: d_{startpoint(e)} - 1.
inline DiagonalOperator build_D_col(const OrientedEdgeIndex& idx) {
  DiagonalOperator d;
  d.diagonal.resize(idx.oriented_count());
  for (EdgeId e = 0; e < idx.oriented_count(); ++e) {
    d.diagonal[e] = static_cast<double>(idx.degree(idx.startpoint(e))) - 1.0;
  }
  return d;
}

/// diag(d_1, ..., d_n)
inline DiagonalOperator build_D(const OrientedEdgeIndex& idx) {
  DiagonalOperator d;
  d.diagonal.resize(idx.node_count());
  for (NodeId j = 0; j < idx.node_count(); ++j) d.diagonal[j] = static_cast<double>(idx.degree(j));
  return d;
}

inline void require_min_degree_two(const OrientedEdgeIndex& idx) {
  for (NodeId j = 0; j < idx.node_count(); ++j) {
    if (idx.degree(j) < 2) {
      throw Error(Errc::DegreeTooSmall, "node " + std::to_string(j) + " has degree " +
                                            std::to_string(idx.degree(j)));
    }
  }
}

/// Transition matrix of the non-backtracking walk, D_row^{-1} B.
inline SparseOperator build_T(const OrientedEdgeIndex& idx) {
  require_min_degree_two(idx);
  const auto drow = build_D_row(idx);
  const std::size_t dim = idx.oriented_count();
  std::vector<Triplet> t;
  for (EdgeId e = 0; e < dim; ++e) {
    const EdgeId back = idx.reverse(e);
    const double p = 1.0 / drow[e];
    for (EdgeId f : idx.edges_from(idx.endpoint(e))) {
      if (f != back) t.push_back({e, f, p});
    }
  }
  return SparseOperator::from_triplets(dim, dim, std::move(t));
}

/// Non-backtracking Laplacian I - T.
inline SparseOperator build_L(const OrientedEdgeIndex& idx) {
  const auto tmat = build_T(idx);
  return combine(1.0, SparseOperator::identity(idx.oriented_count()), -1.0, tmat);
}

/// 2m x n incidence: End[e, i] = 1 iff i is the endpoint of e.
inline SparseOperator build_End(const OrientedEdgeIndex& idx) {
  std::vector<Triplet> t;
  t.reserve(idx.oriented_count());
  for (EdgeId e = 0; e < idx.oriented_count(); ++e) t.push_back({e, idx.endpoint(e), 1.0});
  return SparseOperator::from_triplets(idx.oriented_count(), idx.node_count(), std::move(t));
}

/// 2m x n incidence: Start[e, i] = 1 iff i is the startpoint of e.
inline SparseOperator build_Start(const OrientedEdgeIndex& idx) {
  std::vector<Triplet> t;
  t.reserve(idx.oriented_count());
  for (EdgeId e = 0; e < idx.oriented_count(); ++e) t.push_back({e, idx.startpoint(e), 1.0});
  return SparseOperator::from_triplets(idx.oriented_count(), idx.node_count(), std::move(t));
}

/// The symmetric matrix B V.
inline SparseOperator build_BV(const OrientedEdgeIndex& idx) { return times_V(build_B(idx)); }

}  // namespace nbspectra

#endif  // NBSPECTRA_NBMAT_HPP
