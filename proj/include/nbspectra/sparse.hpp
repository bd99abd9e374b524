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

#ifndef NBSPECTRA_SPARSE_HPP
#define NBSPECTRA_SPARSE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "nbspectra/error.hpp"
#include "nbspectra/random.hpp"

namespace nbspectra {

struct Triplet {
  std::size_t row = 0;
  std::size_t col = 0;
  double value = 0.0;
};

/// Row-compressed real matrix. Entries within a row are sorted by column and
/// unique; explicit zeros are never stored.
class SparseOperator {
 public:
  SparseOperator() = default;

  SparseOperator(std::size_t nrows, std::size_t ncols)
      : nrows_(nrows), ncols_(ncols), row_ptr_(nrows + 1, 0) {}

  /// Duplicates are summed; resulting zeros are dropped.
  static SparseOperator from_triplets(std::size_t nrows, std::size_t ncols,
                                      std::vector<Triplet> entries) {
    std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
      return std::tie(a.row, a.col) < std::tie(b.row, b.col);
    });
    SparseOperator out(nrows, ncols);
    for (std::size_t i = 0; i < entries.size();) {
      const Triplet& t = entries[i];
      if (t.row >= nrows || t.col >= ncols) {
        throw Error(Errc::ShapeMismatch, "triplet outside matrix bounds");
      }
      double sum = 0.0;
      std::size_t j = i;
      for (; j < entries.size() && entries[j].row == t.row && entries[j].col == t.col; ++j) {
        sum += entries[j].value;
      }
      if (sum != 0.0) {
        out.cols_.push_back(t.col);
        out.values_.push_back(sum);
        ++out.row_ptr_[t.row + 1];
      }
      i = j;
    }
    for (std::size_t r = 0; r < nrows; ++r) out.row_ptr_[r + 1] += out.row_ptr_[r];
    return out;
  }

  static SparseOperator identity(std::size_t n) {
    SparseOperator out(n, n);
    out.cols_.resize(n);
    out.values_.assign(n, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      out.cols_[i] = i;
      out.row_ptr_[i + 1] = i + 1;
    }
    return out;
  }

  std::size_t rows() const noexcept { return nrows_; }
  std::size_t cols() const noexcept { return ncols_; }
  std::size_t nnz() const noexcept { return values_.size(); }

  std::span<const std::size_t> row_cols(std::size_t r) const {
    return {cols_.data() + row_ptr_[r], row_ptr_[r + 1] - row_ptr_[r]};
  }
  std::span<const double> row_values(std::size_t r) const {
    return {values_.data() + row_ptr_[r], row_ptr_[r + 1] - row_ptr_[r]};
  }

  double coeff(std::size_t r, std::size_t c) const {
    auto cs = row_cols(r);
    auto it = std::lower_bound(cs.begin(), cs.end(), c);
    if (it == cs.end() || *it != c) return 0.0;
    return row_values(r)[static_cast<std::size_t>(it - cs.begin())];
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t r = 0; r < nrows_; ++r) {
      for (std::size_t p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) f(r, cols_[p], values_[p]);
    }
  }

  std::vector<Triplet> triplets() const {
    std::vector<Triplet> out;
    out.reserve(nnz());
    for_each([&](std::size_t r, std::size_t c, double v) { out.push_back({r, c, v}); });
    return out;
  }

  Eigen::MatrixXd to_dense() const {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(nrows_),
                                              static_cast<Eigen::Index>(ncols_));
    for_each([&](std::size_t r, std::size_t c, double v) {
      d(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
    });
    return d;
  }

  /// Bit-exact structural and numerical equality.
  friend bool operator==(const SparseOperator& a, const SparseOperator& b) {
    return a.nrows_ == b.nrows_ && a.ncols_ == b.ncols_ && a.row_ptr_ == b.row_ptr_ &&
           a.cols_ == b.cols_ && a.values_ == b.values_;
  }

 private:
  std::size_t nrows_ = 0;
  std::size_t ncols_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::size_t> cols_;
  std::vector<double> values_;
};

struct DiagonalOperator {
  std::vector<double> diagonal;

  std::size_t size() const noexcept { return diagonal.size(); }
  double operator[](std::size_t i) const { return diagonal[i]; }

  SparseOperator to_sparse() const {
    std::vector<Triplet> t;
    t.reserve(diagonal.size());
    for (std::size_t i = 0; i < diagonal.size(); ++i) t.push_back({i, i, diagonal[i]});
    return SparseOperator::from_triplets(diagonal.size(), diagonal.size(), std::move(t));
  }

  friend bool operator==(const DiagonalOperator&, const DiagonalOperator&) = default;
};

// --- products -------------------------------------------------------------

inline std::vector<double> matvec(const SparseOperator& m, std::span<const double> x) {
  if (x.size() != m.cols()) {
    throw Error(Errc::ShapeMismatch, "matvec: operand length " + std::to_string(x.size()) +
                                         " vs " + std::to_string(m.cols()) + " columns");
  }
  std::vector<double> y(m.rows(), 0.0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto cs = m.row_cols(r);
    auto vs = m.row_values(r);
    double acc = 0.0;
    for (std::size_t p = 0; p < cs.size(); ++p) acc += vs[p] * x[cs[p]];
    y[r] = acc;
  }
  return y;
}

/// y = M X for a dense block X (column-major, one column per vector).
inline Eigen::MatrixXd matmul(const SparseOperator& m, const Eigen::MatrixXd& x) {
  if (static_cast<std::size_t>(x.rows()) != m.cols()) {
    throw Error(Errc::ShapeMismatch, "matmul: block has wrong row count");
  }
  Eigen::MatrixXd y(static_cast<Eigen::Index>(m.rows()), x.cols());
  // Column by column: both blocks are column-major.
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    const double* xc = x.col(c).data();
    double* yc = y.col(c).data();
    for (std::size_t r = 0; r < m.rows(); ++r) {
      auto cs = m.row_cols(r);
      auto vs = m.row_values(r);
      double acc = 0.0;
      for (std::size_t p = 0; p < cs.size(); ++p) acc += vs[p] * xc[cs[p]];
      yc[r] = acc;
    }
  }
  return y;
}

inline SparseOperator transpose(const SparseOperator& m) {
  std::vector<Triplet> t;
  t.reserve(m.nnz());
  m.for_each([&](std::size_t r, std::size_t c, double v) { t.push_back({c, r, v}); });
  return SparseOperator::from_triplets(m.cols(), m.rows(), std::move(t));
}

inline SparseOperator multiply(const SparseOperator& a, const SparseOperator& b) {
  if (a.cols() != b.rows()) throw Error(Errc::ShapeMismatch, "multiply: inner dimensions differ");
  std::vector<Triplet> t;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto acs = a.row_cols(r);
    auto avs = a.row_values(r);
    for (std::size_t p = 0; p < acs.size(); ++p) {
      auto bcs = b.row_cols(acs[p]);
      auto bvs = b.row_values(acs[p]);
      for (std::size_t q = 0; q < bcs.size(); ++q) t.push_back({r, bcs[q], avs[p] * bvs[q]});
    }
  }
  return SparseOperator::from_triplets(a.rows(), b.cols(), std::move(t));
}

/// alpha * a + beta * b
inline SparseOperator combine(double alpha, const SparseOperator& a, double beta,
                              const SparseOperator& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(Errc::ShapeMismatch, "combine: shapes differ");
  }
  std::vector<Triplet> t;
  t.reserve(a.nnz() + b.nnz());
  a.for_each([&](std::size_t r, std::size_t c, double v) { t.push_back({r, c, alpha * v}); });
  b.for_each([&](std::size_t r, std::size_t c, double v) { t.push_back({r, c, beta * v}); });
  return SparseOperator::from_triplets(a.rows(), a.cols(), std::move(t));
}

/// P_r M P_c^T, i.e. entry (r, c) moves to (row_perm[r], col_perm[c]).
inline SparseOperator permute(const SparseOperator& m, std::span<const std::size_t> row_perm,
                              std::span<const std::size_t> col_perm) {
  if (row_perm.size() != m.rows() || col_perm.size() != m.cols()) {
    throw Error(Errc::ShapeMismatch, "permute: permutation length mismatch");
  }
  std::vector<Triplet> t;
  t.reserve(m.nnz());
  m.for_each([&](std::size_t r, std::size_t c, double v) {
    t.push_back({row_perm[r], col_perm[c], v});
  });
  return SparseOperator::from_triplets(m.rows(), m.cols(), std::move(t));
}

inline SparseOperator scale_rows(const DiagonalOperator& d, const SparseOperator& m) {
  if (d.size() != m.rows()) throw Error(Errc::ShapeMismatch, "scale_rows: length mismatch");
  std::vector<Triplet> t;
  t.reserve(m.nnz());
  m.for_each([&](std::size_t r, std::size_t c, double v) { t.push_back({r, c, d[r] * v}); });
  return SparseOperator::from_triplets(m.rows(), m.cols(), std::move(t));
}

inline std::vector<double> row_sums(const SparseOperator& m) {
  std::vector<double> s(m.rows(), 0.0);
  m.for_each([&](std::size_t r, std::size_t, double v) { s[r] += v; });
  return s;
}

inline std::vector<double> column_sums(const SparseOperator& m) {
  std::vector<double> s(m.cols(), 0.0);
  m.for_each([&](std::size_t, std::size_t c, double v) { s[c] += v; });
  return s;
}

inline bool is_symmetric(const SparseOperator& m) { return m == transpose(m); }

inline double frobenius_norm(const SparseOperator& m) {
  double s = 0.0;
  m.for_each([&](std::size_t, std::size_t, double v) { s += v * v; });
  return std::sqrt(s);
}

/// max_r sum_c |m_rc|
inline double inf_norm(const SparseOperator& m) {
  double best = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    double s = 0.0;
    for (double v : m.row_values(r)) s += std::abs(v);
    best = std::max(best, s);
  }
  return best;
}

// --- spectral norm --------------------------------------------------------

struct PowerIterationOptions {
  std::uint64_t seed = 0;
  double rel_tol = 1e-12;          // stop when the estimate changes less than this
  std::size_t max_iter = 200000;
  std::size_t block = 8;           // block power iteration; 1 is the plain method
};

/// Largest singular value of an implicit operator by block power iteration
/// on A^T A with Rayleigh-Ritz extraction. The block makes the rate depend
/// on sigma_{block+1} / sigma_1 rather than on the top gap. `apply` maps
/// R^ncols -> R^nrows and `apply_t` the reverse; both take and return
/// Eigen::VectorXd.
template <class Apply, class ApplyT>
double spectral_norm(Apply&& apply, ApplyT&& apply_t, std::size_t ncols,
                     const PowerIterationOptions& opt = {}) {
  if (ncols == 0) return 0.0;
  const auto n = static_cast<Eigen::Index>(ncols);
  const auto p = static_cast<Eigen::Index>(std::clamp<std::size_t>(opt.block, 1, ncols));
  std::mt19937_64 rng(opt.seed);
  Eigen::MatrixXd x(n, p);
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = standard_normal(rng);
  auto orthonormal = [&](const Eigen::MatrixXd& m) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
    return Eigen::MatrixXd(qr.householderQ() * Eigen::MatrixXd::Identity(n, p));
  };
  x = orthonormal(x);
  Eigen::MatrixXd z(n, p);
  double sigma = 0.0;
  std::size_t stable = 0;
  for (std::size_t it = 0; it < opt.max_iter; ++it) {
    for (Eigen::Index c = 0; c < p; ++c) {
      const Eigen::VectorXd y = apply(Eigen::VectorXd(x.col(c)));
      z.col(c) = apply_t(y);
    }
    // A random block can only be annihilated by the zero operator.
    if (z.isZero(0.0)) return 0.0;
    Eigen::MatrixXd h = x.transpose() * z;
    h = 0.5 * (h + h.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
    const double next = std::sqrt(std::max(es.eigenvalues().maxCoeff(), 0.0));
    if (std::abs(next - sigma) <= opt.rel_tol * next) {
      if (++stable >= 3) return next;
    } else {
      stable = 0;
    }
    sigma = next;
    x = orthonormal(z);
  }
  throw Error(Errc::NoConvergence, "spectral_norm: power iteration cap reached");
}

inline double spectral_norm(const SparseOperator& m, const PowerIterationOptions& opt = {}) {
  const SparseOperator mt = transpose(m);
  auto apply = [&](const Eigen::VectorXd& v) {
    auto y = matvec(m, std::span<const double>(v.data(), static_cast<std::size_t>(v.size())));
    return Eigen::VectorXd(Eigen::Map<Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size())));
  };
  auto apply_t = [&](const Eigen::VectorXd& v) {
    auto y = matvec(mt, std::span<const double>(v.data(), static_cast<std::size_t>(v.size())));
    return Eigen::VectorXd(Eigen::Map<Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size())));
  };
  return spectral_norm(apply, apply_t, m.cols(), opt);
}

}  // namespace nbspectra

#endif  // NBSPECTRA_SPARSE_HPP
