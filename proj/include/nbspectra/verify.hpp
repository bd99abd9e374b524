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


// Invariant suites over one graph. Each check records a measured value, the
// tolerance it was held to and a status; informational checks never fail.

#ifndef NBSPECTRA_VERIFY_HPP
#define NBSPECTRA_VERIFY_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nbspectra/error.hpp"
#include "nbspectra/graph.hpp"
#include "nbspectra/io.hpp"
#include "nbspectra/nbmat.hpp"
#include "nbspectra/sparse.hpp"
#include "nbspectra/spectra.hpp"

namespace nbspectra {

enum class CheckStatus { pass, fail, info, skipped };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::info: return "info";
    case CheckStatus::skipped: return "skipped";
  }
  return "?";
}

struct Finding {
  std::string suite;
  std::string check;
  CheckStatus status = CheckStatus::pass;
  double measured = std::numeric_limits<double>::quiet_NaN();
  double tolerance = 0.0;
  std::string note;
};

struct VerifyOptions {
  std::vector<std::string> suites;  // empty: all
  double tol = 1e-8;
  std::size_t k = 2;                // basis size for the theorem1 suite
  std::size_t dense_limit = 2000;   // oriented edges; larger graphs skip dense-only checks
};

struct VerifyReport {
  std::vector<Finding> findings;

  bool ok() const {
    return std::none_of(findings.begin(), findings.end(),
                        [](const Finding& f) { return f.status == CheckStatus::fail; });
  }
};

inline const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names{"pt", "stochastic", "svd", "sums", "theorem1", "bipartite", "components"};
  return names;
}

namespace detail {

inline double max_abs_difference(const SparseOperator& a, const SparseOperator& b) {
  double worst = 0.0;
  combine(1.0, a, -1.0, b).for_each([&](std::size_t, std::size_t, double v) { worst = std::max(worst, std::abs(v)); });
  return worst;
}

class FindingSink {
 public:
  FindingSink(std::string suite, std::vector<Finding>& out) : suite_(std::move(suite)), out_(out) {}

  void bound(const std::string& check, double measured, double tol, std::string note = {}) {
    const bool ok = measured <= tol;  // NaN fails
    out_.push_back({suite_, check, ok ? CheckStatus::pass : CheckStatus::fail, measured, tol, std::move(note)});
  }
  void info(const std::string& check, double measured, std::string note) {
    out_.push_back({suite_, check, CheckStatus::info, measured, 0.0, std::move(note)});
  }
  void skip(const std::string& check, std::string note) {
    out_.push_back({suite_, check, CheckStatus::skipped, std::numeric_limits<double>::quiet_NaN(), 0.0,
                    std::move(note)});
  }

 private:
  std::string suite_;
  std::vector<Finding>& out_;
};

inline void suite_pt(const OrientedEdgeIndex& idx, FindingSink& s) {
  const SparseOperator b = build_B(idx);
  s.bound("transpose_equals_VBV", max_abs_difference(transpose(b), conjugate_V(b)), 0.0);
  const SparseOperator bv = build_BV(idx);
  s.bound("BV_symmetric", max_abs_difference(bv, transpose(bv)), 0.0);
  const SparseOperator end = build_End(idx);
  const SparseOperator start = build_Start(idx);
  const SparseOperator eet = combine(1.0, multiply(end, transpose(end)), -1.0,
                                     SparseOperator::identity(idx.oriented_count()));
  s.bound("BV_equals_End_EndT_minus_I", max_abs_difference(bv, eet), 0.0);
  const SparseOperator d = build_D(idx).to_sparse();
  s.bound("EndT_End_equals_D", max_abs_difference(multiply(transpose(end), end), d), 0.0);
  s.bound("StartT_Start_equals_D", max_abs_difference(multiply(transpose(start), start), d), 0.0);
  double expected = -2.0 * static_cast<double>(idx.edge_count());
  for (NodeId j = 0; j < idx.node_count(); ++j) expected += static_cast<double>(idx.degree(j) * idx.degree(j));
  s.bound("B_entry_count", std::abs(static_cast<double>(b.nnz()) - expected), 0.0, "nnz(B) vs sum d^2 - 2m");
}

inline void suite_stochastic(const OrientedEdgeIndex& idx, FindingSink& s) {
  if (idx.min_degree() < 2) {
    s.skip("doubly_stochastic", "T needs minimum degree 2");
    return;
  }
  const SparseOperator t = build_T(idx);
  double rows = 0.0, cols = 0.0;
  for (double v : row_sums(t)) rows = std::max(rows, std::abs(v - 1.0));
  for (double v : column_sums(t)) cols = std::max(cols, std::abs(v - 1.0));
  s.bound("T_row_sums", rows, 1e-12);
  s.bound("T_column_sums", cols, 1e-12);
}

inline void suite_svd(const OrientedEdgeIndex& idx, const VerifyOptions& opt, FindingSink& s) {
  std::vector<double> closed = closed_form_singular_values_B(idx);
  std::sort(closed.begin(), closed.end(), std::greater<>());
  const SparseOperator b = build_B(idx);
  if (idx.oriented_count() == 0) {
    s.skip("singular_values", "no edges");
    return;
  }
  if (idx.oriented_count() <= opt.dense_limit) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(b.to_dense());
    double worst = 0.0;
    for (std::size_t i = 0; i < closed.size(); ++i) {
      worst = std::max(worst, std::abs(svd.singularValues()(static_cast<Eigen::Index>(i)) - closed[i]));
    }
    s.bound("singular_values", worst, opt.tol, "dense SVD vs {d_j - 1} and 1 x (2m - n)");
  } else {
    const double sigma = spectral_norm(b);
    s.bound("spectral_norm", std::abs(sigma - closed.front()) / closed.front(), std::max(opt.tol, 1e-10),
            "largest singular value vs d_max - 1 (graph above the dense limit)");
  }
}

struct DenseT {
  bool available = false;
  std::string reason;
  DenseEigen eig;
};

inline DenseT dense_T(const OrientedEdgeIndex& idx, const VerifyOptions& opt, bool vectors) {
  DenseT out;
  if (idx.min_degree() < 2) {
    out.reason = "T needs minimum degree 2";
  } else if (idx.oriented_count() > opt.dense_limit) {
    out.reason = "graph above the dense limit";
  } else {
    out.eig = dense_eigendecomposition(build_T(idx), vectors, MatrixTag::T);
    out.available = true;
  }
  return out;
}

inline void suite_sums(const OrientedEdgeIndex& idx, const VerifyOptions& opt, FindingSink& s) {
  const DenseT d = dense_T(idx, opt, true);
  if (!d.available) {
    s.skip("reversal_relation", d.reason);
    return;
  }
  double reversal = 0.0, total = 0.0, end_sums = 0.0;
  std::size_t pairs = 0, nontrivial = 0;
  for (std::size_t i = 0; i < d.eig.spectrum.size(); ++i) {
    const cplx v = d.eig.spectrum.values[i];
    if (!is_real(v)) continue;
    const double lambda = v.real();
    const Eigen::VectorXd z = d.eig.vectors.col(static_cast<Eigen::Index>(i)).real();
    const double zn = z.norm();
    const NodeSums ns = node_sums(z, idx);
    for (std::size_t j = 0; j < ns.start.size(); ++j) {
      reversal = std::max(reversal, std::abs(ns.start[j] - lambda * ns.end[j]) / zn);
    }
    ++pairs;
    if (std::abs(lambda - 1.0) <= 1e-8) continue;
    ++nontrivial;
    total = std::max(total, std::abs(z.sum()) / zn);
    for (double e : ns.end) end_sums = std::max(end_sums, std::abs(e) / zn);
  }
  s.bound("reversal_relation", reversal, opt.tol,
          "max_j |start-sum - lambda end-sum| / ||z|| over " + std::to_string(pairs) + " real eigenpairs");
  s.bound("nontrivial_sum_zero", total, opt.tol,
          "max |sum_e z_e| / ||z|| over " + std::to_string(nontrivial) + " real eigenpairs with lambda != 1");
  s.info("end_sums_vanish", end_sums, "max_j |end-sum| / ||z|| for lambda != 1; the vanishing claim is not assumed");
}

inline void suite_theorem1(const SimpleGraph& g, const OrientedEdgeIndex& idx, const VerifyOptions& opt,
                           FindingSink& s) {
  if (idx.min_degree() < 2) {
    s.skip("basis", "T needs minimum degree 2");
    return;
  }
  if (connected_components(g).count != 1 || idx.max_degree() <= 2) {
    s.skip("basis", "needs a connected graph that is not a cycle");
    return;
  }
  BasisOptions bo;
  bo.mode = idx.oriented_count() <= opt.dense_limit ? EigenMode::dense : EigenMode::iterative;
  bo.iterative.shift = 1.0;  // favours the positive real end of T's spectrum
  RealEigenBasis basis;
  try {
    basis = real_eigenbasis_T(idx, opt.k, bo);
  } catch (const Error& e) {
    if (e.code() != Errc::NotEnoughPositiveReals && e.code() != Errc::InsufficientRealRitz &&
        e.code() != Errc::NoConvergence) {
      throw;
    }
    s.skip("basis", std::string("k positive real eigenpairs not resolved: ") + e.what());
    return;
  }
  const BasisCheck c = check_basis(basis);
  s.bound("eigen_residual", c.eigen_residual, opt.tol, "max ||T z - lambda z|| / ||z||");
  s.bound("biorthonormality", c.biorthonormality, opt.tol, "max |Z^T W - I|");
  s.bound("drow_orthonormality", c.drow_orthonormality, opt.tol, "max |Z^T D_row Z - I|");
  for (std::size_t i = 1; i < basis.k; ++i) {
    const std::string tag = "[" + std::to_string(i + 1) + "]";
    s.info("zbz_plus_lambda" + tag, c.zbz_deviation[i], "z-breve^T z + lambda");
    s.info("norm2_minus_lambda" + tag, c.norm2_deviation[i], "||z||^2 - lambda");
  }
}

inline void suite_bipartite(const SimpleGraph& g, const OrientedEdgeIndex& idx, const VerifyOptions& opt,
                            FindingSink& s) {
  const DenseT d = dense_T(idx, opt, false);
  if (!d.available) {
    s.skip("minus_one_iff_bipartite", d.reason);
    return;
  }
  double dist = std::numeric_limits<double>::infinity();
  for (cplx v : d.eig.spectrum.values) dist = std::min(dist, std::abs(v + 1.0));
  const bool bipartite = is_bipartite(g).bipartite;
  const bool has = dist <= opt.tol;
  s.bound("minus_one_iff_bipartite", has == bipartite ? 0.0 : 1.0, 0.0,
          std::string(bipartite ? "bipartite" : "not bipartite") + "; min |lambda + 1| = " + io::format_double(dist));
}

inline void suite_components(const SimpleGraph& g, const OrientedEdgeIndex& idx, const VerifyOptions& opt,
                             FindingSink& s) {
  if (idx.min_degree() < 2) {
    s.skip("zero_multiplicity_of_L", "L needs minimum degree 2");
    return;
  }
  if (idx.oriented_count() > opt.dense_limit) {
    s.skip("zero_multiplicity_of_L", "graph above the dense limit");
    return;
  }
  const Spectrum sl = dense_eigendecomposition(build_L(idx), false, MatrixTag::L).spectrum;
  std::size_t zeros = 0;
  for (cplx v : sl.values) zeros += std::abs(v) <= opt.tol ? 1 : 0;
  // A cycle component contributes two directed cycles, hence two zeros.
  const Components comps = connected_components(g);
  std::size_t expected = comps.count;
  const auto sizes = comps.sizes();
  for (std::size_t c = 0; c < comps.count; ++c) {
    bool cycle = true;
    for (NodeId j = 0; j < g.node_count(); ++j) cycle = cycle && (comps.label[j] != c || g.degree(j) == 2);
    if (cycle && sizes[c] > 0) ++expected;
  }
  s.bound("zero_multiplicity_of_L", std::abs(static_cast<double>(zeros) - static_cast<double>(expected)), 0.0,
          std::to_string(zeros) + " zeros, " + std::to_string(comps.count) + " components");
}

}  // namespace detail

/// Runs the selected suites. Unknown suite names raise BadParameter.
inline VerifyReport verify(const SimpleGraph& g, const VerifyOptions& opt = {}) {
  if (!(opt.tol > 0.0)) throw Error(Errc::BadParameter, "verify: tolerance must be positive");
  std::vector<std::string> suites = opt.suites.empty() ? verify_suites() : opt.suites;
  for (const auto& name : suites) {
    if (std::find(verify_suites().begin(), verify_suites().end(), name) == verify_suites().end()) {
      throw Error(Errc::BadParameter, "verify: unknown suite '" + name + "'");
    }
  }
  const OrientedEdgeIndex idx = oriented_edges(g);
  VerifyReport out;
  for (const auto& name : verify_suites()) {
    if (std::find(suites.begin(), suites.end(), name) == suites.end()) continue;
    detail::FindingSink s(name, out.findings);
    if (name == "pt") detail::suite_pt(idx, s);
    if (name == "stochastic") detail::suite_stochastic(idx, s);
    if (name == "svd") detail::suite_svd(idx, opt, s);
    if (name == "sums") detail::suite_sums(idx, opt, s);
    if (name == "theorem1") detail::suite_theorem1(g, idx, opt, s);
    if (name == "bipartite") detail::suite_bipartite(g, idx, opt, s);
    if (name == "components") detail::suite_components(g, idx, opt, s);
  }
  return out;
}

}  // namespace nbspectra

#endif  // NBSPECTRA_VERIFY_HPP
