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

// Bauer-Fike closeness of the real spectra of T and B / mu_1.

#ifndef NBSPECTRA_PERTURB_HPP
#define NBSPECTRA_PERTURB_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nbspectra/error.hpp"
#include "nbspectra/graph.hpp"
#include "nbspectra/nbmat.hpp"
#include "nbspectra/sparse.hpp"
#include "nbspectra/spectra.hpp"

namespace nbspectra {

/// s_max / s_min of a tall (or square) matrix.
template <class Derived>
double spectral_condition_number(const Eigen::MatrixBase<Derived>& u) {
  if (u.cols() == 0 || u.rows() < u.cols()) {
    throw Error(Errc::RankDeficient, "spectral_condition_number: need at least as many rows as columns");
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(u.derived().template cast<double>().eval());
  const auto& s = svd.singularValues();
  const double smax = s(0), smin = s(s.size() - 1);
  if (!(smin >= 1e-12 * smax) || smax == 0.0) {
    throw Error(Errc::RankDeficient, "spectral_condition_number: matrix is numerically rank deficient");
  }
  return smax / smin;
}

/// kappa(U) * ||bp - a||_2: every eigenvalue of bp lies within this radius
/// of an eigenvalue of a = U diag U^-1.
inline double bauer_fike_radius(const Eigen::MatrixXd& u, const Eigen::MatrixXd& a, const Eigen::MatrixXd& bp,
                                const PowerIterationOptions& opt = {}) {
  if (a.rows() != bp.rows() || a.cols() != bp.cols() || a.rows() != a.cols() || u.rows() != a.rows()) {
    throw Error(Errc::ShapeMismatch, "bauer_fike_radius: shapes disagree");
  }
  const double kappa = spectral_condition_number(u);
  const Eigen::MatrixXd diff = bp - a;
  if (diff.isZero(0.0)) return 0.0;
  const double norm = spectral_norm([&](const Eigen::VectorXd& x) { return Eigen::VectorXd(diff * x); },
                                    [&](const Eigen::VectorXd& x) { return Eigen::VectorXd(diff.transpose() * x); },
                                    static_cast<std::size_t>(diff.cols()), opt);
  return kappa * norm;
}

struct PaperBound {
  double raw = 0.0;          // ratio (ratio - 1 + |lambda_{k+1}|)
  double closed_form = 0.0;  // ratio (ratio - 1) + 1 / (d_min - 1)
};

/// Closed-form radius from the degree extremes, with ratio =
/// (d_max - 1)/(d_min - 1).
inline PaperBound paper_R_bound(double d_min, double d_max, double c, double lambda_kplus1) {
  if (!(d_min >= 2.0)) throw Error(Errc::BadParameter, "paper_R_bound: d_min must be at least 2");
  if (!(d_max >= d_min)) throw Error(Errc::BadParameter, "paper_R_bound: d_max must be at least d_min");
  if (!(c > 1.0)) throw Error(Errc::BadParameter, "paper_R_bound: c must exceed 1");
  if (!(std::abs(lambda_kplus1) <= 1.0)) {
    throw Error(Errc::BadParameter, "paper_R_bound: |lambda_{k+1}| must be at most 1");
  }
  const double ratio = (d_max - 1.0) / (d_min - 1.0);
  return {ratio * (ratio - 1.0 + std::abs(lambda_kplus1)), ratio * (ratio - 1.0) + 1.0 / (d_min - 1.0)};
}

struct EigenMatch {
  double lambda = 0.0;
  double mu_ratio = 0.0;   // mu_i / mu_1
  double deviation = 0.0;  // |lambda_i - mu_i / mu_1|
  bool within_R = false;
};

struct MatchReport {
  std::vector<EigenMatch> matches;
  bool perron_in_range = true;  // d_min - 1 <= mu_1 <= d_max - 1
};

/// Pairs lambda_i with mu_i / mu_1 in order. Both inputs decreasing.
inline MatchReport match_and_verify(const std::vector<double>& lambdas, const std::vector<double>& mus, double R,
                                    double d_min, double d_max) {
  if (lambdas.size() != mus.size()) {
    throw Error(Errc::CountMismatch, "match_and_verify: " + std::to_string(lambdas.size()) + " lambdas vs " +
                                         std::to_string(mus.size()) + " mus");
  }
  if (mus.empty() || !(mus[0] > 0.0)) throw Error(Errc::BadParameter, "match_and_verify: mu_1 must be positive");
  MatchReport out;
  for (std::size_t i = 0; i < mus.size(); ++i) {
    EigenMatch m;
    m.lambda = lambdas[i];
    m.mu_ratio = mus[i] / mus[0];
    m.deviation = std::abs(m.lambda - m.mu_ratio);
    m.within_R = m.deviation <= R;
    out.matches.push_back(m);
  }
  // Small slack for the computed mu_1 on regular graphs.
  const double slack = 1e-9 * std::max(1.0, d_max);
  out.perron_in_range = mus[0] >= d_min - 1.0 - slack && mus[0] <= d_max - 1.0 + slack;
  return out;
}

struct BoundOptions {
  EigenMode mode = EigenMode::dense;
  BasisOptions basis;
  IterativeOptions b_iterative;
  PowerIterationOptions power;
};

struct BoundReport {
  std::size_t k = 0;
  std::vector<double> lambdas;
  std::vector<double> mus;
  double kappa_numeric = 0.0;
  double kappa_bound_ratio = 0.0;
  double kappa_bound_gap = 0.0;
  double perturbation_norm = 0.0;  // ||Z L W^T - B / mu_1||
  double R_numeric = 0.0;
  PaperBound R_paper;
  double lambda_kplus1 = 0.0;
  bool lambda_kplus1_measured = false;  // false when the 1/sqrt(c-1) bound was substituted
  double w_norm = 0.0;                  // ||W_k||
  double w_norm_bound = 0.0;            // (d_max - 1) / sqrt(d_min - 1)
  double min_lambda = 0.0;
  bool gap_assumption_holds = true;     // min lambda_i >= 1 / (d_max - 1)
  bool kappa_within_bounds = true;      // kappa_numeric <= min(bound_ratio, bound_gap)
  MatchReport match;
  double c = 0.0;
  std::size_t d_min = 0;
  std::size_t d_max = 0;
};

/// Every quantity of the closeness bound between the given basis of T and
/// the leading real eigenvalues of B.
inline BoundReport bound_report(const OrientedEdgeIndex& idx, const RealEigenBasis& basis,
                                const BoundOptions& opt = {}) {
  BoundReport r;
  const std::size_t k = basis.k;
  r.k = k;
  r.d_min = idx.min_degree();
  r.d_max = idx.max_degree();
  r.c = static_cast<double>(idx.oriented_count()) / static_cast<double>(idx.node_count());
  const double dmin1 = static_cast<double>(r.d_min) - 1.0;
  const double dmax1 = static_cast<double>(r.d_max) - 1.0;

  r.lambdas = basis.lambdas;

  const SparseOperator b = build_B(idx);
  std::vector<cplx> t_spectrum;
  if (opt.mode == EigenMode::dense) {
    Spectrum sb = dense_eigendecomposition(b, false, MatrixTag::B, opt.basis.dense).spectrum;
    for (cplx v : sb.values) {
      if (is_real(v, opt.basis.dense.tau_im) && v.real() > 0.0 && r.mus.size() < k) r.mus.push_back(v.real());
    }
    t_spectrum = dense_eigendecomposition(build_T(idx), false, MatrixTag::T, opt.basis.dense).spectrum.values;
  } else {
    PartialEigen pe = leading_real_eigenpairs(b, k, opt.b_iterative);
    for (cplx v : pe.spectrum.values) {
      if (v.real() > 0.0) r.mus.push_back(v.real());
    }
  }
  if (r.mus.size() < k) {
    throw Error(Errc::NotEnoughPositiveReals, "B has fewer than " + std::to_string(k) + " positive real eigenvalues");
  }
  const double mu1 = r.mus[0];

  // |lambda_{k+1}|: largest modulus of the dense T spectrum once the k
  // retained values are removed.
  if (!t_spectrum.empty()) {
    std::vector<bool> used(t_spectrum.size(), false);
    for (double l : r.lambdas) {
      std::size_t best = t_spectrum.size();
      double dist = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < t_spectrum.size(); ++i) {
        if (!used[i] && std::abs(t_spectrum[i] - l) < dist) {
          dist = std::abs(t_spectrum[i] - l);
          best = i;
        }
      }
      if (best < used.size()) used[best] = true;
    }
    for (std::size_t i = 0; i < t_spectrum.size(); ++i) {
      if (!used[i]) r.lambda_kplus1 = std::max(r.lambda_kplus1, std::abs(t_spectrum[i]));
    }
    r.lambda_kplus1 = std::min(r.lambda_kplus1, 1.0);
    r.lambda_kplus1_measured = true;
  } else {
    r.lambda_kplus1 = std::min(1.0, 1.0 / std::sqrt(r.c - 1.0));
  }

  r.kappa_numeric = spectral_condition_number(basis.Z);
  r.kappa_bound_ratio = dmax1 / dmin1;
  r.kappa_bound_gap = std::sqrt(r.c - 1.0) / dmin1;
  r.kappa_within_bounds = r.kappa_numeric <= std::min(r.kappa_bound_ratio, r.kappa_bound_gap);

  // ||Z Lambda W^T - B / mu_1|| through its action and transpose action.
  const SparseOperator bt = transpose(b);
  const Eigen::VectorXd lam = Eigen::Map<const Eigen::VectorXd>(r.lambdas.data(), static_cast<Eigen::Index>(k));
  auto sparse_apply = [](const SparseOperator& m, const Eigen::VectorXd& x) {
    auto y = matvec(m, std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
    return Eigen::VectorXd(Eigen::Map<Eigen::VectorXd>(y.data(), static_cast<Eigen::Index>(y.size())));
  };
  auto apply = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd y = basis.Z * lam.cwiseProduct(basis.W.transpose() * x);
    return Eigen::VectorXd(y - sparse_apply(b, x) / mu1);
  };
  auto apply_t = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd y = basis.W * lam.cwiseProduct(basis.Z.transpose() * x);
    return Eigen::VectorXd(y - sparse_apply(bt, x) / mu1);
  };
  r.perturbation_norm = spectral_norm(apply, apply_t, idx.oriented_count(), opt.power);
  r.R_numeric = r.kappa_numeric * r.perturbation_norm;
  r.R_paper = paper_R_bound(static_cast<double>(r.d_min), static_cast<double>(r.d_max), r.c, r.lambda_kplus1);

  Eigen::JacobiSVD<Eigen::MatrixXd> wsvd(basis.W);
  r.w_norm = wsvd.singularValues()(0);
  r.w_norm_bound = dmax1 / std::sqrt(dmin1);
  r.min_lambda = *std::min_element(r.lambdas.begin(), r.lambdas.end());
  r.gap_assumption_holds = r.min_lambda >= 1.0 / dmax1;

  r.match = match_and_verify(r.lambdas, r.mus, r.R_paper.closed_form, static_cast<double>(r.d_min),
                             static_cast<double>(r.d_max));
  return r;
}

inline BoundReport bound_report(const OrientedEdgeIndex& idx, std::size_t k, const BoundOptions& opt = {}) {
  BasisOptions bopt = opt.basis;
  bopt.mode = opt.mode;
  return bound_report(idx, real_eigenbasis_T(idx, k, bopt), opt);
}

}  // namespace nbspectra

#endif  // NBSPECTRA_PERTURB_HPP
