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

#ifndef NBSPECTRA_SPECTRA_HPP
#define NBSPECTRA_SPECTRA_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nbspectra/error.hpp"
#include "nbspectra/random.hpp"
#include "nbspectra/graph.hpp"
#include "nbspectra/nbmat.hpp"
#include "nbspectra/sparse.hpp"

namespace nbspectra {

using cplx = std::complex<double>;

enum class MatrixTag { B, T, L, BV, Other };
enum class EigenClass { unclassified, perron, structural_real, real_bulk, complex_bulk };

inline const char* to_string(MatrixTag t) {
  switch (t) {
    case MatrixTag::B: return "B";
    case MatrixTag::T: return "T";
    case MatrixTag::L: return "L";
    case MatrixTag::BV: return "BV";
    case MatrixTag::Other: return "other";
  }
  return "other";
}

inline const char* to_string(EigenClass c) {
  switch (c) {
    case EigenClass::unclassified: return "unclassified";
    case EigenClass::perron: return "perron";
    case EigenClass::structural_real: return "structural_real";
    case EigenClass::real_bulk: return "real_bulk";
    case EigenClass::complex_bulk: return "complex_bulk";
  }
  return "unclassified";
}

/// Multiset of eigenvalues, sorted by decreasing real part then decreasing
/// imaginary part.
struct Spectrum {
  std::vector<cplx> values;
  std::vector<EigenClass> classes;  // empty until classify_spectrum
  MatrixTag tag = MatrixTag::Other;
  double backward_error = 0.0;  // NaN when not measured

  std::size_t size() const noexcept { return values.size(); }
};

/// |imag| within tau * (1 + |value|).
inline bool is_real(cplx v, double tau_im = 1e-8) {
  return std::abs(v.imag()) <= tau_im * (1.0 + std::abs(v));
}

namespace detail {

inline std::vector<std::size_t> spectrum_order(const std::vector<cplx>& v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (v[a].real() != v[b].real()) return v[a].real() > v[b].real();
    return v[a].imag() > v[b].imag();
  });
  return order;
}

/// sqrt(||M||_1 ||M||_inf), an upper bound on the spectral norm that is exact
/// for the operators used here (B and T).
inline double norm_bound(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  const double n1 = m.cwiseAbs().colwise().sum().maxCoeff();
  const double ninf = m.cwiseAbs().rowwise().sum().maxCoeff();
  return std::sqrt(n1 * ninf);
}

inline double norm_bound(const SparseOperator& m) {
  if (m.nnz() == 0) return 0.0;
  double n1 = 0.0;
  std::vector<double> abscol(m.cols(), 0.0);
  m.for_each([&](std::size_t, std::size_t c, double v) { abscol[c] += std::abs(v); });
  for (double s : abscol) n1 = std::max(n1, s);
  return std::sqrt(n1 * inf_norm(m));
}

/// Orthonormal basis of the eigenspace of `m` at the real value `lambda`,
/// of dimension `r`, by block inverse iteration.
inline Eigen::MatrixXd inverse_iteration_basis(const Eigen::MatrixXd& m, double lambda,
                                               Eigen::Index r, std::uint64_t seed,
                                               int sweeps = 4) {
  const Eigen::Index n = m.rows();
  // An exactly singular shift makes the solve blow up; nudge further.
  for (double offset : {1e-10, 1e-8, 1e-6}) {
    const double sigma = lambda + offset * std::max(1.0, std::abs(lambda));
    Eigen::MatrixXd shifted = m - sigma * Eigen::MatrixXd::Identity(n, n);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(shifted);
    std::mt19937_64 rng(seed);
    Eigen::MatrixXd x(n, r);
    for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = standard_normal(rng);
    for (int s = 0; s < sweeps; ++s) {
      x = lu.solve(x);
      x /= std::max(x.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
      x = qr.householderQ() * Eigen::MatrixXd::Identity(n, r);
    }
    if (x.allFinite()) return x;
  }
  throw Error(Errc::NoConvergence, "inverse iteration failed near " + std::to_string(lambda));
}

}  // namespace detail

struct DenseOptions {
  std::size_t dimension_cap = 6000;
  double residual_tol = 1e-8;    // relative to the norm bound of M
  double cluster_rel = 1e-7;     // relative width of a degenerate real cluster
  double tau_im = 1e-8;
  std::uint64_t seed = 0;        // for inverse-iteration refinement
  bool backward_error = false;   // values only: also form the Schur vectors and report ||M - U T U^T|| / ||M||_F
};

struct DenseEigen {
  Spectrum spectrum;
  Eigen::MatrixXcd vectors;  // unit 2-norm columns, aligned with spectrum.values
};

/// Full spectrum of a dense real matrix (Hessenberg reduction and shifted QR
/// via Eigen). Right eigenvectors of real eigenvalues are real; degenerate
/// real clusters are replaced by an orthonormal basis of the eigenspace when
/// the solver's vectors are rank deficient or inaccurate.
inline DenseEigen dense_eigendecomposition(const Eigen::MatrixXd& m, bool want_vectors,
                                           MatrixTag tag = MatrixTag::Other,
                                           const DenseOptions& opt = {}) {
  if (m.rows() != m.cols()) throw Error(Errc::ShapeMismatch, "dense_eigendecomposition: not square");
  const auto n = static_cast<std::size_t>(m.rows());
  if (n > opt.dimension_cap) {
    throw Error(Errc::DimensionCap, "dimension " + std::to_string(n) + " exceeds dense cap " +
                                        std::to_string(opt.dimension_cap));
  }
  DenseEigen out;
  out.spectrum.tag = tag;
  if (n == 0) return out;
  const double mnorm = detail::norm_bound(m);

  if (!want_vectors) {
    Eigen::RealSchur<Eigen::MatrixXd> schur(m, opt.backward_error);
    if (schur.info() != Eigen::Success) throw Error(Errc::NoConvergence, "real Schur iteration failed");
    const Eigen::MatrixXd& t = schur.matrixT();
    std::vector<cplx> vals;
    vals.reserve(n);
    for (Eigen::Index i = 0; i < t.rows();) {
      if (i + 1 < t.rows() && t(i + 1, i) != 0.0) {
        const double p = 0.5 * (t(i, i) - t(i + 1, i + 1));
        const double q = p * p + t(i, i + 1) * t(i + 1, i);
        const double z = std::sqrt(std::abs(q));
        const double base = t(i + 1, i + 1) + p;
        if (q >= 0) {
          vals.emplace_back(base + z, 0.0);
          vals.emplace_back(base - z, 0.0);
        } else {
          vals.emplace_back(base, z);
          vals.emplace_back(base, -z);
        }
        i += 2;
      } else {
        vals.emplace_back(t(i, i), 0.0);
        i += 1;
      }
    }
    out.spectrum.backward_error = std::numeric_limits<double>::quiet_NaN();
    if (opt.backward_error) {
      const Eigen::MatrixXd& u = schur.matrixU();
      const double fro = m.norm();
      out.spectrum.backward_error = fro == 0.0 ? 0.0 : (m - u * t * u.transpose()).norm() / fro;
    }
    for (std::size_t i : detail::spectrum_order(vals)) out.spectrum.values.push_back(vals[i]);
    return out;
  }

  Eigen::EigenSolver<Eigen::MatrixXd> es(m, true);
  if (es.info() != Eigen::Success) throw Error(Errc::NoConvergence, "QR iteration failed");
  const Eigen::VectorXcd ev = es.eigenvalues();
  Eigen::MatrixXcd vec = es.eigenvectors();
  std::vector<cplx> vals(ev.data(), ev.data() + ev.size());
  const auto order = detail::spectrum_order(vals);
  out.spectrum.values.reserve(n);
  out.vectors.resize(m.rows(), m.cols());
  for (std::size_t i = 0; i < n; ++i) {
    out.spectrum.values.push_back(vals[order[i]]);
    out.vectors.col(static_cast<Eigen::Index>(i)) = vec.col(static_cast<Eigen::Index>(order[i]));
  }
  auto& values = out.spectrum.values;

  const double tol = opt.residual_tol * std::max(mnorm, 1.0);

  // Real eigenvalues: real unit vectors; refine degenerate clusters.
  for (std::size_t i = 0; i < n;) {
    if (!is_real(values[i], opt.tau_im)) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < n && is_real(values[j], opt.tau_im) &&
           std::abs(values[j].real() - values[i].real()) <=
               opt.cluster_rel * std::max(1.0, std::abs(values[i].real()))) {
      ++j;
    }
    const auto r = static_cast<Eigen::Index>(j - i);
    Eigen::MatrixXd block(m.rows(), r);
    for (Eigen::Index c = 0; c < r; ++c) {
      Eigen::VectorXd re = out.vectors.col(static_cast<Eigen::Index>(i) + c).real();
      const double nr = re.norm();
      block.col(c) = nr > 0 ? Eigen::VectorXd(re / nr) : re;
    }
    double mean = 0.0;
    for (std::size_t q = i; q < j; ++q) mean += values[q].real();
    mean /= static_cast<double>(r);
    bool good = true;
    if (r > 1) {
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(block);
      const auto& s = svd.singularValues();
      good = s(r - 1) > 1e-6 * s(0);
    }
    for (Eigen::Index c = 0; c < r && good; ++c) {
      const double res = (m * block.col(c) - values[i + static_cast<std::size_t>(c)].real() * block.col(c)).norm();
      good = std::isfinite(res) && res <= tol;
    }
    if (!good) {
      // Eigenvectors inside the invariant subspace found by inverse
      // iteration. A defective value has fewer of them than its
      // multiplicity; those columns repeat.
      const Eigen::MatrixXd x = detail::inverse_iteration_basis(m, mean, r, opt.seed + i);
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(m * x - mean * x, Eigen::ComputeFullV);
      const auto& s = svd.singularValues();
      Eigen::Index g = 0;
      while (g < r && s(r - 1 - g) <= 0.1 * tol) ++g;
      g = std::max<Eigen::Index>(g, 1);
      for (Eigen::Index c = 0; c < r; ++c) block.col(c) = x * svd.matrixV().col(r - 1 - c % g);
      for (std::size_t q = i; q < j; ++q) values[q] = cplx(mean, 0.0);
    } else if (r > 1) {
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(block);
      block = qr.householderQ() * Eigen::MatrixXd::Identity(m.rows(), r);
    }
    for (Eigen::Index c = 0; c < r; ++c) {
      out.vectors.col(static_cast<Eigen::Index>(i) + c) = block.col(c).cast<cplx>();
      values[i + static_cast<std::size_t>(c)] = cplx(values[i + static_cast<std::size_t>(c)].real(), 0.0);
    }
    i = j;
  }

  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(n); ++i) out.vectors.col(i).normalize();
  const Eigen::MatrixXd mre = m * out.vectors.real();
  const Eigen::MatrixXd mim = m * out.vectors.imag();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(n); ++i) {
    const cplx lam = values[static_cast<std::size_t>(i)];
    const Eigen::VectorXd vr = out.vectors.col(i).real();
    const Eigen::VectorXd vi = out.vectors.col(i).imag();
    // (M v - lam v) split into real and imaginary parts.
    const double res = std::sqrt((mre.col(i) - lam.real() * vr + lam.imag() * vi).squaredNorm() +
                                 (mim.col(i) - lam.real() * vi - lam.imag() * vr).squaredNorm());
    if (!(res <= tol)) {
      std::ostringstream msg;
      msg << "eigenvector residual " << res << " above tolerance " << tol << " for eigenvalue "
          << values[static_cast<std::size_t>(i)];
      throw Error(Errc::NoConvergence, msg.str());
    }
    worst = std::max(worst, res);
  }
  out.spectrum.backward_error = mnorm == 0.0 ? 0.0 : worst / mnorm;
  return out;
}

inline DenseEigen dense_eigendecomposition(const SparseOperator& m, bool want_vectors,
                                           MatrixTag tag = MatrixTag::Other,
                                           const DenseOptions& opt = {}) {
  if (m.rows() > opt.dimension_cap) {
    throw Error(Errc::DimensionCap, "dimension " + std::to_string(m.rows()) +
                                        " exceeds dense cap " + std::to_string(opt.dimension_cap));
  }
  return dense_eigendecomposition(m.to_dense(), want_vectors, tag, opt);
}

// --- iterative leading real eigenpairs ------------------------------------

struct IterativeOptions {
  std::optional<DiagonalOperator> inner;  // orthogonalize under this diagonal metric
  std::uint64_t seed = 0;
  std::size_t block_size = 0;             // 0 means k + 4
  double shift = 0.0;                     // iterate with M + shift * I
  std::size_t max_iter = 5000;
  std::size_t stable_window = 5;
  double stable_tol = 1e-8;
  double keep_residual = 1e-6;            // retained Ritz pairs, relative to ||M||
  double target_residual = 1e-12;         // stop once every retained pair is this tight
  double tau_im = 1e-8;
  double cluster_rel = 1e-7;
  bool require_stable = true;             // false: return the last k kept pairs at max_iter
};

struct PartialEigen {
  Spectrum spectrum;             // the k retained real values, decreasing
  Eigen::MatrixXd vectors;       // unit 2-norm columns
  std::vector<double> residuals; // ||M v - theta v|| / ||M||
  std::size_t iterations = 0;
  bool reached_target = false;
  bool stabilized = false;
};

namespace detail {

/// Modified Gram-Schmidt under the metric diag(g) (identity when empty),
/// applied twice. Columns that collapse are replaced by fresh random vectors.
inline void metric_gram_schmidt(Eigen::MatrixXd& q, const std::vector<double>& g, std::mt19937_64& rng) {
  auto dot = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    if (g.empty()) return a.dot(b);
    double s = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) s += g[static_cast<std::size_t>(i)] * a(i) * b(i);
    return s;
  };
  for (Eigen::Index c = 0; c < q.cols(); ++c) {
    Eigen::VectorXd v = q.col(c);
    for (int attempt = 0; attempt < 3; ++attempt) {
      const double before = std::sqrt(std::max(dot(v, v), 0.0));
      for (int pass = 0; pass < 2; ++pass) {
        for (Eigen::Index p = 0; p < c; ++p) {
          const Eigen::VectorXd qp = q.col(p);
          v -= dot(qp, v) * qp;
        }
      }
      const double after = std::sqrt(std::max(dot(v, v), 0.0));
      if (after > 1e-12 * std::max(before, 1e-300) && after > 0.0) {
        v /= after;
        break;
      }
      for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = standard_normal(rng);
    }
    q.col(c) = v;
  }
}

/// Orthonormal columns under diag(g): two rounds of Cholesky QR, with
/// Gram-Schmidt as the fallback when the Gram matrix is too ill-conditioned.
inline void metric_orthonormalize(Eigen::MatrixXd& q, const std::vector<double>& g, std::mt19937_64& rng) {
  Eigen::MatrixXd gq;
  for (int round = 0; round < 2; ++round) {
    if (g.empty()) {
      gq.noalias() = q.transpose() * q;
    } else {
      Eigen::MatrixXd scaled = q;
      for (Eigen::Index i = 0; i < q.rows(); ++i) scaled.row(i) *= g[static_cast<std::size_t>(i)];
      gq.noalias() = q.transpose() * scaled;
    }
    Eigen::LLT<Eigen::MatrixXd> llt(gq);
    const auto& l = llt.matrixL();
    bool ok = llt.info() == Eigen::Success;
    if (ok) {
      const Eigen::VectorXd diag = Eigen::MatrixXd(l).diagonal();
      ok = diag.minCoeff() > 1e-7 * diag.maxCoeff();
    }
    if (!ok) {
      metric_gram_schmidt(q, g, rng);
      return;
    }
    // q <- q L^{-T}
    q = llt.matrixU().solve<Eigen::OnTheRight>(q);
  }
}

}  // namespace detail

/// The k largest real eigenvalues of a square sparse operator, by block
/// orthogonal iteration with Rayleigh-Ritz extraction. Only eigenvalues that
/// dominate (by modulus, after the optional shift) all but block_size - 1
/// others are reachable.
inline PartialEigen leading_real_eigenpairs(const SparseOperator& m, std::size_t k,
                                            const IterativeOptions& opt = {}) {
  const std::size_t n = m.rows();
  if (m.rows() != m.cols()) throw Error(Errc::ShapeMismatch, "leading_real_eigenpairs: not square");
  if (k == 0 || k > n) throw Error(Errc::BadParameter, "leading_real_eigenpairs: need 0 < k <= dimension");
  std::vector<double> g;
  if (opt.inner) {
    if (opt.inner->size() != n) throw Error(Errc::ShapeMismatch, "metric length mismatch");
    g = opt.inner->diagonal;
    for (double v : g) {
      if (!(v > 0.0)) throw Error(Errc::BadParameter, "metric must be positive definite");
    }
  }
  const std::size_t p = std::min(n, std::max(opt.block_size, k + 4));
  const auto pe = static_cast<Eigen::Index>(p);
  const double mnorm = std::max(detail::norm_bound(m), std::numeric_limits<double>::min());

  std::mt19937_64 rng(opt.seed);
  Eigen::MatrixXd q(static_cast<Eigen::Index>(n), pe);
  for (Eigen::Index i = 0; i < q.size(); ++i) q.data()[i] = standard_normal(rng);
  detail::metric_orthonormalize(q, g, rng);

  std::vector<double> prev;
  std::size_t stable = 0;
  PartialEigen best;

  for (std::size_t it = 1; it <= opt.max_iter; ++it) {
    const Eigen::MatrixXd mq = matmul(m, q);
    Eigen::MatrixXd gmq = mq;
    if (!g.empty()) {
      for (Eigen::Index i = 0; i < gmq.rows(); ++i) gmq.row(i) *= g[static_cast<std::size_t>(i)];
    }
    const Eigen::MatrixXd h = q.transpose() * gmq;
    Eigen::EigenSolver<Eigen::MatrixXd> es(h, true);
    if (es.info() != Eigen::Success) throw Error(Errc::NoConvergence, "Ritz eigenproblem failed");
    const Eigen::VectorXcd theta = es.eigenvalues();

    // Real Ritz values, decreasing.
    std::vector<Eigen::Index> real_idx;
    for (Eigen::Index i = 0; i < theta.size(); ++i) {
      if (is_real(theta(i), opt.tau_im)) real_idx.push_back(i);
    }
    std::sort(real_idx.begin(), real_idx.end(), [&](Eigen::Index a, Eigen::Index b) {
      return theta(a).real() > theta(b).real();
    });

    // Ritz vectors; clusters of equal values get an orthonormal basis of the
    // approximate invariant subspace of H.
    std::vector<double> vals;
    std::vector<Eigen::VectorXd> ys;
    for (std::size_t i = 0; i < real_idx.size();) {
      std::size_t j = i + 1;
      const double t0 = theta(real_idx[i]).real();
      while (j < real_idx.size() &&
             std::abs(theta(real_idx[j]).real() - t0) <= opt.cluster_rel * std::max(1.0, std::abs(t0))) {
        ++j;
      }
      if (j - i == 1) {
        vals.push_back(t0);
        ys.push_back(es.eigenvectors().col(real_idx[i]).real());
      } else {
        double mean = 0.0;
        for (std::size_t c = i; c < j; ++c) mean += theta(real_idx[c]).real();
        mean /= static_cast<double>(j - i);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(h - mean * Eigen::MatrixXd::Identity(pe, pe),
                                              Eigen::ComputeFullV);
        for (std::size_t c = i; c < j; ++c) {
          vals.push_back(theta(real_idx[c]).real());
          ys.push_back(svd.matrixV().col(pe - 1 - static_cast<Eigen::Index>(c - i)));
        }
      }
      i = j;
    }

    PartialEigen cur;
    std::vector<Eigen::VectorXd> kept;
    for (std::size_t i = 0; i < vals.size() && kept.size() < k; ++i) {
      Eigen::VectorXd v = q * ys[i];
      const double vn = v.norm();
      if (vn == 0.0) continue;
      const double res = (mq * ys[i] - vals[i] * v).norm() / vn / mnorm;
      if (res <= opt.keep_residual) {
        kept.push_back(v / vn);
        cur.spectrum.values.emplace_back(vals[i], 0.0);
        cur.residuals.push_back(res);
      }
    }

    if (kept.size() == k) {
      bool steady = prev.size() == k;
      for (std::size_t i = 0; steady && i < k; ++i) {
        const double now = cur.spectrum.values[i].real();
        steady = std::abs(now - prev[i]) <= opt.stable_tol * std::max(std::abs(now), 1e-300);
      }
      stable = steady ? stable + 1 : 0;
      prev.clear();
      for (const auto& v : cur.spectrum.values) prev.push_back(v.real());
      cur.vectors.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k));
      for (std::size_t i = 0; i < k; ++i) cur.vectors.col(static_cast<Eigen::Index>(i)) = kept[i];
      cur.iterations = it;
      const double worst = *std::max_element(cur.residuals.begin(), cur.residuals.end());
      cur.reached_target = worst <= opt.target_residual;
      cur.spectrum.backward_error = worst;
      best = std::move(cur);
      if (stable >= opt.stable_window && best.reached_target) break;
    } else {
      stable = 0;
      prev.clear();
    }

    if (opt.shift != 0.0) {
      q = mq + opt.shift * q;
    } else {
      q = mq;
    }
    detail::metric_orthonormalize(q, g, rng);
  }

  if (best.vectors.cols() != static_cast<Eigen::Index>(k)) {
    throw Error(Errc::InsufficientRealRitz,
                "fewer than " + std::to_string(k) + " real Ritz values stabilized");
  }
  best.stabilized = stable >= opt.stable_window;
  if (!best.stabilized && opt.require_stable) {
    throw Error(Errc::NoConvergence, "Ritz values did not stabilize within " +
                                         std::to_string(opt.max_iter) + " iterations");
  }
  return best;
}

// --- classification -------------------------------------------------------

struct ClassifyOptions {
  double delta = 0.05;   // relative margin beyond the bulk radius
  double tau_im = 1e-8;
};

/// Bulk radius of the spectrum of the tagged matrix for average degree c:
/// sqrt(c) for B (and BV), 1/sqrt(c - 1) for T. L is classified through
/// 1 - value with the T radius.
inline double bulk_radius(MatrixTag tag, double c) {
  return tag == MatrixTag::T || tag == MatrixTag::L ? 1.0 / std::sqrt(c - 1.0) : std::sqrt(c);
}

/// Real values beyond (1 + delta) times the bulk radius are structural. The
/// largest positive real value is labelled perron even when a small irregular
/// graph pushes it inside the radius.
inline Spectrum classify_spectrum(Spectrum spec, double c, const ClassifyOptions& opt = {}) {
  if (!(c > 1.0)) throw Error(Errc::BadParameter, "classify_spectrum: average degree must exceed 1");
  if (!(opt.delta >= 0.0)) throw Error(Errc::BadParameter, "classify_spectrum: delta must be >= 0");
  if (!(opt.tau_im > 0.0)) throw Error(Errc::BadParameter, "classify_spectrum: tau_im must be > 0");
  const double threshold = (1.0 + opt.delta) * bulk_radius(spec.tag, c);
  spec.classes.assign(spec.values.size(), EigenClass::unclassified);
  std::optional<std::size_t> perron;
  double perron_value = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < spec.values.size(); ++i) {
    const cplx v = spec.tag == MatrixTag::L ? 1.0 - spec.values[i] : spec.values[i];
    if (!is_real(v, opt.tau_im)) {
      spec.classes[i] = EigenClass::complex_bulk;
    } else {
      spec.classes[i] = std::abs(v.real()) > threshold ? EigenClass::structural_real : EigenClass::real_bulk;
      if (v.real() > perron_value) {
        perron_value = v.real();
        perron = i;
      }
    }
  }
  if (perron && perron_value > 0.0) spec.classes[*perron] = EigenClass::perron;
  return spec;
}

// --- node sums and closed forms --------------------------------------------

struct NodeSums {
  std::vector<double> start;  // sum of z_e over edges leaving node j
  std::vector<double> end;    // sum of z_e over edges entering node j
};

inline NodeSums node_sums(std::span<const double> z, const OrientedEdgeIndex& idx) {
  if (z.size() != idx.oriented_count()) {
    throw Error(Errc::LengthMismatch, "node_sums: expected length " +
                                          std::to_string(idx.oriented_count()));
  }
  NodeSums out{std::vector<double>(idx.node_count(), 0.0), std::vector<double>(idx.node_count(), 0.0)};
  for (EdgeId e = 0; e < z.size(); ++e) {
    out.start[idx.startpoint(e)] += z[e];
    out.end[idx.endpoint(e)] += z[e];
  }
  return out;
}

inline NodeSums node_sums(const Eigen::VectorXd& z, const OrientedEdgeIndex& idx) {
  return node_sums(std::span<const double>(z.data(), static_cast<std::size_t>(z.size())), idx);
}

/// Singular values of B from its closed-form SVD: d_j - 1 for every node and
/// 1 with multiplicity 2m - n. Sorted decreasing.
inline std::vector<double> closed_form_singular_values_B(const OrientedEdgeIndex& idx) {
  std::vector<double> s;
  s.reserve(idx.oriented_count());
  for (NodeId j = 0; j < idx.node_count(); ++j) s.push_back(static_cast<double>(idx.degree(j)) - 1.0);
  const std::size_t rest = idx.oriented_count() >= idx.node_count()
                               ? idx.oriented_count() - idx.node_count()
                               : 0;
  s.insert(s.end(), rest, 1.0);
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

// --- real eigenbasis of T --------------------------------------------------

enum class EigenMode { dense, iterative };

struct BasisOptions {
  EigenMode mode = EigenMode::dense;
  DenseOptions dense;
  IterativeOptions iterative;
  double cluster_rel = 1e-7;
  double bilinear_floor = 1e-10;  // below this the z-breve pairing is unusable
  bool require_positive = true;   // false: keep the k largest reals whatever their sign
};

struct PairDiagnostics {
  double zbz = 0.0;           // z-breve^T z
  double norm2 = 0.0;         // ||z||^2
  double left_scale = 0.0;    // c_i with w_i = c_i z-breve_i; NaN when not of that form
  double residual = 0.0;      // ||T z - lambda z|| / ||z||
  bool left_from_transpose = false;
  std::vector<double> start_sums;
  std::vector<double> end_sums;
};

/// Right eigenvectors of T for its k largest positive real eigenvalues,
/// normalized to unit D_row-norm (jointly D_row-orthonormal inside a
/// degenerate eigenvalue), with biorthonormal left partners.
struct RealEigenBasis {
  std::size_t k = 0;
  std::vector<double> lambdas;  // decreasing, lambdas[0] = 1
  Eigen::MatrixXd Z;            // 2m x k right vectors
  Eigen::MatrixXd W;            // 2m x k left vectors, Z^T W = I
  std::vector<PairDiagnostics> diagnostics;
  DiagonalOperator d_row;
};

namespace detail {

/// Largest-magnitude coordinate made positive; ties go to the lowest index.
inline void fix_sign(Eigen::Ref<Eigen::VectorXd> v) {
  Eigen::Index arg = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > best) {
      best = std::abs(v(i));
      arg = i;
    }
  }
  if (v(arg) < 0) v = -v;
}

inline bool is_connected(const OrientedEdgeIndex& idx) {
  const std::size_t n = idx.node_count();
  if (n == 0) return false;
  std::vector<bool> seen(n, false);
  std::vector<NodeId> stack{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!stack.empty()) {
    const NodeId j = stack.back();
    stack.pop_back();
    for (EdgeId e : idx.edges_from(j)) {
      const NodeId nb = idx.endpoint(e);
      if (!seen[nb]) {
        seen[nb] = true;
        ++count;
        stack.push_back(nb);
      }
    }
  }
  return count == n;
}

/// W = Y G^+ with G = Z^T Y, so that Z^T W = I. Returns nullopt when G has a
/// singular value below `floor`.
inline std::optional<Eigen::MatrixXd> biorthogonal_dual(const Eigen::MatrixXd& z,
                                                        const Eigen::MatrixXd& y, double floor) {
  const Eigen::MatrixXd gram = z.transpose() * y;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(gram, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  if (s.size() < z.cols() || s(s.size() - 1) <= floor) return std::nullopt;
  Eigen::MatrixXd pinv = svd.matrixV() * s.cwiseInverse().asDiagonal() * svd.matrixU().transpose();
  return Eigen::MatrixXd(y * pinv);
}

}  // namespace detail

inline RealEigenBasis real_eigenbasis_T(const OrientedEdgeIndex& idx, std::size_t k,
                                        const BasisOptions& opt = {}) {
  const SparseOperator t = build_T(idx);  // DegreeTooSmall
  if (k == 0) throw Error(Errc::BadParameter, "real_eigenbasis_T: k must be positive");
  if (!detail::is_connected(idx)) throw Error(Errc::BadParameter, "graph is not connected");
  if (idx.max_degree() == 2) throw Error(Errc::BadParameter, "graph is a cycle");
  const std::size_t dim = idx.oriented_count();
  const auto dimx = static_cast<Eigen::Index>(dim);
  if (k > dim) throw Error(Errc::NotEnoughPositiveReals, "k exceeds the dimension");

  RealEigenBasis out;
  out.k = k;
  out.d_row = build_D_row(idx);
  const auto& drow = out.d_row.diagonal;

  // Candidate positive real eigenpairs, decreasing.
  std::vector<double> vals;
  Eigen::MatrixXd vecs;
  std::optional<Eigen::MatrixXd> dense_t;
  if (opt.mode == EigenMode::dense) {
    dense_t = t.to_dense();
    DenseEigen de = dense_eigendecomposition(*dense_t, true, MatrixTag::T, opt.dense);
    std::vector<Eigen::Index> pick;
    for (std::size_t i = 0; i < de.spectrum.size(); ++i) {
      const cplx v = de.spectrum.values[i];
      if (is_real(v, opt.dense.tau_im) && v.real() > 0.0) pick.push_back(static_cast<Eigen::Index>(i));
    }
    // Whole clusters are kept so that the last one is orthonormalized jointly.
    std::size_t take = std::min(pick.size(), k);
    while (take > 0 && take < pick.size() &&
           std::abs(de.spectrum.values[static_cast<std::size_t>(pick[take])].real() -
                    de.spectrum.values[static_cast<std::size_t>(pick[take - 1])].real()) <=
               opt.cluster_rel * std::max(1.0, de.spectrum.values[static_cast<std::size_t>(pick[take - 1])].real())) {
      ++take;
    }
    vecs.resize(dimx, static_cast<Eigen::Index>(take));
    for (std::size_t c = 0; c < take; ++c) {
      vals.push_back(de.spectrum.values[static_cast<std::size_t>(pick[c])].real());
      vecs.col(static_cast<Eigen::Index>(c)) = de.vectors.col(pick[c]).real();
    }
  } else {
    IterativeOptions it = opt.iterative;
    it.inner = out.d_row;
    PartialEigen pe = leading_real_eigenpairs(t, k, it);
    for (std::size_t c = 0; c < k; ++c) {
      const double v = pe.spectrum.values[c].real();
      if (!(v > 0.0) && opt.require_positive) break;
      vals.push_back(v);
    }
    vecs = pe.vectors.leftCols(static_cast<Eigen::Index>(vals.size()));
  }
  if (vals.size() < k) {
    throw Error(Errc::NotEnoughPositiveReals, "only " + std::to_string(vals.size()) +
                                                  " positive real eigenvalues of T found, need " +
                                                  std::to_string(k));
  }
  if (std::abs(vals[0] - 1.0) > 1e-8) {
    throw Error(Errc::NoConvergence, "leading eigenvalue of T is " + std::to_string(vals[0]) + ", expected 1");
  }

  // D_row-orthonormalize cluster by cluster, then fix signs.
  auto dnorm_dot = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) s += drow[static_cast<std::size_t>(i)] * a(i) * b(i);
    return s;
  };
  std::vector<std::pair<std::size_t, std::size_t>> clusters;  // [begin, end)
  for (std::size_t i = 0; i < vals.size();) {
    std::size_t j = i + 1;
    while (j < vals.size() && std::abs(vals[j] - vals[i]) <= opt.cluster_rel * std::max(1.0, std::abs(vals[i]))) ++j;
    clusters.emplace_back(i, j);
    i = j;
  }
  for (auto [b, e] : clusters) {
    for (std::size_t c = b; c < e; ++c) {
      Eigen::VectorXd v = vecs.col(static_cast<Eigen::Index>(c));
      const double before = std::sqrt(dnorm_dot(v, v));
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t p = b; p < c; ++p) {
          const Eigen::VectorXd u = vecs.col(static_cast<Eigen::Index>(p));
          v -= dnorm_dot(u, v) * u;
        }
      }
      const double after = std::sqrt(dnorm_dot(v, v));
      if (!(after > 1e-8 * before)) {
        throw Error(Errc::NoConvergence, "eigenvectors of a repeated eigenvalue are linearly dependent");
      }
      vecs.col(static_cast<Eigen::Index>(c)) = v / after;
    }
    for (std::size_t c = b; c < e; ++c) detail::fix_sign(vecs.col(static_cast<Eigen::Index>(c)));
  }

  // The eigenvalue 1 has the exact eigenvector a * 1.
  const double total = std::accumulate(drow.begin(), drow.end(), 0.0);
  const double a = 1.0 / std::sqrt(total);
  vecs.col(0).setConstant(a);
  vals[0] = 1.0;

  const auto ke = static_cast<Eigen::Index>(k);
  out.lambdas.assign(vals.begin(), vals.begin() + static_cast<std::ptrdiff_t>(k));
  out.Z = vecs.leftCols(ke);
  out.W.resize(dimx, ke);
  out.diagnostics.resize(k);
  out.W.col(0).setConstant(1.0 / (static_cast<double>(dim) * a));

  const Eigen::MatrixXd zb = apply_V(out.Z);
  for (auto [b, e] : clusters) {
    if (b >= k) break;
    const std::size_t stop = std::min(e, k);
    if (b == 0) {
      if (stop > 1) throw Error(Errc::BadParameter, "eigenvalue 1 of T is not simple");
      continue;
    }
    const auto bb = static_cast<Eigen::Index>(b);
    const auto r = static_cast<Eigen::Index>(stop - b);
    const Eigen::MatrixXd zc = out.Z.middleCols(bb, r);
    auto dual = detail::biorthogonal_dual(zc, zb.middleCols(bb, r), opt.bilinear_floor);
    bool from_transpose = false;
    if (!dual) {
      from_transpose = true;
      Eigen::MatrixXd left;
      const double target = 0.5 * (vals[b] + vals[stop - 1]);
      const auto full = static_cast<Eigen::Index>(e - b);
      if (dense_t) {
        left = detail::inverse_iteration_basis(dense_t->transpose(), target, full, opt.dense.seed + b);
      } else {
        IterativeOptions it = opt.iterative;
        it.inner = build_D_col(idx);
        PartialEigen pe = leading_real_eigenpairs(transpose(t), e, it);
        std::vector<Eigen::Index> cols;
        for (std::size_t c = 0; c < pe.spectrum.size(); ++c) {
          if (std::abs(pe.spectrum.values[c].real() - target) <= 1e-6 * std::max(1.0, std::abs(target))) {
            cols.push_back(static_cast<Eigen::Index>(c));
          }
        }
        left.resize(dimx, static_cast<Eigen::Index>(cols.size()));
        for (std::size_t c = 0; c < cols.size(); ++c) left.col(static_cast<Eigen::Index>(c)) = pe.vectors.col(cols[c]);
      }
      dual = detail::biorthogonal_dual(zc, left, opt.bilinear_floor);
      if (!dual) {
        throw Error(Errc::DegenerateBilinearForm,
                    "left eigenvectors for eigenvalue " + std::to_string(vals[b]) + " cannot be paired");
      }
    }
    out.W.middleCols(bb, r) = *dual;
    for (std::size_t c = b; c < stop; ++c) out.diagnostics[c].left_from_transpose = from_transpose;
  }

  for (std::size_t i = 0; i < k; ++i) {
    const auto ie = static_cast<Eigen::Index>(i);
    const Eigen::VectorXd z = out.Z.col(ie);
    auto& dg = out.diagnostics[i];
    dg.zbz = zb.col(ie).dot(z);
    dg.norm2 = z.squaredNorm();
    const Eigen::VectorXd zb_i = zb.col(ie);
    const Eigen::VectorXd w_i = out.W.col(ie);
    const double ratio = w_i.dot(zb_i) / zb_i.squaredNorm();
    dg.left_scale = (w_i - ratio * zb_i).norm() <= 1e-9 * w_i.norm() ? ratio
                                                                     : std::numeric_limits<double>::quiet_NaN();
    const auto tz = matvec(t, std::span<const double>(z.data(), dim));
    double r2 = 0.0;
    for (std::size_t e = 0; e < dim; ++e) {
      const double d = tz[e] - out.lambdas[i] * z(static_cast<Eigen::Index>(e));
      r2 += d * d;
    }
    dg.residual = std::sqrt(r2) / z.norm();
    NodeSums ns = node_sums(z, idx);
    dg.start_sums = std::move(ns.start);
    dg.end_sums = std::move(ns.end);
  }
  return out;
}

/// Measured quantities tied to the real eigenbasis. The first three are the
/// basis contract; the pairing and norm deviations are informational.
struct BasisCheck {
  double drow_orthonormality = 0.0;  // max |Z^T D_row Z - I|
  double drow_offdiagonal = 0.0;     // max off-diagonal |Z^T D_row Z|
  double biorthonormality = 0.0;     // max |Z^T W - I|
  double eigen_residual = 0.0;       // max ||T z - lambda z|| / ||z||
  std::vector<double> zbz_deviation;    // z-breve^T z + lambda, per pair (index 0 unused)
  std::vector<double> norm2_deviation;  // ||z||^2 - lambda, per pair (index 0 unused)
};

inline BasisCheck check_basis(const RealEigenBasis& b) {
  BasisCheck c;
  const auto k = static_cast<Eigen::Index>(b.k);
  Eigen::MatrixXd dz = b.Z;
  for (Eigen::Index i = 0; i < dz.rows(); ++i) dz.row(i) *= b.d_row.diagonal[static_cast<std::size_t>(i)];
  const Eigen::MatrixXd gram = b.Z.transpose() * dz;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(k, k);
  c.drow_orthonormality = (gram - id).cwiseAbs().maxCoeff();
  Eigen::MatrixXd off = gram;
  off.diagonal().setZero();
  c.drow_offdiagonal = k > 1 ? off.cwiseAbs().maxCoeff() : 0.0;
  c.biorthonormality = (b.Z.transpose() * b.W - id).cwiseAbs().maxCoeff();
  for (std::size_t i = 0; i < b.k; ++i) {
    c.eigen_residual = std::max(c.eigen_residual, b.diagnostics[i].residual);
    c.zbz_deviation.push_back(b.diagnostics[i].zbz + b.lambdas[i]);
    c.norm2_deviation.push_back(b.diagnostics[i].norm2 - b.lambdas[i]);
  }
  return c;
}

}  // namespace nbspectra

#endif  // NBSPECTRA_SPECTRA_HPP
