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

// Node clustering from the real eigenbasis of T: edge embeddings, deflation
// to nodes, weighted k-means, label aggregation and overlap scoring.

#ifndef NBSPECTRA_CLUSTER_HPP
#define NBSPECTRA_CLUSTER_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nbspectra/error.hpp"
#include "nbspectra/graph.hpp"
#include "nbspectra/nbmat.hpp"
#include "nbspectra/perturb.hpp"
#include "nbspectra/random.hpp"
#include "nbspectra/spectra.hpp"

namespace nbspectra {

enum class EmbeddingVariant { raw_z, drow_sqrt, drow_invsqrt };
enum class Weighting { uniform, drow };
enum class Entity { edge, node };
enum class Side { end, start };

inline const char* to_string(EmbeddingVariant v) {
  switch (v) {
    case EmbeddingVariant::raw_z: return "raw_z";
    case EmbeddingVariant::drow_sqrt: return "drow_sqrt";
    case EmbeddingVariant::drow_invsqrt: return "drow_invsqrt";
  }
  return "?";
}

struct Embedding {
  Eigen::MatrixXd points;       // one row per entity
  std::vector<double> weights;  // one per row
  Entity entity = Entity::edge;
  bool low_signal = false;      // set by deflate_to_nodes
};

namespace detail {

inline double drow_power(double d, EmbeddingVariant v) {
  switch (v) {
    case EmbeddingVariant::raw_z: return 1.0;
    case EmbeddingVariant::drow_sqrt: return std::sqrt(d);
    case EmbeddingVariant::drow_invsqrt: return 1.0 / std::sqrt(d);
  }
  return 1.0;
}

inline Eigen::Index first_column(const RealEigenBasis& b, bool drop_trivial) {
  return drop_trivial && b.k > 1 ? 1 : 0;
}

}  // namespace detail

/// Row e holds f(z_i)_e for the retained columns, with f one of z,
/// D_row^{1/2} z or D_row^{-1/2} z. The constant column of z_1 is dropped
/// unless it is the only one.
inline Embedding edge_embedding(const RealEigenBasis& b, EmbeddingVariant variant = EmbeddingVariant::drow_sqrt,
                                Weighting weighting = Weighting::drow, bool drop_trivial = true) {
  const Eigen::Index first = detail::first_column(b, drop_trivial);
  const auto& d = b.d_row.diagonal;
  Embedding out;
  out.entity = Entity::edge;
  out.points = b.Z.rightCols(b.Z.cols() - first);
  for (Eigen::Index e = 0; e < out.points.rows(); ++e) {
    out.points.row(e) *= detail::drow_power(d[static_cast<std::size_t>(e)], variant);
  }
  out.weights = weighting == Weighting::drow ? d : std::vector<double>(d.size(), 1.0);
  return out;
}

/// Node j, column i: (1/d_j) times the sum of (D_row^{1/2} z_i)_e over the
/// edges whose chosen side is j. Weights are node degrees.
inline Embedding deflate_to_nodes(const RealEigenBasis& b, const OrientedEdgeIndex& idx, Side side = Side::end,
                                  bool drop_trivial = true) {
  if (static_cast<std::size_t>(b.Z.rows()) != idx.oriented_count()) {
    throw Error(Errc::LengthMismatch, "deflate_to_nodes: basis and graph disagree");
  }
  const Eigen::Index first = detail::first_column(b, drop_trivial);
  const Eigen::Index cols = b.Z.cols() - first;
  Eigen::MatrixXd scaled = b.Z.rightCols(cols);
  for (Eigen::Index e = 0; e < scaled.rows(); ++e) {
    scaled.row(e) *= std::sqrt(b.d_row.diagonal[static_cast<std::size_t>(e)]);
  }
  Embedding out;
  out.entity = Entity::node;
  out.points = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(idx.node_count()), cols);
  for (EdgeId e = 0; e < idx.oriented_count(); ++e) {
    const NodeId j = side == Side::end ? idx.endpoint(e) : idx.startpoint(e);
    out.points.row(static_cast<Eigen::Index>(j)) += scaled.row(static_cast<Eigen::Index>(e));
  }
  out.weights.resize(idx.node_count());
  for (NodeId j = 0; j < idx.node_count(); ++j) {
    const double dj = static_cast<double>(idx.degree(j));
    out.weights[j] = dj;
    if (dj > 0.0) out.points.row(static_cast<Eigen::Index>(j)) /= dj;
  }
  const double edge_norm = scaled.norm();
  out.low_signal = !(out.points.norm() >= 1e-6 * edge_norm) || edge_norm == 0.0;
  return out;
}

// --- weighted k-means ------------------------------------------------------

struct KMeansOptions {
  std::size_t n_init = 10;
  std::size_t max_iter = 300;
  double tol = 1e-9;  // relative objective decrease that counts as converged
};

struct ClusterAssignment {
  std::vector<std::size_t> labels;
  Eigen::MatrixXd centroids;              // k rows
  double objective = 0.0;                 // weighted k-variance
  std::vector<double> objective_trace;    // after each assignment step of the kept run
  std::size_t iterations = 0;
  std::size_t best_restart = 0;
  std::size_t reseeded = 0;               // empty clusters reseeded in the kept run
};

namespace detail {

inline std::size_t nearest(const Eigen::MatrixXd& c, const Eigen::VectorXd& x, double& dist2) {
  std::size_t best = 0;
  dist2 = std::numeric_limits<double>::infinity();
  for (Eigen::Index r = 0; r < c.rows(); ++r) {
    const double d = (c.row(r).transpose() - x).squaredNorm();
    if (d < dist2) {
      dist2 = d;
      best = static_cast<std::size_t>(r);
    }
  }
  return best;
}

/// Index drawn with probability proportional to p; p has a positive sum.
inline std::size_t draw(const std::vector<double>& p, std::mt19937_64& rng) {
  double total = 0.0;
  for (double x : p) total += x;
  double u = uniform01(rng) * total;
  std::size_t last = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    last = i;
    if (u < p[i]) return i;
    u -= p[i];
  }
  return last;
}

inline ClusterAssignment lloyd(const Embedding& emb, std::size_t k, std::uint64_t seed, const KMeansOptions& opt) {
  const auto n = static_cast<std::size_t>(emb.points.rows());
  const Eigen::Index dim = emb.points.cols();
  const auto& w = emb.weights;
  std::mt19937_64 rng(seed);
  auto point = [&](std::size_t i) { return Eigen::VectorXd(emb.points.row(static_cast<Eigen::Index>(i)).transpose()); };

  // k-means++ seeding with weighted probabilities.
  ClusterAssignment a;
  a.centroids.resize(static_cast<Eigen::Index>(k), dim);
  std::vector<double> d2(n, std::numeric_limits<double>::infinity());
  std::vector<double> p(w);
  for (std::size_t c = 0; c < k; ++c) {
    const std::size_t pick = draw(p, rng);
    a.centroids.row(static_cast<Eigen::Index>(c)) = emb.points.row(static_cast<Eigen::Index>(pick));
    for (std::size_t i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], (point(i) - point(pick)).squaredNorm());
      p[i] = w[i] * d2[i];
    }
    if (std::all_of(p.begin(), p.end(), [](double x) { return x <= 0.0; })) p = w;  // all points covered
  }

  a.labels.assign(n, 0);
  std::vector<double> cost(n, 0.0);
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t it = 0; it < opt.max_iter; ++it) {
    double obj = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double dist2 = 0.0;
      a.labels[i] = nearest(a.centroids, point(i), dist2);
      cost[i] = w[i] * dist2;
      obj += cost[i];
    }
    // Empty clusters move to the point that currently costs the most.
    for (;;) {
      std::vector<double> mass(k, 0.0);
      for (std::size_t i = 0; i < n; ++i) mass[a.labels[i]] += w[i];
      auto empty = std::find(mass.begin(), mass.end(), 0.0);
      if (empty == mass.end()) break;
      const auto far = static_cast<std::size_t>(std::max_element(cost.begin(), cost.end()) - cost.begin());
      if (cost[far] <= 0.0) break;
      const auto c = static_cast<std::size_t>(empty - mass.begin());
      a.centroids.row(static_cast<Eigen::Index>(c)) = emb.points.row(static_cast<Eigen::Index>(far));
      a.labels[far] = c;
      obj -= cost[far];
      cost[far] = 0.0;
      ++a.reseeded;
    }
    a.objective_trace.push_back(obj);
    a.objective = obj;
    a.iterations = it + 1;
    // Weighted centroid update.
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k), dim);
    std::vector<double> mass(k, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      sum.row(static_cast<Eigen::Index>(a.labels[i])) += w[i] * emb.points.row(static_cast<Eigen::Index>(i));
      mass[a.labels[i]] += w[i];
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (mass[c] > 0.0) a.centroids.row(static_cast<Eigen::Index>(c)) = sum.row(static_cast<Eigen::Index>(c)) / mass[c];
    }
    if (prev - obj <= opt.tol * std::max(obj, std::numeric_limits<double>::min())) break;
    prev = obj;
  }
  // Objective of the final centroids with a last assignment.
  double obj = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double dist2 = 0.0;
    a.labels[i] = nearest(a.centroids, point(i), dist2);
    obj += w[i] * dist2;
  }
  a.objective = obj;
  a.objective_trace.push_back(obj);
  return a;
}

}  // namespace detail

/// Weighted Lloyd iterations from weighted k-means++ seeding; the best of
/// n_init restarts by objective, each restart with its own sub-seed.
inline ClusterAssignment weighted_kmeans(const Embedding& emb, std::size_t k, std::uint64_t seed,
                                         const KMeansOptions& opt = {}) {
  const auto n = static_cast<std::size_t>(emb.points.rows());
  if (k == 0) throw Error(Errc::BadParameter, "weighted_kmeans: k must be positive");
  if (opt.n_init == 0 || opt.max_iter == 0) throw Error(Errc::BadParameter, "weighted_kmeans: empty schedule");
  if (emb.weights.size() != n) throw Error(Errc::LengthMismatch, "weighted_kmeans: one weight per point");
  if (k > n) throw Error(Errc::BadParameter, "weighted_kmeans: k exceeds the number of points");
  double total = 0.0;
  for (double x : emb.weights) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw Error(Errc::BadParameter, "weighted_kmeans: weights must be >= 0");
    total += x;
  }
  if (!(total > 0.0)) throw Error(Errc::BadParameter, "weighted_kmeans: all weights are zero");
  if (!emb.points.allFinite()) throw Error(Errc::BadParameter, "weighted_kmeans: non-finite coordinates");

  // Distinct points carrying weight.
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < n; ++i)
    if (emb.weights[i] > 0.0) order.push_back(i);
  auto row_less = [&](std::size_t x, std::size_t y) {
    for (Eigen::Index c = 0; c < emb.points.cols(); ++c) {
      const double a = emb.points(static_cast<Eigen::Index>(x), c), b = emb.points(static_cast<Eigen::Index>(y), c);
      if (a != b) return a < b;
    }
    return false;
  };
  std::sort(order.begin(), order.end(), row_less);
  std::size_t distinct = order.empty() ? 0 : 1;
  for (std::size_t i = 1; i < order.size(); ++i) distinct += row_less(order[i - 1], order[i]) ? 1 : 0;
  if (distinct < k) {
    throw Error(Errc::DegenerateInput, "weighted_kmeans: only " + std::to_string(distinct) +
                                           " distinct weighted points for k = " + std::to_string(k));
  }

  ClusterAssignment best;
  best.objective = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < opt.n_init; ++r) {
    ClusterAssignment a = detail::lloyd(emb, k, sub_seed(seed, r), opt);
    if (a.objective < best.objective) {
      a.best_restart = r;
      best = std::move(a);
    }
  }
  return best;
}

// --- labels and scoring ----------------------------------------------------

/// Majority label over the edges ending at each node; ties go to the lowest
/// label.
inline std::vector<std::size_t> node_labels_from_edge_labels(const std::vector<std::size_t>& edge_labels,
                                                             const OrientedEdgeIndex& idx) {
  if (edge_labels.size() != idx.oriented_count()) {
    throw Error(Errc::LengthMismatch, "node_labels_from_edge_labels: one label per oriented edge");
  }
  const std::size_t k = edge_labels.empty() ? 0 : *std::max_element(edge_labels.begin(), edge_labels.end()) + 1;
  std::vector<std::vector<std::size_t>> votes(idx.node_count(), std::vector<std::size_t>(k, 0));
  for (EdgeId e = 0; e < edge_labels.size(); ++e) ++votes[idx.endpoint(e)][edge_labels[e]];
  std::vector<std::size_t> out(idx.node_count(), 0);
  for (NodeId j = 0; j < idx.node_count(); ++j) {
    if (idx.degree(j) == 0) throw Error(Errc::IsolatedNode, "node " + std::to_string(j) + " has no edges");
    out[j] = static_cast<std::size_t>(std::max_element(votes[j].begin(), votes[j].end()) - votes[j].begin());
  }
  return out;
}

namespace detail {

/// Minimum-cost perfect assignment on a square cost matrix (Hungarian
/// method with potentials). Returns the column assigned to each row.
inline std::vector<std::size_t> hungarian(const std::vector<std::vector<double>>& cost) {
  const std::size_t n = cost.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> row_to_col(n, 0);
  for (std::size_t j = 1; j <= n; ++j)
    if (p[j] != 0) row_to_col[p[j] - 1] = j - 1;
  return row_to_col;
}

}  // namespace detail

/// Accuracy maximized over label permutations, rescaled so that chance is 0
/// and perfect agreement is 1.
inline double overlap(const std::vector<std::size_t>& pred, const std::vector<std::size_t>& truth, std::size_t k) {
  if (pred.size() != truth.size()) throw Error(Errc::LengthMismatch, "overlap: label vectors differ in length");
  if (k < 2) throw Error(Errc::BadParameter, "overlap: k must be at least 2");
  if (pred.empty()) throw Error(Errc::BadParameter, "overlap: no labels");
  std::vector<std::vector<double>> cost(k, std::vector<double>(k, 0.0));
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (pred[i] >= k || truth[i] >= k) throw Error(Errc::BadParameter, "overlap: label out of range");
    cost[pred[i]][truth[i]] -= 1.0;
  }
  const auto match = detail::hungarian(cost);
  double agree = 0.0;
  for (std::size_t r = 0; r < k; ++r) agree -= cost[r][match[r]];
  const double acc = agree / static_cast<double>(pred.size());
  const double chance = 1.0 / static_cast<double>(k);
  return (acc - chance) / (1.0 - chance);
}

// --- pipeline --------------------------------------------------------------

enum class ClusterMode { edge_vote, deflate };

inline const char* to_string(ClusterMode m) { return m == ClusterMode::edge_vote ? "edge_vote" : "deflate"; }

struct PipelineOptions {
  std::size_t k = 2;
  ClusterMode mode = ClusterMode::edge_vote;
  EmbeddingVariant variant = EmbeddingVariant::drow_sqrt;
  Weighting weighting = Weighting::drow;
  bool drop_trivial = true;
  std::optional<EigenMode> eigen_mode;  // default: dense up to dense_limit oriented edges
  std::size_t dense_limit = 1000;
  BoundOptions bound;
  KMeansOptions kmeans;
  std::uint64_t seed = 0;
};

struct PipelineSeeds {
  std::uint64_t seed = 0;
  std::uint64_t eigen = 0;
  std::uint64_t kmeans = 0;
};

struct PipelineReport {
  std::vector<double> lambda;
  std::vector<double> mu;               // empty when B did not resolve k real values
  double R_paper = 0.0;                 // closed form
  std::optional<double> R_numeric;
  double objective = 0.0;
  std::optional<double> overlap;
  ClusterMode mode = ClusterMode::edge_vote;
  bool fallback = false;                // deflate switched to edge_vote, or relaxed eigenpairs used
  bool eigen_converged = true;          // false when the relaxed iterative pass was used
  PipelineSeeds seeds;
  // Not serialized.
  EigenMode eigen_mode = EigenMode::dense;
  std::size_t eigen_attempts = 0;
  std::vector<std::size_t> labels;      // per node of `graph`
  SimpleGraph graph;                    // the clustered component
  std::vector<NodeId> original_ids;     // node id in the input graph
};

namespace detail {

/// Iterative settings tried in turn: the caller's settings with a capped
/// iteration budget, then a relaxed pass that returns unconverged real Ritz
/// pairs instead of failing. Using the relaxed pass marks the run as a
/// fallback.
inline std::vector<IterativeOptions> iterative_schedule(IterativeOptions base, std::size_t k) {
  base.max_iter = std::min<std::size_t>(base.max_iter, 1000);
  IterativeOptions relaxed = base;
  relaxed.block_size = k + 4;
  relaxed.max_iter = 200;
  relaxed.keep_residual = std::numeric_limits<double>::infinity();
  relaxed.require_stable = false;
  return {base, relaxed};
}

inline bool retryable(const Error& e) {
  return e.code() == Errc::InsufficientRealRitz || e.code() == Errc::NoConvergence ||
         e.code() == Errc::NotEnoughPositiveReals;
}

}  // namespace detail

/// 2-core, largest component, real eigenbasis of T, embedding, weighted
/// k-means, node labels and (with truth) overlap.
inline PipelineReport pipeline(const SimpleGraph& input, const PipelineOptions& opt,
                               const std::vector<std::size_t>* truth = nullptr) {
  if (opt.k < 1) throw Error(Errc::BadParameter, "pipeline: k must be positive");
  if (truth && truth->size() != input.node_count()) {
    throw Error(Errc::LengthMismatch, "pipeline: one truth label per input node");
  }
  PipelineReport rep;
  rep.mode = opt.mode;
  rep.seeds = {opt.seed, sub_seed(opt.seed, 1), sub_seed(opt.seed, 2)};

  const Relabeled core = two_core(input);
  const Relabeled giant = largest_component(core.graph);
  if (giant.graph.node_count() == 0) throw Error(Errc::EmptyCore, "pipeline: the 2-core is empty");
  rep.graph = giant.graph;
  rep.original_ids.assign(rep.graph.node_count(), 0);
  for (NodeId j = 0; j < input.node_count(); ++j) {
    const NodeId c = core.old_to_new[j];
    if (c != kRemoved && giant.old_to_new[c] != kRemoved) rep.original_ids[giant.old_to_new[c]] = j;
  }
  const OrientedEdgeIndex idx = oriented_edges(rep.graph);

  rep.eigen_mode = opt.eigen_mode.value_or(idx.oriented_count() <= opt.dense_limit ? EigenMode::dense
                                                                                   : EigenMode::iterative);
  BoundOptions bopt = opt.bound;
  bopt.mode = rep.eigen_mode;
  bopt.basis.mode = rep.eigen_mode;
  bopt.basis.dense.seed = rep.seeds.eigen;
  bopt.basis.iterative.seed = rep.seeds.eigen;
  bopt.b_iterative.seed = rep.seeds.eigen;

  // Eigenbasis of T; the iterative path ends with a relaxed pass.
  std::optional<RealEigenBasis> basis;
  if (rep.eigen_mode == EigenMode::dense) {
    rep.eigen_attempts = 1;
    basis = real_eigenbasis_T(idx, opt.k, bopt.basis);
  } else {
    const auto schedule = detail::iterative_schedule(bopt.basis.iterative, opt.k);
    for (std::size_t a = 0; a < schedule.size() && !basis; ++a) {
      BasisOptions b = bopt.basis;
      b.iterative = schedule[a];
      b.require_positive = schedule[a].require_stable;
      rep.eigen_attempts = a + 1;
      try {
        basis = real_eigenbasis_T(idx, opt.k, b);
        if (!schedule[a].require_stable) {
          rep.eigen_converged = false;
          rep.fallback = true;
        }
      } catch (const Error& e) {
        if (!detail::retryable(e) || a + 1 == schedule.size()) throw;
      }
    }
  }
  rep.lambda = basis->lambdas;

  // Bound quantities; B may not resolve k real values below threshold.
  const double c = static_cast<double>(idx.oriented_count()) / static_cast<double>(idx.node_count());
  rep.R_paper = paper_R_bound(static_cast<double>(idx.min_degree()), static_cast<double>(idx.max_degree()), c,
                              std::min(1.0, 1.0 / std::sqrt(c - 1.0)))
                    .closed_form;
  const auto b_schedule = detail::iterative_schedule(bopt.b_iterative, opt.k);
  for (std::size_t a = 0; a < (rep.eigen_mode == EigenMode::dense ? 1 : b_schedule.size()); ++a) {
    BoundOptions attempt = bopt;
    attempt.b_iterative = b_schedule[a];
    try {
      BoundReport br = bound_report(idx, *basis, attempt);
      rep.mu = br.mus;
      rep.R_numeric = br.R_numeric;
      break;
    } catch (const Error& e) {
      if (!detail::retryable(e)) throw;
    }
  }

  // Embedding and clustering.
  std::vector<std::size_t> node_labels;
  bool clustered = false;
  if (opt.mode == ClusterMode::deflate) {
    Embedding emb = deflate_to_nodes(*basis, idx, Side::end, opt.drop_trivial);
    if (emb.low_signal) {
      rep.fallback = true;
    } else {
      try {
        ClusterAssignment ca = weighted_kmeans(emb, opt.k, rep.seeds.kmeans, opt.kmeans);
        node_labels = ca.labels;
        rep.objective = ca.objective;
        clustered = true;
      } catch (const Error& e) {
        if (e.code() != Errc::DegenerateInput) throw;
        rep.fallback = true;
      }
    }
  }
  if (!clustered) {
    Embedding emb = edge_embedding(*basis, opt.variant, opt.weighting, opt.drop_trivial);
    ClusterAssignment ca = weighted_kmeans(emb, opt.k, rep.seeds.kmeans, opt.kmeans);
    node_labels = node_labels_from_edge_labels(ca.labels, idx);
    rep.objective = ca.objective;
  }
  rep.labels = node_labels;

  if (truth && opt.k >= 2) {
    std::vector<std::size_t> t(rep.graph.node_count());
    for (NodeId j = 0; j < t.size(); ++j) t[j] = (*truth)[rep.original_ids[j]];
    rep.overlap = overlap(rep.labels, t, opt.k);
  }
  return rep;
}

}  // namespace nbspectra

#endif  // NBSPECTRA_CLUSTER_HPP
