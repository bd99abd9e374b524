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

// Sparse stochastic block model: parameters, model predictions and sampling.

#ifndef NBSPECTRA_SBM_HPP
#define NBSPECTRA_SBM_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nbspectra/error.hpp"
#include "nbspectra/graph.hpp"
#include "nbspectra/random.hpp"

namespace nbspectra {

/// Edge probability a/n inside a block and b/n across blocks.
struct SbmParams {
  std::size_t n = 0;
  std::size_t k = 2;
  double a = 0.0;
  double b = 0.0;
  std::vector<double> proportions;  // empty means equal blocks
  std::uint64_t seed = 0;
};

inline void validate(const SbmParams& p) {
  if (p.n == 0) throw Error(Errc::BadParameter, "sbm: n must be positive");
  if (p.k == 0 || p.k > p.n) throw Error(Errc::BadParameter, "sbm: k must be in [1, n]");
  if (!(p.b >= 0.0)) throw Error(Errc::BadParameter, "sbm: b must be nonnegative");
  if (!(p.a >= p.b)) throw Error(Errc::BadParameter, "sbm: a must be at least b (assortative model)");
  if (!(p.a < static_cast<double>(p.n))) throw Error(Errc::BadParameter, "sbm: a must be below n");
  if (!p.proportions.empty()) {
    if (p.proportions.size() != p.k) throw Error(Errc::BadParameter, "sbm: need one proportion per block");
    double total = 0.0;
    for (double x : p.proportions) {
      if (!(x > 0.0)) throw Error(Errc::BadParameter, "sbm: proportions must be positive");
      total += x;
    }
    if (std::abs(total - 1.0) > 1e-9) throw Error(Errc::BadParameter, "sbm: proportions must sum to 1");
  }
}

inline std::vector<double> block_fractions(const SbmParams& p) {
  if (!p.proportions.empty()) return p.proportions;
  return std::vector<double>(p.k, 1.0 / static_cast<double>(p.k));
}

struct SbmExpectation {
  double c = 0.0;             // expected average degree
  std::vector<double> mu;     // predicted structural eigenvalues of B, decreasing
  double snr = 0.0;           // mu_2^2 / mu_1
  bool detectable = false;    // snr > 1
};

/// Model predictions. Equal blocks use the closed forms c = (a + (k-1) b)/k
/// and mu_i = (a - b)/k; otherwise the eigenvalues of M diag(pi).
inline SbmExpectation expected_quantities(const SbmParams& p) {
  validate(p);
  SbmExpectation out;
  const double k = static_cast<double>(p.k);
  if (p.proportions.empty()) {
    out.c = (p.a + (k - 1.0) * p.b) / k;
    out.mu.assign(p.k, (p.a - p.b) / k);
    out.mu[0] = out.c;
  } else {
    const auto kk = static_cast<Eigen::Index>(p.k);
    Eigen::MatrixXd s(kk, kk);
    for (Eigen::Index r = 0; r < kk; ++r) {
      for (Eigen::Index q = 0; q < kk; ++q) {
        const double rate = r == q ? p.a : p.b;
        s(r, q) = std::sqrt(p.proportions[static_cast<std::size_t>(r)]) * rate *
                  std::sqrt(p.proportions[static_cast<std::size_t>(q)]);
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
    for (Eigen::Index i = kk - 1; i >= 0; --i) out.mu.push_back(es.eigenvalues()(i));
    for (std::size_t r = 0; r < p.k; ++r) {
      const double pr = p.proportions[r];
      out.c += pr * (p.b + (p.a - p.b) * pr);
    }
  }
  const double mu1 = out.mu[0];
  const double mu2 = p.k > 1 ? out.mu[1] : 0.0;
  out.snr = mu1 > 0.0 ? mu2 * mu2 / mu1 : 0.0;
  out.detectable = out.snr > 1.0;
  return out;
}

/// Block sizes: floor(pi_s n) plus the remainder spread by largest
/// fractional part, lowest block first on ties.
inline std::vector<std::size_t> block_sizes(const SbmParams& p) {
  validate(p);
  const auto pi = block_fractions(p);
  std::vector<std::size_t> sizes(p.k);
  std::vector<std::pair<double, std::size_t>> frac;
  std::size_t used = 0;
  for (std::size_t s = 0; s < p.k; ++s) {
    const double exact = pi[s] * static_cast<double>(p.n);
    sizes[s] = static_cast<std::size_t>(std::floor(exact));
    used += sizes[s];
    frac.emplace_back(exact - std::floor(exact), s);
  }
  std::stable_sort(frac.begin(), frac.end(), [](auto x, auto y) { return x.first > y.first; });
  for (std::size_t i = 0; used < p.n; ++i, ++used) ++sizes[frac[i % p.k].second];
  return sizes;
}

/// Rank-k description of the expected adjacency matrix.
struct BlockModel {
  Eigen::MatrixXd rates;               // k x k, entry M_rs / n
  std::vector<std::size_t> sizes;      // block sizes
  std::vector<double> reduced_eigenvalues;  // of M diag(sizes / n), decreasing
};

inline BlockModel expected_adjacency(const SbmParams& p) {
  validate(p);
  BlockModel out;
  out.sizes = block_sizes(p);
  const auto kk = static_cast<Eigen::Index>(p.k);
  const double n = static_cast<double>(p.n);
  out.rates.resize(kk, kk);
  Eigen::MatrixXd sym(kk, kk);
  for (Eigen::Index r = 0; r < kk; ++r) {
    for (Eigen::Index q = 0; q < kk; ++q) {
      const double rate = r == q ? p.a : p.b;
      out.rates(r, q) = rate / n;
      sym(r, q) = std::sqrt(static_cast<double>(out.sizes[static_cast<std::size_t>(r)]) / n) * rate *
                  std::sqrt(static_cast<double>(out.sizes[static_cast<std::size_t>(q)]) / n);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  for (Eigen::Index i = kk - 1; i >= 0; --i) out.reduced_eigenvalues.push_back(es.eigenvalues()(i));
  return out;
}

struct SbmMeta {
  SbmExpectation expected;
  std::size_t n_sampled = 0;
  std::size_t m_sampled = 0;
  std::size_t n = 0;  // after 2-core and largest component
  std::size_t m = 0;
  double empirical_mean_degree = 0.0;  // 2m/n of the sampled graph
  double core_mean_degree = 0.0;       // after peeling
  double surviving_fraction = 0.0;
  double max_degree_deviation = 0.0;  // max_j |d_j - c| on the sampled graph
};

struct SbmSample {
  SimpleGraph graph;
  std::vector<std::size_t> labels;      // planted block per surviving node
  std::vector<NodeId> original_ids;     // sampled node id per surviving node
  SbmMeta meta;
};

/// Planted labels of the sampled graph before any peeling.
inline std::vector<std::size_t> planted_labels(const SbmParams& p) {
  const auto sizes = block_sizes(p);
  std::vector<std::size_t> labels;
  labels.reserve(p.n);
  if (p.proportions.empty()) {
    for (std::size_t i = 0; i < p.n; ++i) labels.push_back(i % p.k);
  } else {
    for (std::size_t s = 0; s < p.k; ++s) labels.insert(labels.end(), sizes[s], s);
  }
  std::mt19937_64 rng(sub_seed(p.seed, 0));
  shuffle(labels, rng);
  return labels;
}

/// Raw model sample on all n nodes, with its labels.
inline SimpleGraph sample_raw(const SbmParams& p, const std::vector<std::size_t>& labels) {
  const double pin = p.a / static_cast<double>(p.n);
  const double pout = p.b / static_cast<double>(p.n);
  std::mt19937_64 rng(sub_seed(p.seed, 1));
  std::vector<Edge> edges;
  for (NodeId u = 0; u < p.n; ++u) {
    for (NodeId v = u + 1; v < p.n; ++v) {
      if (uniform01(rng) < (labels[u] == labels[v] ? pin : pout)) edges.push_back({u, v});
    }
  }
  return SimpleGraph::from_edge_list(edges, p.n);
}

/// Sample, reduce to the 2-core, keep its largest component.
inline SbmSample sample(const SbmParams& p) {
  validate(p);
  SbmSample out;
  out.meta.expected = expected_quantities(p);
  const auto labels = planted_labels(p);
  const SimpleGraph raw = sample_raw(p, labels);
  out.meta.n_sampled = raw.node_count();
  out.meta.m_sampled = raw.edge_count();
  for (NodeId j = 0; j < raw.node_count(); ++j) {
    out.meta.max_degree_deviation = std::max(
        out.meta.max_degree_deviation, std::abs(static_cast<double>(raw.degree(j)) - out.meta.expected.c));
  }
  const Relabeled core = two_core(raw);
  const Relabeled giant = largest_component(core.graph);
  if (giant.graph.node_count() == 0) {
    throw Error(Errc::EmptyCore, "sbm: the 2-core of the sample is empty");
  }
  out.graph = giant.graph;
  out.labels.assign(out.graph.node_count(), 0);
  out.original_ids.assign(out.graph.node_count(), 0);
  for (NodeId j = 0; j < raw.node_count(); ++j) {
    const NodeId c = core.old_to_new[j];
    if (c == kRemoved) continue;
    const NodeId g = giant.old_to_new[c];
    if (g == kRemoved) continue;
    out.labels[g] = labels[j];
    out.original_ids[g] = j;
  }
  out.meta.n = out.graph.node_count();
  out.meta.m = out.graph.edge_count();
  out.meta.empirical_mean_degree = raw.average_degree();
  out.meta.core_mean_degree = out.graph.average_degree();
  out.meta.surviving_fraction = static_cast<double>(out.meta.n) / static_cast<double>(p.n);
  return out;
}

}  // namespace nbspectra

#endif  // NBSPECTRA_SBM_HPP
