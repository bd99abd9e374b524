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

#ifndef NBSPECTRA_GRAPH_HPP
#define NBSPECTRA_GRAPH_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <queue>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nbspectra/error.hpp"

namespace nbspectra {

using NodeId = std::size_t;
using EdgeId = std::size_t;

/// Marks a node that did not survive a relabeling.
inline constexpr NodeId kRemoved = std::numeric_limits<NodeId>::max();

struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Undirected simple graph. Edges are stored once with u < v, sorted
/// lexicographically; neighbor lists are sorted.
class SimpleGraph {
 public:
  SimpleGraph() = default;

  static SimpleGraph from_edge_list(std::span<const Edge> pairs, std::size_t n) {
    std::vector<Edge> edges;
    edges.reserve(pairs.size());
    for (const Edge& p : pairs) {
      if (p.u >= n || p.v >= n) {
        throw Error(Errc::NodeOutOfRange, "edge (" + std::to_string(p.u) + ", " +
                                              std::to_string(p.v) + ") with n = " +
                                              std::to_string(n));
      }
      if (p.u == p.v) {
        throw Error(Errc::SelfLoop, "self-loop at node " + std::to_string(p.u));
      }
      edges.push_back(p.u < p.v ? p : Edge{p.v, p.u});
    }
    std::sort(edges.begin(), edges.end());
    auto dup = std::adjacent_find(edges.begin(), edges.end());
    if (dup != edges.end()) {
      throw Error(Errc::DuplicateEdge, "edge (" + std::to_string(dup->u) + ", " +
                                           std::to_string(dup->v) + ") repeated");
    }
    SimpleGraph g;
    g.n_ = n;
    g.edges_ = std::move(edges);
    g.adjacency_.assign(n, {});
    for (const Edge& e : g.edges_) {
      g.adjacency_[e.u].push_back(e.v);
      g.adjacency_[e.v].push_back(e.u);
    }
    for (auto& nbrs : g.adjacency_) std::sort(nbrs.begin(), nbrs.end());
    return g;
  }

  std::size_t node_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::size_t degree(NodeId j) const { return adjacency_[j].size(); }
  std::span<const NodeId> neighbors(NodeId j) const { return adjacency_[j]; }

  std::vector<std::size_t> degrees() const {
    std::vector<std::size_t> d(n_);
    for (NodeId j = 0; j < n_; ++j) d[j] = adjacency_[j].size();
    return d;
  }
  std::size_t min_degree() const {
    std::size_t d = n_ == 0 ? 0 : std::numeric_limits<std::size_t>::max();
    for (const auto& nbrs : adjacency_) d = std::min(d, nbrs.size());
    return d;
  }
  std::size_t max_degree() const {
    std::size_t d = 0;
    for (const auto& nbrs : adjacency_) d = std::max(d, nbrs.size());
    return d;
  }
  double average_degree() const {
    return n_ == 0 ? 0.0 : 2.0 * static_cast<double>(edges_.size()) / static_cast<double>(n_);
  }

  friend bool operator==(const SimpleGraph& a, const SimpleGraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<NodeId>> adjacency_;
};

/// A subgraph together with the old -> new node table (kRemoved for nodes
/// that were dropped).
struct Relabeled {
  SimpleGraph graph;
  std::vector<NodeId> old_to_new;
};

/// Induced subgraph on the kept nodes, compacted in increasing node order.
inline Relabeled induced_subgraph(const SimpleGraph& g, const std::vector<bool>& keep) {
  std::vector<NodeId> table(g.node_count(), kRemoved);
  std::size_t next = 0;
  for (NodeId j = 0; j < g.node_count(); ++j) {
    if (keep[j]) table[j] = next++;
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges()) {
    if (keep[e.u] && keep[e.v]) edges.push_back({table[e.u], table[e.v]});
  }
  return {SimpleGraph::from_edge_list(edges, next), std::move(table)};
}

/// Iteratively peels nodes of degree <= 1.
inline Relabeled two_core(const SimpleGraph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::size_t> deg = g.degrees();
  std::vector<bool> keep(n, true);
  std::vector<NodeId> stack;
  for (NodeId j = 0; j < n; ++j) {
    if (deg[j] <= 1) {
      keep[j] = false;
      stack.push_back(j);
    }
  }
  while (!stack.empty()) {
    NodeId j = stack.back();
    stack.pop_back();
    for (NodeId nb : g.neighbors(j)) {
      if (!keep[nb]) continue;
      if (--deg[nb] <= 1) {
        keep[nb] = false;
        stack.push_back(nb);
      }
    }
  }
  return induced_subgraph(g, keep);
}

struct Components {
  std::size_t count = 0;
  std::vector<std::size_t> label;  // per node; numbered by smallest contained node

  std::vector<std::size_t> sizes() const {
    std::vector<std::size_t> s(count, 0);
    for (auto c : label) ++s[c];
    return s;
  }
};

inline Components connected_components(const SimpleGraph& g) {
  const std::size_t n = g.node_count();
  constexpr std::size_t unset = std::numeric_limits<std::size_t>::max();
  Components out;
  out.label.assign(n, unset);
  std::queue<NodeId> q;
  for (NodeId s = 0; s < n; ++s) {
    if (out.label[s] != unset) continue;
    out.label[s] = out.count;
    q.push(s);
    while (!q.empty()) {
      NodeId j = q.front();
      q.pop();
      for (NodeId nb : g.neighbors(j)) {
        if (out.label[nb] == unset) {
          out.label[nb] = out.count;
          q.push(nb);
        }
      }
    }
    ++out.count;
  }
  return out;
}

/// Largest connected component (ties broken by the smallest contained node).
inline Relabeled largest_component(const SimpleGraph& g) {
  Components cc = connected_components(g);
  std::vector<bool> keep(g.node_count(), false);
  if (cc.count > 0) {
    auto sizes = cc.sizes();
    auto best = static_cast<std::size_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
    for (NodeId j = 0; j < g.node_count(); ++j) keep[j] = cc.label[j] == best;
  }
  return induced_subgraph(g, keep);
}

struct Bipartition {
  bool bipartite = true;
  std::vector<int> color;              // 0/1 per node when bipartite
  std::vector<NodeId> odd_cycle;       // closed walk witness otherwise (first node not repeated)
};

inline Bipartition is_bipartite(const SimpleGraph& g) {
  const std::size_t n = g.node_count();
  Bipartition out;
  out.color.assign(n, -1);
  std::vector<NodeId> parent(n, kRemoved);
  std::vector<std::size_t> depth(n, 0);
  std::queue<NodeId> q;
  for (NodeId s = 0; s < n; ++s) {
    if (out.color[s] != -1) continue;
    out.color[s] = 0;
    q.push(s);
    while (!q.empty()) {
      NodeId j = q.front();
      q.pop();
      for (NodeId nb : g.neighbors(j)) {
        if (out.color[nb] == -1) {
          out.color[nb] = 1 - out.color[j];
          parent[nb] = j;
          depth[nb] = depth[j] + 1;
          q.push(nb);
        } else if (out.color[nb] == out.color[j]) {
          // Both tree paths meet at their lowest common ancestor; together with
          // the edge (j, nb) they close an odd cycle.
          std::vector<NodeId> left{j}, right{nb};
          NodeId a = j, b = nb;
          while (depth[a] > depth[b]) left.push_back(a = parent[a]);
          while (depth[b] > depth[a]) right.push_back(b = parent[b]);
          while (a != b) {
            left.push_back(a = parent[a]);
            right.push_back(b = parent[b]);
          }
          right.pop_back();
          out.bipartite = false;
          out.odd_cycle = std::move(left);
          out.odd_cycle.insert(out.odd_cycle.end(), right.rbegin(), right.rend());
          out.color.clear();
          return out;
        }
      }
    }
  }
  return out;
}

inline bool is_cycle_graph(const SimpleGraph& g) {
  if (g.node_count() < 3) return false;
  for (NodeId j = 0; j < g.node_count(); ++j) {
    if (g.degree(j) != 2) return false;
  }
  return connected_components(g).count == 1;
}

/// Canonical numbering of the 2m oriented edges. The m undirected edges
/// (u, v), u < v, in lexicographic order get indices 0..m-1 as u -> v; the
/// reverse v -> u of edge e gets e + m. Swapping the two halves of a length-2m
/// vector is therefore the reversal involution.
class OrientedEdgeIndex {
 public:
  OrientedEdgeIndex() = default;

  explicit OrientedEdgeIndex(const SimpleGraph& g)
      : n_(g.node_count()), m_(g.edge_count()), degree_(g.degrees()) {
    start_.resize(2 * m_);
    end_.resize(2 * m_);
    for (EdgeId e = 0; e < m_; ++e) {
      const Edge& ed = g.edges()[e];
      start_[e] = ed.u;
      end_[e] = ed.v;
      start_[e + m_] = ed.v;
      end_[e + m_] = ed.u;
    }
    // Bucket oriented edges by start and by end node; ascending edge ids
    // within each bucket.
    out_ptr_.assign(n_ + 1, 0);
    in_ptr_.assign(n_ + 1, 0);
    for (EdgeId e = 0; e < 2 * m_; ++e) {
      ++out_ptr_[start_[e] + 1];
      ++in_ptr_[end_[e] + 1];
    }
    for (std::size_t j = 0; j < n_; ++j) {
      out_ptr_[j + 1] += out_ptr_[j];
      in_ptr_[j + 1] += in_ptr_[j];
    }
    out_edges_.resize(2 * m_);
    in_edges_.resize(2 * m_);
    std::vector<std::size_t> oc(out_ptr_.begin(), out_ptr_.end() - 1);
    std::vector<std::size_t> ic(in_ptr_.begin(), in_ptr_.end() - 1);
    for (EdgeId e = 0; e < 2 * m_; ++e) {
      out_edges_[oc[start_[e]]++] = e;
      in_edges_[ic[end_[e]]++] = e;
    }
  }

  std::size_t node_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return m_; }
  std::size_t oriented_count() const noexcept { return 2 * m_; }

  NodeId startpoint(EdgeId e) const { return start_[e]; }
  NodeId endpoint(EdgeId e) const { return end_[e]; }
  EdgeId reverse(EdgeId e) const { return e < m_ ? e + m_ : e - m_; }
  std::size_t degree(NodeId j) const { return degree_[j]; }
  const std::vector<std::size_t>& degrees() const noexcept { return degree_; }

  /// Oriented edges leaving node j, ascending.
  std::span<const EdgeId> edges_from(NodeId j) const {
    return {out_edges_.data() + out_ptr_[j], out_ptr_[j + 1] - out_ptr_[j]};
  }
  /// Oriented edges entering node j, ascending.
  std::span<const EdgeId> edges_into(NodeId j) const {
    return {in_edges_.data() + in_ptr_[j], in_ptr_[j + 1] - in_ptr_[j]};
  }

  std::size_t min_degree() const {
    return degree_.empty() ? 0 : *std::min_element(degree_.begin(), degree_.end());
  }
  std::size_t max_degree() const {
    return degree_.empty() ? 0 : *std::max_element(degree_.begin(), degree_.end());
  }

 private:
  std::size_t n_ = 0;
  std::size_t m_ = 0;
  std::vector<std::size_t> degree_;
  std::vector<NodeId> start_;
  std::vector<NodeId> end_;
  std::vector<std::size_t> out_ptr_, in_ptr_;
  std::vector<EdgeId> out_edges_, in_edges_;
};

inline OrientedEdgeIndex oriented_edges(const SimpleGraph& g) { return OrientedEdgeIndex(g); }

}  // namespace nbspectra

#endif  // NBSPECTRA_GRAPH_HPP
