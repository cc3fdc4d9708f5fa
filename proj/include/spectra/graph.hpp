#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "spectra/error.hpp"

namespace spectra {

using Vertex = int;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  constexpr Edge() = default;
  // Stored with u < v so that edges compare as unordered pairs.
  constexpr Edge(Vertex a, Vertex b) : u(std::min(a, b)), v(std::max(a, b)) {}

  friend constexpr auto operator<=>(const Edge&, const Edge&) = default;
};

/// Undirected simple graph on vertices 0..n-1 stored as sorted neighbor lists.
///
/// A Graph is a value: every operation that changes structure returns a new
/// graph and leaves the receiver untouched.
class Graph {
 public:
  Graph() = default;

  explicit Graph(int n) : adj_(check_order(n)) {}

  Graph(int n, std::span<const Edge> edges) : adj_(check_order(n)) {
    for (const Edge& e : edges) insert(e);
    for (auto& nb : adj_) std::sort(nb.begin(), nb.end());
  }

  Graph(int n, std::initializer_list<Edge> edges)
      : Graph(n, std::span<const Edge>(edges.begin(), edges.size())) {}

  int order() const noexcept { return static_cast<int>(adj_.size()); }
  int edge_count() const noexcept { return edges_; }

  std::span<const Vertex> neighbors(Vertex v) const { return adj_.at(v); }
  int degree(Vertex v) const { return static_cast<int>(adj_.at(v).size()); }

  bool adjacent(Vertex a, Vertex b) const {
    if (a < 0 || b < 0 || a >= order() || b >= order()) return false;
    const auto& nb = adj_[a];
    return std::binary_search(nb.begin(), nb.end(), b);
  }

  bool has_edge(const Edge& e) const { return adjacent(e.u, e.v); }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edges_);
    for (Vertex a = 0; a < order(); ++a)
      for (Vertex b : adj_[a])
        if (a < b) out.emplace_back(a, b);
    return out;
  }

  int max_degree() const {
    int d = 0;
    for (const auto& nb : adj_) d = std::max(d, static_cast<int>(nb.size()));
    return d;
  }

  int min_degree() const {
    if (adj_.empty()) return 0;
    int d = order();
    for (const auto& nb : adj_) d = std::min(d, static_cast<int>(nb.size()));
    return d;
  }

  // Non-increasing.
  std::vector<int> degree_sequence() const {
    std::vector<int> d;
    d.reserve(adj_.size());
    for (const auto& nb : adj_) d.push_back(static_cast<int>(nb.size()));
    std::sort(d.begin(), d.end(), std::greater<>());
    return d;
  }

  Graph with_edge(const Edge& e) const {
    if (has_edge(e)) throw InvalidParameter("edge already present");
    auto es = edges();
    es.push_back(e);
    return Graph(order(), es);
  }

  Graph without_edge(const Edge& e) const {
    if (!has_edge(e)) throw InvalidParameter("edge not in graph");
    auto es = edges();
    es.erase(std::find(es.begin(), es.end(), e));
    return Graph(order(), es);
  }

  // Appends vertex n adjacent to the given neighbors.
  Graph with_vertex(std::span<const Vertex> nbrs) const {
    auto es = edges();
    for (Vertex x : nbrs) es.emplace_back(x, order());
    return Graph(order() + 1, es);
  }

  // Deletes v; vertices above v shift down by one.
  Graph without_vertex(Vertex v) const {
    if (v < 0 || v >= order()) throw InvalidParameter("vertex out of range");
    if (order() == 1) throw InvalidParameter("cannot delete the only vertex");
    std::vector<Edge> es;
    for (const Edge& e : edges()) {
      if (e.u == v || e.v == v) continue;
      es.emplace_back(e.u - (e.u > v), e.v - (e.v > v));
    }
    return Graph(order() - 1, es);
  }

  // Induced subgraph; vertex i of the result is subset[i].
  Graph induced(std::span<const Vertex> subset) const {
    std::vector<int> pos(order(), -1);
    for (std::size_t i = 0; i < subset.size(); ++i) {
      if (subset[i] < 0 || subset[i] >= order() || pos[subset[i]] >= 0)
        throw InvalidParameter("induced: subset must be distinct in-range vertices");
      pos[subset[i]] = static_cast<int>(i);
    }
    std::vector<Edge> es;
    for (const Edge& e : edges())
      if (pos[e.u] >= 0 && pos[e.v] >= 0) es.emplace_back(pos[e.u], pos[e.v]);
    return Graph(static_cast<int>(subset.size()), es);
  }

  // Vertex v of this graph becomes perm[v] in the result.
  Graph relabeled(std::span<const Vertex> perm) const {
    if (static_cast<int>(perm.size()) != order()) throw InvalidParameter("relabel: size mismatch");
    std::vector<Edge> es;
    for (const Edge& e : edges()) es.emplace_back(perm[e.u], perm[e.v]);
    return Graph(order(), es);
  }

  // Labeled equality (same vertex set, same edges); not isomorphism.
  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  static std::vector<std::vector<Vertex>> check_order(int n) {
    if (n < 0) throw InvalidParameter("graph order must be non-negative");
    return std::vector<std::vector<Vertex>>(static_cast<std::size_t>(n));
  }

  void insert(const Edge& e) {
    if (e.u < 0 || e.v >= order()) throw InvalidParameter("edge endpoint out of range");
    if (e.u == e.v) throw InvalidParameter("self-loops are not allowed");
    auto& nb = adj_[e.u];
    if (std::find(nb.begin(), nb.end(), e.v) != nb.end())
      throw InvalidParameter("parallel edges are not allowed");
    nb.push_back(e.v);
    adj_[e.v].push_back(e.u);
    ++edges_;
  }

  std::vector<std::vector<Vertex>> adj_;
  int edges_ = 0;
};

// Bit-row adjacency for graphs of order at most 64; row v has bit u set iff uv is an edge.
inline std::vector<std::uint64_t> adjacency_rows(const Graph& g) {
  if (g.order() > 64) throw InvalidInput("bit-row adjacency needs order <= 64");
  std::vector<std::uint64_t> rows(g.order(), 0);
  for (Vertex v = 0; v < g.order(); ++v)
    for (Vertex u : g.neighbors(v)) rows[v] |= std::uint64_t{1} << u;
  return rows;
}

inline Graph graph_from_rows(std::span<const std::uint64_t> rows) {
  std::vector<Edge> es;
  const int n = static_cast<int>(rows.size());
  for (int v = 0; v < n; ++v)
    for (int u = v + 1; u < n; ++u)
      if ((rows[v] >> u) & 1U) es.emplace_back(v, u);
  return Graph(n, es);
}

}  // namespace spectra
