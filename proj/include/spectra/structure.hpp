#pragma once

#include <algorithm>
#include <cstddef>
#include <queue>
#include <set>
#include <utility>
#include <vector>

#include "spectra/error.hpp"
#include "spectra/graph.hpp"

namespace spectra {

inline std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
  const int n = g.order();
  std::vector<int> seen(n, 0);
  std::vector<std::vector<Vertex>> comps;
  for (Vertex s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<Vertex> comp{s};
    seen[s] = 1;
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (Vertex u : g.neighbors(comp[i]))
        if (!seen[u]) {
          seen[u] = 1;
          comp.push_back(u);
        }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

inline bool is_connected(const Graph& g) {
  if (g.order() <= 1) return true;
  return connected_components(g).size() == 1;
}

// BFS distances from `source`; -1 marks unreachable vertices.
inline std::vector<int> bfs_distances(const Graph& g, Vertex source) {
  std::vector<int> dist(g.order(), -1);
  std::queue<Vertex> q;
  dist[source] = 0;
  q.push(source);
  while (!q.empty()) {
    const Vertex x = q.front();
    q.pop();
    for (Vertex y : g.neighbors(x))
      if (dist[y] < 0) {
        dist[y] = dist[x] + 1;
        q.push(y);
      }
  }
  return dist;
}

struct BlockDecomposition {
  std::vector<std::vector<Edge>> blocks;  // edge sets of the biconnected blocks
  std::vector<Edge> bridges;
  std::vector<Vertex> articulation_points;
};

// Iterative Hopcroft-Tarjan over every component; isolated vertices form no block.
inline BlockDecomposition block_decomposition(const Graph& g) {
  const int n = g.order();
  BlockDecomposition out;
  std::vector<int> disc(n, -1), low(n, 0), parent(n, -1);
  std::vector<std::size_t> next(n, 0);
  std::vector<char> is_art(n, 0);
  std::vector<Edge> estack;
  int timer = 0;

  for (Vertex root = 0; root < n; ++root) {
    if (disc[root] >= 0) continue;
    disc[root] = low[root] = timer++;
    int root_children = 0;
    std::vector<Vertex> stack{root};
    while (!stack.empty()) {
      const Vertex x = stack.back();
      const auto nb = g.neighbors(x);
      if (next[x] < nb.size()) {
        const Vertex y = nb[next[x]++];
        if (disc[y] < 0) {
          parent[y] = x;
          disc[y] = low[y] = timer++;
          estack.emplace_back(x, y);
          if (x == root) ++root_children;
          stack.push_back(y);
        } else if (y != parent[x] && disc[y] < disc[x]) {
          low[x] = std::min(low[x], disc[y]);
          estack.emplace_back(x, y);
        }
        continue;
      }
      stack.pop_back();
      const Vertex p = parent[x];
      if (p < 0) continue;
      low[p] = std::min(low[p], low[x]);
      if (low[x] >= disc[p]) {
        if (p != root) is_art[p] = 1;
        std::vector<Edge> block;
        const Edge tree_edge(p, x);
        while (true) {
          const Edge e = estack.back();
          estack.pop_back();
          block.push_back(e);
          if (e == tree_edge) break;
        }
        std::sort(block.begin(), block.end());
        if (block.size() == 1) out.bridges.push_back(block.front());
        out.blocks.push_back(std::move(block));
      }
    }
    if (root_children >= 2) is_art[root] = 1;
  }
  for (Vertex v = 0; v < n; ++v)
    if (is_art[v]) out.articulation_points.push_back(v);
  std::sort(out.bridges.begin(), out.bridges.end());
  return out;
}

inline std::vector<Edge> cut_edges(const Graph& g) {
  if (!is_connected(g)) throw InvalidInput("cut_edges needs a connected graph");
  return block_decomposition(g).bridges;
}

// No two cycles share a vertex: every block is a bridge or a chordless cycle,
// and no vertex lies on two cyclic blocks.
inline bool cycles_mutually_disjoint(const Graph& g) {
  std::vector<char> on_cycle(g.order(), 0);
  for (const auto& block : block_decomposition(g).blocks) {
    if (block.size() == 1) continue;
    std::set<Vertex> vs;
    for (const Edge& e : block) {
      vs.insert(e.u);
      vs.insert(e.v);
    }
    if (vs.size() != block.size()) return false;
    for (Vertex v : vs) {
      if (on_cycle[v]) return false;
      on_cycle[v] = 1;
    }
  }
  return true;
}

/// Maximal internal paths: u_1 ... u_k with deg(u_1), deg(u_k) >= 3 and all
/// interior vertices of degree 2. Endpoints may coincide (closed paths), and
/// two adjacent vertices of degree >= 3 form a path with k = 2.
///
/// Each path is listed once, in the orientation that is lexicographically
/// smaller; the list is sorted.
inline std::vector<std::vector<Vertex>> internal_paths(const Graph& g) {
  std::set<std::vector<Vertex>> found;
  for (Vertex s = 0; s < g.order(); ++s) {
    if (g.degree(s) < 3) continue;
    for (Vertex first : g.neighbors(s)) {
      std::vector<Vertex> path{s, first};
      Vertex prev = s, cur = first;
      while (g.degree(cur) == 2) {
        const auto nb = g.neighbors(cur);
        const Vertex nxt = nb[0] == prev ? nb[1] : nb[0];
        prev = cur;
        cur = nxt;
        path.push_back(cur);
      }
      if (g.degree(cur) < 3) continue;
      std::vector<Vertex> rev(path.rbegin(), path.rend());
      found.insert(std::min(path, rev));
    }
  }
  return {found.begin(), found.end()};
}

// True iff uv is an edge lying on some internal path.
inline bool on_internal_path(const Graph& g, const Edge& e) {
  if (!g.has_edge(e)) return false;
  for (const auto& path : internal_paths(g))
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
      if (Edge(path[i], path[i + 1]) == e) return true;
  return false;
}

/// All simple cycles as vertex sequences starting at their smallest vertex,
/// oriented so that the second vertex is smaller than the last. Throws
/// InvalidInput once more than `limit` cycles have been found.
inline std::vector<std::vector<Vertex>> simple_cycles(const Graph& g, std::size_t limit = 100000) {
  std::vector<std::vector<Vertex>> out;
  const int n = g.order();
  std::vector<char> on_path(n, 0);
  std::vector<Vertex> path;

  auto dfs = [&](auto&& self, Vertex s, Vertex x) -> void {
    for (Vertex y : g.neighbors(x)) {
      if (y < s) continue;
      if (y == s) {
        if (path.size() >= 3 && path[1] < path.back()) {
          out.push_back(path);
          if (out.size() > limit) throw InvalidInput("too many cycles");
        }
        continue;
      }
      if (on_path[y]) continue;
      on_path[y] = 1;
      path.push_back(y);
      self(self, s, y);
      path.pop_back();
      on_path[y] = 0;
    }
  };

  for (Vertex s = 0; s < n; ++s) {
    path.assign(1, s);
    on_path[s] = 1;
    dfs(dfs, s, s);
    on_path[s] = 0;
  }
  return out;
}

inline bool is_tree(const Graph& g) { return is_connected(g) && g.edge_count() == g.order() - 1; }

}  // namespace spectra
