#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "spectra/canonical.hpp"
#include "spectra/error.hpp"
#include "spectra/families.hpp"
#include "spectra/graph.hpp"
#include "spectra/independence.hpp"
#include "spectra/io.hpp"
#include "spectra/spectral.hpp"
#include "spectra/structure.hpp"

namespace spectra {

enum class RewriteKind { delete_edge, subdivide_internal, relocate_vertex, shift_neighbors, split_vertex };

inline const char* rewrite_kind_name(RewriteKind k) {
  switch (k) {
    case RewriteKind::delete_edge:
      return "delete-edge";
    case RewriteKind::subdivide_internal:
      return "subdivide-internal";
    case RewriteKind::relocate_vertex:
      return "relocate-vertex";
    case RewriteKind::shift_neighbors:
      return "shift-neighbors";
    case RewriteKind::split_vertex:
      return "split-vertex";
  }
  return "?";
}

struct RewriteStep {
  RewriteKind kind = RewriteKind::delete_edge;
  Graph before;
  Graph after;
  double rho_before = 0.0;
  double rho_after = 0.0;
  std::string lemma_tag;

  // kind, tag, rho before, rho after, graph6 of `after`
  std::string to_line() const {
    char buf[64];
    std::snprintf(buf, sizeof buf, " %.12f %.12f ", rho_before, rho_after);
    return std::string(rewrite_kind_name(kind)) + " " + lemma_tag + buf + to_graph6(after);
  }
};

inline Graph delete_edge(const Graph& g, const Edge& e) {
  if (!g.has_edge(e)) throw InvalidParameter("delete_edge: edge not in graph");
  return g.without_edge(e);
}

inline bool is_tilde_D(const Graph& g) {
  const int n = g.order();
  if (n < 6 || g.edge_count() != n - 1) return false;
  const Graph d = build_tilde_D(n);
  if (g.degree_sequence() != d.degree_sequence()) return false;
  return canonical_form(g) == canonical_form(d);
}

// Replaces uv by u-w-v with a new vertex w = order().
inline Graph subdivide_internal(const Graph& g, const Edge& e) {
  if (!on_internal_path(g, e)) throw InvalidParameter("subdivide_internal: edge is not on an internal path");
  if (is_tilde_D(g))
    throw ExemptionError("subdivide_internal: graph is the double fork tilde-D_n, whose radius subdivision keeps at 2");
  const Graph h = g.without_edge(e);
  const Vertex nb[] = {e.u, e.v};
  return h.with_vertex(nb);
}

/// Deletes v and subdivides `target` (given in the indices of g). The new
/// vertex is the last one of the result.
inline Graph relocate_vertex(const Graph& g, Vertex v, const Edge& target) {
  if (v < 0 || v >= g.order()) throw InvalidParameter("relocate_vertex: vertex out of range");
  if (target.u == v || target.v == v) throw InvalidParameter("relocate_vertex: target edge touches the vertex");
  const Graph h = g.without_vertex(v);
  if (!is_connected(h)) throw InvalidParameter("relocate_vertex: removing the vertex disconnects the graph");
  const Edge t(target.u - (target.u > v), target.v - (target.v > v));
  if (!on_internal_path(h, t)) throw InvalidParameter("relocate_vertex: target is not internal after removal");
  return subdivide_internal(h, t);
}

/// Moves the edges v-s (s in subset) to u-s.
inline Graph shift_neighbors(const Graph& g, Vertex u, Vertex v, std::span<const Vertex> subset) {
  if (subset.empty()) throw InvalidParameter("shift_neighbors: subset is empty");
  if (u == v) throw InvalidParameter("shift_neighbors: u and v must differ");
  std::set<Vertex> seen;
  for (Vertex s : subset) {
    if (s == u) throw InvalidParameter("shift_neighbors: u lies in the subset");
    if (!g.adjacent(v, s)) throw InvalidParameter("shift_neighbors: subset must lie in N(v)");
    if (g.adjacent(u, s)) throw InvalidParameter("shift_neighbors: subset must avoid N(u)");
    if (!seen.insert(s).second) throw InvalidParameter("shift_neighbors: repeated vertex in subset");
  }
  auto es = g.edges();
  for (Vertex s : subset) {
    es.erase(std::find(es.begin(), es.end(), Edge(v, s)));
    es.emplace_back(u, s);
  }
  return Graph(g.order(), es);
}

/// x_u - x_v in the Perron vector of g; shifting neighbours from v to u
/// raises rho when this is nonnegative.
inline double shift_margin(const Graph& g, Vertex u, Vertex v) {
  const auto pr = perron_pair(g);
  return pr.perron[u] - pr.perron[v];
}

struct SplitCheck {
  double min_margin = 0.0;     // min over w in N(v) \ {w1} of x_w - x_{w1}
  double neighbor_spread = 0.0;  // max - min of the Perron entries on N(v)
};

inline constexpr double kPreconditionMargin = 1e-9;

/// Splits v into v' (index v, adjacent to w1 and `keep`) and v'' (a new last
/// vertex, adjacent to w1 and the remaining neighbours of v). Requires
/// deg(v) >= 3, vw1 a cut edge, x_{w1} minimal on N(v) within
/// kPreconditionMargin and 1 <= |keep| <= deg(v) - 2.
inline Graph split_vertex(const Graph& g, Vertex v, Vertex w1, std::span<const Vertex> keep,
                          SplitCheck* check = nullptr) {
  if (v < 0 || v >= g.order()) throw InvalidParameter("split_vertex: vertex out of range");
  const int t = g.degree(v);
  if (t < 3) throw InvalidParameter("split_vertex: degree of v must be at least 3");
  if (!g.adjacent(v, w1)) throw InvalidParameter("split_vertex: w1 must be a neighbour of v");
  {
    const auto bridges = cut_edges(g);
    if (std::find(bridges.begin(), bridges.end(), Edge(v, w1)) == bridges.end())
      throw InvalidParameter("split_vertex: v-w1 must be a cut edge");
  }
  std::set<Vertex> keep_set;
  for (Vertex x : keep) {
    if (x == w1 || !g.adjacent(v, x)) throw InvalidParameter("split_vertex: kept vertices must be neighbours other than w1");
    keep_set.insert(x);
  }
  const int s = static_cast<int>(keep_set.size()) + 1;
  if (s < 2 || s > t - 1) throw InvalidParameter("split_vertex: partition sizes must satisfy 2 <= s <= t-1");

  const auto pr = perron_pair(g);
  SplitCheck sc;
  sc.min_margin = 1e300;
  double lo = 1e300, hi = -1e300;
  for (Vertex w : g.neighbors(v)) {
    lo = std::min(lo, pr.perron[w]);
    hi = std::max(hi, pr.perron[w]);
    if (w != w1) sc.min_margin = std::min(sc.min_margin, pr.perron[w] - pr.perron[w1]);
  }
  sc.neighbor_spread = hi - lo;
  if (check) *check = sc;
  if (sc.min_margin < -kPreconditionMargin)
    throw InvalidParameter("split_vertex: x_{w1} is not the minimum Perron entry on N(v)");

  std::vector<Edge> es;
  std::vector<Vertex> moved;
  for (const Edge& e : g.edges()) {
    if (e.u == v || e.v == v) {
      const Vertex w = e.u == v ? e.v : e.u;
      if (w != w1 && !keep_set.count(w)) {
        moved.push_back(w);
        continue;
      }
    }
    es.push_back(e);
  }
  const Vertex vv = g.order();
  es.emplace_back(vv, w1);
  for (Vertex w : moved) es.emplace_back(vv, w);
  return Graph(g.order() + 1, es);
}

/// The move B(m,p,q) -> B(m,p-1,q+2) (p >= 2): split v_0 with w1 = w_{p-1},
/// keeping v_1 at v' and handing v_{q-1} to v''.
inline Graph split_dumbbell(const BicyclicSpec& spec, SplitCheck* check = nullptr) {
  if (spec.family != Family::B || spec.p < 2) throw InvalidParameter("split_dumbbell needs B(m,p,q) with p >= 2");
  const auto lg = build_bicyclic(spec);
  const Vertex v0 = lg.labels.v_at(0);
  const Vertex keep[] = {lg.labels.v_at(1)};
  return split_vertex(lg.graph, v0, lg.labels.w_at(spec.p - 1), keep, check);
}

/// A minimal bicyclic subgraph: P and B cores have three segments, C cores
/// two. Segments are vertex sequences whose ends are branch vertices; a
/// closed segment starts and ends at the same vertex.
struct BicyclicCore {
  Family family = Family::B;
  std::vector<std::vector<Vertex>> segments;

  std::set<Edge> edges() const {
    std::set<Edge> out;
    for (const auto& s : segments)
      for (std::size_t i = 0; i + 1 < s.size(); ++i) out.insert(Edge(s[i], s[i + 1]));
    return out;
  }

  std::set<Vertex> vertices() const {
    std::set<Vertex> out;
    for (const auto& s : segments) out.insert(s.begin(), s.end());
    return out;
  }

  BicyclicSpec spec() const {
    auto len = [this](int i) { return static_cast<int>(segments[i].size()) - 1; };
    if (family == Family::C) return normalized(BicyclicSpec::figure_eight(len(0), len(1)));
    if (family == Family::P) return normalized(BicyclicSpec::theta(len(0), len(1), len(2)));
    return normalized(BicyclicSpec::dumbbell(len(0), len(1), len(2)));
  }

  // Spec after lengthening segment i by one.
  BicyclicSpec spec_if_extended(int i) const {
    BicyclicCore c = *this;
    c.segments[i].push_back(-1);
    return c.spec();
  }
};

namespace detail {

inline std::vector<Vertex> rotate_to(const std::vector<Vertex>& cycle, Vertex x) {
  const auto it = std::find(cycle.begin(), cycle.end(), x);
  std::vector<Vertex> out(it, cycle.end());
  out.insert(out.end(), cycle.begin(), it);
  out.push_back(x);
  return out;
}

inline std::tuple<int, int, int> spec_key(const BicyclicSpec& s) { return {s.m, s.p, s.q}; }

// Multi-source BFS from `from` to the nearest vertex of `to`; returns the path.
inline std::vector<Vertex> shortest_connecting_path(const Graph& g, const std::set<Vertex>& from,
                                                    const std::set<Vertex>& to) {
  std::vector<int> prev(g.order(), -2);
  std::vector<Vertex> frontier(from.begin(), from.end());
  for (Vertex x : frontier) prev[x] = -1;
  for (std::size_t i = 0; i < frontier.size(); ++i) {
    const Vertex x = frontier[i];
    if (to.count(x)) {
      std::vector<Vertex> path{x};
      for (Vertex y = prev[x]; y >= 0; y = prev[y]) path.push_back(y);
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (Vertex y : g.neighbors(x))
      if (prev[y] == -2) {
        prev[y] = x;
        frontier.push_back(y);
      }
  }
  return {};
}

// Shortest ear of c2 relative to c1: a subpath of c2 with both ends on c1,
// interior off c1, and first edge outside c1.
inline std::optional<std::vector<Vertex>> shortest_ear(const std::vector<Vertex>& c1, const std::vector<Vertex>& c2) {
  std::set<Vertex> on1(c1.begin(), c1.end());
  std::set<Edge> e1;
  for (std::size_t i = 0; i < c1.size(); ++i) e1.insert(Edge(c1[i], c1[(i + 1) % c1.size()]));
  std::optional<std::vector<Vertex>> best;
  const std::size_t L = c2.size();
  for (std::size_t i = 0; i < L; ++i) {
    if (!on1.count(c2[i])) continue;
    for (int dir : {1, -1}) {
      std::size_t j = (i + L + dir) % L;
      if (e1.count(Edge(c2[i], c2[j]))) continue;
      std::vector<Vertex> ear{c2[i]};
      while (true) {
        ear.push_back(c2[j]);
        if (on1.count(c2[j])) break;
        j = (j + L + dir) % L;
      }
      if (ear.front() != ear.back() && (!best || ear.size() < best->size())) best = ear;
    }
  }
  return best;
}

inline std::vector<Vertex> arc(const std::vector<Vertex>& cycle, Vertex x, Vertex y, int dir) {
  const std::size_t L = cycle.size();
  std::size_t i = std::find(cycle.begin(), cycle.end(), x) - cycle.begin();
  std::vector<Vertex> out{x};
  while (cycle[i] != y) {
    i = (i + L + dir) % L;
    out.push_back(cycle[i]);
  }
  return out;
}

}  // namespace detail

/// Chooses the replay core. If some two cycles meet, the C- or P-type
/// union with fewest edges is taken; otherwise the B-type core with the
/// shortest connecting path, then fewest edges. Remaining ties go to the
/// lexicographically smallest (m,p,q), then to enumeration order.
inline BicyclicCore find_bicyclic_core(const Graph& g, std::size_t cycle_cap = 2000) {
  const auto cycles = simple_cycles(g, cycle_cap);
  if (cycles.size() < 2) throw InvalidInput("graph has fewer than two cycles");
  const bool disjoint = cycles_mutually_disjoint(g);
  std::optional<BicyclicCore> best;
  std::tuple<int, int, int, int, int> best_key{};
  for (std::size_t i = 0; i < cycles.size(); ++i)
    for (std::size_t j = i + 1; j < cycles.size(); ++j) {
      const auto& c1 = cycles[i];
      const auto& c2 = cycles[j];
      std::set<Vertex> s1(c1.begin(), c1.end()), s2(c2.begin(), c2.end());
      std::vector<Vertex> common;
      std::set_intersection(s1.begin(), s1.end(), s2.begin(), s2.end(), std::back_inserter(common));
      BicyclicCore core;
      if (disjoint) {
        if (!common.empty()) continue;
        const auto path = detail::shortest_connecting_path(g, s1, s2);
        core.family = Family::B;
        core.segments = {detail::rotate_to(c1, path.front()), path, detail::rotate_to(c2, path.back())};
      } else if (common.size() == 1) {
        core.family = Family::C;
        core.segments = {detail::rotate_to(c1, common[0]), detail::rotate_to(c2, common[0])};
      } else if (common.size() >= 2) {
        const auto ear = detail::shortest_ear(c1, c2);
        if (!ear) continue;
        core.family = Family::P;
        core.segments = {detail::arc(c1, ear->front(), ear->back(), 1), *ear,
                         detail::arc(c1, ear->front(), ear->back(), -1)};
      } else {
        continue;
      }
      const auto spec = core.spec();
      const int nedges = static_cast<int>(core.edges().size());
      const int primary = disjoint ? static_cast<int>(core.segments[1].size()) - 1 : nedges;
      const auto key = std::make_tuple(primary, nedges, spec.m, spec.p, spec.q);
      if (!best || key < best_key) {
        best = core;
        best_key = key;
      }
    }
  if (!best) throw InvalidInput("no bicyclic core found");
  return *best;
}

struct ReplayResult {
  std::vector<RewriteStep> steps;
  BicyclicSpec initial_core;
  BicyclicSpec final_family;
  Graph final_graph;
};

inline constexpr int kReplayMaxOrder = 16;

/// Reduces g to a member of P, C or B with the same order by deleting
/// the edges outside a minimal bicyclic core and then moving every
/// vertex outside the core into the core's longest segment.
inline ReplayResult proof_replay(const Graph& g) {
  const int n = g.order();
  if (!is_connected(g)) throw InvalidInput("replay precondition: graph must be connected");
  if (g.edge_count() < n + 1) throw InvalidInput("replay precondition: needs |E| >= |V| + 1");
  if (n > kReplayMaxOrder) throw InvalidInput("replay precondition: order above 16");
  const int alpha_target = (n + 1) / 2 - 1;
  if (independence_number(g) != alpha_target)
    throw InvalidInput("replay precondition: independence number must be ceil(n/2) - 1");

  ReplayResult out;
  BicyclicCore core = find_bicyclic_core(g);
  out.initial_core = core.spec();
  Graph cur = g;
  double rho = perron_pair(cur).rho;

  while (true) {
    const auto core_edges = core.edges();
    const auto bridges = cut_edges(cur);
    std::optional<Edge> chord;
    for (const Edge& e : cur.edges())
      if (!core_edges.count(e) && !std::binary_search(bridges.begin(), bridges.end(), e)) {
        chord = e;
        break;
      }
    if (!chord) break;
    RewriteStep st;
    st.kind = RewriteKind::delete_edge;
    st.lemma_tag = "edge-deletion-decreases-rho";
    st.before = cur;
    st.after = delete_edge(cur, *chord);
    st.rho_before = rho;
    st.rho_after = perron_pair(st.after).rho;
    cur = st.after;
    rho = st.rho_after;
    out.steps.push_back(std::move(st));
  }

  while (true) {
    const auto in_core = core.vertices();
    if (static_cast<int>(in_core.size()) == cur.order()) break;
    std::vector<int> dist(cur.order(), -1);
    {
      std::vector<Vertex> frontier(in_core.begin(), in_core.end());
      for (Vertex x : frontier) dist[x] = 0;
      for (std::size_t i = 0; i < frontier.size(); ++i)
        for (Vertex y : cur.neighbors(frontier[i]))
          if (dist[y] < 0) {
            dist[y] = dist[frontier[i]] + 1;
            frontier.push_back(y);
          }
    }
    Vertex v = -1;
    for (Vertex x = 0; x < cur.order(); ++x)
      if (!in_core.count(x) && (v < 0 || dist[x] > dist[v])) v = x;

    int target = 0;
    for (int i = 1; i < static_cast<int>(core.segments.size()); ++i) {
      const auto li = core.segments[i].size(), lt = core.segments[target].size();
      if (li > lt || (li == lt && detail::spec_key(core.spec_if_extended(i)) <
                                      detail::spec_key(core.spec_if_extended(target))))
        target = i;
    }
    const auto& seg = core.segments[target];
    RewriteStep st;
    st.kind = RewriteKind::relocate_vertex;
    st.lemma_tag = "vertex-relocation-decreases-rho";
    st.before = cur;
    st.after = relocate_vertex(cur, v, Edge(seg[0], seg[1]));
    st.rho_before = rho;
    st.rho_after = perron_pair(st.after).rho;

    for (auto& s : core.segments)
      for (auto& x : s) x -= (x > v);
    core.segments[target].insert(core.segments[target].begin() + 1, st.after.order() - 1);

    cur = st.after;
    rho = st.rho_after;
    out.steps.push_back(std::move(st));
  }
  out.final_graph = cur;
  const auto fam = identify_family(cur);
  if (!fam) throw std::logic_error("replay did not end at a bicyclic family member");
  out.final_family = *fam;
  return out;
}

}  // namespace spectra
