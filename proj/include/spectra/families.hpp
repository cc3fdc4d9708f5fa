#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "spectra/error.hpp"
#include "spectra/graph.hpp"
#include "spectra/structure.hpp"

namespace spectra {

// P: theta graph (three internally disjoint paths between two branch vertices).
// C: figure-eight (two cycles sharing one vertex).
// B: dumbbell (two disjoint cycles joined by a path).
enum class Family { P, C, B };

struct BicyclicSpec {
  Family family = Family::B;
  int m = 3;
  int p = 1;  // always 0 for Family::C
  int q = 3;

  static BicyclicSpec theta(int m, int p, int q) { return {Family::P, m, p, q}; }
  static BicyclicSpec figure_eight(int m, int q) { return {Family::C, m, 0, q}; }
  static BicyclicSpec dumbbell(int m, int p, int q) { return {Family::B, m, p, q}; }

  void validate() const {
    switch (family) {
      case Family::P: {
        if (m < 1 || p < 1 || q < 1) throw InvalidParameter("P(m,p,q) needs positive m, p, q");
        if ((m == 1) + (p == 1) + (q == 1) > 1)
          throw InvalidParameter("P(m,p,q) allows at most one parameter equal to 1");
        break;
      }
      case Family::C:
        if (m < 3 || q < 3) throw InvalidParameter("C(m,q) needs m, q >= 3");
        if (p != 0) throw InvalidParameter("C(m,q) has no path parameter");
        break;
      case Family::B:
        if (m < 3 || q < 3 || p < 1) throw InvalidParameter("B(m,p,q) needs m, q >= 3 and p >= 1");
        break;
    }
  }

  int order() const { return family == Family::C ? m + q - 1 : m + p + q - 1; }

  std::string name() const {
    switch (family) {
      case Family::P:
        return "P(" + std::to_string(m) + "," + std::to_string(p) + "," + std::to_string(q) + ")";
      case Family::C:
        return "C(" + std::to_string(m) + "," + std::to_string(q) + ")";
      case Family::B:
        return "B(" + std::to_string(m) + "," + std::to_string(p) + "," + std::to_string(q) + ")";
    }
    return {};
  }

  friend bool operator==(const BicyclicSpec&, const BicyclicSpec&) = default;
};

/// Vertex indices of the named vertices u_i, w_j, v_i of a family graph.
///
/// u[i] is u_i for 0 <= i < m; w[j-1] is w_j for 1 <= j < p; v[i] is v_i.
/// For C(m,q) the shared vertex is u_0 and v starts at v_1 (v[0] is unused
/// and holds -1), which keeps the map injective.
struct VertexLabeling {
  std::vector<Vertex> u;
  std::vector<Vertex> w;
  std::vector<Vertex> v;

  Vertex u_at(int i) const { return u.at(i); }
  Vertex w_at(int j) const { return w.at(j - 1); }
  Vertex v_at(int i) const { return v.at(i); }
};

struct LabeledGraph {
  Graph graph;
  VertexLabeling labels;
};

inline Graph build_cycle(int n) {
  if (n < 3) throw InvalidParameter("cycle needs n >= 3");
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i) es.emplace_back(i, (i + 1) % n);
  return Graph(n, es);
}

// Path on n vertices (n-1 edges).
inline Graph build_path(int n) {
  if (n < 1) throw InvalidParameter("path needs n >= 1");
  std::vector<Edge> es;
  for (int i = 0; i + 1 < n; ++i) es.emplace_back(i, i + 1);
  return Graph(n, es);
}

inline Graph build_complete(int n) {
  if (n < 1) throw InvalidParameter("complete graph needs n >= 1");
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) es.emplace_back(i, j);
  return Graph(n, es);
}

inline Graph build_star(int leaves) {
  if (leaves < 1) throw InvalidParameter("star needs at least one leaf");
  std::vector<Edge> es;
  for (int i = 1; i <= leaves; ++i) es.emplace_back(0, i);
  return Graph(leaves + 1, es);
}

// Double fork: branch vertices 0 and 1 with leaves {2,3} and {4,5}, joined by
// a path whose n-6 interior vertices are 6..n-1.
inline Graph build_tilde_D(int n) {
  if (n < 6) throw InvalidParameter("tilde-D needs n >= 6");
  std::vector<Edge> es{{0, 2}, {0, 3}, {1, 4}, {1, 5}};
  Vertex prev = 0;
  for (Vertex x = 6; x < n; ++x) {
    es.emplace_back(prev, x);
    prev = x;
  }
  es.emplace_back(prev, 1);
  return Graph(n, es);
}

// K_{n-alpha} on 0..n-alpha-1 joined to alpha independent vertices.
inline Graph build_join_extremal(int n, int alpha) {
  if (n < 2 || alpha < 1 || alpha > n - 1)
    throw InvalidParameter("join needs 1 <= alpha <= n-1");
  const int k = n - alpha;
  std::vector<Edge> es;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < n; ++j) es.emplace_back(i, j);
  return Graph(n, es);
}

/// Builds P(m,p,q), C(m,q) or B(m,p,q) with the u-cycle (or u-path) first,
/// then w_1..w_{p-1}, then the v vertices.
///
/// In P(m,p,q) the branch vertices are u_0 and v_0; the u-path is
/// u_0 u_1 ... u_{m-1} v_0, the w-path is u_0 w_1 ... w_{p-1} v_0 and the
/// v-path is u_0 v_1 ... v_{q-1} v_0.
inline LabeledGraph build_bicyclic(const BicyclicSpec& spec) {
  spec.validate();
  const int n = spec.order();
  VertexLabeling lab;
  std::vector<Edge> es;
  auto chain = [&es](const std::vector<Vertex>& seq) {
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) es.emplace_back(seq[i], seq[i + 1]);
  };

  switch (spec.family) {
    case Family::P: {
      const int m = spec.m, p = spec.p, q = spec.q;
      for (int i = 0; i < m; ++i) lab.u.push_back(i);
      for (int j = 1; j < p; ++j) lab.w.push_back(m + j - 1);
      for (int i = 0; i < q; ++i) lab.v.push_back(m + p - 1 + i);
      const Vertex u0 = lab.u[0], v0 = lab.v[0];
      std::vector<Vertex> upath(lab.u.begin(), lab.u.end());
      upath.push_back(v0);
      std::vector<Vertex> wpath{u0};
      wpath.insert(wpath.end(), lab.w.begin(), lab.w.end());
      wpath.push_back(v0);
      std::vector<Vertex> vpath{u0};
      vpath.insert(vpath.end(), lab.v.begin() + 1, lab.v.end());
      vpath.push_back(v0);
      chain(upath);
      chain(wpath);
      chain(vpath);
      break;
    }
    case Family::C: {
      const int m = spec.m, q = spec.q;
      for (int i = 0; i < m; ++i) lab.u.push_back(i);
      lab.v.push_back(-1);
      for (int i = 1; i < q; ++i) lab.v.push_back(m + i - 1);
      for (int i = 0; i < m; ++i) es.emplace_back(lab.u[i], lab.u[(i + 1) % m]);
      std::vector<Vertex> vcycle{lab.u[0]};
      vcycle.insert(vcycle.end(), lab.v.begin() + 1, lab.v.end());
      for (int i = 0; i < q; ++i) es.emplace_back(vcycle[i], vcycle[(i + 1) % q]);
      break;
    }
    case Family::B: {
      const int m = spec.m, p = spec.p, q = spec.q;
      for (int i = 0; i < m; ++i) lab.u.push_back(i);
      for (int j = 1; j < p; ++j) lab.w.push_back(m + j - 1);
      for (int i = 0; i < q; ++i) lab.v.push_back(m + p - 1 + i);
      for (int i = 0; i < m; ++i) es.emplace_back(lab.u[i], lab.u[(i + 1) % m]);
      for (int i = 0; i < q; ++i) es.emplace_back(lab.v[i], lab.v[(i + 1) % q]);
      std::vector<Vertex> path{lab.u[0]};
      path.insert(path.end(), lab.w.begin(), lab.w.end());
      path.push_back(lab.v[0]);
      chain(path);
      break;
    }
  }
  return {Graph(n, es), std::move(lab)};
}

inline Graph build_family(const BicyclicSpec& spec) { return build_bicyclic(spec).graph; }

// Closed-form independence numbers of the three families (elementary parity count).
inline int predicted_independence(const BicyclicSpec& spec) {
  spec.validate();
  const int n = spec.order();
  const int half_up = (n + 1) / 2;
  const auto odd = [](int x) { return x % 2 != 0; };
  bool lowered = false;
  switch (spec.family) {
    case Family::P:
      lowered = odd(spec.m) + odd(spec.p) + odd(spec.q) == 2;
      break;
    case Family::C:
      lowered = odd(spec.m) && odd(spec.q);
      break;
    case Family::B:
      lowered = odd(spec.m) + odd(spec.p) + odd(spec.q) >= 2;
      break;
  }
  return lowered ? half_up - 1 : half_up;
}

/// Representative parameters for an isomorphism class: B and C with m >= q;
/// P with the repeated length (if any) as m = q, otherwise m > p > q.
inline BicyclicSpec normalized(BicyclicSpec s) {
  switch (s.family) {
    case Family::B:
    case Family::C:
      if (s.m < s.q) std::swap(s.m, s.q);
      break;
    case Family::P: {
      std::array<int, 3> v{s.m, s.p, s.q};
      std::sort(v.begin(), v.end(), std::greater<>());
      if (v[1] == v[2] && v[0] != v[1])
        s = {Family::P, v[1], v[0], v[2]};
      else if (v[0] == v[1] && v[1] != v[2])
        s = {Family::P, v[0], v[2], v[1]};
      else
        s = {Family::P, v[0], v[1], v[2]};
      break;
    }
  }
  return s;
}

/// Recognizes P(m,p,q), C(m,q) and B(m,p,q) up to isomorphism; the result is normalized.
inline std::optional<BicyclicSpec> identify_family(const Graph& g) {
  const int n = g.order();
  if (n < 3 || g.edge_count() != n + 1 || g.min_degree() < 2 || !is_connected(g)) return std::nullopt;
  std::vector<Vertex> branch;
  int deg4 = 0;
  for (Vertex v = 0; v < n; ++v) {
    if (g.degree(v) >= 3) branch.push_back(v);
    if (g.degree(v) == 4) ++deg4;
  }
  const auto paths = internal_paths(g);
  auto len = [](const std::vector<Vertex>& p) { return static_cast<int>(p.size()) - 1; };
  if (branch.size() == 1 && deg4 == 1 && paths.size() == 2)
    return normalized(BicyclicSpec::figure_eight(len(paths[0]), len(paths[1])));
  if (branch.size() != 2 || deg4 != 0 || paths.size() != 3) return std::nullopt;
  const Vertex a = branch[0];
  std::vector<int> open, closed_a, closed_b;
  for (const auto& p : paths) {
    if (p.front() != p.back())
      open.push_back(len(p));
    else if (p.front() == a)
      closed_a.push_back(len(p));
    else
      closed_b.push_back(len(p));
  }
  if (open.size() == 3) return normalized(BicyclicSpec::theta(open[0], open[1], open[2]));
  if (open.size() == 1 && closed_a.size() == 1 && closed_b.size() == 1)
    return normalized(BicyclicSpec::dumbbell(closed_a[0], open[0], closed_b[0]));
  return std::nullopt;
}

}  // namespace spectra
