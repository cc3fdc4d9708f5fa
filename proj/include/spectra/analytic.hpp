#pragma once

#include <array>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "spectra/error.hpp"
#include "spectra/families.hpp"
#include "spectra/graph.hpp"
#include "spectra/spectral.hpp"

namespace spectra {

namespace detail {

// sinh(x) / sinh(y) for 0 <= x <= y, y > 0, without overflow.
inline double sinh_ratio(double x, double y) {
  if (x == 0.0) return 0.0;
  return std::exp(x - y) * std::expm1(-2.0 * x) / std::expm1(-2.0 * y);
}

}  // namespace detail

/// (b sinh(i t) + a sinh((k - i) t)) / sinh(k t), the solution of
/// rho x_{i+1} = x_i + x_{i+2} with x_0 = a, x_k = b and rho = 2 cosh t.
inline double f(int i, double t, int k, double a, double b) {
  if (!(t > 0)) throw InvalidParameter("f needs t > 0; use f_limit at t = 0");
  if (k < 1 || i < 0 || i > k) throw InvalidParameter("f needs 0 <= i <= k and k >= 1");
  const double kt = k * t;
  return b * detail::sinh_ratio(i * t, kt) + a * detail::sinh_ratio((k - i) * t, kt);
}

// Limit of f as t -> 0: linear interpolation between a and b.
inline double f_limit(int i, int k, double a, double b) {
  if (k < 1 || i < 0 || i > k) throw InvalidParameter("f_limit needs 0 <= i <= k and k >= 1");
  return (b * i + a * (k - i)) / k;
}

inline double t_of_rho(double rho) {
  if (!(rho >= 2.0)) throw InvalidParameter("t_of_rho needs rho >= 2");
  return std::log((rho + std::sqrt(rho * rho - 4.0)) / 2.0);
}

inline double rho_of_t(double t) { return 2.0 * std::cosh(t); }

using Matrix2 = std::array<std::array<double, 2>, 2>;

namespace detail {

struct BoundaryTerms {
  double two_c;   // 2 cosh t
  double gm, gq;  // f_1(t, m, 1, 1), f_1(t, q, 1, 1)
  double h1;      // sinh t / sinh pt
  double hp1;     // sinh (p-1)t / sinh pt
};

inline BoundaryTerms boundary_terms(int m, int p, int q, double t) {
  BoundaryTerms bt;
  bt.two_c = rho_of_t(t);
  bt.gm = f(1, t, m, 1.0, 1.0);
  bt.gq = f(1, t, q, 1.0, 1.0);
  bt.h1 = sinh_ratio(t, p * t);
  bt.hp1 = sinh_ratio((p - 1) * t, p * t);
  return bt;
}

inline void check_dumbbell(int m, int p, int q) { BicyclicSpec::dumbbell(m, p, q).validate(); }

}  // namespace detail

/// M(rho) with M (a, b)^T = 0 equivalent to the eigenvalue equations at
/// u_0 and v_0 of B(m,p,q), once the degree-2 entries are eliminated.
inline Matrix2 boundary_matrix(int m, int p, int q, double rho) {
  detail::check_dumbbell(m, p, q);
  if (!(rho > 2.0)) throw InvalidParameter("boundary_matrix needs rho > 2");
  const auto bt = detail::boundary_terms(m, p, q, t_of_rho(rho));
  return {{{bt.two_c - 2.0 * bt.gm - bt.hp1, -bt.h1}, {-bt.h1, bt.two_c - 2.0 * bt.gq - bt.hp1}}};
}

inline double det2(const Matrix2& a) { return a[0][0] * a[1][1] - a[0][1] * a[1][0]; }

struct AnalyticSolution {
  int m = 0, p = 0, q = 0;
  double t = 0.0;
  double a = 0.0;  // x_{u_0}
  double b = 0.0;  // x_{v_0}
  double residual_u0 = 0.0;
  double residual_v0 = 0.0;

  double rho() const { return rho_of_t(t); }
};

/// Residuals rho x_v - sum of neighbours at u_0 and v_0, with the degree-2
/// entries written through f.
inline std::array<double, 2> vertex_equation_residuals(int m, int p, int q, double t, double a, double b) {
  const double rho = rho_of_t(t);
  const double ru = rho * a - (2.0 * f(1, t, m, a, a) + f(1, t, p, a, b));
  const double rv = rho * b - (2.0 * f(1, t, q, b, b) + f(p - 1, t, p, a, b));
  return {ru, rv};
}

/// Left minus right side of the two rearranged boundary equations
/// a cosh t - f_1(t,m,a,a) - f_1(t,p,a,a)/2 = -(a-b)/2 sinh t / sinh pt and
/// a cosh t - f_1(t,q,a,a) - f_1(t,p,a,a)/2 = a(a-b)/(2b) sinh t / sinh pt.
inline std::array<double, 2> rearranged_boundary_residuals(int m, int p, int q, double t, double a, double b) {
  const double c = std::cosh(t);
  const double h = detail::sinh_ratio(t, p * t);
  const double half = 0.5 * f(1, t, p, a, a);
  const double e1 = a * c - f(1, t, m, a, a) - half + 0.5 * (a - b) * h;
  const double e2 = a * c - f(1, t, q, a, a) - half - a * (a - b) / (2.0 * b) * h;
  return {e1, e2};
}

namespace detail {

// rho - lambda_max(N(rho)) where M(rho) = rho I - N(rho); strictly increasing in rho.
inline double perron_gap(int m, int p, int q, double rho) {
  const auto bt = boundary_terms(m, p, q, t_of_rho(rho));
  const double n11 = 2.0 * bt.gm + bt.hp1, n22 = 2.0 * bt.gq + bt.hp1, n12 = bt.h1;
  const double lam = 0.5 * (n11 + n22) + std::sqrt(0.25 * (n11 - n22) * (n11 - n22) + n12 * n12);
  return rho - lam;
}

}  // namespace detail

/// Spectral radius of B(m,p,q) from the boundary system. The Perron root is
/// the unique zero of rho - lambda_max(N(rho)) on (2, 4]; it is located by
/// bisection and polished with a secant step on det M.
inline AnalyticSolution rho_analytic(int m, int p, int q, double tol = 1e-10) {
  detail::check_dumbbell(m, p, q);
  double lo = 2.0 + 1e-9, hi = 4.0;
  double flo = detail::perron_gap(m, p, q, lo), fhi = detail::perron_gap(m, p, q, hi);
  if (!(flo < 0 && fhi > 0)) throw NumericFailure("rho_analytic: no sign change on (2, 4]", 0, flo);
  int iterations = 0;
  while (hi - lo > 4e-16 * hi && iterations < 200) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (detail::perron_gap(m, p, q, mid) < 0)
      lo = mid;
    else
      hi = mid;
    ++iterations;
  }
  double rho = 0.5 * (lo + hi);
  {
    const double h = 1e-7;
    const double d0 = det2(boundary_matrix(m, p, q, rho));
    const double dp = det2(boundary_matrix(m, p, q, rho + h));
    const double dm = det2(boundary_matrix(m, p, q, rho - h));
    const double slope = (dp - dm) / (2.0 * h);
    if (slope != 0.0 && std::isfinite(slope)) {
      const double cand = rho - d0 / slope;
      if (std::abs(cand - rho) < 1e-12 && std::abs(det2(boundary_matrix(m, p, q, cand))) < std::abs(d0))
        rho = cand;
    }
  }

  const auto mat = boundary_matrix(m, p, q, rho);
  // Kernel of [[alpha, -h], [-h, beta]] from whichever row is better conditioned.
  double a, b;
  if (std::hypot(mat[0][0], mat[0][1]) >= std::hypot(mat[1][0], mat[1][1])) {
    a = -mat[0][1];
    b = mat[0][0];
  } else {
    a = mat[1][1];
    b = -mat[1][0];
  }
  if (a < 0 && b < 0) {
    a = -a;
    b = -b;
  }
  if (!(a > 0 && b > 0)) throw NumericFailure("rho_analytic: kernel vector is not positive", iterations, a);
  const double s = std::min(a, b);
  a /= s;
  b /= s;

  AnalyticSolution sol;
  sol.m = m;
  sol.p = p;
  sol.q = q;
  sol.t = t_of_rho(rho);
  sol.a = a;
  sol.b = b;
  const auto r = vertex_equation_residuals(m, p, q, sol.t, a, b);
  sol.residual_u0 = r[0];
  sol.residual_v0 = r[1];
  if (std::abs(r[0]) > tol || std::abs(r[1]) > tol)
    throw NumericFailure("rho_analytic: boundary residual above tolerance", iterations,
                         std::max(std::abs(r[0]), std::abs(r[1])));
  return sol;
}

/// Perron vector of B(m,p,q) (scaled so that min(x_{u_0}, x_{v_0}) = 1),
/// indexed by vertex of build_bicyclic.
inline std::vector<double> perron_closed_form(const AnalyticSolution& sol) {
  const auto lg = build_bicyclic(BicyclicSpec::dumbbell(sol.m, sol.p, sol.q));
  std::vector<double> x(lg.graph.order(), 0.0);
  const auto& lab = lg.labels;
  for (int i = 0; i < sol.m; ++i) x[lab.u_at(i)] = f(i, sol.t, sol.m, sol.a, sol.a);
  for (int j = 1; j < sol.p; ++j) x[lab.w_at(j)] = f(j, sol.t, sol.p, sol.a, sol.b);
  for (int i = 0; i < sol.q; ++i) x[lab.v_at(i)] = f(i, sol.t, sol.q, sol.b, sol.b);
  return x;
}

/// Quotient of an equitable partition: entries[c][d] is the number of
/// neighbours in class d of any vertex of class c.
struct QuotientMatrix {
  std::vector<std::vector<Vertex>> classes;
  std::vector<std::vector<int>> entries;

  int size() const { return static_cast<int>(classes.size()); }

  // Largest eigenvalue, from the symmetrization S = D^{1/2} Q D^{-1/2}.
  double top_eigenvalue() const {
    const int k = size();
    std::vector<double> s(static_cast<std::size_t>(k) * k);
    for (int c = 0; c < k; ++c)
      for (int d = 0; d < k; ++d)
        s[c * k + d] = entries[c][d] *
                       std::sqrt(static_cast<double>(classes[c].size()) / static_cast<double>(classes[d].size()));
    return jacobi_eigen(std::move(s), k).values.front();
  }
};

// Throws InvalidParameter when `classes` is not an equitable partition of g.
inline QuotientMatrix quotient_matrix(const Graph& g, std::vector<std::vector<Vertex>> classes) {
  const int n = g.order();
  std::vector<int> cls(n, -1);
  for (int c = 0; c < static_cast<int>(classes.size()); ++c)
    for (Vertex v : classes[c]) {
      if (v < 0 || v >= n || cls[v] >= 0) throw InvalidParameter("quotient: classes must partition the vertices");
      cls[v] = c;
    }
  for (int v = 0; v < n; ++v)
    if (cls[v] < 0) throw InvalidParameter("quotient: classes must cover every vertex");
  const int k = static_cast<int>(classes.size());
  QuotientMatrix qm;
  qm.entries.assign(k, std::vector<int>(k, 0));
  for (int c = 0; c < k; ++c) {
    std::vector<int> first(k, 0);
    for (std::size_t idx = 0; idx < classes[c].size(); ++idx) {
      std::vector<int> cnt(k, 0);
      for (Vertex u : g.neighbors(classes[c][idx])) ++cnt[cls[u]];
      if (idx == 0)
        first = cnt;
      else if (cnt != first)
        throw InvalidParameter("quotient: partition is not equitable");
    }
    qm.entries[c] = first;
  }
  qm.classes = std::move(classes);
  return qm;
}

namespace detail {

inline std::vector<std::vector<Vertex>> symmetric_classes(const VertexLabeling& lab, int m, int p) {
  std::vector<std::vector<Vertex>> classes;
  classes.push_back({lab.u_at(0), lab.v_at(0)});
  for (int i = 1; i <= m / 2; ++i) {
    std::set<Vertex> s{lab.u_at(i), lab.v_at(i), lab.u_at(m - i), lab.v_at(m - i)};
    classes.emplace_back(s.begin(), s.end());
  }
  for (int j = 1; j <= p / 2; ++j) {
    std::set<Vertex> s{lab.w_at(j), lab.w_at(p - j)};
    classes.emplace_back(s.begin(), s.end());
  }
  return classes;
}

}  // namespace detail

/// Quotient of B(m,p,m) over the classes {u_0,v_0}, {u_i,v_i,u_{m-i},v_{m-i}}
/// and {w_j,w_{p-j}}. The same classes in P(m,p,m) give the same matrix,
/// which is checked before returning.
inline QuotientMatrix quotient_matrix_symmetric(int m, int p) {
  if (m < 3 || p < 1) throw InvalidParameter("quotient_matrix_symmetric needs m >= 3, p >= 1");
  const auto b = build_bicyclic(BicyclicSpec::dumbbell(m, p, m));
  const auto pg = build_bicyclic(BicyclicSpec::theta(m, p, m));
  auto qb = quotient_matrix(b.graph, detail::symmetric_classes(b.labels, m, p));
  const auto qp = quotient_matrix(pg.graph, detail::symmetric_classes(pg.labels, m, p));
  if (qb.entries != qp.entries) throw std::logic_error("quotients of B(m,p,m) and P(m,p,m) differ");
  return qb;
}

/// The residual (a-b)^2/(2b) sinh t / sinh mt at t = t(rho(B(m,m,p))), with
/// (a, b) the boundary entries of B(m,m,p). Positive values certify
/// rho(B(m,p,m)) < rho(B(m,m,p)).
inline double lemma_bmpm_gap(int m, int p) {
  if (m == p) throw InvalidParameter("lemma_bmpm_gap needs m != p");
  if (m < 3 || p < 3) throw InvalidParameter("lemma_bmpm_gap needs m, p >= 3");
  const auto sol = rho_analytic(m, m, p);
  return (sol.a - sol.b) * (sol.a - sol.b) / (2.0 * sol.b) * detail::sinh_ratio(sol.t, m * sol.t);
}

/// sigma x'_{v_0} - sum of neighbours of v_0 for the test vector
/// x'_{u_i} = x'_{v_i} = f_i(t, m, a, a), x'_{w_j} = f_j(t, p, a, a) on
/// B(m,p,m), evaluated directly on the graph.
inline double lemma_bmpm_direct(int m, int p) {
  if (m == p) throw InvalidParameter("lemma_bmpm_direct needs m != p");
  const auto sol = rho_analytic(m, m, p);
  const auto lg = build_bicyclic(BicyclicSpec::dumbbell(m, p, m));
  const auto& lab = lg.labels;
  std::vector<double> x(lg.graph.order());
  for (int i = 0; i < m; ++i) {
    x[lab.u_at(i)] = f(i, sol.t, m, sol.a, sol.a);
    x[lab.v_at(i)] = f(i, sol.t, m, sol.a, sol.a);
  }
  for (int j = 1; j < p; ++j) x[lab.w_at(j)] = f(j, sol.t, p, sol.a, sol.a);
  const Vertex v0 = lab.v_at(0);
  double s = 0.0;
  for (Vertex u : lg.graph.neighbors(v0)) s += x[u];
  return sol.rho() * x[v0] - s;
}

}  // namespace spectra
