#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "spectra/error.hpp"
#include "spectra/graph.hpp"
#include "spectra/poly.hpp"
#include "spectra/structure.hpp"

namespace spectra {

enum class Method { power, dense, certified };

inline const char* method_name(Method m) {
  switch (m) {
    case Method::power:
      return "power";
    case Method::dense:
      return "dense";
    case Method::certified:
      return "certified";
  }
  return "?";
}

struct SpectralResult {
  double rho = 0.0;
  std::vector<double> perron;  // unit Euclidean norm, positive for connected input
  double residual = 0.0;       // max-norm of A x - rho x
  Method method = Method::power;
  long iterations = 0;
};

struct SpectralTolerance {
  static constexpr double rho = 1e-12;
  static constexpr double vector_residual = 1e-10;
  static constexpr double comparison = 1e-9;
};

namespace detail {

inline void adjacency_multiply(const Graph& g, std::span<const double> x, std::span<double> y) {
  for (Vertex v = 0; v < g.order(); ++v) {
    double s = 0.0;
    for (Vertex u : g.neighbors(v)) s += x[u];
    y[v] = s;
  }
}

inline double max_abs_residual(const Graph& g, std::span<const double> x, double rho) {
  std::vector<double> y(x.size());
  adjacency_multiply(g, x, y);
  double r = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) r = std::max(r, std::abs(y[i] - rho * x[i]));
  return r;
}

}  // namespace detail

/// Perron pair by power iteration on A + I from the normalized all-ones
/// vector; stops when the Rayleigh-quotient residual is at most `tol`.
inline SpectralResult perron_pair(const Graph& g, double tol = SpectralTolerance::vector_residual,
                                  long max_iterations = 2000000) {
  const int n = g.order();
  if (n < 1) throw InvalidInput("perron_pair needs at least one vertex");
  if (!is_connected(g)) throw InvalidInput("perron_pair needs a connected graph");
  if (!(tol > 0)) throw InvalidParameter("tolerance must be positive");
  SpectralResult out;
  out.method = Method::power;
  if (n == 1) {
    out.perron = {1.0};
    return out;
  }
  std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n))), ax(n);
  double rho = 0.0, res = 0.0;
  for (long it = 1; it <= max_iterations; ++it) {
    detail::adjacency_multiply(g, x, ax);
    rho = std::inner_product(x.begin(), x.end(), ax.begin(), 0.0);
    res = 0.0;
    for (int i = 0; i < n; ++i) res = std::max(res, std::abs(ax[i] - rho * x[i]));
    if (res <= tol) {
      out.rho = rho;
      out.perron = x;
      out.residual = res;
      out.iterations = it;
      return out;
    }
    double norm = 0.0;
    for (int i = 0; i < n; ++i) {
      ax[i] += x[i];
      norm += ax[i] * ax[i];
    }
    norm = std::sqrt(norm);
    for (int i = 0; i < n; ++i) x[i] = ax[i] / norm;
  }
  throw NumericFailure("power iteration did not converge", max_iterations, res);
}

inline double spectral_radius(const Graph& g) { return perron_pair(g).rho; }

// Largest eigenvalue over components; defined for any graph.
inline double spectral_radius_any(const Graph& g) {
  double best = 0.0;
  for (const auto& comp : connected_components(g)) {
    if (comp.size() == 1) continue;
    best = std::max(best, perron_pair(g.induced(comp)).rho);
  }
  return best;
}

/// Bit-row power iteration for bulk screening. Rayleigh quotients of A + I
/// iterates never exceed rho and increase monotonically, so once one exceeds
/// `cutoff` the graph is reported as exceeding without full convergence.
struct ScreenedRho {
  double rho = 0.0;
  bool exceeded = false;
};

inline ScreenedRho screened_spectral_radius(std::span<const std::uint64_t> rows, double cutoff,
                                            double tol = SpectralTolerance::vector_residual) {
  const int n = static_cast<int>(rows.size());
  double x[64], y[64];
  for (int i = 0; i < n; ++i) x[i] = 1.0 / std::sqrt(static_cast<double>(n));
  ScreenedRho out;
  for (long it = 0; it < 2000000; ++it) {
    double rq = 0.0;
    for (int v = 0; v < n; ++v) {
      double s = 0.0;
      for (std::uint64_t r = rows[v]; r; r &= r - 1) s += x[std::countr_zero(r)];
      y[v] = s;
      rq += s * x[v];
    }
    if (rq > cutoff) {
      out.rho = rq;
      out.exceeded = true;
      return out;
    }
    double res = 0.0, norm = 0.0;
    for (int v = 0; v < n; ++v) {
      res = std::max(res, std::abs(y[v] - rq * x[v]));
      y[v] += x[v];
      norm += y[v] * y[v];
    }
    if (res <= tol) {
      out.rho = rq;
      return out;
    }
    norm = std::sqrt(norm);
    for (int v = 0; v < n; ++v) x[v] = y[v] / norm;
  }
  throw NumericFailure("screened power iteration did not converge", 2000000, 0.0);
}

/// Symmetric eigendecomposition by cyclic Jacobi rotations. `a` is row-major
/// n x n. Eigenvalues come back in descending order; column j of `vectors`
/// (row-major) belongs to values[j].
struct SymmetricEigen {
  std::vector<double> values;
  std::vector<double> vectors;
};

inline SymmetricEigen jacobi_eigen(std::vector<double> a, int n) {
  if (static_cast<int>(a.size()) != n * n) throw InvalidParameter("jacobi_eigen: size mismatch");
  std::vector<double> v(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) v[i * n + i] = 1.0;
  auto at = [&a, n](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0, diag = 0.0;
    for (int i = 0; i < n; ++i) {
      diag += at(i, i) * at(i, i);
      for (int j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
    }
    if (off <= 1e-30 * std::max(diag, 1.0)) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (std::abs(apq) < 1e-300) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = v[k * n + p], vkq = v[k * n + q];
          v[k * n + p] = c * vkp - s * vkq;
          v[k * n + q] = s * vkp + c * vkq;
        }
      }
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return at(i, i) > at(j, j); });
  SymmetricEigen out;
  out.values.resize(n);
  out.vectors.resize(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    out.values[j] = at(order[j], order[j]);
    for (int k = 0; k < n; ++k) out.vectors[k * n + j] = v[k * n + order[j]];
  }
  return out;
}

inline std::vector<double> adjacency_dense(const Graph& g) {
  const int n = g.order();
  std::vector<double> a(static_cast<std::size_t>(n) * n, 0.0);
  for (const Edge& e : g.edges()) a[e.u * n + e.v] = a[e.v * n + e.u] = 1.0;
  return a;
}

inline constexpr int kDenseCap = 512;

// All adjacency eigenvalues, descending.
inline std::vector<double> full_spectrum(const Graph& g, int cap = kDenseCap) {
  const int n = g.order();
  if (n > cap) throw InvalidInput("full_spectrum: order exceeds the dense cap");
  if (n == 0) return {};
  auto eig = jacobi_eigen(adjacency_dense(g), n);
  double worst = 0.0;
  std::vector<double> col(n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) col[k] = eig.vectors[k * n + j];
    worst = std::max(worst, detail::max_abs_residual(g, col, eig.values[j]));
  }
  if (worst > 1e-9 * n) throw NumericFailure("Jacobi eigenpairs failed the residual check", 0, worst);
  return eig.values;
}

// Dense-method Perron pair (top eigenvector of the Jacobi decomposition).
inline SpectralResult perron_pair_dense(const Graph& g) {
  const int n = g.order();
  if (!is_connected(g)) throw InvalidInput("perron_pair_dense needs a connected graph");
  auto eig = jacobi_eigen(adjacency_dense(g), n);
  SpectralResult out;
  out.method = Method::dense;
  out.rho = eig.values[0];
  out.perron.resize(n);
  double sum = 0.0;
  for (int k = 0; k < n; ++k) sum += eig.vectors[k * n];
  const double sgn = sum < 0 ? -1.0 : 1.0;
  for (int k = 0; k < n; ++k) out.perron[k] = sgn * eig.vectors[k * n];
  out.residual = detail::max_abs_residual(g, out.perron, out.rho);
  return out;
}

using CharPoly = IntPoly;

inline constexpr int kExactCap = 64;

/// Exact characteristic polynomial det(xI - A) by Faddeev-LeVerrier over
/// big integers; every division by k is checked to be exact.
inline CharPoly char_poly(const Graph& g) {
  const int n = g.order();
  if (n > kExactCap) throw InvalidInput("char_poly: order exceeds the exact cap");
  std::vector<BigInt> c(n + 1);
  c[n] = 1;
  std::vector<BigInt> m(static_cast<std::size_t>(n) * n), am(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) m[i * n + i] = 1;
  for (int k = 1; k <= n; ++k) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        BigInt s = 0;
        for (Vertex u : g.neighbors(i)) s += m[u * n + j];
        am[i * n + j] = std::move(s);
      }
    BigInt tr = 0;
    for (int i = 0; i < n; ++i) tr += am[i * n + i];
    BigInt q, r;
    divide_qr(tr, BigInt(k), q, r);
    if (r != 0) throw NumericFailure("Faddeev-LeVerrier: inexact trace division", k, 0.0);
    c[n - k] = -q;
    if (k < n) {
      m.swap(am);
      for (int i = 0; i < n; ++i) m[i * n + i] += c[n - k];
    }
  }
  return IntPoly(std::move(c));
}

/// Dyadic bracket (lo_num / 2^k, hi_num / 2^k] that contains exactly one
/// root of `poly`, namely its largest.
struct RhoBracket {
  BigInt lo_num;
  BigInt hi_num;
  unsigned k = 0;

  BigRational lo() const { return dyadic(lo_num, k); }
  BigRational hi() const { return dyadic(hi_num, k); }
  BigRational width() const { return hi() - lo(); }
  double midpoint() const { return static_cast<double>((lo() + hi()) / 2); }
  std::string to_string() const { return "(" + rational_to_string(lo()) + ", " + rational_to_string(hi()) + "]"; }
};

namespace detail {

inline bool bracket_certified(const IntPoly& p, const BigInt& lo, const BigInt& hi, unsigned k) {
  return p.roots_above_dyadic(lo, k) == 1 && p.roots_above_dyadic(hi, k) == 0;
}

inline unsigned exponent_for_width(const BigRational& width) {
  if (width <= 0) throw InvalidParameter("bracket width must be positive");
  unsigned e = 0;
  while (BigRational(BigInt(1), BigInt(1) << e) > width) ++e;
  return e;
}

}  // namespace detail

// Shrinks a certified bracket by exact sign bisection until its width is at most 2^-target.
inline void refine_bracket(const IntPoly& p, RhoBracket& b, unsigned target) {
  while (true) {
    const BigInt gap = b.hi_num - b.lo_num;
    if (gap == 1 && b.k >= target) return;
    if (gap == 1) {
      b.lo_num <<= 1;
      b.hi_num <<= 1;
      ++b.k;
    }
    const BigInt mid = b.lo_num + ((b.hi_num - b.lo_num) >> 1);
    const int s = p.sign_at_dyadic(mid, b.k);
    if (s == 0) {
      const unsigned k = std::max(target, b.k);
      b.hi_num = mid << (k - b.k);
      b.lo_num = b.hi_num - 1;
      b.k = k;
      return;
    }
    if (s > 0)
      b.hi_num = mid;
    else
      b.lo_num = mid;
  }
}

/// Certified bracket of the largest root of a real-rooted polynomial. `seed`
/// is an approximation of that root, or NaN when none is available.
inline RhoBracket top_root_bracket(const IntPoly& p, double seed, unsigned target, double bound) {
  if (p.degree() < 1) throw InvalidParameter("top_root_bracket: polynomial has no roots");
  RhoBracket b;
  bool ok = false;
  if (std::isfinite(seed)) {
    b.k = 32;
    const double scale = std::ldexp(1.0, 32);
    b.lo_num = BigInt(static_cast<long long>(std::floor((seed - 1e-9) * scale)));
    b.hi_num = BigInt(static_cast<long long>(std::ceil((seed + 1e-9) * scale)));
    ok = detail::bracket_certified(p, b.lo_num, b.hi_num, b.k);
  }
  if (!ok) {
    const long long r = static_cast<long long>(std::ceil(bound)) + 1;
    b.k = 0;
    b.lo_num = -r;
    b.hi_num = r;
    if (p.roots_above_dyadic(b.hi_num, 0) != 0) throw InvalidParameter("top_root_bracket: bound too small");
    for (int guard = 0; p.roots_above_dyadic(b.lo_num, b.k) != 1; ++guard) {
      if (guard > 400) throw NumericFailure("top root is not simple", guard, 0.0);
      if (b.hi_num - b.lo_num == 1) {
        b.lo_num <<= 1;
        b.hi_num <<= 1;
        ++b.k;
      }
      const BigInt mid = b.lo_num + ((b.hi_num - b.lo_num) >> 1);
      if (p.roots_above_dyadic(mid, b.k) >= 1)
        b.lo_num = mid;
      else
        b.hi_num = mid;
    }
  }
  refine_bracket(p, b, target);
  return b;
}

inline RhoBracket rho_bracket(const Graph& g, const BigRational& width) {
  const unsigned target = detail::exponent_for_width(width);
  if (!is_connected(g)) throw InvalidInput("rho_bracket needs a connected graph");
  const auto p = char_poly(g);
  double seed = std::nan("");
  try {
    seed = perron_pair(g).rho;
  } catch (const NumericFailure&) {
  }
  return top_root_bracket(p, seed, target, 1.0 + g.max_degree());
}

enum class Ordering { less, greater, equal, unresolved };

inline const char* ordering_name(Ordering o) {
  switch (o) {
    case Ordering::less:
      return "less";
    case Ordering::greater:
      return "greater";
    case Ordering::equal:
      return "equal";
    case Ordering::unresolved:
      return "unresolved";
  }
  return "?";
}

struct CertifiedComparison {
  Ordering verdict = Ordering::unresolved;
  RhoBracket first;
  RhoBracket second;
  int common_factor_degree = 0;
};

/// Exact comparison of the largest roots of two real-rooted polynomials.
/// Strict verdicts come from disjoint brackets; equality from a common
/// factor that has both top roots as roots.
inline CertifiedComparison compare_top_roots(const IntPoly& p1, double seed1, double bound1, const IntPoly& p2,
                                             double seed2, double bound2) {
  CertifiedComparison out;
  out.first = top_root_bracket(p1, seed1, 40, bound1);
  out.second = top_root_bracket(p2, seed2, 40, bound2);
  auto separated = [&out]() {
    const BigRational lo1 = out.first.lo(), hi1 = out.first.hi();
    const BigRational lo2 = out.second.lo(), hi2 = out.second.hi();
    if (hi1 <= lo2) {
      out.verdict = Ordering::less;
      return true;
    }
    if (hi2 <= lo1) {
      out.verdict = Ordering::greater;
      return true;
    }
    return false;
  };
  if (separated()) return out;

  const IntPoly h = poly_gcd(p1, p2);
  out.common_factor_degree = h.degree();
  if (h.degree() >= 1 && h.roots_above_dyadic(out.first.lo_num, out.first.k) >= 1 &&
      h.roots_above_dyadic(out.second.lo_num, out.second.k) >= 1) {
    out.verdict = Ordering::equal;
    return out;
  }
  for (unsigned target : {80U, 160U, 320U}) {
    refine_bracket(p1, out.first, target);
    refine_bracket(p2, out.second, target);
    if (separated()) return out;
  }
  out.verdict = Ordering::unresolved;
  return out;
}

inline CertifiedComparison compare_rho_certified(const Graph& g1, const Graph& g2) {
  if (!is_connected(g1) || !is_connected(g2)) throw InvalidInput("compare_rho_certified needs connected graphs");
  return compare_top_roots(char_poly(g1), perron_pair(g1).rho, 1.0 + g1.max_degree(), char_poly(g2),
                           perron_pair(g2).rho, 1.0 + g2.max_degree());
}

// Same roots as p, each with multiplicity one.
inline IntPoly squarefree_part(const IntPoly& p) {
  const IntPoly d = p.derivative();
  if (d.is_zero()) return p.primitive();
  return divide_exact(p.primitive(), poly_gcd(p, d));
}

/// Certified comparison of largest adjacency eigenvalues for arbitrary,
/// possibly disconnected, graphs, whose top root may be repeated.
inline CertifiedComparison compare_rho_any(const Graph& g1, const Graph& g2) {
  return compare_top_roots(squarefree_part(char_poly(g1)), spectral_radius_any(g1), 1.0 + g1.max_degree(),
                           squarefree_part(char_poly(g2)), spectral_radius_any(g2), 1.0 + g2.max_degree());
}

/// Cauchy interlacing between G and the subgraph induced by `subset`:
/// lambda_i(G) >= mu_i(H) >= lambda_{n-m+i}(G).
inline bool interlacing_holds(const Graph& g, std::span<const Vertex> subset, double tol = 1e-8) {
  if (subset.empty()) throw InvalidParameter("interlacing needs a nonempty subset");
  const auto lam = full_spectrum(g);
  const auto mu = full_spectrum(g.induced(subset));
  const int n = g.order(), m = static_cast<int>(mu.size());
  for (int i = 0; i < m; ++i)
    if (lam[i] < mu[i] - tol || mu[i] < lam[n - m + i] - tol) return false;
  return true;
}

}  // namespace spectra
