#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "spectra/canonical.hpp"
#include "spectra/enumerate.hpp"
#include "spectra/error.hpp"
#include "spectra/families.hpp"
#include "spectra/graph.hpp"
#include "spectra/independence.hpp"
#include "spectra/io.hpp"
#include "spectra/spectral.hpp"

namespace spectra {

// Candidates within this distance of the numeric minimum are compared exactly.
inline constexpr double kMinimizerBand = 1e-7;

struct MinimizerOptions {
  int workers = 1;
  bool extended = false;
  std::string checkpoint;
};

enum class SearchMode { full, bicyclic };

inline const char* search_mode_name(SearchMode m) { return m == SearchMode::full ? "full" : "bicyclic"; }

struct MinimizerResult {
  int n = 0;
  int alpha = -1;  // -1: no independence filter
  SearchMode mode = SearchMode::full;
  std::size_t class_size = 0;
  std::size_t sparse_members = 0;  // class members with at most n edges
  double min_rho = std::numeric_limits<double>::quiet_NaN();
  std::vector<Graph> argmin;  // canonical representatives
  std::vector<Graph> unresolved;
  std::size_t band_candidates = 0;
  std::string expected;
};

// Short name: K_n, C_n, a family name, or graph6.
inline std::string describe_graph(const Graph& g) {
  const int n = g.order();
  if (n >= 1 && g.edge_count() == n * (n - 1) / 2) return "K_" + std::to_string(n);
  if (n >= 3 && g.edge_count() == n && g.min_degree() == 2 && g.max_degree() == 2 && is_connected(g))
    return "C_" + std::to_string(n);
  if (const auto s = identify_family(g)) return s->name();
  return to_graph6(g);
}

struct ExpectedMinimizer {
  std::string name;
  Graph graph;
};

/// Minimizer predicted for independence number ceil(n/2) - 1: K_3, K_4, C_5
/// and B(3,1,3) for n <= 6, then C_n for odd n and a dumbbell for even n
/// chosen by n mod 6 with k = ceil(n/3).
inline ExpectedMinimizer expected_minimizer(int n) {
  if (n < 3) throw InvalidParameter("expected minimizer needs n >= 3");
  if (n == 3 || n == 4) return {"K_" + std::to_string(n), build_complete(n)};
  if (n % 2 == 1) return {"C_" + std::to_string(n), build_cycle(n)};
  if (n == 6) {
    const auto s = BicyclicSpec::dumbbell(3, 1, 3);
    return {s.name(), build_family(s)};
  }
  const int k = (n + 2) / 3;
  BicyclicSpec s;
  switch (n % 6) {
    case 0:
      s = BicyclicSpec::dumbbell(k + 1, k - 1, k + 1);
      break;
    case 2:
      s = BicyclicSpec::dumbbell(k, k, k);
      break;
    default:
      s = BicyclicSpec::dumbbell(k - 1, k + 1, k - 1);
      break;
  }
  return {s.name(), build_family(s)};
}

inline int minimizer_alpha(int n) { return (n + 1) / 2 - 1; }

namespace detail {

struct Candidate {
  double rho = 0.0;
  std::vector<std::uint64_t> rows;
};

struct MinimizerAcc {
  std::size_t class_size = 0;
  std::size_t sparse = 0;
  double best = std::numeric_limits<double>::infinity();
  std::vector<Candidate> cands;

  void offer(double rho, std::span<const std::uint64_t> rows) {
    if (rho > best + kMinimizerBand) return;
    cands.push_back({rho, std::vector<std::uint64_t>(rows.begin(), rows.end())});
    if (rho < best) {
      best = rho;
      std::erase_if(cands, [this](const Candidate& c) { return c.rho > best + kMinimizerBand; });
    }
  }

  void merge(const MinimizerAcc& o) {
    class_size += o.class_size;
    sparse += o.sparse;
    for (const auto& c : o.cands) offer(c.rho, c.rows);
  }

  std::string save() const {
    std::ostringstream os;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", best);
    os << class_size << ' ' << sparse << ' ' << buf << ' ' << cands.size() << '\n';
    for (const auto& c : cands) {
      std::snprintf(buf, sizeof buf, "%.17g", c.rho);
      os << buf << ' ' << rows_to_graph6(c.rows) << '\n';
    }
    return os.str();
  }

  void restore(const std::string& s) {
    std::istringstream is(s);
    std::string best_s;
    std::size_t count = 0;
    if (!(is >> class_size >> sparse >> best_s >> count)) throw InvalidInput("malformed minimizer checkpoint state");
    best = std::stod(best_s);
    cands.clear();
    for (std::size_t i = 0; i < count; ++i) {
      std::string rho_s, g6;
      if (!(is >> rho_s >> g6)) throw InvalidInput("malformed minimizer checkpoint state");
      cands.push_back({std::stod(rho_s), adjacency_rows(from_graph6(g6))});
    }
  }
};

inline MinimizerResult certify(MinimizerResult r, std::vector<Candidate> cands) {
  std::stable_sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) { return a.rho < b.rho; });
  r.band_candidates = cands.size();
  if (cands.empty()) return r;
  std::vector<Graph> gs;
  for (const auto& c : cands) gs.push_back(graph_from_rows(c.rows));
  std::size_t leader = 0;
  std::vector<Ordering> verdict(gs.size(), Ordering::equal);
  for (std::size_t round = 0; round <= gs.size(); ++round) {
    bool changed = false;
    for (std::size_t i = 0; i < gs.size() && !changed; ++i) {
      if (i == leader) {
        verdict[i] = Ordering::equal;
        continue;
      }
      verdict[i] = compare_rho_certified(gs[i], gs[leader]).verdict;
      if (verdict[i] == Ordering::less) {
        leader = i;
        changed = true;
      }
    }
    if (!changed) break;
  }
  r.min_rho = cands[leader].rho;
  for (std::size_t i = 0; i < gs.size(); ++i) {
    if (verdict[i] == Ordering::equal) r.argmin.push_back(canonical_graph(gs[i]));
    if (verdict[i] == Ordering::unresolved) r.unresolved.push_back(canonical_graph(gs[i]));
  }
  return r;
}

inline MinimizerResult run_minimizer(const EnumerationConfig& cfg, SearchMode mode, int alpha,
                                     const MinimizerOptions& opt) {
  const OrderlyGenerator gen(cfg);
  const int n = cfg.n;
  auto acc = run_partitioned<MinimizerAcc>(
      gen, RunOptions{opt.workers, opt.checkpoint}, [alpha, n](MinimizerAcc& a, std::span<const std::uint64_t> rows) {
        if (alpha >= 0 && !has_independent_set(rows, alpha)) return;
        ++a.class_size;
        int e = 0;
        for (auto r : rows) e += std::popcount(r);
        if (e / 2 <= n) ++a.sparse;
        const auto s = screened_spectral_radius(rows, a.best + kMinimizerBand);
        if (!s.exceeded) a.offer(s.rho, rows);
      });
  MinimizerResult r;
  r.n = n;
  r.alpha = alpha;
  r.mode = mode;
  r.class_size = acc.class_size;
  r.sparse_members = acc.sparse;
  if (alpha == minimizer_alpha(n) && n >= 3) r.expected = expected_minimizer(n).name;
  return certify(std::move(r), std::move(acc.cands));
}

}  // namespace detail

/// Certified argmin of the spectral radius over connected graphs on n
/// vertices with independence number alpha. Subtrees whose independence
/// number already exceeds alpha are skipped; this is exact because every
/// ancestor in the generation tree is an induced subgraph.
inline MinimizerResult minimizer(int n, int alpha, const MinimizerOptions& opt = {}) {
  if (alpha < 1 || alpha > n) throw InvalidParameter("minimizer: alpha must lie in [1, n]");
  const EnumerationConfig cfg{.n = n, .edges = -1, .max_alpha = alpha, .extended = opt.extended};
  return detail::run_minimizer(cfg, SearchMode::full, alpha, opt);
}

/// The same search restricted to connected graphs with n+1 edges; alpha = -1
/// drops the independence filter.
inline MinimizerResult minimizer_bicyclic(int n, int alpha = -1, const MinimizerOptions& opt = {}) {
  if (n < 4 || n > kSparseEnumerationCap) throw InvalidParameter("minimizer_bicyclic: n must lie in [4, 16]");
  if (alpha == 0 || alpha < -1 || alpha > n) throw InvalidParameter("minimizer_bicyclic: alpha must lie in [1, n]");
  const EnumerationConfig cfg{.n = n, .edges = n + 1, .max_alpha = alpha, .extended = opt.extended};
  return detail::run_minimizer(cfg, SearchMode::bicyclic, alpha, opt);
}

}  // namespace spectra
