#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "spectra/canonical.hpp"
#include "spectra/error.hpp"
#include "spectra/graph.hpp"
#include "spectra/independence.hpp"

namespace spectra {

inline constexpr int kFullEnumerationCap = 9;
inline constexpr int kExtendedEnumerationCap = 10;
inline constexpr int kSparseEnumerationCap = 16;

struct EnumerationConfig {
  int n = 1;
  int edges = -1;      // exact edge count, or -1 for any
  int max_alpha = -1;  // drop every graph (and subtree) with independence number above this
  bool extended = false;
};

namespace detail {

using Mask = std::uint64_t;

inline bool connected_without(std::span<const Mask> rows, int skip) {
  const int n = static_cast<int>(rows.size());
  const Mask all = ((n == 64) ? ~Mask{0} : ((Mask{1} << n) - 1)) & ~(Mask{1} << skip);
  if (!all) return true;
  Mask seen = all & (~all + 1), frontier = seen;
  while (frontier) {
    Mask next = 0;
    for (Mask f = frontier; f; f &= f - 1) next |= rows[std::countr_zero(f)];
    next &= all & ~seen;
    seen |= next;
    frontier = next;
  }
  return seen == all;
}

}  // namespace detail

/// Orderly generation of connected graphs by canonical augmentation.
///
/// A graph on k+1 vertices is accepted as a child of its parent on k vertices
/// iff the appended vertex lies in the automorphism orbit of the canonical
/// deletion vertex: among vertices whose removal keeps the graph connected,
/// those of least (degree, neighbor-degree sum), and of these the earliest in
/// canonical order. Children are tried in increasing neighbor-mask order.
class OrderlyGenerator {
 public:
  using Mask = std::uint64_t;

  explicit OrderlyGenerator(EnumerationConfig cfg) : cfg_(cfg) {
    const int n = cfg.n;
    if (n < 1) throw InvalidParameter("enumeration order must be >= 1");
    if (n > kSparseEnumerationCap) throw InvalidParameter("enumeration order above 16 is not supported");
    const bool sparse = cfg.edges >= 0 && cfg.edges <= n + 1;
    if (n > kExtendedEnumerationCap && !sparse)
      throw InvalidParameter("orders above 10 need an edge count of at most n+1");
    if (n > kFullEnumerationCap && !sparse && !cfg.extended)
      throw InvalidParameter("full enumeration at n = 10 needs the extended flag");
    feasible_ = cfg.edges < 0 || (cfg.edges >= n - 1 && cfg.edges <= n * (n - 1) / 2);
    split_ = std::max(1, std::min(n, n - 3));
  }

  const EnumerationConfig& config() const { return cfg_; }
  int split_level() const { return split_; }

  // Accepted nodes at the split level, in generation order.
  std::vector<std::vector<Mask>> branches() const {
    std::vector<std::vector<Mask>> out;
    if (!feasible_) return out;
    std::array<Mask, 64> root{};
    grow(root, 1, 0, split_, [&out](std::span<const Mask> rows) { out.emplace_back(rows.begin(), rows.end()); });
    return out;
  }

  // Visits every output graph below one branch, in generation order.
  template <class F>
  void expand(std::span<const Mask> branch, F&& visit) const {
    std::array<Mask, 64> rows{};
    std::copy(branch.begin(), branch.end(), rows.begin());
    int e = 0;
    for (Mask r : branch) e += std::popcount(r);
    grow(rows, static_cast<int>(branch.size()), e / 2, cfg_.n, visit);
  }

  template <class F>
  void for_each(F&& visit) const {
    for (const auto& b : branches()) expand(b, visit);
  }

 private:
  bool edges_admissible(int order, int e) const {
    if (cfg_.edges < 0) return true;
    const int rest = cfg_.n - order;
    if (e + rest > cfg_.edges) return false;
    // Vertices order..n-1 add at most order + ... + (n-1) edges.
    const int most = e + (cfg_.n * (cfg_.n - 1) - order * (order - 1)) / 2;
    return most >= cfg_.edges;
  }

  bool accepted(std::span<const Mask> rows, std::optional<CanonicalLabeling>& canon) const {
    const int n = static_cast<int>(rows.size());
    const int x = n - 1;
    std::array<int, 64> deg{}, nsum{};
    for (int v = 0; v < n; ++v) deg[v] = std::popcount(rows[v]);
    for (int v = 0; v < n; ++v) {
      int s = 0;
      for (Mask r = rows[v]; r; r &= r - 1) s += deg[std::countr_zero(r)];
      nsum[v] = s;
    }
    const auto key = [&](int v) { return std::pair(deg[v], nsum[v]); };
    const auto kx = key(x);
    Mask tied = Mask{1} << x;
    for (int v = 0; v < x; ++v) {
      const auto kv = key(v);
      if (kv > kx) continue;
      if (!detail::connected_without(rows, v)) continue;
      if (kv < kx) return false;
      tied |= Mask{1} << v;
    }
    if (std::popcount(tied) == 1) return true;
    canon = canonical_labeling_rows(rows);
    int first = -1;
    for (int i = 0; i < n && first < 0; ++i)
      if (tied >> canon->lab[i] & 1) first = canon->lab[i];
    if (first == x) return true;
    const auto orbit = canon->orbits();
    return orbit[first] == orbit[x];
  }

  template <class F>
  void grow(std::array<Mask, 64>& rows, int k, int e, int stop, F&& at_stop) const {
    if (k == 1 && cfg_.max_alpha == 0) return;
    if (k == stop) {
      if (cfg_.edges < 0 || k < cfg_.n || e == cfg_.edges) at_stop(std::span<const Mask>(rows.data(), k));
      return;
    }
    const bool symmetric =
        k >= 2 && canonical_labeling_rows(std::span<const Mask>(rows.data(), k)).nontrivial_automorphisms();
    std::set<std::vector<Mask>> seen;
    std::array<Mask, 64> child{};
    const Mask top = Mask{1} << k;
    for (Mask s = 1; s < top; ++s) {
      const int c = std::popcount(s);
      if (!edges_admissible(k + 1, e + c)) continue;
      if (k + 1 == cfg_.n && cfg_.edges >= 0 && e + c != cfg_.edges) continue;
      for (int v = 0; v < k; ++v) child[v] = rows[v] | ((s >> v & 1) ? top : 0);
      child[k] = s;
      const std::span<const Mask> view(child.data(), k + 1);
      std::optional<CanonicalLabeling> canon;
      if (!accepted(view, canon)) continue;
      if (symmetric) {
        if (!canon) canon = canonical_labeling_rows(view);
        if (!seen.insert(canon->rows).second) continue;
      }
      if (cfg_.max_alpha >= 0 && has_independent_set(view, cfg_.max_alpha + 1)) continue;
      grow(child, k + 1, e + c, stop, at_stop);
    }
  }

  EnumerationConfig cfg_;
  bool feasible_ = true;
  int split_ = 1;
};

struct RunOptions {
  int workers = 1;
  std::string checkpoint;  // empty: no checkpointing
};

namespace detail {

inline std::optional<std::pair<long, std::string>> read_checkpoint(const std::string& path, std::size_t branches) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::string magic, word, state;
  std::size_t total = 0;
  long last = -1;
  if (!std::getline(in, magic) || magic != "spectra-checkpoint 1") throw InvalidInput("unrecognized checkpoint file " + path);
  if (!(in >> word >> total) || word != "branches" || total != branches)
    throw InvalidInput("checkpoint " + path + " was written for a different run");
  if (!(in >> word >> last) || word != "last_completed") throw InvalidInput("malformed checkpoint " + path);
  std::getline(in, word);
  std::ostringstream rest;
  rest << in.rdbuf();
  return std::pair(last, rest.str());
}

inline void write_checkpoint(const std::string& path, std::size_t branches, long last, const std::string& state) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw InvalidInput("cannot write checkpoint " + tmp);
    out << "spectra-checkpoint 1\nbranches " << branches << "\nlast_completed " << last << '\n' << state;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw InvalidInput("cannot replace checkpoint " + path);
}

}  // namespace detail

/// Runs `visit(acc, rows)` over every generated graph with one accumulator
/// per top-level branch, then merges accumulators in branch order, so the
/// result does not depend on the worker count. With a checkpoint path the
/// merged prefix is saved after each completed branch and a later run resumes
/// from it; that needs `std::string save() const` and `void restore(const
/// std::string&)` on Acc.
template <class Acc, class Visit>
Acc run_partitioned(const OrderlyGenerator& gen, const RunOptions& opt, Visit visit) {
  if (opt.workers < 1) throw InvalidParameter("worker count must be >= 1");
  const auto br = gen.branches();
  Acc merged{};
  std::size_t next = 0;
  constexpr bool can_save = requires(Acc a, const std::string& s) {
    { a.save() } -> std::convertible_to<std::string>;
    a.restore(s);
  };
  if constexpr (can_save) {
    if (!opt.checkpoint.empty())
      if (auto cp = detail::read_checkpoint(opt.checkpoint, br.size())) {
        merged.restore(cp->second);
        next = static_cast<std::size_t>(cp->first + 1);
      }
  } else {
    if (!opt.checkpoint.empty()) throw InvalidParameter("this run does not support checkpoints");
  }

  std::vector<std::optional<Acc>> done(br.size());
  std::atomic<std::size_t> cursor{next};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex mu;

  auto work = [&] {
    try {
      for (;;) {
        const std::size_t i = cursor.fetch_add(1);
        if (i >= br.size() || failed) return;
        Acc a{};
        gen.expand(br[i], [&](std::span<const std::uint64_t> rows) { visit(a, rows); });
        std::lock_guard lock(mu);
        done[i] = std::move(a);
        bool advanced = false;
        while (next < br.size() && done[next]) {
          merged.merge(*done[next]);
          done[next].reset();
          ++next;
          advanced = true;
        }
        if constexpr (can_save)
          if (advanced && !opt.checkpoint.empty())
            detail::write_checkpoint(opt.checkpoint, br.size(), static_cast<long>(next) - 1, merged.save());
      }
    } catch (...) {
      std::lock_guard lock(mu);
      if (!error) error = std::current_exception();
      failed = true;
    }
  };

  const int nthreads = std::max(1, std::min<int>(opt.workers, static_cast<int>(br.size())));
  if (nthreads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  return merged;
}

inline std::vector<Graph> enumerate(const EnumerationConfig& cfg) {
  std::vector<Graph> out;
  OrderlyGenerator(cfg).for_each([&out](std::span<const std::uint64_t> rows) { out.push_back(graph_from_rows(rows)); });
  return out;
}

// One representative per isomorphism class of connected graphs on n vertices.
inline std::vector<Graph> enumerate_connected(int n, bool extended = false) {
  return enumerate({.n = n, .edges = -1, .max_alpha = -1, .extended = extended});
}

inline std::vector<Graph> enumerate_with_edge_count(int n, int m_edges) {
  if (m_edges < 0) return {};
  return enumerate({.n = n, .edges = m_edges});
}

inline std::size_t count_graphs(const EnumerationConfig& cfg) {
  std::size_t count = 0;
  OrderlyGenerator(cfg).for_each([&count](std::span<const std::uint64_t>) { ++count; });
  return count;
}

}  // namespace spectra
