#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "spectra/error.hpp"
#include "spectra/graph.hpp"

namespace spectra {

namespace detail {

using Mask = std::uint64_t;

inline int lowest(Mask m) { return std::countr_zero(m); }
inline Mask bit(int v) { return Mask{1} << v; }

// Greedy clique cover of `cand`; its size bounds the independence number of G[cand].
inline int clique_cover_bound(std::span<const Mask> rows, Mask cand) {
  int cliques = 0;
  while (cand) {
    const int v = lowest(cand);
    Mask clique = bit(v);
    Mask common = rows[v] & cand;
    while (common) {
      const int u = lowest(common);
      clique |= bit(u);
      common &= rows[u];
    }
    cand &= ~clique;
    ++cliques;
  }
  return cliques;
}

class MisSearch {
 public:
  MisSearch(std::span<const Mask> rows, int lower, int stop_at = 65)
      : rows_(rows), best_(lower), stop_at_(stop_at) {}

  int run(Mask cand) {
    grow(cand, 0);
    return best_;
  }

 private:
  void grow(Mask cand, int size) {
    if (best_ >= stop_at_) return;
    // Vertices of degree <= 1 in G[cand] belong to some maximum independent set.
    bool again = true;
    while (again && cand) {
      again = false;
      for (Mask c = cand; c; c &= c - 1) {
        const int v = lowest(c);
        if (!(cand & bit(v))) continue;
        const Mask nb = rows_[v] & cand;
        if (std::popcount(nb) <= 1) {
          cand &= ~(nb | bit(v));
          ++size;
          again = true;
        }
      }
    }
    if (!cand) {
      if (size > best_) best_ = size;
      return;
    }
    if (size + std::popcount(cand) <= best_) return;
    if (size + clique_cover_bound(rows_, cand) <= best_) return;

    int pick = -1;
    int pick_deg = -1;
    for (Mask c = cand; c; c &= c - 1) {
      const int v = lowest(c);
      const int d = std::popcount(rows_[v] & cand);
      if (d > pick_deg) {
        pick_deg = d;
        pick = v;
      }
    }
    grow(cand & ~(rows_[pick] | bit(pick)), size + 1);
    grow(cand & ~bit(pick), size);
  }

  std::span<const Mask> rows_;
  int best_;
  int stop_at_;
};

}  // namespace detail

// Exact independence number of a graph given as bit rows (order <= 64).
inline int independence_number_rows(std::span<const std::uint64_t> rows) {
  const int n = static_cast<int>(rows.size());
  if (n > 64) throw InvalidInput("independence number needs order <= 64");
  if (n == 0) return 0;
  const detail::Mask all = n == 64 ? ~detail::Mask{0} : (detail::bit(n) - 1);
  return detail::MisSearch(rows, 0).run(all);
}

inline int independence_number(const Graph& g) {
  const auto rows = adjacency_rows(g);
  return independence_number_rows(rows);
}

// True iff some independent set has at least k vertices; stops as soon as one is found.
inline bool has_independent_set(std::span<const std::uint64_t> rows, int k) {
  const int n = static_cast<int>(rows.size());
  if (k <= 0) return true;
  if (k > n) return false;
  const detail::Mask all = n == 64 ? ~detail::Mask{0} : (detail::bit(n) - 1);
  return detail::MisSearch(rows, k - 1, k).run(all) >= k;
}

}  // namespace spectra
