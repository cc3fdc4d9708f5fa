#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "spectra/error.hpp"
#include "spectra/graph.hpp"
#include "spectra/io.hpp"

namespace spectra {

/// Canonical labeling of a graph on at most 64 vertices.
///
/// lab[i] is the original vertex placed at canonical position i and rows is
/// the adjacency of the relabeled graph. Two graphs are isomorphic iff their
/// rows are equal. generators generate the automorphism group.
struct CanonicalLabeling {
  std::vector<int> lab;
  std::vector<std::uint64_t> rows;
  std::vector<std::vector<int>> generators;

  bool nontrivial_automorphisms() const { return !generators.empty(); }

  // orbit[v] = smallest vertex in the automorphism orbit of v.
  std::vector<int> orbits() const {
    const int n = static_cast<int>(lab.size());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&parent](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& gamma : generators)
      for (int v = 0; v < n; ++v) {
        const int a = find(v), b = find(gamma[v]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    std::vector<int> orbit(n);
    for (int v = 0; v < n; ++v) orbit[v] = find(v);
    return orbit;
  }
};

/// Individualization-refinement search with automorphism pruning.
///
/// Cells of the ordered partition are contiguous ranges of `lab`; bit i of
/// `starts` is set when position i begins a cell. Refinement is to the
/// coarsest equitable partition, splitting by neighbor counts into the
/// lowest queued cell. The canonical leaf is the one with the
/// lexicographically greatest relabeled row sequence.
class Canonizer {
 public:
  using Mask = std::uint64_t;

  CanonicalLabeling run(std::span<const Mask> rows) {
    n_ = static_cast<int>(rows.size());
    if (n_ > 64) throw InvalidInput("canonical labeling needs order <= 64");
    std::copy(rows.begin(), rows.end(), rows_.begin());
    have_first_ = false;
    gens_.clear();
    CanonicalLabeling out;
    if (n_ == 0) return out;

    Level& root = levels_[0];
    for (int i = 0; i < n_; ++i) root.lab[i] = static_cast<std::uint8_t>(i);
    root.starts = 1;
    refine(root, 1);
    search(0);

    out.lab.assign(best_lab_.begin(), best_lab_.begin() + n_);
    out.rows.assign(best_cert_.begin(), best_cert_.begin() + n_);
    out.generators = gens_;
    return out;
  }

 private:
  struct Level {
    std::array<std::uint8_t, 64> lab;
    Mask starts;
  };

  int cell_end(Mask starts, int s) const {
    const Mask above = s + 1 >= 64 ? 0 : (starts >> (s + 1));
    return above ? s + 1 + std::countr_zero(above) : n_;
  }

  void refine(Level& lv, Mask queue) {
    const Mask all = n_ == 64 ? ~Mask{0} : ((Mask{1} << n_) - 1);
    std::array<std::uint8_t, 64> cnt{};
    while (queue && lv.starts != all) {
      const int s = std::countr_zero(queue);
      queue &= queue - 1;
      const int e = cell_end(lv.starts, s);
      Mask w = 0;
      for (int i = s; i < e; ++i) w |= Mask{1} << lv.lab[i];

      Mask cells = lv.starts;
      while (cells) {
        const int a = std::countr_zero(cells);
        cells &= cells - 1;
        const int b = cells ? std::countr_zero(cells) : n_;
        if (b - a < 2) continue;
        bool uniform = true;
        for (int i = a; i < b; ++i) {
          cnt[i] = static_cast<std::uint8_t>(std::popcount(rows_[lv.lab[i]] & w));
          if (cnt[i] != cnt[a]) uniform = false;
        }
        if (uniform) continue;
        // Stable insertion sort of the cell by count.
        for (int i = a + 1; i < b; ++i) {
          const std::uint8_t c = cnt[i], v = lv.lab[i];
          int j = i - 1;
          while (j >= a && cnt[j] > c) {
            cnt[j + 1] = cnt[j];
            lv.lab[j + 1] = lv.lab[j];
            --j;
          }
          cnt[j + 1] = c;
          lv.lab[j + 1] = v;
        }
        queue |= Mask{1} << a;
        for (int i = a + 1; i < b; ++i)
          if (cnt[i] != cnt[i - 1]) {
            lv.starts |= Mask{1} << i;
            queue |= Mask{1} << i;
          }
      }
    }
  }

  void certificate(const Level& lv, std::array<Mask, 64>& cert) const {
    std::array<std::uint8_t, 64> pos{};
    for (int i = 0; i < n_; ++i) pos[lv.lab[i]] = static_cast<std::uint8_t>(i);
    for (int i = 0; i < n_; ++i) {
      Mask r = rows_[lv.lab[i]], c = 0;
      while (r) {
        c |= Mask{1} << pos[std::countr_zero(r)];
        r &= r - 1;
      }
      cert[i] = c;
    }
  }

  int compare(const std::array<Mask, 64>& x, const std::array<Mask, 64>& y) const {
    for (int i = 0; i < n_; ++i)
      if (x[i] != y[i]) return x[i] < y[i] ? -1 : 1;
    return 0;
  }

  int common_prefix(const std::array<std::uint8_t, 64>& p, int plen, const std::array<std::uint8_t, 64>& q,
                    int qlen) const {
    int k = 0;
    while (k < plen && k < qlen && p[k] == q[k]) ++k;
    return k;
  }

  void record_automorphism(const std::array<std::uint8_t, 64>& from, const std::array<std::uint8_t, 64>& to) {
    std::vector<int> gamma(n_);
    for (int i = 0; i < n_; ++i) gamma[from[i]] = to[i];
    gens_.push_back(std::move(gamma));
  }

  // Returns the depth of the node at which the search resumes, or -1.
  int leaf(int depth) {
    const Level& lv = levels_[depth];
    certificate(lv, cert_);
    if (!have_first_) {
      have_first_ = true;
      first_cert_ = best_cert_ = cert_;
      first_lab_ = best_lab_ = lv.lab;
      first_path_ = best_path_ = path_;
      first_len_ = best_len_ = depth;
      return -1;
    }
    if (compare(cert_, first_cert_) == 0) {
      record_automorphism(first_lab_, lv.lab);
      return common_prefix(path_, depth, first_path_, first_len_);
    }
    const int c = compare(cert_, best_cert_);
    if (c == 0) {
      record_automorphism(best_lab_, lv.lab);
      return common_prefix(path_, depth, best_path_, best_len_);
    }
    if (c > 0) {
      best_cert_ = cert_;
      best_lab_ = lv.lab;
      best_path_ = path_;
      best_len_ = depth;
    }
    return -1;
  }

  int search(int depth) {
    const Level& lv = levels_[depth];
    const Mask all = n_ == 64 ? ~Mask{0} : ((Mask{1} << n_) - 1);
    if (lv.starts == all) return leaf(depth);

    int ta = -1, tb = -1;
    for (Mask cells = lv.starts; cells;) {
      const int a = std::countr_zero(cells);
      cells &= cells - 1;
      const int b = cells ? std::countr_zero(cells) : n_;
      if (b - a >= 2 && (ta < 0 || b - a < tb - ta)) {
        ta = a;
        tb = b;
        if (b - a == 2) break;
      }
    }
    std::array<std::uint8_t, 64> cell{};
    const int csize = tb - ta;
    for (int i = 0; i < csize; ++i) cell[i] = lv.lab[ta + i];

    std::array<int, 64> orbit{};
    std::size_t gens_seen = static_cast<std::size_t>(-1);
    std::array<int, 64> explored{};
    int nexplored = 0;

    for (int ci = 0; ci < csize; ++ci) {
      const int v = cell[ci];
      if (nexplored > 0) {
        if (gens_seen != gens_.size()) {
          stabilizer_orbits(depth, orbit);
          gens_seen = gens_.size();
        }
        bool skip = false;
        for (int k = 0; k < nexplored && !skip; ++k) skip = orbit[explored[k]] == orbit[v];
        if (skip) continue;
      }
      explored[nexplored++] = v;

      Level& child = levels_[depth + 1];
      child = levels_[depth];
      int at = ta;
      while (child.lab[at] != v) ++at;
      std::swap(child.lab[at], child.lab[ta]);
      child.starts |= Mask{1} << (ta + 1);
      path_[depth] = static_cast<std::uint8_t>(v);
      refine(child, Mask{1} << ta);
      const int r = search(depth + 1);
      if (r >= 0 && r < depth) return r;
    }
    return -1;
  }

  // Orbits of the group generated by the known automorphisms that fix path_[0..depth).
  void stabilizer_orbits(int depth, std::array<int, 64>& orbit) const {
    for (int v = 0; v < n_; ++v) orbit[v] = v;
    auto find = [&orbit](int x) {
      while (orbit[x] != x) x = orbit[x] = orbit[orbit[x]];
      return x;
    };
    for (const auto& gamma : gens_) {
      bool fixes = true;
      for (int k = 0; k < depth && fixes; ++k) fixes = gamma[path_[k]] == path_[k];
      if (!fixes) continue;
      for (int v = 0; v < n_; ++v) {
        const int a = find(v), b = find(gamma[v]);
        if (a != b) orbit[std::max(a, b)] = std::min(a, b);
      }
    }
    for (int v = 0; v < n_; ++v) orbit[v] = find(v);
  }

  int n_ = 0;
  std::array<Mask, 64> rows_{};
  std::array<Level, 65> levels_{};
  std::array<std::uint8_t, 64> path_{};

  bool have_first_ = false;
  std::array<Mask, 64> cert_{}, first_cert_{}, best_cert_{};
  std::array<std::uint8_t, 64> first_lab_{}, best_lab_{};
  std::array<std::uint8_t, 64> first_path_{}, best_path_{};
  int first_len_ = 0, best_len_ = 0;
  std::vector<std::vector<int>> gens_;
};

inline CanonicalLabeling canonical_labeling_rows(std::span<const std::uint64_t> rows) {
  thread_local Canonizer canon;
  return canon.run(rows);
}

inline CanonicalLabeling canonical_labeling(const Graph& g) {
  const auto rows = adjacency_rows(g);
  return canonical_labeling_rows(rows);
}

// graph6 string of the canonically relabeled graph; equal iff isomorphic.
inline std::string canonical_form(const Graph& g) { return rows_to_graph6(canonical_labeling(g).rows); }

inline bool isomorphic(const Graph& a, const Graph& b) {
  if (a.order() != b.order() || a.edge_count() != b.edge_count()) return false;
  if (a.degree_sequence() != b.degree_sequence()) return false;
  return canonical_labeling(a).rows == canonical_labeling(b).rows;
}

inline Graph canonical_graph(const Graph& g) { return graph_from_rows(canonical_labeling(g).rows); }

}  // namespace spectra
