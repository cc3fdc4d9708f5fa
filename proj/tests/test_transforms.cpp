#include <gtest/gtest.h>

#include <random>

#include "spectra/spectra.hpp"

using namespace spectra;

namespace {

Graph random_connected_graph(std::mt19937_64& rng, int n, double p) {
  std::bernoulli_distribution coin(p);
  for (;;) {
    std::vector<Edge> es;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (coin(rng)) es.emplace_back(i, j);
    Graph g(n, es);
    if (is_connected(g)) return g;
  }
}

// B(3,3,3) with a pendant path of length two hung on u_1.
Graph dumbbell_with_tail() {
  const auto lg = build_bicyclic(BicyclicSpec::dumbbell(3, 3, 3));
  auto es = lg.graph.edges();
  const int n = lg.graph.order();
  es.emplace_back(lg.labels.u_at(1), n);
  es.emplace_back(n, n + 1);
  return Graph(n + 2, es);
}

}  // namespace

TEST(DeleteEdge, LowersRadius) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const Graph g = random_connected_graph(rng, 5 + trial % 8, 0.4);
    const double rho = spectral_radius(g);
    for (const Edge& e : g.edges()) EXPECT_LT(spectral_radius_any(delete_edge(g, e)), rho - 1e-12);
  }
  EXPECT_THROW(delete_edge(build_cycle(5), {0, 2}), InvalidParameter);
}

TEST(Subdivide, LowersRadiusOnInternalPaths) {
  const Graph g = build_family(BicyclicSpec::theta(3, 2, 4));
  const double rho = spectral_radius(g);
  for (const Edge& e : g.edges()) {
    const Graph h = subdivide_internal(g, e);
    EXPECT_EQ(h.order(), g.order() + 1);
    EXPECT_EQ(h.edge_count(), g.edge_count() + 1);
    EXPECT_LT(spectral_radius(h), rho);
  }
}

TEST(Subdivide, RejectsEdgesOffInternalPaths) {
  EXPECT_THROW(subdivide_internal(build_cycle(5), {0, 1}), InvalidParameter);
  EXPECT_THROW(subdivide_internal(dumbbell_with_tail(), {9, 10}), InvalidParameter);
}

TEST(Subdivide, DoubleForkIsTheEqualityCase) {
  for (int n = 6; n <= 12; ++n) {
    const Graph d = build_tilde_D(n);
    EXPECT_TRUE(is_tilde_D(d));
    const auto paths = internal_paths(d);
    ASSERT_EQ(paths.size(), 1U);
    EXPECT_THROW(subdivide_internal(d, {paths[0][0], paths[0][1]}), ExemptionError);
    EXPECT_NEAR(spectral_radius(d), 2.0, 1e-10);
  }
  EXPECT_FALSE(is_tilde_D(build_path(8)));
  EXPECT_FALSE(is_tilde_D(build_family(BicyclicSpec::theta(3, 3, 3))));
}

TEST(Relocate, MovesPendantIntoInternalPath) {
  const Graph g = dumbbell_with_tail();
  const auto w = build_bicyclic(BicyclicSpec::dumbbell(3, 3, 3)).labels;
  const Graph h = relocate_vertex(g, g.order() - 1, {w.w_at(1), w.w_at(2)});
  EXPECT_EQ(h.order(), g.order());
  EXPECT_EQ(h.edge_count(), g.edge_count());
  EXPECT_LT(spectral_radius(h), spectral_radius(g));
  EXPECT_THROW(relocate_vertex(g, g.order() - 1, {g.order() - 2, g.order() - 1}), InvalidParameter);
  EXPECT_THROW(relocate_vertex(g, w.u_at(0), {w.w_at(1), w.w_at(2)}), InvalidParameter);
}

TEST(Shift, NonnegativeMarginRaisesRadius) {
  std::mt19937_64 rng(47);
  int checked = 0;
  for (int trial = 0; trial < 300 && checked < 60; ++trial) {
    const Graph g = random_connected_graph(rng, 6 + trial % 6, 0.35);
    for (Vertex u = 0; u < g.order(); ++u)
      for (Vertex v = 0; v < g.order(); ++v) {
        if (u == v) continue;
        std::vector<Vertex> subset;
        for (Vertex s : g.neighbors(v))
          if (s != u && !g.adjacent(u, s)) subset.push_back(s);
        if (subset.empty() || shift_margin(g, u, v) < 1e-9) continue;
        const Graph h = shift_neighbors(g, u, v, subset);
        EXPECT_GT(spectral_radius_any(h), spectral_radius(g));
        ++checked;
      }
  }
  EXPECT_GE(checked, 60);
}

TEST(Shift, RejectsBadSubsets) {
  const Graph p = build_path(5);
  EXPECT_THROW(shift_neighbors(p, 0, 2, std::vector<Vertex>{}), InvalidParameter);
  EXPECT_THROW(shift_neighbors(p, 0, 2, std::vector<Vertex>{4}), InvalidParameter);
  EXPECT_THROW(shift_neighbors(p, 1, 2, std::vector<Vertex>{1}), InvalidParameter);
  EXPECT_EQ(shift_neighbors(p, 0, 2, std::vector<Vertex>{3}).edge_count(), 4);
}

TEST(Split, DumbbellMoveDoesNotRaiseRadius) {
  int applied = 0;
  for (int m = 3; m <= 6; ++m)
    for (int p = 2; p <= 6; ++p)
      for (int q = 3; q <= 6; ++q) {
        const BicyclicSpec s = BicyclicSpec::dumbbell(m, p, q);
        SplitCheck sc;
        Graph h;
        try {
          h = split_dumbbell(s, &sc);
        } catch (const InvalidParameter&) {
          // x_{w_{p-1}} is not minimal on N(v_0) for this shape
          EXPECT_LT(sc.min_margin, -kPreconditionMargin) << s.name();
          continue;
        }
        ++applied;
        const auto id = identify_family(h);
        ASSERT_TRUE(id.has_value());
        EXPECT_EQ(*id, normalized(BicyclicSpec::dumbbell(m, p - 1, q + 2)));
        EXPECT_GE(sc.min_margin, -kPreconditionMargin);
        EXPECT_LE(spectral_radius(h), spectral_radius(build_family(s)) + 1e-12);
      }
  EXPECT_GT(applied, 0);
  EXPECT_NEAR(spectral_radius(split_dumbbell(BicyclicSpec::dumbbell(3, 3, 3))), 2.302775637732, 1e-11);
}

TEST(Split, Preconditions) {
  const auto lg = build_bicyclic(BicyclicSpec::dumbbell(3, 3, 3));
  const Vertex v0 = lg.labels.v_at(0), w1 = lg.labels.w_at(2);
  const Vertex v1 = lg.labels.v_at(1), v2 = lg.labels.v_at(2);
  EXPECT_THROW(split_vertex(lg.graph, v1, v2, std::vector<Vertex>{v0}), InvalidParameter);
  EXPECT_THROW(split_vertex(lg.graph, v0, v1, std::vector<Vertex>{v2}), InvalidParameter);
  EXPECT_THROW(split_vertex(lg.graph, v0, w1, std::vector<Vertex>{v1, v2}), InvalidParameter);
  EXPECT_EQ(split_vertex(lg.graph, v0, w1, std::vector<Vertex>{v1}).order(), lg.graph.order() + 1);
}

TEST(Core, FamiliesAreTheirOwnCores) {
  for (const auto& s : {BicyclicSpec::dumbbell(3, 2, 5), BicyclicSpec::theta(4, 3, 2), BicyclicSpec::figure_eight(3, 6)}) {
    const auto core = find_bicyclic_core(build_family(s));
    EXPECT_EQ(normalized(core.spec()), normalized(s)) << s.name();
  }
  EXPECT_THROW(find_bicyclic_core(build_cycle(6)), InvalidInput);
}

TEST(Core, MeetingCyclesGiveThetaOrFigureEight) {
  const Graph bowtie_tail = build_family(BicyclicSpec::figure_eight(3, 3)).with_vertex(std::vector<Vertex>{1});
  EXPECT_EQ(find_bicyclic_core(bowtie_tail).family, Family::C);
  const Graph k4 = build_complete(4);
  EXPECT_EQ(find_bicyclic_core(k4).family, Family::P);
}

TEST(Replay, PreconditionsAreEnforced) {
  EXPECT_THROW(proof_replay(build_tilde_D(8)), InvalidInput);
  EXPECT_THROW(proof_replay(build_cycle(8)), InvalidInput);
  EXPECT_THROW(proof_replay(Graph(8, {{0, 1}})), InvalidInput);
  EXPECT_THROW(proof_replay(build_family(BicyclicSpec::dumbbell(4, 1, 4))), InvalidInput);
}

TEST(Replay, FamilyMemberNeedsNoSteps) {
  const auto r = proof_replay(build_family(BicyclicSpec::dumbbell(5, 3, 5)));
  EXPECT_TRUE(r.steps.empty());
  EXPECT_EQ(r.final_family, normalized(BicyclicSpec::dumbbell(5, 3, 5)));
}

TEST(Replay, TracesAreMonotoneOnAllSmallInputs) {
  for (int n : {7, 8})
    for (int e = n + 1; e <= n + 5; ++e) {
      const EnumerationConfig cfg{.n = n, .edges = e, .max_alpha = (n + 1) / 2 - 1};
      std::size_t runs = 0;
      OrderlyGenerator(cfg).for_each([&](std::span<const std::uint64_t> rows) {
        const Graph g = graph_from_rows(rows);
        if (independence_number(g) != (n + 1) / 2 - 1) return;
        const auto r = proof_replay(g);
        ++runs;
        double rho = spectral_radius(g);
        Graph cur = g;
        for (const auto& st : r.steps) {
          EXPECT_EQ(st.before.edges(), cur.edges());
          EXPECT_LE(st.rho_after, st.rho_before + 1e-12) << to_graph6(g) << ' ' << st.to_line();
          EXPECT_NEAR(st.rho_before, rho, 1e-12);
          rho = st.rho_after;
          cur = st.after;
        }
        EXPECT_EQ(r.final_graph.order(), n);
        const auto id = identify_family(r.final_graph);
        ASSERT_TRUE(id.has_value()) << to_graph6(g);
        EXPECT_EQ(*id, normalized(r.final_family));
        EXPECT_LE(spectral_radius(r.final_graph), spectral_radius(g) + 1e-12);
      });
      EXPECT_GT(runs, 0U) << n << ' ' << e;
    }
}
