#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <set>

#include "spectra/spectra.hpp"

using namespace spectra;

namespace {

Graph random_graph(std::mt19937_64& rng, int n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> es;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) es.emplace_back(i, j);
  return Graph(n, es);
}

Graph random_relabel(std::mt19937_64& rng, const Graph& g) {
  std::vector<Vertex> perm(g.order());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return g.relabeled(perm);
}

int brute_force_alpha(const Graph& g) {
  const int n = g.order();
  int best = 0;
  for (unsigned s = 0; s < (1U << n); ++s) {
    bool ok = true;
    for (const Edge& e : g.edges())
      if (((s >> e.u) & 1U) && ((s >> e.v) & 1U)) {
        ok = false;
        break;
      }
    if (ok) best = std::max(best, std::popcount(s));
  }
  return best;
}

bool isomorphic_by_permutation(const Graph& a, const Graph& b) {
  if (a.order() != b.order() || a.edge_count() != b.edge_count()) return false;
  std::vector<Vertex> perm(a.order());
  std::iota(perm.begin(), perm.end(), 0);
  const auto eb = b.edges();
  const std::set<Edge> target(eb.begin(), eb.end());
  do {
    bool ok = true;
    for (const Edge& e : a.edges())
      if (!target.count(Edge(perm[e.u], perm[e.v]))) {
        ok = false;
        break;
      }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// True when two distinct simple cycles share a vertex, found by DFS over
// paths with the start as smallest vertex.
bool two_cycles_meet(const Graph& g) {
  const int n = g.order();
  std::vector<int> first_cycle(n, -1);
  std::set<std::set<Edge>> seen;
  std::vector<Vertex> path;
  std::vector<char> on(n, 0);
  bool meet = false;
  auto dfs = [&](auto&& self, Vertex s, Vertex x) -> void {
    if (meet) return;
    for (Vertex y : g.neighbors(x)) {
      if (meet || y < s) continue;
      if (y == s && path.size() >= 3) {
        std::set<Edge> cyc;
        for (std::size_t i = 0; i + 1 < path.size(); ++i) cyc.emplace(path[i], path[i + 1]);
        cyc.emplace(path.back(), s);
        if (!seen.insert(cyc).second) continue;
        const int id = static_cast<int>(seen.size());
        for (Vertex v : path) {
          if (first_cycle[v] >= 0 && first_cycle[v] != id) meet = true;
          first_cycle[v] = id;
        }
        continue;
      }
      if (y == s || on[y]) continue;
      on[y] = 1;
      path.push_back(y);
      self(self, s, y);
      path.pop_back();
      on[y] = 0;
    }
  };
  for (Vertex s = 0; s < n && !meet; ++s) {
    path.assign(1, s);
    on[s] = 1;
    dfs(dfs, s, s);
    on[s] = 0;
  }
  return meet;
}

}  // namespace

TEST(Graph, RejectsLoopsAndMultiEdges) {
  EXPECT_THROW(Graph(3, {{0, 0}}), InvalidParameter);
  EXPECT_THROW(Graph(3, {{0, 1}, {1, 0}}), InvalidParameter);
  EXPECT_THROW(Graph(3, {{0, 3}}), InvalidParameter);
}

TEST(Graph, BasicQueries) {
  const Graph g(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}});
  EXPECT_EQ(g.order(), 4);
  EXPECT_EQ(g.edge_count(), 5);
  EXPECT_EQ(g.degree(0), 3);
  EXPECT_TRUE(g.adjacent(2, 0));
  EXPECT_FALSE(g.adjacent(1, 3));
  EXPECT_EQ(g.degree_sequence(), (std::vector<int>{3, 3, 2, 2}));
  EXPECT_EQ(g.without_vertex(0).edge_count(), 2);
  EXPECT_EQ(g.with_edge({1, 3}).edge_count(), 6);
  EXPECT_THROW(g.with_edge({0, 1}), InvalidParameter);
}

TEST(Graph6, KnownVectors) {
  EXPECT_EQ(to_graph6(build_complete(4)), "C~");
  EXPECT_EQ(to_graph6(build_path(4)), "Ch");
  EXPECT_EQ(to_graph6(build_cycle(5)), "Dhc");
  EXPECT_EQ(to_graph6(Graph(1)), "@");
  EXPECT_EQ(to_graph6(Graph(0)), "?");
  EXPECT_TRUE(isomorphic(from_graph6("Dhc"), build_cycle(5)));
}

TEST(Graph6, RoundTripRandomAndLarge) {
  std::mt19937_64 rng(7);
  for (int n : {2, 5, 17, 62, 63, 100}) {
    const Graph g = random_graph(rng, n, 0.3);
    const Graph h = from_graph6(to_graph6(g));
    EXPECT_EQ(h.edges(), g.edges()) << n;
  }
}

TEST(Graph6, RejectsMalformed) {
  EXPECT_THROW(from_graph6(""), InvalidInput);
  EXPECT_THROW(from_graph6("C"), InvalidInput);
  EXPECT_THROW(from_graph6("C~~"), InvalidInput);
  EXPECT_THROW(from_graph6("C\x01"), InvalidInput);
}

TEST(EdgeList, RoundTrip) {
  const Graph g = build_family(BicyclicSpec::dumbbell(3, 2, 4));
  const Graph h = parse_edge_list(to_edge_list(g));
  EXPECT_EQ(h.edges(), g.edges());
  EXPECT_THROW(parse_edge_list("3 1\n0 5\n"), InvalidInput);
  EXPECT_THROW(parse_edge_list("3 2\n0 1\n"), InvalidInput);
}

TEST(Structure, ComponentsAndBridges) {
  const Graph g(7, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {4, 5}});
  EXPECT_EQ(connected_components(g).size(), 3U);
  EXPECT_FALSE(is_connected(g));
  EXPECT_THROW(cut_edges(g), InvalidInput);
  const auto bd = block_decomposition(g);
  EXPECT_EQ(bd.bridges, (std::vector<Edge>{{2, 3}, {4, 5}}));
  EXPECT_EQ(bd.blocks.size(), 3U);
  EXPECT_EQ(bd.articulation_points, (std::vector<Vertex>{2}));
}

TEST(Structure, BridgesMatchDeletionOracle) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = random_graph(rng, 9, 0.25);
    if (!is_connected(g)) continue;
    const auto comps = connected_components(g).size();
    std::vector<Edge> expect;
    for (const Edge& e : g.edges())
      if (connected_components(g.without_edge(e)).size() > comps) expect.push_back(e);
    EXPECT_EQ(cut_edges(g), expect);
  }
}

TEST(Structure, CyclesDisjointMatchesBruteForceOnAllGraphsUpTo8) {
  for (int n = 3; n <= 8; ++n) {
    std::size_t mismatches = 0;
    OrderlyGenerator({.n = n}).for_each([&](std::span<const std::uint64_t> rows) {
      const Graph g = graph_from_rows(rows);
      if (cycles_mutually_disjoint(g) == two_cycles_meet(g)) {
        ++mismatches;
        ADD_FAILURE() << to_graph6(g) << " disjoint=" << cycles_mutually_disjoint(g);
      }
    });
    EXPECT_EQ(mismatches, 0U) << "n=" << n;
  }
}

TEST(Structure, InternalPathsOfFamilies) {
  auto lengths = [](const Graph& g) {
    std::vector<int> out;
    for (const auto& p : internal_paths(g)) out.push_back(static_cast<int>(p.size()) - 1);
    std::sort(out.begin(), out.end());
    return out;
  };
  EXPECT_EQ(lengths(build_family(BicyclicSpec::theta(4, 1, 3))), (std::vector<int>{1, 3, 4}));
  EXPECT_EQ(lengths(build_family(BicyclicSpec::dumbbell(3, 2, 5))), (std::vector<int>{2, 3, 5}));
  EXPECT_EQ(lengths(build_family(BicyclicSpec::figure_eight(3, 4))), (std::vector<int>{3, 4}));
  EXPECT_EQ(lengths(build_tilde_D(8)), (std::vector<int>{3}));
  EXPECT_TRUE(internal_paths(build_cycle(6)).empty());
}

TEST(Structure, FigureEightCyclesAreNotDisjoint) {
  EXPECT_FALSE(cycles_mutually_disjoint(build_family(BicyclicSpec::figure_eight(3, 3))));
  EXPECT_FALSE(cycles_mutually_disjoint(build_family(BicyclicSpec::theta(2, 2, 3))));
  EXPECT_TRUE(cycles_mutually_disjoint(build_family(BicyclicSpec::dumbbell(3, 1, 3))));
  EXPECT_TRUE(cycles_mutually_disjoint(build_tilde_D(9)));
}

TEST(Structure, SimpleCyclesCounts) {
  EXPECT_EQ(simple_cycles(build_complete(4)).size(), 7U);
  EXPECT_EQ(simple_cycles(build_complete(5)).size(), 37U);
  EXPECT_EQ(simple_cycles(build_family(BicyclicSpec::theta(3, 2, 4))).size(), 3U);
  EXPECT_THROW(simple_cycles(build_complete(9), 100), InvalidInput);
}

TEST(Independence, MatchesBruteForce) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 1 + trial % 16;
    const Graph g = random_graph(rng, n, 0.1 + 0.8 * (trial % 7) / 7.0);
    EXPECT_EQ(independence_number(g), brute_force_alpha(g)) << to_graph6(g);
  }
}

TEST(Independence, KnownValues) {
  EXPECT_EQ(independence_number(build_complete(7)), 1);
  EXPECT_EQ(independence_number(build_cycle(9)), 4);
  EXPECT_EQ(independence_number(build_star(6)), 6);
  EXPECT_EQ(independence_number(build_join_extremal(8, 3)), 3);
  EXPECT_EQ(independence_number(Graph(5)), 5);
}

TEST(Families, OrdersAndValidation) {
  EXPECT_EQ(BicyclicSpec::theta(3, 2, 4).order(), 8);
  EXPECT_EQ(BicyclicSpec::dumbbell(3, 1, 3).order(), 6);
  EXPECT_EQ(BicyclicSpec::figure_eight(3, 5).order(), 7);
  EXPECT_THROW(build_family(BicyclicSpec::dumbbell(2, 1, 3)), InvalidParameter);
  EXPECT_THROW(build_family(BicyclicSpec::dumbbell(3, 0, 3)), InvalidParameter);
  EXPECT_THROW(build_family(BicyclicSpec::theta(1, 1, 3)), InvalidParameter);
  EXPECT_THROW(build_cycle(2), InvalidParameter);
  EXPECT_THROW(build_join_extremal(5, 5), InvalidParameter);
}

TEST(Families, LabelingMatchesStructure) {
  const auto lg = build_bicyclic(BicyclicSpec::dumbbell(4, 3, 5));
  const auto& g = lg.graph;
  EXPECT_EQ(g.edge_count(), g.order() + 1);
  EXPECT_TRUE(g.adjacent(lg.labels.u_at(0), lg.labels.w_at(1)));
  EXPECT_TRUE(g.adjacent(lg.labels.w_at(2), lg.labels.v_at(0)));
  EXPECT_TRUE(g.adjacent(lg.labels.v_at(4), lg.labels.v_at(0)));
  EXPECT_EQ(g.degree(lg.labels.u_at(0)), 3);
  EXPECT_EQ(g.degree(lg.labels.v_at(0)), 3);
}

TEST(Families, IdentifyRoundTripsUnderRelabeling) {
  std::mt19937_64 rng(5);
  for (int m = 1; m <= 6; ++m)
    for (int p = 1; p <= 6; ++p)
      for (int q = 1; q <= 6; ++q) {
        std::vector<BicyclicSpec> specs;
        if (m >= 3 && q >= 3) specs.push_back(BicyclicSpec::dumbbell(m, p, q));
        if (std::min({m, p, q}) >= 1 && (m >= 2) + (p >= 2) + (q >= 2) >= 2) specs.push_back(BicyclicSpec::theta(m, p, q));
        if (p == 1 && m >= 3 && q >= 3) specs.push_back(BicyclicSpec::figure_eight(m, q));
        for (const auto& s : specs) {
          const auto id = identify_family(random_relabel(rng, build_family(s)));
          ASSERT_TRUE(id.has_value()) << s.name();
          EXPECT_EQ(*id, normalized(s)) << s.name();
          EXPECT_TRUE(isomorphic(build_family(*id), build_family(s))) << s.name();
        }
      }
  EXPECT_FALSE(identify_family(build_cycle(7)).has_value());
  EXPECT_FALSE(identify_family(build_complete(4).with_vertex(std::vector<Vertex>{0})).has_value());
}

TEST(Canonical, AgreesWithPermutationSearch) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 3 + trial % 5;
    const Graph a = random_graph(rng, n, 0.5);
    const Graph b = trial % 2 ? random_relabel(rng, a) : random_graph(rng, n, 0.5);
    EXPECT_EQ(isomorphic(a, b), isomorphic_by_permutation(a, b)) << to_graph6(a) << ' ' << to_graph6(b);
  }
}

TEST(Canonical, InvariantUnderRelabeling) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + trial % 10;
    const Graph g = random_graph(rng, n, 0.2 + 0.6 * (trial % 5) / 5.0);
    EXPECT_EQ(canonical_form(g), canonical_form(random_relabel(rng, g))) << to_graph6(g);
  }
}

TEST(Canonical, DistinguishesGraphsWithDifferentInvariants) {
  std::mt19937_64 rng(19);
  int compared = 0;
  while (compared < 1000) {
    const int n = 4 + compared % 7;
    const Graph a = random_graph(rng, n, 0.4), b = random_graph(rng, n, 0.4);
    if (a.degree_sequence() == b.degree_sequence()) continue;
    EXPECT_NE(canonical_form(a), canonical_form(b));
    ++compared;
  }
}

TEST(Canonical, RegularGraphsAndOrbits) {
  // The 3-prism and K_{3,3} are both 3-regular on six vertices.
  const Graph prism(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {0, 3}, {1, 4}, {2, 5}});
  const Graph k33(6, {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}});
  EXPECT_FALSE(isomorphic(prism, k33));
  const auto orb = canonical_labeling(build_cycle(8)).orbits();
  EXPECT_TRUE(std::all_of(orb.begin(), orb.end(), [](int o) { return o == 0; }));
  const auto star = canonical_labeling(build_star(4)).orbits();
  EXPECT_EQ(std::set<int>(star.begin(), star.end()).size(), 2U);
}

TEST(Input, FamilyGrammar) {
  EXPECT_EQ(parse_graph_input("C:7").graph.order(), 7);
  const auto b = parse_graph_input("B:3,2,4");
  ASSERT_TRUE(b.spec.has_value());
  EXPECT_EQ(b.spec->family, Family::B);
  EXPECT_EQ(b.graph.order(), 8);
  EXPECT_EQ(parse_graph_input("Cmq:3,4").graph.order(), 6);
  EXPECT_EQ(parse_graph_input("Dtilde:7").graph.edge_count(), 6);
  EXPECT_EQ(parse_graph_input("join:6,2").graph.edge_count(), 14);
  EXPECT_THROW(parse_graph_input("B:3,3"), InvalidInput);
  EXPECT_THROW(parse_graph_input("B:3,,3"), InvalidInput);
  EXPECT_THROW(parse_graph_input("Q:3"), InvalidInput);
  EXPECT_THROW(parse_graph_input("C:2"), InvalidInput);
}

TEST(Input, FilesAndLiterals) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto el = dir / "spectra_input_edges.txt";
  const auto g6 = dir / "spectra_input.g6";
  std::ofstream(el) << "4 3\n0 1\n1 2\n2 3\n";
  std::ofstream(g6) << "Dhc\n";
  EXPECT_EQ(parse_graph_input(el.string()).graph.edge_count(), 3);
  EXPECT_TRUE(isomorphic(parse_graph_input(g6.string()).graph, build_cycle(5)));
  EXPECT_TRUE(isomorphic(parse_graph_input("Dhc").graph, build_cycle(5)));
  std::filesystem::remove(el);
  std::filesystem::remove(g6);
}

TEST(Input, Ranges) {
  EXPECT_EQ(parse_range("3..9").lo, 3);
  EXPECT_EQ(parse_range("3..9").hi, 9);
  EXPECT_EQ(parse_range("5").hi, 5);
  EXPECT_THROW(parse_range("9..3"), InvalidInput);
  EXPECT_THROW(parse_range("a..b"), InvalidInput);
  EXPECT_EQ(parse_int_set("7,8,10..12"), (std::vector<int>{7, 8, 10, 11, 12}));
}
