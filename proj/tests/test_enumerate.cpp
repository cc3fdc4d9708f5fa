#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "spectra/spectra.hpp"

using namespace spectra;

namespace {

std::set<std::string> generated_forms(const EnumerationConfig& cfg) {
  std::set<std::string> out;
  std::size_t emitted = 0;
  OrderlyGenerator(cfg).for_each([&](std::span<const std::uint64_t> rows) {
    out.insert(canonical_form(graph_from_rows(rows)));
    ++emitted;
  });
  EXPECT_EQ(out.size(), emitted) << "duplicate isomorphism class emitted";
  return out;
}

// Every labeled connected graph on n vertices, reduced to canonical forms.
std::set<std::string> labeled_forms(int n) {
  std::vector<Edge> slots;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) slots.emplace_back(i, j);
  std::set<std::string> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
    std::vector<Edge> es;
    for (std::size_t b = 0; b < slots.size(); ++b)
      if ((mask >> b) & 1U) es.push_back(slots[b]);
    const Graph g(n, es);
    if (is_connected(g)) out.insert(canonical_form(g));
  }
  return out;
}

Graph prufer_tree(const std::vector<int>& code, int n) {
  std::vector<int> degree(n, 1);
  for (int x : code) ++degree[x];
  std::vector<Edge> es;
  for (int x : code)
    for (int leaf = 0; leaf < n; ++leaf)
      if (degree[leaf] == 1) {
        es.emplace_back(leaf, x);
        --degree[leaf];
        --degree[x];
        break;
      }
  int a = -1;
  for (int v = 0; v < n; ++v)
    if (degree[v] == 1) {
      if (a < 0) {
        a = v;
      } else {
        es.emplace_back(a, v);
        break;
      }
    }
  return Graph(n, es);
}

struct Collect {
  std::vector<std::string> g6;
  void merge(const Collect& o) { g6.insert(g6.end(), o.g6.begin(), o.g6.end()); }
};

struct Count {
  std::size_t n = 0;
  void merge(const Count& o) { n += o.n; }
  std::string save() const { return std::to_string(n); }
  void restore(const std::string& s) { n = std::stoul(s); }
};

RunOptions run_options(int workers, std::string checkpoint = {}) {
  RunOptions o;
  o.workers = workers;
  o.checkpoint = std::move(checkpoint);
  return o;
}

MinimizerOptions minimizer_options(int workers, std::string checkpoint = {}) {
  MinimizerOptions o;
  o.workers = workers;
  o.checkpoint = std::move(checkpoint);
  return o;
}

}  // namespace

TEST(Enumerate, ConnectedGraphCounts) {
  const std::size_t expect[] = {1, 1, 2, 6, 21, 112, 853, 11117, 261080};
  for (int n = 1; n <= 9; ++n) EXPECT_EQ(count_graphs({.n = n}), expect[n - 1]) << n;
}

TEST(Enumerate, SparseClassCounts) {
  const std::size_t trees[] = {1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551};
  for (int n = 1; n <= 12; ++n) EXPECT_EQ(count_graphs({.n = n, .edges = n - 1}), trees[n - 1]) << n;
  const std::size_t unicyclic[] = {1, 2, 5, 13, 33, 89, 240, 657, 1806, 5026};
  for (int n = 3; n <= 12; ++n) EXPECT_EQ(count_graphs({.n = n, .edges = n}), unicyclic[n - 3]) << n;
  const std::size_t bicyclic[] = {1, 5, 19, 67, 236, 797, 2678, 8833, 28908};
  for (int n = 4; n <= 12; ++n) EXPECT_EQ(count_graphs({.n = n, .edges = n + 1}), bicyclic[n - 4]) << n;
}

TEST(Enumerate, MatchesLabeledBruteForce) {
  for (int n = 1; n <= 7; ++n) EXPECT_EQ(generated_forms({.n = n}), labeled_forms(n)) << n;
}

TEST(Enumerate, TreesMatchPruferCodes) {
  for (int n = 3; n <= 8; ++n) {
    std::set<std::string> forms;
    std::vector<int> code(n - 2, 0);
    for (;;) {
      forms.insert(canonical_form(prufer_tree(code, n)));
      int i = 0;
      while (i < n - 2 && ++code[i] == n) code[i++] = 0;
      if (i == n - 2) break;
    }
    EXPECT_EQ(generated_forms({.n = n, .edges = n - 1}), forms) << n;
  }
}

TEST(Enumerate, EdgeCountsPartitionTheClass) {
  for (int n = 2; n <= 8; ++n) {
    std::size_t total = 0;
    for (int e = 0; e <= n * (n - 1) / 2; ++e) total += count_graphs({.n = n, .edges = e});
    EXPECT_EQ(total, count_graphs({.n = n})) << n;
  }
}

TEST(Enumerate, AlphaCapMatchesFilter) {
  for (int n = 3; n <= 8; ++n)
    for (int a = 1; a <= n - 1; ++a) {
      std::size_t filtered = 0;
      OrderlyGenerator({.n = n}).for_each([&](std::span<const std::uint64_t> rows) {
        if (independence_number_rows(rows) <= a) ++filtered;
      });
      EXPECT_EQ(count_graphs({.n = n, .max_alpha = a}), filtered) << n << ' ' << a;
    }
}

TEST(Enumerate, ConfigurationLimits) {
  EXPECT_THROW(OrderlyGenerator({.n = 0}), InvalidParameter);
  EXPECT_THROW(OrderlyGenerator({.n = 17, .edges = 18}), InvalidParameter);
  EXPECT_THROW(OrderlyGenerator({.n = 10}), InvalidParameter);
  EXPECT_THROW(OrderlyGenerator({.n = 11, .edges = 13}), InvalidParameter);
  EXPECT_NO_THROW(OrderlyGenerator({.n = 10, .extended = true}));
  EXPECT_NO_THROW(OrderlyGenerator({.n = 16, .edges = 17}));
  EXPECT_EQ(count_graphs({.n = 6, .edges = 4}), 0U);
  EXPECT_EQ(count_graphs({.n = 6, .edges = 16}), 0U);
}

TEST(Partitioned, WorkerCountDoesNotChangeOrder) {
  const OrderlyGenerator gen({.n = 8});
  auto visit = [](Collect& a, std::span<const std::uint64_t> rows) {
    a.g6.push_back(rows_to_graph6(std::vector<std::uint64_t>(rows.begin(), rows.end())));
  };
  const auto one = run_partitioned<Collect>(gen, run_options(1), visit);
  const auto three = run_partitioned<Collect>(gen, run_options(3), visit);
  EXPECT_EQ(one.g6.size(), 11117U);
  EXPECT_EQ(one.g6, three.g6);
  std::vector<std::string> serial;
  gen.for_each([&](std::span<const std::uint64_t> rows) {
    serial.push_back(rows_to_graph6(std::vector<std::uint64_t>(rows.begin(), rows.end())));
  });
  EXPECT_EQ(one.g6, serial);
}

TEST(Partitioned, CheckpointResumesAfterInterruption) {
  const auto path = (std::filesystem::temp_directory_path() / "spectra_test.ckpt").string();
  std::filesystem::remove(path);
  const OrderlyGenerator gen({.n = 8});
  std::size_t seen = 0;
  auto interrupted = [&seen](Count& a, std::span<const std::uint64_t>) {
    if (++seen > 5000) throw std::runtime_error("interrupted");
    ++a.n;
  };
  EXPECT_THROW(run_partitioned<Count>(gen, run_options(1, path), interrupted), std::runtime_error);
  ASSERT_TRUE(std::filesystem::exists(path));
  {
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "spectra-checkpoint 1");
  }
  std::size_t resumed = 0;
  const auto r = run_partitioned<Count>(gen, run_options(1, path), [&resumed](Count& a, std::span<const std::uint64_t>) {
    ++a.n;
    ++resumed;
  });
  EXPECT_EQ(r.n, 11117U);
  EXPECT_LT(resumed, 11117U);
  std::filesystem::remove(path);
}

TEST(Partitioned, CheckpointNeedsSerializableState) {
  const OrderlyGenerator gen({.n = 5});
  EXPECT_THROW(run_partitioned<Collect>(gen, run_options(1, "/tmp/x.ckpt"),
                                        [](Collect&, std::span<const std::uint64_t>) {}),
               InvalidParameter);
  EXPECT_THROW(run_partitioned<Count>(gen, run_options(0), [](Count&, std::span<const std::uint64_t>) {}),
               InvalidParameter);
}

TEST(Partitioned, RejectsCheckpointOfAnotherRun) {
  const auto path = (std::filesystem::temp_directory_path() / "spectra_other.ckpt").string();
  std::ofstream(path) << "spectra-checkpoint 1\nbranches 3\nlast_completed 0\n5\n";
  const OrderlyGenerator gen({.n = 8});
  EXPECT_THROW(run_partitioned<Count>(gen, run_options(1, path), [](Count&, std::span<const std::uint64_t>) {}),
               InvalidInput);
  std::filesystem::remove(path);
}

TEST(Minimizer, SmallOrders) {
  EXPECT_EQ(describe_graph(minimizer(5, 2).argmin.at(0)), "C_5");
  const auto r6 = minimizer(6, 2);
  ASSERT_EQ(r6.argmin.size(), 1U);
  EXPECT_EQ(describe_graph(r6.argmin[0]), "B(3,1,3)");
  EXPECT_NEAR(r6.min_rho, 1.0 + std::sqrt(2.0), 1e-12);
  EXPECT_EQ(describe_graph(minimizer(4, 1).argmin.at(0)), "K_4");
}

TEST(Minimizer, ExpectedTable) {
  EXPECT_EQ(expected_minimizer(3).name, "K_3");
  EXPECT_EQ(expected_minimizer(9).name, "C_9");
  EXPECT_EQ(expected_minimizer(6).name, "B(3,1,3)");
  EXPECT_EQ(expected_minimizer(8).name, "B(3,3,3)");
  EXPECT_EQ(expected_minimizer(10).name, "B(3,5,3)");
  EXPECT_EQ(expected_minimizer(12).name, "B(5,3,5)");
  EXPECT_EQ(expected_minimizer(14).name, "B(5,5,5)");
  EXPECT_EQ(expected_minimizer(16).name, "B(5,7,5)");
  EXPECT_EQ(expected_minimizer(18).name, "B(7,5,7)");
  EXPECT_EQ(minimizer_alpha(8), 3);
  EXPECT_EQ(minimizer_alpha(9), 4);
}

TEST(Minimizer, WorkersAndCheckpointGiveSameAnswer) {
  const auto path = (std::filesystem::temp_directory_path() / "spectra_min.ckpt").string();
  std::filesystem::remove(path);
  const auto a = minimizer(8, 3);
  const auto b = minimizer(8, 3, minimizer_options(3));
  const auto c = minimizer(8, 3, minimizer_options(1, path));
  const auto d = minimizer(8, 3, minimizer_options(1, path));
  for (const auto* r : {&b, &c, &d}) {
    EXPECT_EQ(r->class_size, a.class_size);
    ASSERT_EQ(r->argmin.size(), 1U);
    EXPECT_EQ(to_graph6(r->argmin[0]), to_graph6(a.argmin[0]));
  }
  EXPECT_EQ(describe_graph(a.argmin[0]), "B(3,3,3)");
  std::filesystem::remove(path);
}

TEST(Minimizer, BicyclicModeWithoutFilter) {
  const auto r = minimizer_bicyclic(9);
  ASSERT_EQ(r.argmin.size(), 2U);
  std::set<std::string> names;
  for (const auto& g : r.argmin) names.insert(describe_graph(g));
  EXPECT_EQ(names, (std::set<std::string>{"B(3,4,3)", "P(3,4,3)"}));
}
