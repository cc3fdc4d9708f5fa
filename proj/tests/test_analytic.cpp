#include <gtest/gtest.h>

#include <cmath>

#include "spectra/spectra.hpp"

using namespace spectra;

TEST(AnalyticF, ReferenceValue) {
  EXPECT_NEAR(f(1, std::log(2.0), 2, 1.0, 1.0), 0.8, 1e-15);
  EXPECT_DOUBLE_EQ(f(0, 0.7, 5, 2.0, 3.0), 2.0);
  EXPECT_DOUBLE_EQ(f(5, 0.7, 5, 2.0, 3.0), 3.0);
  EXPECT_THROW(f(1, 0.0, 2, 1.0, 1.0), InvalidParameter);
  EXPECT_THROW(f(3, 0.5, 2, 1.0, 1.0), InvalidParameter);
}

TEST(AnalyticF, SatisfiesPathRecurrence) {
  for (double t : {0.05, 0.3, 1.0, 2.5})
    for (int k = 2; k <= 12; ++k) {
      const double rho = rho_of_t(t), a = 1.3, b = 0.4;
      for (int i = 0; i + 2 <= k; ++i)
        EXPECT_NEAR(rho * f(i + 1, t, k, a, b), f(i, t, k, a, b) + f(i + 2, t, k, a, b), 1e-12) << t << ' ' << k;
    }
}

TEST(AnalyticF, LinearLimitAtZero) {
  for (int k = 1; k <= 8; ++k)
    for (int i = 0; i <= k; ++i) EXPECT_NEAR(f(i, 1e-7, k, 2.0, 5.0), f_limit(i, k, 2.0, 5.0), 1e-9);
}

TEST(AnalyticF, LargeArgumentsStayFinite) {
  const double v = f(200, 3.0, 400, 1.0, 1.0);
  EXPECT_TRUE(std::isfinite(v));
  EXPECT_GT(v, 0.0);
}

TEST(AnalyticT, InverseMaps) {
  for (double rho : {2.0, 2.1, 2.5, 3.7}) EXPECT_NEAR(rho_of_t(t_of_rho(rho)), rho, 1e-14);
  EXPECT_THROW(t_of_rho(1.9), InvalidParameter);
}

TEST(RhoAnalytic, AgreesWithDenseEigensolver) {
  for (int m = 3; m <= 8; ++m)
    for (int p = 1; p <= 8; ++p)
      for (int q = 3; q <= 8; ++q) {
        const auto sol = rho_analytic(m, p, q);
        const Graph g = build_family(BicyclicSpec::dumbbell(m, p, q));
        EXPECT_NEAR(sol.rho(), perron_pair_dense(g).rho, 1e-9) << m << ',' << p << ',' << q;
        EXPECT_GT(sol.a, 0.0);
        EXPECT_GT(sol.b, 0.0);
        EXPECT_LE(std::abs(sol.residual_u0), 1e-9);
        EXPECT_LE(std::abs(sol.residual_v0), 1e-9);
        const auto r = vertex_equation_residuals(m, p, q, sol.t, sol.a, sol.b);
        EXPECT_LE(std::abs(r[0]) + std::abs(r[1]), 1e-9);
        const auto e = rearranged_boundary_residuals(m, p, q, sol.t, sol.a, sol.b);
        EXPECT_LE(std::abs(e[0]) + std::abs(e[1]), 1e-9);
      }
}

TEST(RhoAnalytic, BoundaryMatrixIsSingularAtRoot) {
  for (auto [m, p, q] : {std::tuple{3, 1, 3}, {3, 5, 7}, {9, 2, 4}}) {
    const auto sol = rho_analytic(m, p, q);
    EXPECT_NEAR(det2(boundary_matrix(m, p, q, sol.rho())), 0.0, 1e-9);
    EXPECT_GT(std::abs(det2(boundary_matrix(m, p, q, sol.rho() + 0.05))), 1e-6);
  }
}

TEST(RhoAnalytic, SymmetricDumbbellHasEqualBoundaryEntries) {
  for (int k = 3; k <= 9; ++k) {
    const auto sol = rho_analytic(k, 4, k);
    EXPECT_NEAR(sol.a, sol.b, 1e-9 * sol.a);
  }
}

TEST(RhoAnalytic, RejectsInvalidParameters) {
  EXPECT_THROW(rho_analytic(2, 1, 3), InvalidParameter);
  EXPECT_THROW(rho_analytic(3, 0, 3), InvalidParameter);
}

TEST(PerronClosedForm, IsAnEigenvectorParallelToPowerIteration) {
  for (auto [m, p, q] : {std::tuple{3, 1, 3}, {3, 3, 5}, {4, 2, 7}, {6, 6, 3}}) {
    const auto sol = rho_analytic(m, p, q);
    const auto x = perron_closed_form(sol);
    const Graph g = build_family(BicyclicSpec::dumbbell(m, p, q));
    const auto pr = perron_pair(g);
    const double scale = pr.perron[0] / x[0];
    for (Vertex v = 0; v < g.order(); ++v) {
      double s = 0.0;
      for (Vertex u : g.neighbors(v)) s += x[u];
      EXPECT_NEAR(s, sol.rho() * x[v], 1e-8);
      EXPECT_NEAR(x[v] * scale, pr.perron[v], 1e-8);
    }
  }
}

TEST(Quotient, SymmetricDumbbellAndThetaShareRadius) {
  for (int m = 3; m <= 9; ++m)
    for (int p = 1; p <= 9; ++p) {
      const auto qm = quotient_matrix_symmetric(m, p);
      const double top = qm.top_eigenvalue();
      EXPECT_NEAR(top, spectral_radius(build_family(BicyclicSpec::dumbbell(m, p, m))), 1e-9) << m << ',' << p;
      EXPECT_NEAR(top, spectral_radius(build_family(BicyclicSpec::theta(m, p, m))), 1e-9) << m << ',' << p;
    }
}

TEST(Quotient, RejectsNonEquitablePartition) {
  const Graph path = build_path(4);
  EXPECT_THROW(quotient_matrix(path, {{0, 1}, {2, 3}}), InvalidParameter);
  EXPECT_THROW(quotient_matrix(path, {{0, 3}}), InvalidParameter);
  const auto qm = quotient_matrix(path, {{0, 3}, {1, 2}});
  EXPECT_NEAR(qm.top_eigenvalue(), spectral_radius(path), 1e-12);
}

TEST(LemmaGap, PositiveAndMatchesDirectEvaluation) {
  for (int m = 3; m <= 9; ++m)
    for (int p = 3; p <= 9; ++p) {
      if (m == p) continue;
      const double gap = lemma_bmpm_gap(m, p);
      EXPECT_GT(gap, 0.0);
      EXPECT_NEAR(gap, lemma_bmpm_direct(m, p), 1e-10);
      EXPECT_LT(spectral_radius(build_family(BicyclicSpec::dumbbell(m, p, m))),
                spectral_radius(build_family(BicyclicSpec::dumbbell(m, m, p))));
    }
  EXPECT_THROW(lemma_bmpm_gap(4, 4), InvalidParameter);
}
