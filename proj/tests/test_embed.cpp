#include <chrono>
#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"
#include "vcgap/embed.hpp"
#include "vcgap/graph.hpp"

using namespace vcgap;

namespace {

// d <= certificate <= D d on every pair, exactly in rational mode.
void check_certificate(const FiniteMetric& m, const EmbeddingReport& r, double tol) {
  REQUIRE(r.certificate.has_value());
  REQUIRE(r.c1_exact.has_value());
  if (r.c1_exact_rational) {
    auto exact = r.certificate->exact_distances();
    for (int i = 0; i < m.size(); ++i)
      for (int j = i + 1; j < m.size(); ++j) {
        Rational d = exact_rational(m(i, j));
        CHECK(exact[i][j] >= d);
        CHECK(exact[i][j] <= *r.c1_exact_rational * d);
      }
    return;
  }
  auto l1 = r.certificate->metric();
  for (int i = 0; i < m.size(); ++i)
    for (int j = i + 1; j < m.size(); ++j) {
      CHECK(l1(i, j) >= m(i, j) * (1 - tol) - tol);
      CHECK(l1(i, j) <= *r.c1_exact * m(i, j) * (1 + tol) + tol);
    }
}

}  // namespace

TEST_CASE("three-point metrics embed isometrically") {
  testing::Gen gen(71);
  for (int trial = 0; trial < 60; ++trial) {
    auto m = gen.metric(3);
    for (LpMode mode : {LpMode::Float, LpMode::Rational}) {
      DistortionOptions opt;
      opt.mode = mode;
      auto r = min_distortion_l1(m, opt);
      REQUIRE(r.c1_exact.has_value());
      CHECK(std::abs(*r.c1_exact - 1) <= 1e-9);
      check_certificate(m, r, 1e-9);
    }
  }
}

TEST_CASE("cut measure metrics have distortion one") {
  testing::Gen gen(72);
  for (int trial = 0; trial < 40; ++trial) {
    auto cm = gen.cut_measure(gen.uniform(2, 8));
    auto m = cm.metric();
    auto r = min_distortion_l1(m);
    REQUIRE(r.c1_exact.has_value());
    CHECK(std::abs(*r.c1_exact - 1) <= 1e-9);
  }
}

TEST_CASE("K23 needs distortion 4/3") {
  auto m = graph_metric(Graph::complete_bipartite(2, 3));
  DistortionOptions fl, ex;
  ex.mode = LpMode::Rational;
  auto f = min_distortion_l1(m, fl);
  auto r = min_distortion_l1(m, ex);
  REQUIRE(f.c1_exact.has_value());
  REQUIRE(r.c1_exact_rational.has_value());
  CHECK(*r.c1_exact_rational == make_rational(4, 3));
  CHECK(*f.c1_exact >= 4.0 / 3.0 - 1e-6);
  CHECK(std::abs(*f.c1_exact - *r.c1_exact) <= 1e-7);
  CHECK(f.lower.value == doctest::Approx(4.0 / 3.0));
  CHECK(f.lower.source == "pentagonal");
  check_certificate(m, f, 1e-9);
  check_certificate(m, r, 0);
}

TEST_CASE("column generation matches the full cut LP") {
  testing::Gen gen(73);
  for (int trial = 0; trial < 25; ++trial) {
    auto m = gen.metric(gen.uniform(4, 7));
    DistortionOptions full;
    full.column_generation = false;
    full.mode = LpMode::Rational;
    DistortionOptions cg;
    cg.mode = LpMode::Rational;
    auto a = min_distortion_l1(m, full);
    auto b = min_distortion_l1(m, cg);
    auto c = serial::min_distortion_l1(m, cg);
    auto d = min_distortion_l1(m);
    CHECK(*a.c1_exact_rational == *b.c1_exact_rational);
    CHECK(*b.c1_exact_rational == *c.c1_exact_rational);
    CHECK(std::abs(*d.c1_exact - *a.c1_exact) <= 1e-7);
    CHECK(a.columns == (std::uint64_t{1} << (m.size() - 1)) - 1);
    CHECK(b.lower.value <= *b.c1_exact + 1e-9);
    check_certificate(m, b, 0);
  }
}

TEST_CASE("zero distances are kept unseparated") {
  FiniteMetric m(4);
  m.set(0, 2, 1);
  m.set(0, 3, 1);
  m.set(1, 2, 1);
  m.set(1, 3, 1);
  m.set(2, 3, 2);
  auto r = min_distortion_l1(m);
  CHECK(*r.c1_exact == doctest::Approx(1));
  check_certificate(m, r, 1e-9);
}

TEST_CASE("tensor metric n = 3 solves quickly") {
  auto start = std::chrono::steady_clock::now();
  auto tm = tensor_metric(3);
  DistortionOptions ex;
  ex.mode = LpMode::Rational;
  auto r = min_distortion_l1(tm.metric, ex);
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(seconds <= 10);
  REQUIRE(r.c1_exact_rational.has_value());
  CHECK(*r.c1_exact_rational == 1);
  auto r4 = min_distortion_l1(tensor_metric(4).metric);
  CHECK(*r4.c1_exact == doctest::Approx(1).epsilon(1e-9));
}

TEST_CASE("too many points are rejected") {
  CHECK_THROWS_AS((void)min_distortion_l1(FiniteMetric(18)), std::invalid_argument);
}

TEST_CASE("distortion bound from the Poincare inequality") {
  CHECK(std::abs(poincare_distortion_bound(10) - 1.0710) <= 1e-3);
  double prev = 0;
  for (int n = 2; n <= 4096; n *= 2) {
    double d = poincare_distortion_bound(n);
    CHECK(d > prev);
    CHECK(d < 8.0 / 7.0);
    prev = d;
  }
  CHECK(8.0 / 7.0 - poincare_distortion_bound(1 << 20) < 1e-5);
  auto rep = poincare_report(10);
  CHECK(rep.method == "poincare-bound");
  CHECK_FALSE(rep.c1_exact.has_value());
  CHECK(rep.c1_lower == doctest::Approx(poincare_distortion_bound(10)));
  CHECK(poincare_report(3).c1_lower == 1);
}

TEST_CASE("combinatorial lower bounds") {
  FiniteMetric bad(3);
  bad.set(0, 1, 1);
  bad.set(1, 2, 1);
  bad.set(0, 2, 4);
  auto t = triangle_ratio_bound(bad);
  CHECK(t.value == doctest::Approx(2));
  auto k23 = pentagonal_ratio_bound(graph_metric(Graph::complete_bipartite(2, 3)));
  CHECK(k23.value == doctest::Approx(4.0 / 3.0));
  REQUIRE(k23.witness.size() == 5);
}

TEST_CASE("cut rounding recovers a minimum cover on every small connected graph") {
  std::uint64_t graphs = 0;
  for (int n = 1; n <= 8; ++n)
    for (const auto& g : connected_graphs_up_to_iso(n)) {
      ++graphs;
      auto vc = min_vertex_cover(g);
      auto sol = VectorSolution::integral(g, vc.cover);
      auto cm = cut_measure_from_realization(sol);
      auto r = cut_rounding(g, sol, cm);
      CHECK(r.cover_size == testing::brute_force_vc(g));
      CHECK(is_vertex_cover(g, r.cover));
      CHECK(r.lambda_sum == doctest::Approx(2));
      CHECK(r.within_objective);
    }
  CHECK(graphs == 1 + 1 + 2 + 6 + 21 + 112 + 853 + 11117);
}

TEST_CASE("cut rounding on random graphs up to ten vertices") {
  testing::Gen gen(74);
  for (int trial = 0; trial < 200; ++trial) {
    auto g = gen.graph(gen.uniform(1, 10), gen.real(0.1, 0.8));
    auto vc = min_vertex_cover(g);
    auto sol = VectorSolution::integral(g, vc.cover);
    auto r = cut_rounding(g, sol, cut_measure_from_realization(sol));
    CHECK(r.cover_size == testing::brute_force_vc(g));
    CHECK(r.lambda_sum == doctest::Approx(2));
  }
}

TEST_CASE("cut rounding rejects a measure that does not match") {
  auto g = Graph::path(3);
  auto sol = VectorSolution::integral(g, 0b010);
  CutMeasure wrong;
  wrong.points = 4;
  wrong.cuts = {{0b0010, Rational(4)}};
  CHECK_THROWS_AS((void)cut_rounding(g, sol, wrong), std::invalid_argument);
  // A cut whose far side spans an edge.
  CutMeasure spans;
  spans.points = 4;
  spans.cuts = {{0b0110, Rational(4)}};
  auto bad = VectorSolution::integral(g, 0b001);
  CHECK_THROWS_AS((void)cut_rounding(g, bad, spans), std::invalid_argument);
}
