#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "doctest.h"
#include "support.hpp"
#include "vcgap/graph.hpp"
#include "vcgap/relaxations.hpp"

using namespace vcgap;

namespace {

// Worst violation per family straight from the Gram matrix.
std::map<Family, double> oracle(const VectorSolution& s, const Graph& g, Tier tier) {
  const double none = -std::numeric_limits<double>::infinity();
  std::map<Family, double> w;
  auto G = [&](int i, int j) { return s.gram(i, j); };
  auto D = [&](int i, int j) { return s.sq_distance(i, j); };
  const int p = s.size();
  for (Family f : tier_families(tier)) w[f] = none;
  for (int i = 0; i < p; ++i) w[Family::UnitNorm] = std::max(w[Family::UnitNorm], std::abs(G(i, i) - 1));
  for (auto [a, b] : g.edges()) {
    int i = a + 1, j = b + 1;
    w[Family::Edge] = std::max(w[Family::Edge], std::abs(G(i, j) - G(0, i) - G(0, j) + G(0, 0)));
  }
  bool tri = w.count(Family::Triangle), sig = w.count(Family::SignedTriangle), pen = w.count(Family::Pentagonal);
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j)
      for (int k = 0; k < p; ++k) {
        if (k == i || k == j) continue;
        if (tri) w[Family::Triangle] = std::max(w[Family::Triangle], -(G(i, j) - G(i, k) - G(j, k) + G(k, k)));
        if (sig)
          for (auto [si, sj] : {std::pair{-1, -1}, {-1, 1}, {1, -1}})
            w[Family::SignedTriangle] =
                std::max(w[Family::SignedTriangle], -(si * sj * G(i, j) - si * G(i, k) - sj * G(j, k) + G(k, k)));
      }
  if (pen) {
    for (int a = 0; a < p; ++a)
      for (int b = 0; b < p; ++b) {
        if (a == b) continue;
        // S = {a, b}; T ranges over triples of the remaining points.
        for (int x = 0; x < p; ++x)
          for (int y = x + 1; y < p; ++y)
            for (int z = y + 1; z < p; ++z) {
              if (x == a || x == b || y == a || y == b || z == a || z == b) continue;
              double cross = 0;
              for (int s1 : {a, b})
                for (int t1 : {x, y, z}) cross += D(s1, t1);
              double slack = cross - D(a, b) - D(x, y) - D(x, z) - D(y, z);
              w[Family::Pentagonal] = std::max(w[Family::Pentagonal], -slack);
            }
      }
  }
  return w;
}

}  // namespace

TEST_CASE("constraint counts match direct enumeration") {
  testing::Gen gen(41);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = gen.graph(gen.uniform(0, 8), 0.5);
    for (Tier tier : {Tier::Standard, Tier::Triangle, Tier::Karakostas, Tier::Pentagonal}) {
      std::uint64_t visited = 0;
      std::map<Family, std::uint64_t> per;
      ConstraintKey prev;
      bool first = true;
      for_each_constraint(g, tier, [&](const Constraint& c) {
        ++visited;
        ++per[c.key.family];
        if (!first) CHECK(prev < c.key);
        prev = c.key;
        first = false;
      });
      CHECK(visited == constraint_count(g, tier));
      for (auto [f, n] : per) CHECK(n == family_count(g, f));
    }
  }
  // Five points carry 10 pentagonal splits: C(5,5) * 10.
  CHECK(family_count(Graph(4), Family::Pentagonal) == 10);
  CHECK(constraint_count(Graph(3), Tier::Standard) == 4);
}

TEST_CASE("integral covers are feasible at every tier") {
  testing::Gen gen(42);
  for (int trial = 0; trial < 40; ++trial) {
    auto g = gen.graph(gen.uniform(1, 9), 0.4);
    auto vc = min_vertex_cover(g);
    auto sol = VectorSolution::integral(g, vc.cover);
    for (Tier tier : {Tier::Standard, Tier::Triangle, Tier::Karakostas, Tier::Pentagonal}) {
      auto r = check_tier(sol, g, tier);
      CHECK(r.feasible);
      CHECK(r.psd_ok);
      CHECK(r.objective_vc == doctest::Approx(vc.size));
    }
  }
}

TEST_CASE("check_tier matches the Gram-matrix oracle family by family") {
  testing::Gen gen(43);
  for (int trial = 0; trial < 30; ++trial) {
    int order = gen.uniform(2, 7);
    auto g = gen.graph(order, 0.5);
    auto sol = gen.unit_solution(order + 1, gen.uniform(1, 4));
    for (Tier tier : {Tier::Standard, Tier::Triangle, Tier::Karakostas, Tier::Pentagonal}) {
      auto r = check_tier(sol, g, tier);
      auto s = serial::check_tier(sol, g, tier);
      auto o = oracle(sol, g, tier);
      CHECK(r.worst_violation == doctest::Approx(s.worst_violation).epsilon(1e-12));
      CHECK(r.witness == s.witness);
      CHECK(r.feasible == s.feasible);
      for (const auto& fam : r.families) {
        if (fam.checked == 0) continue;
        CHECK(fam.worst_violation == doctest::Approx(o[fam.family]).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("a perturbed Gram entry is caught with the right witness") {
  auto g = Graph::cycle(5);
  auto vc = min_vertex_cover(g);
  auto base = VectorSolution::integral(g, vc.cover);
  auto gram = base.gram_data();
  const int p = base.size();
  // Perturb the apex against vertex 0 (point 1), which sits on edge (0, 1).
  gram[0 * p + 1] += 0.1;
  gram[1 * p + 0] += 0.1;
  auto bad = VectorSolution::from_gram(p, gram);
  auto r = check_tier(bad, g, Tier::Standard);
  CHECK_FALSE(r.feasible);
  CHECK(r.worst_violation == doctest::Approx(0.1));
  CHECK(r.witness.family == Family::Edge);
  CHECK((r.witness.idx[0] == 1 || r.witness.idx[1] == 1));
}

TEST_CASE("a non-PSD matrix yields an infeasible report") {
  // Unit diagonal with all off-diagonal entries -1 on four points.
  std::vector<double> gram(16, -1.0);
  for (int i = 0; i < 4; ++i) gram[i * 4 + i] = 1;
  auto sol = VectorSolution::from_gram(4, gram);
  auto r = check_tier(sol, Graph(3), Tier::Standard);
  CHECK_FALSE(r.psd_ok);
  CHECK_FALSE(r.feasible);
  CHECK(r.witness.family == Family::Psd);
  CHECK(r.psd_min_eigenvalue == doctest::Approx(-2));
}

TEST_CASE("objective forms agree on unit vectors") {
  testing::Gen gen(44);
  for (int trial = 0; trial < 100; ++trial) {
    auto sol = gen.unit_solution(gen.uniform(2, 20), gen.uniform(1, 6));
    CHECK(std::abs(objective(sol) - objective_distance_form(sol)) <= 1e-12);
  }
}

TEST_CASE("size mismatch is rejected") {
  auto sol = VectorSolution::integral(Graph::cycle(4), 0b0101);
  CHECK_THROWS_AS((void)check_tier(sol, Graph::cycle(5), Tier::Standard), std::invalid_argument);
}

TEST_CASE("tier names") {
  CHECK(parse_tier("edge") == Tier::Standard);
  CHECK(parse_tier("karakostas") == Tier::Karakostas);
  CHECK(parse_tier_list("edge,pentagonal").size() == 2);
  CHECK_THROWS((void)parse_tier("hexagonal"));
}

TEST_CASE("a PSD failure alone is reported with a Psd witness") {
  // Unit diagonal, off-diagonal -0.6 on four points: rows of Standard hold on
  // the empty graph but the matrix has eigenvalue 1 - 3(0.6) < 0.
  std::vector<double> gram(16, -0.6);
  for (int i = 0; i < 4; ++i) gram[i * 4 + i] = 1;
  auto r = check_tier(VectorSolution::from_gram(4, gram), Graph(3), Tier::Standard);
  CHECK(r.worst_violation <= 1e-12);
  CHECK_FALSE(r.feasible);
  CHECK(r.witness.family == Family::Psd);
}
