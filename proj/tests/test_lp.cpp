#include <cmath>

#include "doctest.h"
#include "support.hpp"
#include "vcgap/lp.hpp"

using namespace vcgap;

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

TEST_CASE("textbook program") {
  // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18: optimum 36 at (2, 6).
  LinearProgram lp;
  lp.sense = Sense::Maximize;
  lp.add_variable(3);
  lp.add_variable(5);
  lp.add_row({1, 0}, Relation::LessEqual, 4);
  lp.add_row({0, 2}, Relation::LessEqual, 12);
  lp.add_row({3, 2}, Relation::LessEqual, 18);
  for (LpMode mode : {LpMode::Float, LpMode::Rational}) {
    auto sol = solve(lp, mode);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.value == doctest::Approx(36));
    CHECK(sol.primal[0] == doctest::Approx(2));
    CHECK(sol.primal[1] == doctest::Approx(6));
    CHECK(dot(sol.duals, lp.rhs) == doctest::Approx(36));
  }
  auto exact = solve_exact(to_rational(lp));
  CHECK(exact.value == Rational(36));
}

TEST_CASE("infeasible and unbounded programs") {
  LinearProgram inf;
  inf.add_variable(1);
  inf.add_row({1}, Relation::GreaterEqual, 5);
  inf.add_row({1}, Relation::LessEqual, 3);
  CHECK(solve(inf).status == LpStatus::Infeasible);
  CHECK(solve(inf, LpMode::Rational).status == LpStatus::Infeasible);

  LinearProgram unb;
  unb.sense = Sense::Maximize;
  unb.add_variable(1);
  unb.add_variable(1);
  unb.add_row({1, -1}, Relation::LessEqual, 1);
  CHECK(solve(unb).status == LpStatus::Unbounded);
  CHECK(solve(unb, LpMode::Rational).status == LpStatus::Unbounded);
}

TEST_CASE("free variables and equalities") {
  // min x - y with x + y = 2, x free, y <= 5: x = -3, y = 5, value -8.
  LinearProgram lp;
  lp.add_variable(1, true);
  lp.add_variable(-1);
  lp.add_row({1, 1}, Relation::Equal, 2);
  lp.add_row({0, 1}, Relation::LessEqual, 5);
  auto sol = solve(lp, LpMode::Rational);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.value == doctest::Approx(-8));
  CHECK(sol.primal[0] == doctest::Approx(-3));
}

TEST_CASE("degenerate cycling example terminates under Bland") {
  // Beale's program, which cycles under the textbook largest-coefficient rule.
  LinearProgram lp;
  lp.sense = Sense::Minimize;
  for (double c : {-0.75, 150.0, -0.02, 6.0}) lp.add_variable(c);
  lp.add_row({0.25, -60, -0.04, 9}, Relation::LessEqual, 0);
  lp.add_row({0.5, -90, -0.02, 3}, Relation::LessEqual, 0);
  lp.add_row({0, 0, 1, 0}, Relation::LessEqual, 1);
  for (PivotRule rule : {PivotRule::Bland, PivotRule::Dantzig}) {
    SimplexOptions opt;
    opt.rule = rule;
    opt.pivot_guard = 1000;
    auto sol = solve(lp, LpMode::Rational, opt);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.value == doctest::Approx(-0.05));
  }
}

TEST_CASE("seeded random programs agree between float and rational modes") {
  testing::Gen gen(31);
  int optimal = 0;
  for (int trial = 0; trial < 100; ++trial) {
    auto lp = gen.lp();
    auto f = solve(lp, LpMode::Float);
    auto r = solve(lp, LpMode::Rational);
    REQUIRE(f.status == r.status);
    if (r.status != LpStatus::Optimal) continue;
    ++optimal;
    CHECK(std::abs(f.value - r.value) <= 1e-7 * std::max(1.0, std::abs(r.value)));
    CHECK(max_violation(lp, f.primal) <= 1e-7);
    REQUIRE(r.exact.has_value());
    CHECK(max_violation(to_rational(lp), r.exact->primal) == 0);
    // Strong duality in exact arithmetic.
    Rational by = 0;
    auto rl = to_rational(lp);
    for (int i = 0; i < rl.num_rows(); ++i) by += r.exact->duals[i] * rl.rhs[i];
    CHECK(by == r.exact->value);
  }
  CHECK(optimal > 30);
}

TEST_CASE("pivot rules and warm starts reach the same optimum") {
  testing::Gen gen(32);
  for (int trial = 0; trial < 60; ++trial) {
    auto lp = gen.lp();
    auto bland = simplex(lp);
    SimplexOptions dz;
    dz.rule = PivotRule::Dantzig;
    dz.refactor_interval = 5;
    auto dantzig = simplex(lp, dz);
    REQUIRE(bland.status == dantzig.status);
    if (bland.status != LpStatus::Optimal) continue;
    CHECK(dantzig.value == doctest::Approx(bland.value).epsilon(1e-9));
    SimplexOptions warm;
    warm.warm_basis = &bland.basis;
    auto again = simplex(lp, warm);
    REQUIRE(again.status == LpStatus::Optimal);
    CHECK(again.value == doctest::Approx(bland.value).epsilon(1e-9));
    CHECK(again.pivots <= bland.pivots);
  }
}

TEST_CASE("pivot guard trips on a tiny budget") {
  testing::Gen gen(33);
  LinearProgram lp;
  lp.sense = Sense::Maximize;
  for (int j = 0; j < 6; ++j) lp.add_variable(j + 1);
  for (int i = 0; i < 6; ++i) {
    std::vector<double> r(6);
    for (auto& c : r) c = gen.uniform(1, 5);
    lp.add_row(r, Relation::LessEqual, 10);
  }
  SimplexOptions opt;
  opt.pivot_guard = 1;
  CHECK_THROWS_AS((void)simplex(lp, opt), PivotGuardTripped);
}

TEST_CASE("validation rejects malformed programs") {
  LinearProgram lp;
  lp.add_variable(1);
  lp.rows.push_back({1, 2});
  lp.relations.push_back(Relation::LessEqual);
  lp.rhs.push_back(1);
  CHECK_THROWS_AS(lp.validate(), std::invalid_argument);
  LinearProgram nan;
  nan.add_variable(std::nan(""));
  CHECK_THROWS_AS(nan.validate(), std::invalid_argument);
}
