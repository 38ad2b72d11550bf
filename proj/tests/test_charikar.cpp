#include <cmath>

#include "doctest.h"
#include "vcgap/charikar.hpp"
#include "vcgap/relaxations.hpp"

using namespace vcgap;

namespace {

// beta from lambda = 1 - 1/(2t) with q(x) = x^(2t) + 2t lambda^(2t-1) x,
// computed here without the library.
Rational oracle_beta(int t) {
  Rational lambda(2 * t - 1, 2 * t);
  lambda.canonicalize();
  auto power = [](Rational x, int e) {
    Rational r = 1;
    for (int i = 0; i < e; ++i) r *= x;
    return r;
  };
  Rational c = 2 * t * power(lambda, 2 * t - 1);
  Rational q1 = 1 + c;
  Rational qmin = power(lambda, 2 * t) - c * lambda;
  Rational b = (q1 + qmin) / (q1 - qmin);
  b.canonicalize();
  return b;
}

// Explicit vectors for t = 1: apex e_0, cube vertex u maps to
// beta e_0 + sqrt((1 - beta^2) / q(1)) (u (x) u / n, sqrt(2 lambda) u / sqrt(n)).
VectorSolution explicit_t1(int n) {
  const double beta = 7.0 / 9.0, lambda = 0.5, q1 = 1 + 2 * lambda;
  const double scale = std::sqrt((1 - beta * beta) / q1);
  const int dim = 1 + n * n + n;
  std::vector<std::vector<double>> pts;
  std::vector<double> apex(dim, 0.0);
  apex[0] = 1;
  pts.push_back(apex);
  for (std::uint32_t u = 0; u < (1u << n); ++u) {
    std::vector<double> y(dim, 0.0);
    y[0] = beta;
    auto s = [&](int l) { return ((u >> l) & 1u) ? 1.0 : -1.0; };
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) y[1 + a * n + b] = scale * s(a) * s(b) / n;
    for (int a = 0; a < n; ++a) y[1 + n * n + a] = scale * std::sqrt(2 * lambda) * s(a) / std::sqrt(n);
    pts.push_back(y);
  }
  return VectorSolution::from_coords(pts);
}

}  // namespace

TEST_CASE("beta closes exactly for t = 1, 2") {
  CHECK(solve_beta_exact(1) == Rational(7, 9));
  CHECK(solve_beta_exact(2) == Rational(445, 931));
  for (int t = 1; t <= 8; ++t) {
    CHECK(solve_beta_exact(t) == oracle_beta(t));
    CHECK(std::abs(beta_residual(t)) <= 1e-12);
    CHECK(solve_beta(t) == doctest::Approx(oracle_beta(t).get_d()).epsilon(1e-14));
  }
}

TEST_CASE("parameters reject bad dimensions") {
  CHECK_THROWS_AS((void)charikar_params(1, 6), std::invalid_argument);
  CHECK_THROWS_AS((void)charikar_params(0, 8), std::invalid_argument);
  auto p = charikar_params(2, 16);
  CHECK(p.lambda == doctest::Approx(0.75));
  CHECK(p.q_one == doctest::Approx(q_eval(1.0, 2)));
}

TEST_CASE("q is convex with its minimum at -lambda") {
  for (int t = 1; t <= 4; ++t) {
    double lambda = 1 - 1.0 / (2 * t);
    CHECK(std::abs(q_derivative(-lambda, t)) <= 1e-12);
    for (double x = -1; x < 1; x += 0.01) {
      double h = 1e-4;
      CHECK(q_eval(x + h, t) + q_eval(x - h, t) - 2 * q_eval(x, t) >= -1e-12);
      CHECK(q_eval(x, t) >= q_eval(-lambda, t) - 1e-12);
    }
  }
}

TEST_CASE("objective identity") {
  for (auto [t, n] : {std::pair{1, 4}, {1, 8}, {1, 12}, {2, 16}}) {
    auto p = charikar_params(t, n);
    CharikarSolution sol(p);
    CHECK(std::abs(sol.objective() - (1 + p.beta) / 2 * std::ldexp(1.0, n)) <= 1e-12 * std::ldexp(1.0, n));
  }
  auto p = charikar_params(1, 4);
  auto v = CharikarSolution(p).to_vector_solution();
  CHECK(objective(v) == doctest::Approx(CharikarSolution(p).objective()).epsilon(1e-12));
}

TEST_CASE("materialized Gram matches explicit vectors") {
  auto p = charikar_params(1, 4);
  auto mat = CharikarSolution(p).to_vector_solution();
  auto ref = explicit_t1(4);
  REQUIRE(mat.size() == ref.size());
  for (int i = 0; i < ref.size(); ++i)
    for (int j = 0; j < ref.size(); ++j) CHECK(mat.gram(i, j) == doctest::Approx(ref.gram(i, j)).epsilon(1e-12));
}

TEST_CASE("profile verification agrees with the generic checker at n = 4") {
  auto p = charikar_params(1, 4);
  CharikarSolution sol(p);
  auto v = sol.to_vector_solution();
  auto g = sol.graph();
  for (Tier tier : {Tier::Standard, Tier::Triangle, Tier::Karakostas, Tier::Pentagonal}) {
    auto generic = check_tier(v, g, tier);
    auto prof = verify_construction(p, tier);
    CHECK(generic.feasible == prof.feasible);
    CHECK(prof.feasible);
    CHECK(generic.worst_violation == doctest::Approx(prof.worst_violation).epsilon(1e-9));
  }
}

TEST_CASE("construction is feasible on all tiers at desk scale") {
  for (auto [t, n] : {std::pair{1, 8}, {1, 12}, {2, 16}}) {
    auto p = charikar_params(t, n);
    for (Tier tier : {Tier::Standard, Tier::Triangle, Tier::Karakostas, Tier::Pentagonal}) {
      auto v = verify_construction(p, tier);
      CHECK(v.feasible);
      CHECK(v.worst_violation <= 1e-9);
      REQUIRE(v.exact_worst_violation.has_value());
      for (const auto& c : v.cases)
        if (c.family == "edge") {
          REQUIRE(c.exact_worst_violation.has_value());
          CHECK(*c.exact_worst_violation == 0);
        }
    }
  }
}

// Unit norm and edge rows are single closed-form checks repeated by every shard.
TEST_CASE("sharded verification covers the same profiles") {
  auto p = charikar_params(1, 8);
  auto whole = verify_construction(p, Tier::Karakostas);
  std::uint64_t checked = 0;
  double worst = -1e300;
  for (std::uint64_t i = 0; i < 3; ++i) {
    VerifyOptions opt;
    opt.shard = Shard{i, 3};
    auto part = verify_construction(p, Tier::Karakostas, opt);
    for (const auto& c : part.cases)
      if (c.family != "unit_norm" && c.family != "edge") checked += c.checked;
    worst = std::max(worst, part.worst_violation);
  }
  std::uint64_t total = 0;
  for (const auto& c : whole.cases)
    if (c.family != "unit_norm" && c.family != "edge") total += c.checked;
  CHECK(checked == total);
  CHECK(worst == doctest::Approx(whole.worst_violation));
}

TEST_CASE("explicit l1 embedding norm and distortion") {
  double prev = 1e300;
  for (int t = 1; t <= 4; ++t) {
    auto p = charikar_params(t, 4 * t);
    auto e = appendix_embedding(p);
    double lambda = 1 - 1.0 / (2 * t);
    double expected = (1 - p.beta * p.beta) / p.q_one * (2 + 4 * t * std::pow(lambda, 2 * t - 1));
    CHECK(std::abs(e.norm - expected) <= 1e-9);
    CHECK(std::abs(e.expected_norm - expected) <= 1e-9);
    CHECK(e.distortion < prev);
    prev = e.distortion;
  }
}

TEST_CASE("materialized and closed-form embeddings agree") {
  auto p = charikar_params(1, 4);
  auto a = appendix_embedding(p, true);
  auto b = appendix_embedding(p, false);
  CHECK(a.materialized);
  CHECK_FALSE(b.materialized);
  CHECK(a.norm == doctest::Approx(b.norm).epsilon(1e-12));
  CHECK(a.distortion == doctest::Approx(b.distortion).epsilon(1e-12));
}
