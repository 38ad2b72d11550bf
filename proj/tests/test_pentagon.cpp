#include <algorithm>
#include <cmath>
#include <limits>

#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"
#include "vcgap/charikar.hpp"
#include "vcgap/graph.hpp"
#include "vcgap/metric.hpp"
#include "vcgap/pentagon.hpp"

using namespace vcgap;

TEST_CASE("K23 graph metric violates the pentagonal inequality at its bipartition") {
  auto m = graph_metric(Graph::complete_bipartite(2, 3));
  auto c = pentagonal_census(m);
  CHECK(c.min_slack == doctest::Approx(-2));
  CHECK(c.witness.S == std::array<int, 2>{0, 1});
  CHECK(c.witness.T == std::array<int, 3>{2, 3, 4});
  CHECK(c.witness.lhs == doctest::Approx(6));
  CHECK(c.witness.rhs == doctest::Approx(8));
  CHECK(c.violations >= 1);
  CHECK(triangle_census(m).violations == 0);
}

TEST_CASE("cut measure metrics satisfy every pentagonal inequality") {
  testing::Gen gen(51);
  for (int trial = 0; trial < 100; ++trial) {
    auto cm = gen.cut_measure(gen.uniform(5, 10));
    auto m = cm.metric();
    auto c = pentagonal_census(m);
    CHECK(c.min_slack >= -1e-9);
    CHECK(c.violations == 0);
    CHECK(triangle_census(m).violations == 0);
  }
}

TEST_CASE("parallel census matches the serial loop and a brute-force oracle") {
  testing::Gen gen(52);
  for (int trial = 0; trial < 40; ++trial) {
    auto m = gen.sq_euclidean(gen.uniform(5, 11), gen.uniform(1, 3));
    auto par = pentagonal_census(m);
    auto ser = serial::pentagonal_census(m);
    CHECK(par.min_slack == doctest::Approx(ser.min_slack).epsilon(1e-12));
    CHECK(par.witness.S == ser.witness.S);
    CHECK(par.witness.T == ser.witness.T);
    CHECK(par.violations == ser.violations);
    CHECK(par.checked == ser.checked);
    CHECK(par.min_slack == doctest::Approx(testing::brute_min_pentagonal_slack(m)).epsilon(1e-12));
  }
}

TEST_CASE("sampled census is reproducible from its seed") {
  testing::Gen gen(53);
  auto m = gen.sq_euclidean(14, 2);
  PentagonalCensusOptions opt;
  opt.exhaustive_points = 10;
  opt.samples = 2000;
  opt.seed = 7;
  auto a = pentagonal_census(m, opt);
  auto b = pentagonal_census(m, opt);
  CHECK_FALSE(a.exhaustive);
  CHECK(a.min_slack == b.min_slack);
  CHECK(a.witness.S == b.witness.S);
  CHECK(a.min_slack >= testing::brute_min_pentagonal_slack(m) - 1e-12);
}

TEST_CASE("fewer than five points carry no pentagonal rows") {
  auto c = pentagonal_census(graph_metric(Graph::path(4)));
  CHECK_FALSE(c.any);
  CHECK(c.checked == 0);
}

TEST_CASE("apex pair slack is affine in E") {
  for (auto [t, n] : {std::pair{1, 8}, {2, 8}, {1, 12}}) {
    auto p = charikar_params(t, n);
    double threshold = E_threshold(p);
    CHECK(apex_pair_slack_from_E(threshold, p) == doctest::Approx(0).scale(1));
    for_each_profile(n, 4, [&](const SignProfile& prof) {
      double e = E_function(prof, p);
      CHECK(apex_pair_slack(prof, p) == doctest::Approx(apex_pair_slack_from_E(e, p)).epsilon(1e-9));
      CHECK(E_function_exact(prof, p).get_d() == doctest::Approx(e).epsilon(1e-12));
    });
  }
}

TEST_CASE("construction satisfies the pentagonal tier") {
  for (auto [t, n] : {std::pair{1, 8}, {1, 12}, {2, 16}}) {
    auto p = charikar_params(t, n);
    auto r = verify_pentagonal_charikar(p);
    CHECK(r.feasible);
    CHECK(r.min_slack >= -1e-9);
    for (const auto& g : r.groups)
      if (g.any) CHECK(g.min_slack >= -1e-9);
  }
}

TEST_CASE("pentagonal construction check matches its serial reference") {
  auto p = charikar_params(1, 8);
  PentagonalVerifyOptions opt;
  opt.rational = true;
  auto par = verify_pentagonal_charikar(p, opt);
  auto ser = serial::verify_pentagonal_charikar(p, opt);
  CHECK(par.min_slack == doctest::Approx(ser.min_slack).epsilon(1e-12));
  CHECK(par.min_placement == ser.min_placement);
  REQUIRE(par.groups.size() == ser.groups.size());
  for (std::size_t i = 0; i < par.groups.size(); ++i) {
    CHECK(par.groups[i].checked == ser.groups[i].checked);
    CHECK(par.groups[i].min_slack == doctest::Approx(ser.groups[i].min_slack).epsilon(1e-12));
    CHECK(par.groups[i].exact_min_slack == ser.groups[i].exact_min_slack);
  }
}

TEST_CASE("reductions used by the pentagonal argument") {
  for (auto [t, n] : {std::pair{1, 8}, {1, 12}, {2, 8}}) {
    auto p = charikar_params(t, n);
    auto conv = convexity_reduction_check(p, 2000, 3);
    CHECK(conv.ok);
    CHECK(conv.worst_margin >= -1e-12);
    auto p0 = p0_reduction_check(p);
    CHECK(p0.attained_with_p0 == p0.triples);
    CHECK(p0.worst_gap <= 1e-12);
  }
}
