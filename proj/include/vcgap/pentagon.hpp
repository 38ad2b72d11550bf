#pragma once

// Pentagonal inequalities: sum_{S x T} d >= sum within S + sum within T for
// |S| = 2, |T| = 3.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "vcgap/charikar.hpp"
#include "vcgap/metric.hpp"
#include "vcgap/parallel.hpp"

namespace vcgap {

struct PentagonalWitness {
  std::array<int, 2> S{};
  std::array<int, 3> T{};
  double lhs = 0.0;  // cross sum
  double rhs = 0.0;  // within sums
  double slack = 0.0;
};

struct PentagonalCensus {
  int points = 0;
  double min_slack = 0.0;
  PentagonalWitness witness;
  bool exhaustive = true;
  bool any = false;  // false when fewer than five points
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  std::uint64_t seed = 0;
};

struct PentagonalCensusOptions {
  double tolerance = 1e-9;
  std::uint64_t seed = 0;
  std::uint64_t samples = 1'000'000;
  int exhaustive_points = 40;
};

[[nodiscard]] PentagonalWitness pentagonal_evaluate(const FiniteMetric& m, std::array<int, 2> s, std::array<int, 3> t);

// Minimum slack with the lexicographically smallest (S, T) among ties.
[[nodiscard]] PentagonalCensus pentagonal_census(const FiniteMetric& m, const PentagonalCensusOptions& opt = {});

namespace serial {
// Direct loop over S pairs and disjoint T triples (exhaustive only).
[[nodiscard]] PentagonalCensus pentagonal_census(const FiniteMetric& m, double tolerance = 1e-9);
}  // namespace serial

// E = q(x12) + q(x13) + q(x23) - q(x14) - q(x24) - q(x34) with x_ab = u_a.u_b / n
// for a 4-point profile (u1..u4 are profile points 0..3).
[[nodiscard]] double E_function(const SignProfile& prof, const CharikarParams& p);
[[nodiscard]] Rational E_function_exact(const SignProfile& prof, const CharikarParams& p);

// Slack of the partition ({y_0, y_4}, {y_1, y_2, y_3}) computed from distances.
[[nodiscard]] double apex_pair_slack(const SignProfile& prof, const CharikarParams& p);
// The same slack as an affine function of E: 2 (1 - b^2)/q(1) E + 4 (1 - b).
[[nodiscard]] double apex_pair_slack_from_E(double e, const CharikarParams& p);
// E at which that slack vanishes: -2 q(1) / (1 + b).
[[nodiscard]] double E_threshold(const CharikarParams& p);

// Shape of u4 against the blocks P0..P3 cut out by u1, u2, u3.
struct BlockShape {
  bool pure = false;       // u4 constant on every block
  bool p0_agrees = false;  // u4 equals u1 = u2 = u3 on all of P0
  int xi = -1;             // blocks among P1..P3 where u4 sides with the odd point; -1 unless pure
};

[[nodiscard]] BlockShape block_shape(const SignProfile& prof);

struct PentagonalGroup {
  std::string placement;  // apex-in-pair, apex-in-triple, pure-sampled
  bool any = false;
  double min_slack = 0.0;
  std::optional<Rational> exact_min_slack;
  double min_slack_distinct = 0.0;  // over tuples of distinct points
  SignProfile witness;
  // Members by label: 0 is the apex, a >= 1 is profile point a - 1.
  std::array<int, 2> s{};
  std::array<int, 3> t{};
  BlockShape shape;
  bool degenerate = false;
  std::uint64_t checked = 0;
};

struct PentagonalVerifyOptions {
  double tolerance = 1e-9;
  std::uint64_t seed = 0;
  std::uint64_t samples = 1'000'000;
  bool rational = false;
  Shard shard;
};

struct PentagonalCharikarReport {
  int t = 0, n = 0;
  bool feasible = false;
  double min_slack = 0.0;
  std::string min_placement;
  std::vector<PentagonalGroup> groups;
  std::uint64_t enumerated = 0;
  std::uint64_t sampled = 0;
  std::uint64_t seed = 0;
};

inline constexpr int kMaxPentagonalProfileDim = 24;

[[nodiscard]] PentagonalCharikarReport verify_pentagonal_charikar(const CharikarParams& p,
                                                                  const PentagonalVerifyOptions& opt = {});

namespace serial {
[[nodiscard]] PentagonalCharikarReport verify_pentagonal_charikar(const CharikarParams& p,
                                                                  const PentagonalVerifyOptions& opt = {});
}  // namespace serial

struct ConvexityReport {
  bool ok = false;
  std::uint64_t trials = 0;
  // Smallest E(mixed) - min(E(pure+), E(pure-)).
  double worst_margin = 0.0;
};

// Random u4 that is mixed on some block against the two pure repairs of
// that block.
[[nodiscard]] ConvexityReport convexity_reduction_check(const CharikarParams& p, std::uint64_t trials,
                                                        std::uint64_t seed = 0);

struct P0Report {
  std::uint64_t triples = 0;
  // Triples whose minimum of E over u4 is reached with u4 agreeing on P0.
  std::uint64_t attained_with_p0 = 0;
  double worst_gap = 0.0;  // max over triples of min_{P0 agrees} E - min E
  SignProfile witness;     // 3-point profile of the worst gap
};

[[nodiscard]] P0Report p0_reduction_check(const CharikarParams& p);

[[nodiscard]] nlohmann::json to_json(const PentagonalWitness& w);
[[nodiscard]] nlohmann::json to_json(const PentagonalCensus& c);
[[nodiscard]] nlohmann::json to_json(const PentagonalCharikarReport& r);

}  // namespace vcgap
