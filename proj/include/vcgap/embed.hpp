#pragma once

// Minimum distortion embeddings into l1 via the cut cone, combinatorial lower
// bounds, and cover rounding from a cut decomposition of a vector solution.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "vcgap/graph.hpp"
#include "vcgap/isoperimetry.hpp"
#include "vcgap/lp.hpp"
#include "vcgap/metric.hpp"
#include "vcgap/relaxations.hpp"

namespace vcgap {

inline constexpr int kMaxDistortionPoints = 17;

struct LowerBound {
  double value = 1.0;
  std::string source = "trivial";  // trivial, triangle, pentagonal, poincare
  std::vector<int> witness;        // (i, j, k) or S then T
};

// max over triples of d(i,j) / (d(i,k) + d(k,j)).
[[nodiscard]] LowerBound triangle_ratio_bound(const FiniteMetric& m);
// max over 2/3 splits of (within sums) / (cross sum).
[[nodiscard]] LowerBound pentagonal_ratio_bound(const FiniteMetric& m);
[[nodiscard]] LowerBound best_lower_bound(const FiniteMetric& m);

struct EmbeddingReport {
  int points = 0;
  double c1_lower = 1.0;
  std::optional<double> c1_exact;
  std::optional<Rational> c1_exact_rational;
  std::string method = "cut-cone-lp";  // or poincare-bound
  LowerBound lower;
  // Cut weights with d <= l1 <= D d; present when the LP ran.
  std::optional<CutMeasure> certificate;
  std::uint64_t columns = 0;  // cut columns in the final master LP
  int rounds = 0;             // column generation rounds
  std::int64_t pivots = 0;
};

struct DistortionOptions {
  LpMode mode = LpMode::Float;
  double tolerance = 1e-9;
  // Off: one column per cut up front.
  bool column_generation = true;
  int max_rounds = 10'000;
  int entering_per_round = 32;
};

// LP over cut weights mu_C and scale D minimizing D subject to
// d(i,j) <= sum mu_C delta_C(i,j) <= D d(i,j) (pairs at distance zero stay
// unseparated). Size <= 17 points.
[[nodiscard]] EmbeddingReport min_distortion_l1(const FiniteMetric& m, const DistortionOptions& opt = {});

namespace serial {
// Single-threaded pricing over the same master problem.
[[nodiscard]] EmbeddingReport min_distortion_l1(const FiniteMetric& m, const DistortionOptions& opt = {});
}  // namespace serial

// D(n) = (8/7)(4 alpha + 1/2) / (4 alpha + 1/2 + 1/(2(n-1))), n >= 2.
[[nodiscard]] double poincare_distortion_bound(int n, const PoincareConstants& c = poincare_constants());

// Lower bound report for the tensor metric of dimension n without any LP.
[[nodiscard]] EmbeddingReport poincare_report(int n);

// Cut measure of a realization whose every coordinate takes at most two
// values (such as an integral solution): each coordinate k with values a, b
// contributes the cut {x_k = b} with weight (a - b)^2, so the measure
// reproduces squared distances. Throws otherwise.
[[nodiscard]] CutMeasure cut_measure_from_realization(const VectorSolution& sol);

struct RoundingReport {
  std::uint64_t cover = 0;
  int cover_size = 0;
  std::vector<int> sizes;       // |I_t| per cut, in cut order
  std::vector<double> lambdas;  // lambda_t = weight / 2 (f_t in {-1, 1})
  double lambda_sum = 0.0;
  double weighted_bound = 0.0;  // sum lambda_t |I_t| / 2
  int max_independent = 0;
  double objective = 0.0;
  bool within_objective = false;  // cover_size <= objective + 1e-9
};

// I_t is the side of cut t away from the apex; each must be independent in g.
// Throws std::invalid_argument when cm does not reproduce the solution's
// squared distances or some I_t spans an edge.
[[nodiscard]] RoundingReport cut_rounding(const Graph& g, const VectorSolution& sol, const CutMeasure& cm,
                                          double tol = 1e-9);

[[nodiscard]] nlohmann::json to_json(const CutMeasure& cm);
[[nodiscard]] nlohmann::json to_json(const LowerBound& b);
[[nodiscard]] nlohmann::json to_json(const EmbeddingReport& r);
[[nodiscard]] nlohmann::json to_json(const RoundingReport& r);

}  // namespace vcgap
