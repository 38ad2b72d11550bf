#pragma once

// Charikar's gap vectors on the Hamming graph. Point 0 is the apex y_0 and
// point u + 1 is the vector of cube vertex u. Everything is computed from
// Gram values, which depend only on the cube dot product.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "vcgap/cube.hpp"
#include "vcgap/graph.hpp"
#include "vcgap/rational.hpp"
#include "vcgap/relaxations.hpp"

namespace vcgap {

struct CharikarParams {
  int t = 1;
  int n = 4;
  double lambda = 0.5;
  double gamma = 0.25;
  double beta = 0.0;
  double q_linear_coeff = 0.0;  // 2t lambda^(2t-1)
  double q_one = 0.0;           // q(1)
  double q_min = 0.0;           // q(-lambda)
  Rational lambda_exact;
  Rational beta_exact;
  Rational q_linear_coeff_exact;
  HammingInstance instance;
};

// Throws std::invalid_argument unless t >= 1 and 4t | n (n <= 32).
[[nodiscard]] CharikarParams charikar_params(int t, int n);

// q(x) = x^(2t) + 2t lambda^(2t-1) x.
[[nodiscard]] double q_eval(double x, int t);
[[nodiscard]] Rational q_eval(const Rational& x, int t);
[[nodiscard]] double q_derivative(double x, int t);

// beta = (q(1) + q(-lambda)) / (q(1) - q(-lambda)).
[[nodiscard]] double solve_beta(int t);
[[nodiscard]] Rational solve_beta_exact(int t);
// 1 - 2 beta + beta^2 + (1 - beta^2) q(-lambda) / q(1) at the float beta.
[[nodiscard]] double beta_residual(int t);

// Gram value of two cube vectors whose vertices have dot product `dot`.
[[nodiscard]] double cube_gram(const CharikarParams& p, int dot);
[[nodiscard]] Rational cube_gram_exact(const CharikarParams& p, int dot);

class CharikarSolution {
 public:
  explicit CharikarSolution(CharikarParams params) : params_(std::move(params)) {}

  [[nodiscard]] const CharikarParams& params() const { return params_; }
  [[nodiscard]] std::uint64_t points() const { return (std::uint64_t{1} << params_.n) + 1; }
  [[nodiscard]] double y_dot(std::uint64_t i, std::uint64_t j) const;
  [[nodiscard]] double objective() const;  // (1 + beta)/2 * 2^n
  // Materialized Gram matrix (n <= 6) and the matching graph.
  [[nodiscard]] VectorSolution to_vector_solution() const;
  [[nodiscard]] Graph graph() const;

 private:
  CharikarParams params_;
};

// One family of constraints restricted to one placement of the apex.
struct CaseResult {
  std::string family;  // unit_norm, edge, triangle, signed_triangle, pentagonal
  std::string placement;
  bool equality = false;
  // Worst violation: |residual| for equalities, -slack otherwise.
  double worst_violation = 0.0;
  std::optional<Rational> exact_worst_violation;
  SignProfile witness;
  std::vector<int> roles;  // profile point order of (i, j, k) or the partition
  std::vector<int> signs;
  std::uint64_t checked = 0;
};

struct TierVerification {
  Tier tier = Tier::Standard;
  bool feasible = false;
  double worst_violation = 0.0;
  std::optional<Rational> exact_worst_violation;
  bool rational_recheck = false;
  std::vector<CaseResult> cases;
  nlohmann::json pentagonal;  // filled for the pentagonal tier
};

struct VerifyOptions {
  double tolerance = 1e-9;
  std::uint64_t seed = 0;
  std::uint64_t pentagonal_samples = 1'000'000;
  // Exact rational recheck; defaults to t <= 2.
  std::optional<bool> rational;
  Shard shard;
};

// Exhaustive over sign profiles of pairs, triples and (pentagonal) 4-tuples
// of cube points together with the apex.
[[nodiscard]] TierVerification verify_construction(const CharikarParams& p, Tier tier, const VerifyOptions& opt = {});

struct EmbeddingSummary {
  double norm = 0.0;           // measured |f(y_i)|_1
  double expected_norm = 0.0;  // (1 - beta^2)/q(1) * (2 + 4t lambda^(2t-1))
  double distortion = 0.0;
  double cube_ratio_min = 0.0, cube_ratio_max = 0.0;
  double apex_ratio = 0.0;
  bool materialized = false;
  std::uint64_t coordinates = 0;
};

// Coordinates of f(y_0), f(y_1), ... exactly; throws when too large.
[[nodiscard]] std::vector<std::vector<Rational>> appendix_embedding_coords(const CharikarParams& p);
// Materialized when 2^n * (n^(2t) + n) <= 2^22, closed form otherwise.
[[nodiscard]] EmbeddingSummary appendix_embedding(const CharikarParams& p, bool allow_materialize = true);

struct GapReport {
  double objective = 0.0;
  double vertices = 0.0;
  double asymptotic_gap = 0.0;  // 2 / (1 + beta)
  std::string fr_bound = "2^n - (2 - delta)^n";
  std::string vc = "not computed";
};

[[nodiscard]] GapReport gap_report(const CharikarParams& p);

[[nodiscard]] nlohmann::json to_json(const CharikarParams& p);
[[nodiscard]] nlohmann::json to_json(const TierVerification& v);
[[nodiscard]] nlohmann::json to_json(const EmbeddingSummary& e);
[[nodiscard]] nlohmann::json to_json(const GapReport& g);
[[nodiscard]] nlohmann::json to_json(const SignProfile& s);

}  // namespace vcgap
