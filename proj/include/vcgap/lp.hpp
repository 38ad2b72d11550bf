#pragma once

// Dense two-phase simplex, Bland's rule by default. The same tableau code runs over
// double and over exact GMP rationals.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vcgap/rational.hpp"

namespace vcgap {

enum class Sense { Minimize, Maximize };
enum class Relation { LessEqual, Equal, GreaterEqual };
enum class LpStatus { Optimal, Infeasible, Unbounded };
enum class LpMode { Float, Rational };

[[nodiscard]] std::string to_string(LpStatus s);

template <class T>
struct BasicLinearProgram {
  Sense sense = Sense::Minimize;
  std::vector<T> objective;
  std::vector<std::vector<T>> rows;
  std::vector<Relation> relations;
  std::vector<T> rhs;
  // Variables flagged free have no lower bound; all others are >= 0.
  std::vector<bool> free_vars;

  [[nodiscard]] int num_variables() const { return static_cast<int>(objective.size()); }
  [[nodiscard]] int num_rows() const { return static_cast<int>(rows.size()); }

  int add_variable(T cost, bool is_free = false) {
    objective.push_back(std::move(cost));
    free_vars.push_back(is_free);
    for (auto& r : rows) r.emplace_back(0);
    return num_variables() - 1;
  }

  // `coeffs` may be shorter than num_variables(); missing entries are zero.
  int add_row(std::vector<T> coeffs, Relation rel, T b) {
    coeffs.resize(objective.size(), T(0));
    rows.push_back(std::move(coeffs));
    relations.push_back(rel);
    rhs.push_back(std::move(b));
    return num_rows() - 1;
  }

  // Throws std::invalid_argument on inconsistent dimensions or non-finite data.
  void validate() const;
};

using LinearProgram = BasicLinearProgram<double>;
using RationalProgram = BasicLinearProgram<Rational>;

template <class T>
struct BasicLpSolution {
  LpStatus status = LpStatus::Infeasible;
  T value{};
  std::vector<T> primal;
  // Row prices y with b.y equal to the optimum (in the program's own sense).
  std::vector<T> duals;
  std::int64_t pivots = 0;
  // Basic columns at the optimum: j >= 0 is variable j, -i-1 the slack of row i.
  std::vector<int> basis;
};

using RationalLpSolution = BasicLpSolution<Rational>;

struct LpSolution : BasicLpSolution<double> {
  LpMode mode = LpMode::Float;
  // Set when float mode broke down and the exact path produced the answer.
  bool rational_fallback = false;
  std::optional<RationalLpSolution> exact;
};

// Bland picks the lowest eligible column. Dantzig picks the most negative
// reduced cost and switches to Bland after a run of degenerate pivots.
enum class PivotRule { Bland, Dantzig };

struct SimplexOptions {
  double tolerance = 1e-9;
  PivotRule rule = PivotRule::Bland;
  int degenerate_limit = 64;
  // Float mode rebuilds the tableau from the original rows this often (0: never).
  int refactor_interval = 0;
  // Float phase 2 on perturbed right-hand sides against degenerate stalling;
  // needs refactor_interval > 0 to restore the true values.
  bool perturb = false;
  // Starting basis in the encoding of BasicLpSolution::basis; ignored when it
  // does not give a feasible basis of this program.
  const std::vector<int>* warm_basis = nullptr;
  // Pivot budget; exceeding it means cycling or a runaway instance.
  std::int64_t pivot_guard = 5'000'000;
};

class PivotGuardTripped : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

[[nodiscard]] RationalProgram to_rational(const LinearProgram& lp);

// Raw simplex over one scalar type. Throws PivotGuardTripped.
[[nodiscard]] BasicLpSolution<double> simplex(const LinearProgram& lp, const SimplexOptions& opt = {});
[[nodiscard]] RationalLpSolution simplex(const RationalProgram& lp, const SimplexOptions& opt = {});

// Float mode verifies the returned point and re-solves exactly on breakdown.
// Rational mode converts the (exactly representable) inputs and solves exactly.
[[nodiscard]] LpSolution solve(const LinearProgram& lp, LpMode mode = LpMode::Float,
                               const SimplexOptions& opt = {});
[[nodiscard]] RationalLpSolution solve_exact(const RationalProgram& lp, const SimplexOptions& opt = {});

// Largest constraint or bound violation of `x` (0 when feasible).
[[nodiscard]] double max_violation(const LinearProgram& lp, const std::vector<double>& x);
[[nodiscard]] Rational max_violation(const RationalProgram& lp, const std::vector<Rational>& x);

}  // namespace vcgap
