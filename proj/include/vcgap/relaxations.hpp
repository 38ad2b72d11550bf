#pragma once

// Gram-backed candidate solutions of the vertex cover SDPs and tiered
// feasibility checking. Points are indexed 0..N with 0 the apex v_0 and
// point i + 1 the vector of graph vertex i.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "vcgap/graph.hpp"
#include "vcgap/parallel.hpp"

namespace vcgap {

class VectorSolution {
 public:
  VectorSolution() = default;
  // Row-major symmetric matrix of size `points` x `points`.
  static VectorSolution from_gram(int points, std::vector<double> gram);
  static VectorSolution from_coords(std::vector<std::vector<double>> coords);
  // v_i = v_0 on the cover, -v_0 elsewhere, realized in one dimension.
  static VectorSolution integral(const Graph& g, std::uint64_t cover);

  [[nodiscard]] int size() const { return size_; }
  [[nodiscard]] double gram(int i, int j) const {
    return gram_[static_cast<std::size_t>(i) * static_cast<std::size_t>(size_) + static_cast<std::size_t>(j)];
  }
  [[nodiscard]] double sq_distance(int i, int j) const { return gram(i, i) + gram(j, j) - 2 * gram(i, j); }
  [[nodiscard]] const std::vector<double>& gram_data() const { return gram_; }
  [[nodiscard]] const std::optional<std::vector<std::vector<double>>>& realization() const { return coords_; }

 private:
  int size_ = 0;
  std::vector<double> gram_;
  std::optional<std::vector<std::vector<double>>> coords_;
};

enum class Tier { Standard, Triangle, Karakostas, Pentagonal };

[[nodiscard]] std::string to_string(Tier t);
// Accepts standard|edge, triangle, karakostas, pentagonal.
[[nodiscard]] Tier parse_tier(const std::string& s);
[[nodiscard]] std::vector<Tier> parse_tier_list(const std::string& csv);

enum class Family { UnitNorm, Edge, Triangle, SignedTriangle, Pentagonal, Psd };

[[nodiscard]] std::string to_string(Family f);
[[nodiscard]] std::vector<Family> tier_families(Tier t);

// Identifies one constraint. Orders lexicographically by (family, idx, variant).
//  UnitNorm        idx = (i)                 G_ii - 1 = 0
//  Edge            idx = (i, j), i < j       (v_i - v_0).(v_j - v_0) = 0
//  Triangle        idx = (i, j, k), i < j    (v_i - v_k).(v_j - v_k) >= 0
//  SignedTriangle  idx = (i, j, k), i < j    (s_i v_i - v_k).(s_j v_j - v_k) >= 0
//                  variant 0: (-,-)  1: (-,+)  2: (+,-)
//  Pentagonal      idx = five sorted points  variant = pair index of S
//                  sum_{S x T} d - d(S) - sum_T d >= 0 with d = |v_a - v_b|^2
struct ConstraintKey {
  Family family = Family::UnitNorm;
  std::array<int, 5> idx{-1, -1, -1, -1, -1};
  int variant = 0;

  friend auto operator<=>(const ConstraintKey&, const ConstraintKey&) = default;
};

// The S pair of pentagonal variant v among five slots.
[[nodiscard]] std::pair<int, int> pentagonal_pair(int variant);
// Splits a pentagonal key into its S (2 points) and T (3 points).
void pentagonal_split(const ConstraintKey& key, std::array<int, 2>& s, std::array<int, 3>& t);

struct GramTerm {
  int i = 0, j = 0;  // i <= j
  double coeff = 0.0;
};

// Residual = constant + sum coeff * G_ij; equality rows need residual = 0,
// the rest residual >= 0.
struct Constraint {
  ConstraintKey key;
  bool equality = false;
  double constant = 0.0;
  std::vector<GramTerm> terms;

  [[nodiscard]] double residual(const VectorSolution& sol) const;
  // Positive when violated: |r| for equalities, -r otherwise.
  [[nodiscard]] double violation(const VectorSolution& sol) const;
};

// Every constraint of the tier in key order. Pentagonal implies Triangle.
void for_each_constraint(const Graph& g, Tier tier, const std::function<void(const Constraint&)>& fn);
[[nodiscard]] std::uint64_t constraint_count(const Graph& g, Tier tier);
[[nodiscard]] std::uint64_t family_count(const Graph& g, Family f);

struct FamilyStat {
  Family family = Family::UnitNorm;
  std::uint64_t checked = 0;
  double worst_violation = 0.0;
  ConstraintKey witness;
};

struct FeasibilityReport {
  Tier tier = Tier::Standard;
  bool feasible = false;
  double tolerance = 1e-9;
  double worst_violation = 0.0;
  ConstraintKey witness;
  std::uint64_t constraints_checked = 0;
  std::vector<FamilyStat> families;
  double objective_vc = 0.0;
  double objective_distance_form = 0.0;
  double psd_min_eigenvalue = 0.0;
  bool psd_ok = false;
  // Pentagonal rows beyond the exhaustive limit are sampled.
  bool sampled = false;
  std::uint64_t seed = 0;
};

struct CheckOptions {
  double tolerance = 1e-9;
  std::uint64_t seed = 0;
  std::uint64_t pentagonal_samples = 1'000'000;
  // Pentagonal census is exhaustive up to this many points (N + 1).
  int exhaustive_points = 40;
};

// Throws std::invalid_argument when sizes disagree. A Gram matrix that is not
// PSD yields an infeasible report; the witness is the worst violated row, or
// Psd when every row holds.
[[nodiscard]] FeasibilityReport check_tier(const VectorSolution& sol, const Graph& g, Tier tier,
                                           const CheckOptions& opt = {});

namespace serial {
// One-constraint-at-a-time reference built on for_each_constraint (exhaustive only).
[[nodiscard]] FeasibilityReport check_tier(const VectorSolution& sol, const Graph& g, Tier tier,
                                           const CheckOptions& opt = {});
}  // namespace serial

// Sum (1 + v_0.v_i) / 2.
[[nodiscard]] double objective(const VectorSolution& sol);
// Sum 1 - |v_0 - v_i|^2 / 4.
[[nodiscard]] double objective_distance_form(const VectorSolution& sol);

struct PsdReport {
  bool ok = false;
  double min_eigenvalue = 0.0;
  double trace = 0.0;
};

// Accepts min eigenvalue >= -1e-8 * max(1, trace).
[[nodiscard]] PsdReport psd_check(const VectorSolution& sol);

[[nodiscard]] nlohmann::json to_json(const ConstraintKey& key);
[[nodiscard]] nlohmann::json to_json(const FeasibilityReport& r);

}  // namespace vcgap
