#pragma once

// Finite metrics, cut measures and the tensor-cube metric.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vcgap/rational.hpp"

namespace vcgap {

class FiniteMetric {
 public:
  FiniteMetric() = default;
  explicit FiniteMetric(int size);
  FiniteMetric(std::vector<std::vector<double>> dist, std::vector<std::string> labels = {});

  [[nodiscard]] int size() const { return size_; }
  [[nodiscard]] double operator()(int i, int j) const { return d_[index(i, j)]; }
  void set(int i, int j, double value);

  [[nodiscard]] std::vector<std::vector<double>> matrix() const;
  [[nodiscard]] FiniteMetric scaled(double factor) const;
  // Point i of the result is point perm[i] of this metric.
  [[nodiscard]] FiniteMetric permuted(const std::vector<int>& perm) const;
  [[nodiscard]] FiniteMetric restricted(const std::vector<int>& points) const;

  std::vector<std::string> labels;

 private:
  [[nodiscard]] std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(size_) + static_cast<std::size_t>(j);
  }
  int size_ = 0;
  std::vector<double> d_;
};

// {"labels": [...], "dist": [[...], ...]}
[[nodiscard]] FiniteMetric metric_from_json(const std::string& text);
[[nodiscard]] std::string metric_to_json(const FiniteMetric& m);

struct TriangleViolation {
  int i = -1, j = -1, k = -1;  // d(i,j) > d(i,k) + d(k,j)
  double slack = 0.0;
};

// Minimum of d(i,k) + d(k,j) - d(i,j) over all triples (index order tie-break).
struct TriangleCensus {
  double min_slack = 0.0;
  TriangleViolation witness;
  std::uint64_t violations = 0;
  std::uint64_t checked = 0;
};

[[nodiscard]] TriangleCensus triangle_census(const FiniteMetric& m, double tol = 1e-9);

// A cut is the set of points on one side, as a bitmask with point 0 on the
// zero side. The induced distance is sum of weight * [cut separates i, j].
struct Cut {
  std::uint64_t mask = 0;
  Rational weight;
};

struct CutMeasure {
  int points = 0;
  std::vector<Cut> cuts;

  [[nodiscard]] FiniteMetric metric() const;
  [[nodiscard]] std::vector<std::vector<Rational>> exact_distances() const;
  // Merges equal cuts and drops zero weights; keeps mask order ascending.
  void normalize();
};

// Canonical representative of a cut: the side not containing point 0.
[[nodiscard]] std::uint64_t canonical_cut(std::uint64_t mask, int points);

// Threshold-cut decomposition of an l1 point set. Exact over rationals.
[[nodiscard]] CutMeasure l1_points_to_cut_measure(const std::vector<std::vector<Rational>>& coords);
[[nodiscard]] CutMeasure l1_points_to_cut_measure(const std::vector<std::vector<double>>& coords);

[[nodiscard]] std::vector<std::vector<Rational>> l1_distances(const std::vector<std::vector<Rational>>& coords);

struct NegativeTypeReport {
  bool negative_type = false;
  double min_eigenvalue = 0.0;
  double trace = 0.0;
  int base = 0;
};

// PSD test of G_ij = (d(i,b) + d(j,b) - d(i,j)) / 2, accepting
// min eigenvalue >= -1e-8 * trace.
[[nodiscard]] NegativeTypeReport negative_type_report(const FiniteMetric& m, int base = 0);
[[nodiscard]] bool is_negative_type(const FiniteMetric& m, int base = 0);

// Points u (x) u for u in Q_n plus the origin, with squared Euclidean
// distances 2n^2 - 2(u.v)^2 and n^2 to the origin. Merged mode identifies u
// with -u (distance 0). The origin is point 0.
struct TensorMetric {
  int n = 0;
  bool merged = true;
  FiniteMetric metric;
  // Cube vertex behind each non-origin point.
  std::vector<std::uint32_t> representatives;
};

inline constexpr int kMaxTensorDim = 8;

[[nodiscard]] TensorMetric tensor_metric(int n, bool merged = true);

// Identities checked over the full (unmerged) cube.
struct TensorIdentities {
  bool origin_distance_ok = false;   // d(u, 0) = n^2
  bool edge_distance_ok = false;     // d(u, v) = 8(n - 1) on cube edges
  bool pair_sum_ok = false;          // sum over ordered pairs = 2^(2n)(2n^2 - 2n)
  std::int64_t pair_sum = 0;
  std::int64_t expected_pair_sum = 0;
};

[[nodiscard]] TensorIdentities check_tensor_identities(int n);

}  // namespace vcgap
