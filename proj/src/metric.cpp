#include "vcgap/metric.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include "json.hpp"
#include <stdexcept>

#include "vcgap/cube.hpp"

namespace vcgap {

FiniteMetric::FiniteMetric(int size) : size_(size) {
  if (size < 0) throw std::invalid_argument("metric size must be nonnegative");
  d_.assign(static_cast<std::size_t>(size) * static_cast<std::size_t>(size), 0.0);
}

FiniteMetric::FiniteMetric(std::vector<std::vector<double>> dist, std::vector<std::string> lab)
    : FiniteMetric(static_cast<int>(dist.size())) {
  for (int i = 0; i < size_; ++i) {
    const auto& row = dist[static_cast<std::size_t>(i)];
    if (row.size() != dist.size()) {
      throw std::invalid_argument("metric row " + std::to_string(i) + " has wrong length");
    }
    for (int j = 0; j < size_; ++j) {
      const double v = row[static_cast<std::size_t>(j)];
      if (!std::isfinite(v) || v < 0) {
        throw std::invalid_argument("metric entry (" + std::to_string(i) + "," + std::to_string(j) +
                                    ") must be finite and nonnegative");
      }
      if (i == j && v != 0.0) throw std::invalid_argument("metric diagonal must be zero");
      if (v != dist[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]) {
        throw std::invalid_argument("metric must be symmetric");
      }
      d_[index(i, j)] = v;
    }
  }
  if (!lab.empty() && static_cast<int>(lab.size()) != size_) {
    throw std::invalid_argument("metric label count differs from size");
  }
  labels = std::move(lab);
}

void FiniteMetric::set(int i, int j, double value) {
  if (i < 0 || j < 0 || i >= size_ || j >= size_) throw std::out_of_range("metric index");
  if (i == j) {
    if (value != 0.0) throw std::invalid_argument("metric diagonal must be zero");
    return;
  }
  if (!std::isfinite(value) || value < 0) throw std::invalid_argument("metric entries must be nonnegative");
  d_[index(i, j)] = value;
  d_[index(j, i)] = value;
}

std::vector<std::vector<double>> FiniteMetric::matrix() const {
  std::vector<std::vector<double>> out(static_cast<std::size_t>(size_), std::vector<double>(static_cast<std::size_t>(size_)));
  for (int i = 0; i < size_; ++i) {
    for (int j = 0; j < size_; ++j) out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (*this)(i, j);
  }
  return out;
}

FiniteMetric FiniteMetric::scaled(double factor) const {
  if (!(factor > 0)) throw std::invalid_argument("scale factor must be positive");
  FiniteMetric out(*this);
  for (auto& v : out.d_) v *= factor;
  return out;
}

FiniteMetric FiniteMetric::permuted(const std::vector<int>& perm) const {
  if (static_cast<int>(perm.size()) != size_) throw std::invalid_argument("permutation size mismatch");
  FiniteMetric out(size_);
  for (int i = 0; i < size_; ++i) {
    for (int j = 0; j < size_; ++j) out.d_[out.index(i, j)] = (*this)(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  }
  if (!labels.empty()) {
    for (int p : perm) out.labels.push_back(labels[static_cast<std::size_t>(p)]);
  }
  return out;
}

FiniteMetric FiniteMetric::restricted(const std::vector<int>& points) const {
  FiniteMetric out(static_cast<int>(points.size()));
  for (std::size_t a = 0; a < points.size(); ++a) {
    for (std::size_t b = 0; b < points.size(); ++b) out.d_[out.index(static_cast<int>(a), static_cast<int>(b))] = (*this)(points[a], points[b]);
    if (!labels.empty()) out.labels.push_back(labels[static_cast<std::size_t>(points[a])]);
  }
  return out;
}

FiniteMetric metric_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("metric JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("dist") || !j["dist"].is_array()) {
    throw std::invalid_argument("metric JSON needs a \"dist\" matrix");
  }
  std::vector<std::vector<double>> dist;
  for (const auto& row : j["dist"]) {
    if (!row.is_array()) throw std::invalid_argument("metric JSON: dist rows must be arrays");
    std::vector<double> r;
    for (const auto& v : row) {
      if (!v.is_number()) throw std::invalid_argument("metric JSON: distances must be numbers");
      r.push_back(v.get<double>());
    }
    dist.push_back(std::move(r));
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    for (const auto& l : j["labels"]) labels.push_back(l.is_string() ? l.get<std::string>() : l.dump());
  }
  return FiniteMetric(std::move(dist), std::move(labels));
}

std::string metric_to_json(const FiniteMetric& m) {
  nlohmann::json j;
  j["labels"] = m.labels;
  j["dist"] = m.matrix();
  return j.dump();
}

TriangleCensus triangle_census(const FiniteMetric& m, double tol) {
  TriangleCensus c;
  bool first = true;
  const int n = m.size();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        const double slack = m(i, k) + m(k, j) - m(i, j);
        ++c.checked;
        if (slack < -tol) ++c.violations;
        if (first || slack < c.min_slack) {
          c.min_slack = slack;
          c.witness = {i, j, k, slack};
          first = false;
        }
      }
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// Cut measures

std::uint64_t canonical_cut(std::uint64_t mask, int points) {
  const std::uint64_t all = points >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << points) - 1);
  mask &= all;
  return (mask & 1u) ? (all & ~mask) : mask;
}

void CutMeasure::normalize() {
  std::map<std::uint64_t, Rational> merged;
  for (const auto& c : cuts) {
    const std::uint64_t key = canonical_cut(c.mask, points);
    if (key == 0) continue;
    merged[key] += c.weight;
  }
  cuts.clear();
  for (auto& [mask, w] : merged) {
    if (sgn(w) < 0) throw std::invalid_argument("cut measure has negative total weight");
    if (sgn(w) != 0) cuts.push_back({mask, w});
  }
}

std::vector<std::vector<Rational>> CutMeasure::exact_distances() const {
  std::vector<std::vector<Rational>> d(static_cast<std::size_t>(points), std::vector<Rational>(static_cast<std::size_t>(points), Rational(0)));
  for (const auto& c : cuts) {
    for (int i = 0; i < points; ++i) {
      for (int j = i + 1; j < points; ++j) {
        if (((c.mask >> i) & 1u) != ((c.mask >> j) & 1u)) {
          d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] += c.weight;
          d[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] += c.weight;
        }
      }
    }
  }
  return d;
}

FiniteMetric CutMeasure::metric() const {
  const auto exact = exact_distances();
  std::vector<std::vector<double>> d(exact.size(), std::vector<double>(exact.size()));
  for (std::size_t i = 0; i < exact.size(); ++i) {
    for (std::size_t j = 0; j < exact.size(); ++j) d[i][j] = to_double(exact[i][j]);
  }
  return FiniteMetric(std::move(d));
}

CutMeasure l1_points_to_cut_measure(const std::vector<std::vector<Rational>>& coords) {
  const int m = static_cast<int>(coords.size());
  if (m > 64) throw std::invalid_argument("cut measures support at most 64 points");
  CutMeasure cm;
  cm.points = m;
  if (m == 0) return cm;
  const std::size_t dim = coords[0].size();
  for (const auto& p : coords) {
    if (p.size() != dim) throw std::invalid_argument("l1 points must share a dimension");
  }
  std::vector<int> order(static_cast<std::size_t>(m));
  for (std::size_t c = 0; c < dim; ++c) {
    for (int i = 0; i < m; ++i) order[static_cast<std::size_t>(i)] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return coords[static_cast<std::size_t>(a)][c] < coords[static_cast<std::size_t>(b)][c];
    });
    std::uint64_t below = 0;
    for (int r = 0; r + 1 < m; ++r) {
      const int p = order[static_cast<std::size_t>(r)];
      const int q = order[static_cast<std::size_t>(r + 1)];
      below |= std::uint64_t{1} << p;
      const Rational gap = coords[static_cast<std::size_t>(q)][c] - coords[static_cast<std::size_t>(p)][c];
      if (sgn(gap) == 0) continue;
      cm.cuts.push_back({below, gap});
    }
  }
  cm.normalize();
  return cm;
}

CutMeasure l1_points_to_cut_measure(const std::vector<std::vector<double>>& coords) {
  std::vector<std::vector<Rational>> exact;
  exact.reserve(coords.size());
  for (const auto& p : coords) {
    std::vector<Rational> row;
    row.reserve(p.size());
    for (double v : p) row.push_back(exact_rational(v));
    exact.push_back(std::move(row));
  }
  return l1_points_to_cut_measure(exact);
}

std::vector<std::vector<Rational>> l1_distances(const std::vector<std::vector<Rational>>& coords) {
  const std::size_t m = coords.size();
  std::vector<std::vector<Rational>> d(m, std::vector<Rational>(m, Rational(0)));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      Rational s(0);
      for (std::size_t c = 0; c < coords[i].size(); ++c) s += abs(coords[i][c] - coords[j][c]);
      d[i][j] = s;
      d[j][i] = s;
    }
  }
  return d;
}

// ---------------------------------------------------------------------------
// Negative type

NegativeTypeReport negative_type_report(const FiniteMetric& m, int base) {
  const int n = m.size();
  if (base < 0 || (n > 0 && base >= n)) throw std::out_of_range("negative type base point");
  NegativeTypeReport r;
  r.base = base;
  if (n <= 1) {
    r.negative_type = true;
    return r;
  }
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g(i, j) = 0.5 * (m(i, base) + m(j, base) - m(i, j));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g, Eigen::EigenvaluesOnly);
  r.min_eigenvalue = solver.eigenvalues().minCoeff();
  r.trace = g.trace();
  r.negative_type = r.min_eigenvalue >= -1e-8 * std::max(1.0, std::abs(r.trace));
  return r;
}

bool is_negative_type(const FiniteMetric& m, int base) { return negative_type_report(m, base).negative_type; }

// ---------------------------------------------------------------------------
// Tensor metric

TensorMetric tensor_metric(int n, bool merged) {
  if (n < 1 || n > kMaxTensorDim) {
    throw std::invalid_argument("tensor metric supports 1 <= n <= " + std::to_string(kMaxTensorDim));
  }
  TensorMetric t;
  t.n = n;
  t.merged = merged;
  const std::uint32_t count = merged ? (1u << (n - 1)) : (1u << n);
  for (std::uint32_t u = 0; u < count; ++u) t.representatives.push_back(u);
  const int size = static_cast<int>(count) + 1;
  FiniteMetric m(size);
  m.labels.push_back("0");
  const double n2 = static_cast<double>(n) * n;
  for (int a = 0; a < static_cast<int>(count); ++a) {
    const std::uint32_t u = t.representatives[static_cast<std::size_t>(a)];
    char buf[16];
    std::snprintf(buf, sizeof buf, "u%x", u);
    m.labels.emplace_back(buf);
    m.set(0, a + 1, n2);
    for (int b = a + 1; b < static_cast<int>(count); ++b) {
      const int dp = dot(CubePoint(u, n), CubePoint(t.representatives[static_cast<std::size_t>(b)], n));
      m.set(a + 1, b + 1, 2.0 * n2 - 2.0 * dp * dp);
    }
  }
  t.metric = std::move(m);
  return t;
}

TensorIdentities check_tensor_identities(int n) {
  const TensorMetric full = tensor_metric(n, false);
  const auto& m = full.metric;
  const std::int64_t n2 = static_cast<std::int64_t>(n) * n;
  TensorIdentities id;
  id.origin_distance_ok = true;
  id.edge_distance_ok = true;
  const int count = m.size() - 1;
  for (int a = 0; a < count; ++a) {
    if (m(0, a + 1) != static_cast<double>(n2)) id.origin_distance_ok = false;
    for (int b = 0; b < count; ++b) {
      const double d = m(a + 1, b + 1);
      id.pair_sum += static_cast<std::int64_t>(d);
      if (hamming_distance(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)) == 1 && d != 8.0 * (n - 1)) {
        id.edge_distance_ok = false;
      }
    }
  }
  id.expected_pair_sum = (std::int64_t{1} << (2 * n)) * (2 * n2 - 2 * n);
  id.pair_sum_ok = id.pair_sum == id.expected_pair_sum;
  return id;
}

}  // namespace vcgap
