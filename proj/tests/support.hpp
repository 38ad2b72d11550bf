#pragma once

// Seeded instance generators shared by the property tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "vcgap/cube.hpp"
#include "vcgap/graph.hpp"
#include "vcgap/lp.hpp"
#include "vcgap/metric.hpp"
#include "vcgap/relaxations.hpp"

namespace vcgap::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
  std::uint64_t bits() { return rng_(); }

  VertexSet vertex_set(int dim, double density = 0.5) {
    VertexSet s(dim);
    for (std::uint32_t u = 0; u < s.universe(); ++u)
      if (coin(density)) s.insert(u);
    return s;
  }

  VertexSet symmetric_set(int dim, double density = 0.5) {
    VertexSet s(dim);
    std::uint32_t mask = cube_mask(dim);
    for (std::uint32_t u = 0; u < s.universe(); ++u) {
      if (u > (u ^ mask)) continue;
      if (coin(density)) {
        s.insert(u);
        s.insert(u ^ mask);
      }
    }
    return s;
  }

  Graph graph(int order, double p) {
    Graph g(order);
    for (int i = 0; i < order; ++i)
      for (int j = i + 1; j < order; ++j)
        if (coin(p)) g.add_edge(i, j);
    return g;
  }

  Graph connected_graph(int order, double p) {
    for (;;) {
      Graph g = graph(order, p);
      for (int i = 1; i < order; ++i)
        if (coin(0.3)) g.add_edge(uniform(0, i - 1), i);
      if (g.is_connected()) return g;
    }
  }

  // Unit vectors in R^dim.
  VectorSolution unit_solution(int points, int dim) {
    std::vector<std::vector<double>> c(points, std::vector<double>(dim));
    for (auto& v : c) {
      double norm = 0;
      for (auto& x : v) {
        x = real(-1, 1);
        norm += x * x;
      }
      for (auto& x : v) x /= std::sqrt(norm);
    }
    return VectorSolution::from_coords(c);
  }

  // Shortest paths over random integer weights.
  FiniteMetric metric(int points) {
    std::vector<std::vector<double>> d(points, std::vector<double>(points, 0.0));
    for (int i = 0; i < points; ++i)
      for (int j = i + 1; j < points; ++j) d[i][j] = d[j][i] = uniform(1, 9);
    for (int k = 0; k < points; ++k)
      for (int i = 0; i < points; ++i)
        for (int j = 0; j < points; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    return FiniteMetric(d);
  }

  FiniteMetric sq_euclidean(int points, int dim) {
    std::vector<std::vector<double>> c(points, std::vector<double>(dim));
    for (auto& v : c)
      for (auto& x : v) x = real(-1, 1);
    FiniteMetric m(points);
    for (int i = 0; i < points; ++i)
      for (int j = i + 1; j < points; ++j) {
        double s = 0;
        for (int k = 0; k < dim; ++k) s += (c[i][k] - c[j][k]) * (c[i][k] - c[j][k]);
        m.set(i, j, s);
      }
    return m;
  }

  CutMeasure cut_measure(int points, int max_cuts = 12) {
    CutMeasure cm;
    cm.points = points;
    int cuts = uniform(1, max_cuts);
    for (int c = 0; c < cuts; ++c) {
      std::uint64_t mask = canonical_cut(bits() & ((std::uint64_t{1} << points) - 1), points);
      if (mask != 0) cm.cuts.push_back({mask, make_rational(uniform(1, 20), uniform(1, 7))});
    }
    cm.normalize();
    return cm;
  }

  // Bounded program with small integer data, so float inputs are exact.
  LinearProgram lp() {
    LinearProgram p;
    p.sense = coin() ? Sense::Minimize : Sense::Maximize;
    int vars = uniform(2, 8);
    int rows = uniform(1, 8);
    for (int j = 0; j < vars; ++j) p.add_variable(uniform(-9, 9), coin(0.15));
    for (int i = 0; i < rows; ++i) {
      std::vector<double> r(vars);
      for (auto& c : r) c = coin(0.7) ? uniform(-6, 6) : 0;
      int kind = uniform(0, 5);
      Relation rel = kind < 3 ? Relation::LessEqual : kind < 5 ? Relation::GreaterEqual : Relation::Equal;
      p.add_row(r, rel, uniform(-10, 20));
    }
    for (int j = 0; j < vars; ++j) {
      std::vector<double> r(vars, 0.0);
      r[j] = 1;
      p.add_row(r, Relation::LessEqual, 15);
      if (p.free_vars[j]) p.add_row(r, Relation::GreaterEqual, -15);
    }
    return p;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace vcgap::testing
