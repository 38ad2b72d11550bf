#include "vcgap/embed.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>
#include <type_traits>

namespace vcgap {

// ---------------------------------------------------------------------------
// Lower bounds

LowerBound triangle_ratio_bound(const FiniteMetric& m) {
  LowerBound best;
  const int n = m.size();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double d = m(i, j);
      if (d <= 0) continue;
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        const double via = m(i, k) + m(k, j);
        const double ratio = via > 0 ? d / via : std::numeric_limits<double>::infinity();
        if (ratio > best.value) {
          best.value = ratio;
          best.source = "triangle";
          best.witness = {i, j, k};
        }
      }
    }
  }
  return best;
}

LowerBound pentagonal_ratio_bound(const FiniteMetric& m) {
  LowerBound best;
  const int n = m.size();
  std::array<int, 5> p{};
  auto visit = [&] {
    for (int a = 0; a < 5; ++a) {
      for (int b = a + 1; b < 5; ++b) {
        std::array<int, 3> t{};
        int k = 0;
        for (int x = 0; x < 5; ++x) {
          if (x != a && x != b) t[static_cast<std::size_t>(k++)] = p[static_cast<std::size_t>(x)];
        }
        const int s0 = p[static_cast<std::size_t>(a)];
        const int s1 = p[static_cast<std::size_t>(b)];
        const double within = m(s0, s1) + m(t[0], t[1]) + m(t[0], t[2]) + m(t[1], t[2]);
        double cross = 0;
        for (int x : t) cross += m(s0, x) + m(s1, x);
        if (within <= 0) continue;
        const double ratio = cross > 0 ? within / cross : std::numeric_limits<double>::infinity();
        if (ratio > best.value) {
          best.value = ratio;
          best.source = "pentagonal";
          best.witness = {s0, s1, t[0], t[1], t[2]};
        }
      }
    }
  };
  for (p[0] = 0; p[0] < n; ++p[0])
    for (p[1] = p[0] + 1; p[1] < n; ++p[1])
      for (p[2] = p[1] + 1; p[2] < n; ++p[2])
        for (p[3] = p[2] + 1; p[3] < n; ++p[3])
          for (p[4] = p[3] + 1; p[4] < n; ++p[4]) visit();
  return best;
}

LowerBound best_lower_bound(const FiniteMetric& m) {
  LowerBound best;
  LowerBound tri = triangle_ratio_bound(m);
  if (tri.value > best.value) best = tri;
  if (m.size() <= 40) {
    LowerBound pent = pentagonal_ratio_bound(m);
    if (pent.value > best.value) best = pent;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Distortion LP

namespace {

template <class T>
T from_double(double x) {
  if constexpr (std::is_same_v<T, double>) {
    return x;
  } else {
    return exact_rational(x);
  }
}

struct ScoredCut {
  double score = 0.0;
  std::uint64_t mask = 0;
};

bool better(const ScoredCut& a, const ScoredCut& b) {
  return a.score > b.score || (a.score == b.score && a.mask < b.mask);
}

// Cuts are indexed by subsets of points 1..m-1; point 0 stays outside.
// Chunks walk a Gray code so each step flips one point in O(m).
template <class T>
struct Pricer {
  int m = 0;
  std::vector<T> w;  // m x m pair prices, symmetric, zero diagonal
  std::vector<T> total;
  int keep = 8;

  [[nodiscard]] const T& at(int i, int j) const {
    return w[static_cast<std::size_t>(i) * static_cast<std::size_t>(m) + static_cast<std::size_t>(j)];
  }

  static std::uint64_t gray(std::uint64_t i) { return i ^ (i >> 1); }

  void offer(std::vector<ScoredCut>& top, double score, std::uint64_t mask) const {
    ScoredCut c{score, mask};
    if (static_cast<int>(top.size()) < keep) {
      top.push_back(c);
      std::sort(top.begin(), top.end(), better);
    } else if (better(c, top.back())) {
      top.back() = c;
      std::sort(top.begin(), top.end(), better);
    }
  }

  // Best cuts among Gray ordinals [lo, hi) with positive exact score.
  std::vector<ScoredCut> scan(std::uint64_t lo, std::uint64_t hi) const {
    std::vector<ScoredCut> top;
    std::vector<T> inside(static_cast<std::size_t>(m), T(0));
    std::uint64_t g = gray(lo);
    T score(0);
    for (int k = 1; k < m; ++k) {
      if (!((g >> (k - 1)) & 1u)) continue;
      for (int j = 0; j < m; ++j) inside[static_cast<std::size_t>(j)] += at(j, k);
    }
    for (int k = 1; k < m; ++k) {
      if ((g >> (k - 1)) & 1u) score += total[static_cast<std::size_t>(k)] - inside[static_cast<std::size_t>(k)];
    }
    for (std::uint64_t i = lo;;) {
      if (g != 0 && score > T(0)) offer(top, to_double(score), g << 1);
      if (++i >= hi) break;
      const int bit = std::countr_zero(i);
      const int k = bit + 1;
      const bool entering = !((g >> bit) & 1u);
      const T delta = total[static_cast<std::size_t>(k)] - inside[static_cast<std::size_t>(k)] -
                      inside[static_cast<std::size_t>(k)];
      if (entering) {
        score += delta;
        for (int j = 0; j < m; ++j) inside[static_cast<std::size_t>(j)] += at(j, k);
      } else {
        score -= delta;
        for (int j = 0; j < m; ++j) inside[static_cast<std::size_t>(j)] -= at(j, k);
      }
      g ^= std::uint64_t{1} << bit;
    }
    return top;
  }

  std::vector<ScoredCut> run(bool parallel) const {
    const std::uint64_t space = std::uint64_t{1} << (m - 1);
    const std::uint64_t chunks = std::min<std::uint64_t>(64, space);
    std::vector<std::vector<ScoredCut>> parts(chunks);
    const auto nchunks = static_cast<std::int64_t>(chunks);
    auto body = [&](std::int64_t c) {
      const auto uc = static_cast<std::uint64_t>(c);
      parts[uc] = scan(space * uc / chunks, space * (uc + 1) / chunks);
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
      for (std::int64_t c = 0; c < nchunks; ++c) body(c);
    } else {
      for (std::int64_t c = 0; c < nchunks; ++c) body(c);
    }
    std::vector<ScoredCut> top;
    for (const auto& p : parts) {
      for (const auto& c : p) offer(top, c.score, c.mask);
    }
    return top;
  }
};

template <class T>
BasicLpSolution<T> run_lp(const BasicLinearProgram<T>& lp, double tol, const std::vector<int>* warm) {
  SimplexOptions so;
  so.warm_basis = warm;
  so.tolerance = tol;
  so.rule = PivotRule::Dantzig;
  so.refactor_interval = 100;
  so.perturb = true;
  if constexpr (std::is_same_v<T, double>) {
    return solve(lp, LpMode::Float, so);
  } else {
    return solve_exact(lp, so);
  }
}

struct Pair {
  int i = 0, j = 0;
};

template <class T>
EmbeddingReport distortion_lp(const FiniteMetric& metric, const DistortionOptions& opt, bool parallel) {
  const int m = metric.size();
  if (m > kMaxDistortionPoints) {
    throw std::invalid_argument("distortion LP is limited to " + std::to_string(kMaxDistortionPoints) + " points");
  }
  EmbeddingReport rep;
  rep.points = m;
  rep.lower = best_lower_bound(metric);
  rep.c1_lower = rep.lower.value;

  double dmax = 0;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (metric(i, j) < 0 || metric(i, j) != metric(j, i) || !std::isfinite(metric(i, j))) {
        throw std::invalid_argument("distance matrix must be finite, symmetric and nonnegative");
      }
      dmax = std::max(dmax, metric(i, j));
    }
  }
  if (dmax == 0) {
    rep.c1_exact = 1.0;
    rep.c1_exact_rational = Rational(1);
    rep.certificate = CutMeasure{m, {}};
    return rep;
  }

  // Scale to unit diameter; exact in rational mode, harmless in float mode.
  const T scale = from_double<T>(dmax);
  std::vector<Pair> pairs;
  std::vector<T> dist;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      pairs.push_back({i, j});
      dist.push_back(from_double<T>(metric(i, j)) / scale);
    }
  }

  // Start from cuts isolating each class of points at distance zero.
  std::vector<int> cls(static_cast<std::size_t>(m));
  std::iota(cls.begin(), cls.end(), 0);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < i; ++j) {
      if (metric(i, j) == 0) {
        cls[static_cast<std::size_t>(i)] = cls[static_cast<std::size_t>(j)];
        break;
      }
    }
  }
  std::set<std::uint64_t> columns;
  for (int c = 0; c < m; ++c) {
    std::uint64_t mask = 0;
    for (int i = 0; i < m; ++i) {
      if (cls[static_cast<std::size_t>(i)] == c) mask |= std::uint64_t{1} << i;
    }
    const std::uint64_t key = canonical_cut(mask, m);
    if (key != 0) columns.insert(key);
  }
  if (!opt.column_generation) {
    for (std::uint64_t g = 1; g < (std::uint64_t{1} << (m - 1)); ++g) columns.insert(g << 1);
  }

  const bool exact = std::is_same_v<T, Rational>;
  BasicLpSolution<T> sol;
  std::vector<std::uint64_t> order;
  std::vector<std::uint64_t> prev_order;
  for (;;) {
    order.assign(columns.begin(), columns.end());
    BasicLinearProgram<T> lp;
    lp.sense = Sense::Minimize;
    lp.add_variable(T(1));
    for (std::size_t c = 0; c < order.size(); ++c) lp.add_variable(T(0));
    std::vector<int> price_rows;  // first row of each pair
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      std::vector<T> row(order.size() + 1, T(0));
      for (std::size_t c = 0; c < order.size(); ++c) {
        const std::uint64_t mask = order[c];
        if (((mask >> pairs[p].i) ^ (mask >> pairs[p].j)) & 1u) row[c + 1] = T(1);
      }
      price_rows.push_back(lp.num_rows());
      if (dist[p] == T(0)) {
        lp.add_row(row, Relation::LessEqual, T(0));
      } else {
        lp.add_row(row, Relation::GreaterEqual, dist[p]);
        row[0] = -dist[p];
        lp.add_row(row, Relation::LessEqual, T(0));
      }
    }
    // Warm start from the previous optimum: rows never change, columns are
    // matched by their cut.
    std::vector<int> warm;
    for (int code : sol.basis) {
      if (code <= 0) {
        warm.push_back(code);
      } else {
        const auto it = std::lower_bound(order.begin(), order.end(), prev_order[static_cast<std::size_t>(code - 1)]);
        warm.push_back(static_cast<int>(it - order.begin()) + 1);
      }
    }
    sol = run_lp(lp, opt.tolerance, rep.rounds > 0 ? &warm : nullptr);
    prev_order = order;
    rep.pivots += sol.pivots;
    ++rep.rounds;
    if (sol.status != LpStatus::Optimal) {
      throw std::runtime_error("distortion LP ended " + to_string(sol.status) + " on a finite metric");
    }
    if (!opt.column_generation || rep.rounds >= opt.max_rounds) break;

    Pricer<T> pr;
    pr.m = m;
    pr.keep = opt.entering_per_round;
    pr.w.assign(static_cast<std::size_t>(m) * static_cast<std::size_t>(m), T(0));
    pr.total.assign(static_cast<std::size_t>(m), T(0));
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      const auto r = static_cast<std::size_t>(price_rows[p]);
      T y = sol.duals[r];
      if (dist[p] != T(0)) y += sol.duals[r + 1];
      const auto a = static_cast<std::size_t>(pairs[p].i);
      const auto b = static_cast<std::size_t>(pairs[p].j);
      pr.w[a * static_cast<std::size_t>(m) + b] = y;
      pr.w[b * static_cast<std::size_t>(m) + a] = y;
      pr.total[a] += y;
      pr.total[b] += y;
    }
    bool added = false;
    for (const auto& c : pr.run(parallel)) {
      if (!exact && c.score <= opt.tolerance) continue;
      if (columns.insert(c.mask).second) added = true;
    }
    if (!added) break;
  }

  rep.columns = order.size();
  const T value = sol.value;
  rep.c1_exact = to_double(value);
  if constexpr (std::is_same_v<T, Rational>) {
    rep.c1_exact_rational = value;
  }
  CutMeasure cm;
  cm.points = m;
  for (std::size_t c = 0; c < order.size(); ++c) {
    const T& mu = sol.primal[c + 1];
    if (!(mu > T(0))) continue;
    if constexpr (std::is_same_v<T, Rational>) {
      cm.cuts.push_back({order[c], mu * scale});
    } else {
      cm.cuts.push_back({order[c], simplest_rational(mu * scale, 1e-12 * std::max(1.0, dmax))});
    }
  }
  cm.normalize();
  rep.certificate = std::move(cm);
  return rep;
}

EmbeddingReport min_distortion(const FiniteMetric& m, const DistortionOptions& opt, bool parallel) {
  if (m.size() < 1) throw std::invalid_argument("empty metric");
  if (opt.mode == LpMode::Rational) return distortion_lp<Rational>(m, opt, parallel);
  return distortion_lp<double>(m, opt, parallel);
}

}  // namespace

EmbeddingReport min_distortion_l1(const FiniteMetric& m, const DistortionOptions& opt) {
  return min_distortion(m, opt, true);
}

EmbeddingReport serial::min_distortion_l1(const FiniteMetric& m, const DistortionOptions& opt) {
  return min_distortion(m, opt, false);
}

double poincare_distortion_bound(int n, const PoincareConstants& c) {
  if (n < 2) throw std::invalid_argument("Poincare distortion bound needs n >= 2");
  const double base = 4.0 * c.alpha + 0.5;
  return c.factor / (base + 1.0 / (2.0 * (n - 1)));
}

EmbeddingReport poincare_report(int n) {
  EmbeddingReport rep;
  rep.points = n >= 1 && n < 63 ? static_cast<int>((std::uint64_t{1} << (n - 1)) + 1) : 0;
  rep.method = "poincare-bound";
  rep.lower.value = std::max(1.0, poincare_distortion_bound(n));
  rep.lower.source = rep.lower.value > 1.0 ? "poincare" : "trivial";
  rep.c1_lower = rep.lower.value;
  return rep;
}

// ---------------------------------------------------------------------------
// Rounding

CutMeasure cut_measure_from_realization(const VectorSolution& sol) {
  if (!sol.realization()) throw std::invalid_argument("solution carries no realization");
  const auto& coords = *sol.realization();
  const int points = static_cast<int>(coords.size());
  if (points > 64) throw std::invalid_argument("at most 64 points fit in a cut mask");
  CutMeasure cm;
  cm.points = points;
  const std::size_t dim = coords.empty() ? 0 : coords[0].size();
  for (std::size_t k = 0; k < dim; ++k) {
    std::set<double> values;
    for (const auto& p : coords) values.insert(p[k]);
    if (values.size() == 1) continue;
    if (values.size() > 2) {
      throw std::invalid_argument("coordinate " + std::to_string(k) + " takes more than two values");
    }
    const double a = *values.begin();
    const double b = *values.rbegin();
    std::uint64_t mask = 0;
    for (int i = 0; i < points; ++i) {
      if (coords[static_cast<std::size_t>(i)][k] == b) mask |= std::uint64_t{1} << i;
    }
    const Rational gap = exact_rational(b) - exact_rational(a);
    cm.cuts.push_back({mask, gap * gap});
  }
  cm.normalize();
  return cm;
}

RoundingReport cut_rounding(const Graph& g, const VectorSolution& sol, const CutMeasure& cm, double tol) {
  const int points = sol.size();
  if (points != g.order() + 1) throw std::invalid_argument("solution size does not match the graph");
  if (cm.points != points) throw std::invalid_argument("cut measure size does not match the solution");
  const auto d = cm.exact_distances();
  for (int i = 0; i < points; ++i) {
    for (int j = i + 1; j < points; ++j) {
      const double want = sol.sq_distance(i, j);
      const double got = to_double(d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
      if (std::abs(want - got) > tol * std::max(1.0, std::abs(want))) {
        throw std::invalid_argument("cut measure does not reproduce squared distance of points " + std::to_string(i) +
                                    ", " + std::to_string(j));
      }
    }
  }
  RoundingReport rep;
  std::uint64_t indep = 0;
  for (const auto& c : cm.cuts) {
    if (sgn(c.weight) == 0) continue;
    const std::uint64_t side = canonical_cut(c.mask, points) >> 1;
    if (!is_independent_set(g, side)) {
      char buf[24];
      std::snprintf(buf, sizeof buf, "%llx", static_cast<unsigned long long>(side));
      throw std::invalid_argument(std::string("cut side 0x") + buf + " is not independent");
    }
    const int size = std::popcount(side);
    const double lambda = to_double(c.weight) / 2.0;
    rep.sizes.push_back(size);
    rep.lambdas.push_back(lambda);
    rep.lambda_sum += lambda;
    rep.weighted_bound += lambda * size / 2.0;
    if (size > rep.max_independent) {
      rep.max_independent = size;
      indep = side;
    }
  }
  const std::uint64_t all = g.order() >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << g.order()) - 1;
  rep.cover = all & ~indep;
  rep.cover_size = std::popcount(rep.cover);
  rep.objective = objective(sol);
  rep.within_objective = rep.cover_size <= rep.objective + 1e-9;
  return rep;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

std::string hex_mask(std::uint64_t mask) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(mask));
  return buf;
}

}  // namespace

nlohmann::json to_json(const CutMeasure& cm) {
  nlohmann::json cuts = nlohmann::json::array();
  for (const auto& c : cm.cuts) cuts.push_back({{"mask", hex_mask(c.mask)}, {"weight", to_string(c.weight)}});
  return {{"points", cm.points}, {"cuts", cuts}};
}

nlohmann::json to_json(const LowerBound& b) {
  return {{"value", b.value}, {"source", b.source}, {"witness", b.witness}};
}

nlohmann::json to_json(const EmbeddingReport& r) {
  nlohmann::json j{{"points", r.points},
                   {"method", r.method},
                   {"c1_lower", r.c1_lower},
                   {"lower_bound", to_json(r.lower)},
                   {"c1_exact", nullptr},
                   {"certificate", nullptr}};
  if (r.c1_exact) j["c1_exact"] = *r.c1_exact;
  if (r.c1_exact_rational) j["c1_exact_rational"] = to_string(*r.c1_exact_rational);
  if (r.certificate) j["certificate"] = to_json(*r.certificate);
  if (r.method == "cut-cone-lp") {
    j["columns"] = r.columns;
    j["rounds"] = r.rounds;
  }
  return j;
}

nlohmann::json to_json(const RoundingReport& r) {
  return {{"cover", hex_mask(r.cover)},
          {"cover_size", r.cover_size},
          {"sizes", r.sizes},
          {"lambdas", r.lambdas},
          {"lambda_sum", r.lambda_sum},
          {"weighted_bound", r.weighted_bound},
          {"max_independent", r.max_independent},
          {"objective", r.objective},
          {"within_objective", r.within_objective}};
}

}  // namespace vcgap
