#include "vcgap/charikar.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vcgap/charikar_table.hpp"
#include "vcgap/pentagon.hpp"

namespace vcgap {

namespace {

long double lambda_power(int t, int e) {
  const long double lambda = 1.0L - 1.0L / (2.0L * t);
  long double r = 1.0L;
  for (int i = 0; i < e; ++i) r *= lambda;
  return r;
}

Rational lambda_exact(int t) { return make_rational(2 * t - 1, 2 * t); }

}  // namespace

double q_eval(double x, int t) {
  if (t < 1) throw std::invalid_argument("t must be at least 1");
  long double xp = 1.0L;
  for (int i = 0; i < 2 * t; ++i) xp *= x;
  return static_cast<double>(xp + 2.0L * t * lambda_power(t, 2 * t - 1) * x);
}

Rational q_eval(const Rational& x, int t) {
  if (t < 1) throw std::invalid_argument("t must be at least 1");
  return pow(x, 2 * t) + Rational(2 * t) * pow(lambda_exact(t), 2 * t - 1) * x;
}

double q_derivative(double x, int t) {
  if (t < 1) throw std::invalid_argument("t must be at least 1");
  long double xp = 1.0L;
  for (int i = 0; i < 2 * t - 1; ++i) xp *= x;
  return static_cast<double>(2.0L * t * xp + 2.0L * t * lambda_power(t, 2 * t - 1));
}

Rational solve_beta_exact(int t) {
  if (t < 1) throw std::invalid_argument("t must be at least 1");
  const Rational q1 = q_eval(Rational(1), t);
  const Rational qm = q_eval(Rational(-lambda_exact(t)), t);
  Rational b = (q1 + qm) / (q1 - qm);
  b.canonicalize();
  return b;
}

double solve_beta(int t) {
  if (t < 1) throw std::invalid_argument("t must be at least 1");
  const long double lp = lambda_power(t, 2 * t - 1);
  const long double q1 = 1.0L + 2.0L * t * lp;
  const long double qm = (1.0L - 2.0L * t) * lp * (1.0L - 1.0L / (2.0L * t));
  return static_cast<double>((q1 + qm) / (q1 - qm));
}

double beta_residual(int t) {
  const long double b = solve_beta(t);
  const long double lp = lambda_power(t, 2 * t - 1);
  const long double q1 = 1.0L + 2.0L * t * lp;
  const long double qm = (1.0L - 2.0L * t) * lp * (1.0L - 1.0L / (2.0L * t));
  return static_cast<double>(1.0L - 2.0L * b + b * b + (1.0L - b * b) * qm / q1);
}

CharikarParams charikar_params(int t, int n) {
  CharikarParams p;
  p.instance = hamming_graph(n, t);
  p.t = t;
  p.n = n;
  p.lambda = 1.0 - 1.0 / (2.0 * t);
  p.gamma = 1.0 / (4.0 * t);
  p.beta = solve_beta(t);
  p.q_linear_coeff = static_cast<double>(2.0L * t * lambda_power(t, 2 * t - 1));
  p.q_one = q_eval(1.0, t);
  p.q_min = q_eval(-p.lambda, t);
  p.lambda_exact = lambda_exact(t);
  p.beta_exact = solve_beta_exact(t);
  p.q_linear_coeff_exact = Rational(2 * t) * pow(p.lambda_exact, 2 * t - 1);
  return p;
}

double cube_gram(const CharikarParams& p, int dot) {
  const double b = p.beta;
  return b * b + (1 - b * b) * q_eval(static_cast<double>(dot) / p.n, p.t) / p.q_one;
}

Rational cube_gram_exact(const CharikarParams& p, int dot) {
  const Rational& b = p.beta_exact;
  Rational g = b * b + (1 - b * b) * q_eval(make_rational(dot, p.n), p.t) / q_eval(Rational(1), p.t);
  g.canonicalize();
  return g;
}

template <>
CharikarTable<double> make_table<double>(const CharikarParams& p) {
  CharikarTable<double> tb;
  tb.n = p.n;
  tb.beta = p.beta;
  tb.edge_h = p.instance.edge_distance;
  for (int h = 0; h <= p.n; ++h) tb.gram.push_back(cube_gram(p, p.n - 2 * h));
  for (int h = 0; h <= p.n; ++h) tb.dist.push_back(2 - 2 * tb.gram[static_cast<std::size_t>(h)]);
  tb.apex_dist = 2 - 2 * p.beta;
  return tb;
}

template <>
CharikarTable<Rational> make_table<Rational>(const CharikarParams& p) {
  CharikarTable<Rational> tb;
  tb.n = p.n;
  tb.beta = p.beta_exact;
  tb.edge_h = p.instance.edge_distance;
  for (int h = 0; h <= p.n; ++h) tb.gram.push_back(cube_gram_exact(p, p.n - 2 * h));
  for (int h = 0; h <= p.n; ++h) tb.dist.push_back(2 - 2 * tb.gram[static_cast<std::size_t>(h)]);
  tb.apex_dist = 2 - 2 * p.beta_exact;
  return tb;
}

double CharikarSolution::y_dot(std::uint64_t i, std::uint64_t j) const {
  if (i >= points() || j >= points()) throw std::out_of_range("Charikar point index");
  if (i == j) return 1.0;
  if (i == 0 || j == 0) return params_.beta;
  const auto u = static_cast<std::uint32_t>(i - 1), v = static_cast<std::uint32_t>(j - 1);
  return cube_gram(params_, dot(CubePoint{u, params_.n}, CubePoint{v, params_.n}));
}

double CharikarSolution::objective() const {
  return (1 + params_.beta) / 2 * std::ldexp(1.0, params_.n);
}

VectorSolution CharikarSolution::to_vector_solution() const {
  if (params_.n > 6) throw std::invalid_argument("materialized Charikar solutions need n <= 6");
  const auto m = static_cast<int>(points());
  std::vector<double> gram(static_cast<std::size_t>(m) * static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) gram[static_cast<std::size_t>(i) * static_cast<std::size_t>(m) + static_cast<std::size_t>(j)] = y_dot(static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j));
  }
  return VectorSolution::from_gram(m, std::move(gram));
}

Graph CharikarSolution::graph() const { return params_.instance.to_graph(); }

// ---------------------------------------------------------------------------
// Profile verification

namespace {

bool less_than(double a, double b) { return a < b; }
bool less_than(const Rational& a, const Rational& b) { return a < b; }
double as_double(double a) { return a; }

template <class T>
struct CaseAcc {
  CaseAcc(std::string f, std::string p) : family(std::move(f)), placement(std::move(p)) {}

  std::string family, placement;
  bool equality = false;
  bool any = false;
  T worst{};
  SignProfile witness;
  std::vector<int> roles, signs;
  std::uint64_t checked = 0;

  template <class Fill>
  void offer(const T& v, Fill fill) {
    ++checked;
    if (!any || less_than(worst, v)) {
      any = true;
      worst = v;
      fill(*this);
    }
  }
};

SignProfile pair_profile(int n, int h) { return SignProfile{2, n, {n - h, h}}; }

template <class T>
T absval(const T& x) {
  return less_than(x, T(0)) ? T(-x) : x;
}

template <class T>
std::vector<CaseAcc<T>> run_cases(const CharikarParams& p, Tier tier, const Shard& shard) {
  const auto tb = make_table<T>(p);
  const int n = p.n;
  const T one(1);
  const T& beta = tb.beta;
  auto g = [&](int h) -> const T& { return tb.gram[static_cast<std::size_t>(h)]; };
  std::vector<CaseAcc<T>> out;

  {
    CaseAcc<T> unit{"unit_norm", "cube"};
    unit.equality = true;
    unit.offer(absval(T(g(0) - one)), [&](auto& a) { a.witness = pair_profile(n, 0); a.roles = {0}; });
    out.push_back(std::move(unit));
    CaseAcc<T> edge{"edge", "apex-middle"};
    edge.equality = true;
    edge.offer(absval(T(one - 2 * beta + g(tb.edge_h))), [&](auto& a) {
      a.witness = pair_profile(n, tb.edge_h);
      a.roles = {0, 1};
    });
    out.push_back(std::move(edge));
  }
  if (tier == Tier::Standard) return out;

  const bool karakostas = tier == Tier::Karakostas;
  std::vector<std::array<int, 2>> sign_sets{{1, 1}};
  if (karakostas) sign_sets = {{1, 1}, {-1, -1}, {-1, 1}, {1, -1}};

  for (const auto& s : sign_sets) {
    const bool plain = s[0] == 1 && s[1] == 1;
    const std::string fam = plain ? "triangle" : "signed_triangle";
    const T si(s[0]), sj(s[1]);
    CaseAcc<T> mid{fam, "apex-middle"}, end{fam, "apex-end"};
    for (int h = 0; h <= n; ++h) {
      if (!shard.owns(static_cast<std::uint64_t>(h))) continue;
      // (s_i y_i - y_0).(s_j y_j - y_0)
      const T a = si * sj * g(h) - (si + sj) * beta + one;
      mid.offer(T(-a), [&](auto& acc) { acc.witness = pair_profile(n, h); acc.roles = {0, 1}; acc.signs = {s[0], s[1]}; });
      // (s_i y_0 - y_k).(s_j y_j - y_k)
      const T b = si * sj * beta - si * beta - sj * g(h) + one;
      end.offer(T(-b), [&](auto& acc) { acc.witness = pair_profile(n, h); acc.roles = {1, 0}; acc.signs = {s[0], s[1]}; });
    }
    out.push_back(std::move(mid));
    out.push_back(std::move(end));
  }

  std::vector<CaseAcc<T>> cube_cases;
  for (const auto& s : sign_sets) {
    const bool plain = s[0] == 1 && s[1] == 1;
    cube_cases.emplace_back(plain ? "triangle" : "signed_triangle", "cube");
    cube_cases.back().signs = {s[0], s[1]};
  }
  for_each_profile(n, 3, [&](const SignProfile& prof) {
    int hd[3][3];
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) hd[a][b] = (n - prof.dot(a, b)) / 2;
    }
    for (int m = 0; m < 3; ++m) {
      const int i = m == 0 ? 1 : 0;
      const int j = m == 2 ? 1 : 2;
      std::size_t ci = 0;
      for (const auto& s : sign_sets) {
        const T si(s[0]), sj(s[1]);
        const T r = si * sj * g(hd[i][j]) - si * g(hd[i][m]) - sj * g(hd[j][m]) + one;
        cube_cases[ci++].offer(T(-r), [&](auto& acc) {
          acc.witness = prof;
          acc.roles = {i, j, m};
          acc.signs = {s[0], s[1]};
        });
      }
    }
  }, shard);
  for (auto& c : cube_cases) out.push_back(std::move(c));
  return out;
}

template <class T>
CaseResult to_result(const CaseAcc<T>& a) {
  CaseResult r;
  r.family = a.family;
  r.placement = a.placement;
  r.equality = a.equality;
  r.worst_violation = as_double(a.worst);
  r.witness = a.witness;
  r.roles = a.roles;
  r.signs = a.signs;
  r.checked = a.checked;
  return r;
}

}  // namespace

TierVerification verify_construction(const CharikarParams& p, Tier tier, const VerifyOptions& opt) {
  validate(opt.shard);
  TierVerification v;
  v.tier = tier;
  v.rational_recheck = opt.rational.value_or(p.t <= 2);
  const Tier base = tier == Tier::Pentagonal ? Tier::Triangle : tier;
  const auto cases = run_cases<double>(p, base, opt.shard);
  for (const auto& c : cases) v.cases.push_back(to_result(c));
  if (v.rational_recheck) {
    const auto exact = run_cases<Rational>(p, base, opt.shard);
    for (std::size_t i = 0; i < exact.size(); ++i) v.cases[i].exact_worst_violation = exact[i].worst;
  }
  if (tier == Tier::Pentagonal) {
    PentagonalVerifyOptions po;
    po.tolerance = opt.tolerance;
    po.seed = opt.seed;
    po.samples = opt.pentagonal_samples;
    po.rational = v.rational_recheck;
    po.shard = opt.shard;
    const auto rep = verify_pentagonal_charikar(p, po);
    v.pentagonal = to_json(rep);
    for (const auto& grp : rep.groups) {
      CaseResult r;
      r.family = "pentagonal";
      r.placement = grp.placement;
      r.worst_violation = -grp.min_slack;
      if (grp.exact_min_slack) r.exact_worst_violation = Rational(-*grp.exact_min_slack);
      r.witness = grp.witness;
      r.roles = {grp.s[0], grp.s[1], grp.t[0], grp.t[1], grp.t[2]};
      r.checked = grp.checked;
      v.cases.push_back(r);
    }
  }
  bool first = true;
  for (const auto& c : v.cases) {
    if (first || c.worst_violation > v.worst_violation) v.worst_violation = c.worst_violation;
    if (c.exact_worst_violation && (!v.exact_worst_violation || *c.exact_worst_violation > *v.exact_worst_violation)) {
      v.exact_worst_violation = c.exact_worst_violation;
    }
    first = false;
  }
  v.feasible = v.worst_violation <= opt.tolerance;
  if (v.exact_worst_violation && sgn(*v.exact_worst_violation) > 0) v.feasible = false;
  return v;
}

// ---------------------------------------------------------------------------
// Explicit l1 embedding

namespace {

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

constexpr std::uint64_t kMaterializeLimit = std::uint64_t{1} << 20;

bool can_materialize(const CharikarParams& p) {
  if (p.n > 12 || 2 * p.t * std::log2(static_cast<double>(p.n)) > 30) return false;
  return (std::uint64_t{1} << p.n) * (ipow(static_cast<std::uint64_t>(p.n), 2 * p.t) + static_cast<std::uint64_t>(p.n)) <= kMaterializeLimit;
}

}  // namespace

std::vector<std::vector<Rational>> appendix_embedding_coords(const CharikarParams& p) {
  if (!can_materialize(p)) throw std::invalid_argument("embedding too large to materialize");
  const Rational& b = p.beta_exact;
  const Rational c = (1 - b * b) / q_eval(Rational(1), p.t);
  const std::uint64_t tensor = ipow(static_cast<std::uint64_t>(p.n), 2 * p.t);
  const Rational tensor_scale = 2 * c / Rational(static_cast<long>(tensor));
  const Rational linear_scale = 2 * p.q_linear_coeff_exact * c / p.n;
  const std::uint64_t verts = std::uint64_t{1} << p.n;
  std::vector<std::vector<Rational>> out;
  out.emplace_back(tensor + static_cast<std::uint64_t>(p.n), Rational(0));
  for (std::uint64_t u = 0; u < verts; ++u) {
    std::vector<Rational> row;
    row.reserve(tensor + static_cast<std::uint64_t>(p.n));
    for (std::uint64_t idx = 0; idx < tensor; ++idx) {
      // Product of the coordinates of u named by the base-n digits of idx.
      int sign = 1;
      std::uint64_t rest = idx;
      for (int d = 0; d < 2 * p.t; ++d) {
        const auto l = static_cast<int>(rest % static_cast<std::uint64_t>(p.n));
        rest /= static_cast<std::uint64_t>(p.n);
        if (!((u >> l) & 1u)) sign = -sign;
      }
      row.push_back(sign > 0 ? tensor_scale : Rational(-tensor_scale));
    }
    for (int l = 0; l < p.n; ++l) row.push_back(((u >> l) & 1u) ? linear_scale : Rational(-linear_scale));
    out.push_back(std::move(row));
  }
  return out;
}

EmbeddingSummary appendix_embedding(const CharikarParams& p, bool allow_materialize) {
  EmbeddingSummary s;
  const double b = p.beta;
  const double c = (1 - b * b) / p.q_one;
  s.expected_norm = c * (2 + 2 * p.q_linear_coeff);
  s.apex_ratio = 0;
  s.cube_ratio_min = 0;
  s.cube_ratio_max = 0;
  bool first = true;
  auto record = [&](double l1, double sq) {
    const double r = l1 / sq;
    if (first || r < s.cube_ratio_min) s.cube_ratio_min = r;
    if (first || r > s.cube_ratio_max) s.cube_ratio_max = r;
    first = false;
  };
  if (allow_materialize && can_materialize(p)) {
    s.materialized = true;
    const auto coords = appendix_embedding_coords(p);
    s.coordinates = coords[0].size();
    std::vector<std::vector<double>> f(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) {
      for (const auto& x : coords[i]) f[i].push_back(to_double(x));
    }
    auto l1 = [&](std::size_t i, std::size_t j) {
      double d = 0;
      for (std::size_t k = 0; k < f[i].size(); ++k) d += std::abs(f[i][k] - f[j][k]);
      return d;
    };
    double worst_norm_err = -1;
    for (std::size_t i = 1; i < f.size(); ++i) {
      const double norm = l1(0, i);
      if (std::abs(norm - s.expected_norm) > worst_norm_err) {
        worst_norm_err = std::abs(norm - s.expected_norm);
        s.norm = norm;
      }
    }
    s.apex_ratio = s.norm / (2 - 2 * b);
    // All pairs for small cubes, pairs through vertex 0 otherwise.
    const std::size_t bases = f.size() <= 257 ? f.size() : 2;
    for (std::size_t i = 1; i < bases; ++i) {
      for (std::size_t j = i + 1; j < f.size(); ++j) {
        const auto u = static_cast<std::uint32_t>(i - 1), v = static_cast<std::uint32_t>(j - 1);
        record(l1(i, j), 2 - 2 * cube_gram(p, dot(CubePoint{u, p.n}, CubePoint{v, p.n})));
      }
    }
  } else {
    // Coordinate counting: (n^(2t) - (u.v)^(2t))/2 tensor and (n - u.v)/2
    // linear coordinates differ.
    const double x_lin = 2 * p.q_linear_coeff * c / p.n;
    s.norm = 2 * c + x_lin * p.n;
    s.apex_ratio = s.norm / (2 - 2 * b);
    for (int h = 1; h <= p.n; ++h) {
      const double x = static_cast<double>(p.n - 2 * h) / p.n;
      const double l1 = 2 * c * (1 - std::pow(x, 2 * p.t)) + 2 * x_lin * h;
      record(l1, 2 - 2 * cube_gram(p, p.n - 2 * h));
    }
  }
  const double hi = std::max(s.cube_ratio_max, s.apex_ratio);
  const double lo = std::min(s.cube_ratio_min, s.apex_ratio);
  s.distortion = hi / lo;
  return s;
}

GapReport gap_report(const CharikarParams& p) {
  GapReport g;
  g.vertices = std::ldexp(1.0, p.n);
  g.objective = (1 + p.beta) / 2 * g.vertices;
  g.asymptotic_gap = 2 / (1 + p.beta);
  return g;
}

nlohmann::json to_json(const SignProfile& s) { return {{"k", s.k}, {"n", s.dim}, {"counts", s.counts}}; }

nlohmann::json to_json(const CharikarParams& p) {
  return {{"t", p.t},
          {"n", p.n},
          {"lambda", p.lambda},
          {"gamma", p.gamma},
          {"beta", p.beta},
          {"beta_exact", to_string(p.beta_exact)},
          {"q_linear_coeff", p.q_linear_coeff},
          {"q_one", p.q_one},
          {"q_min", p.q_min},
          {"edge_dot", p.instance.edge_dot},
          {"edge_distance", p.instance.edge_distance},
          {"warnings", p.instance.warnings}};
}

nlohmann::json to_json(const TierVerification& v) {
  nlohmann::json j;
  j["tier"] = to_string(v.tier);
  j["feasible"] = v.feasible;
  j["worst_violation"] = v.worst_violation;
  if (v.exact_worst_violation) j["exact_worst_violation"] = to_string(*v.exact_worst_violation);
  j["rational_recheck"] = v.rational_recheck;
  j["cases"] = nlohmann::json::array();
  for (const auto& c : v.cases) {
    nlohmann::json cj{{"family", c.family},
                      {"placement", c.placement},
                      {"equality", c.equality},
                      {"worst_violation", c.worst_violation},
                      {"witness_profile", to_json(c.witness)},
                      {"roles", c.roles},
                      {"checked", c.checked}};
    if (!c.signs.empty()) cj["signs"] = c.signs;
    if (c.exact_worst_violation) cj["exact_worst_violation"] = to_string(*c.exact_worst_violation);
    j["cases"].push_back(cj);
  }
  if (!v.pentagonal.is_null()) j["pentagonal"] = v.pentagonal;
  return j;
}

nlohmann::json to_json(const EmbeddingSummary& e) {
  return {{"norm", e.norm},
          {"expected_norm", e.expected_norm},
          {"distortion", e.distortion},
          {"cube_ratio_min", e.cube_ratio_min},
          {"cube_ratio_max", e.cube_ratio_max},
          {"apex_ratio", e.apex_ratio},
          {"materialized", e.materialized},
          {"coordinates", e.coordinates}};
}

nlohmann::json to_json(const GapReport& g) {
  return {{"objective", g.objective},
          {"vertices", g.vertices},
          {"asymptotic_gap", g.asymptotic_gap},
          {"fr_bound", g.fr_bound},
          {"vc", g.vc}};
}

}  // namespace vcgap
