#include "vcgap/relaxations.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "vcgap/cube.hpp"

namespace vcgap {

VectorSolution VectorSolution::from_gram(int points, std::vector<double> gram) {
  if (points < 1) throw std::invalid_argument("solution needs at least the apex");
  if (gram.size() != static_cast<std::size_t>(points) * static_cast<std::size_t>(points)) {
    throw std::invalid_argument("gram matrix has wrong size");
  }
  VectorSolution s;
  s.size_ = points;
  s.gram_ = std::move(gram);
  for (int i = 0; i < points; ++i) {
    for (int j = 0; j < points; ++j) {
      if (!std::isfinite(s.gram(i, j))) throw std::invalid_argument("gram matrix has a non-finite entry");
      if (s.gram(i, j) != s.gram(j, i)) {
        throw std::invalid_argument("gram matrix is not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
  return s;
}

VectorSolution VectorSolution::from_coords(std::vector<std::vector<double>> coords) {
  const int points = static_cast<int>(coords.size());
  if (points < 1) throw std::invalid_argument("solution needs at least the apex");
  const std::size_t dim = coords[0].size();
  for (const auto& c : coords) {
    if (c.size() != dim) throw std::invalid_argument("realization rows must share a dimension");
    for (double x : c) {
      if (!std::isfinite(x)) throw std::invalid_argument("realization has a non-finite entry");
    }
  }
  std::vector<double> gram(static_cast<std::size_t>(points) * static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    for (int j = i; j < points; ++j) {
      double s = 0;
      for (std::size_t k = 0; k < dim; ++k) s += coords[static_cast<std::size_t>(i)][k] * coords[static_cast<std::size_t>(j)][k];
      gram[static_cast<std::size_t>(i) * static_cast<std::size_t>(points) + static_cast<std::size_t>(j)] = s;
      gram[static_cast<std::size_t>(j) * static_cast<std::size_t>(points) + static_cast<std::size_t>(i)] = s;
    }
  }
  VectorSolution out = from_gram(points, std::move(gram));
  out.coords_ = std::move(coords);
  return out;
}

VectorSolution VectorSolution::integral(const Graph& g, std::uint64_t cover) {
  std::vector<std::vector<double>> coords{{1.0}};
  for (int i = 0; i < g.order(); ++i) coords.push_back({((cover >> i) & 1u) ? 1.0 : -1.0});
  return from_coords(std::move(coords));
}

std::string to_string(Tier t) {
  switch (t) {
    case Tier::Standard: return "standard";
    case Tier::Triangle: return "triangle";
    case Tier::Karakostas: return "karakostas";
    case Tier::Pentagonal: return "pentagonal";
  }
  return "?";
}

Tier parse_tier(const std::string& s) {
  if (s == "standard" || s == "edge") return Tier::Standard;
  if (s == "triangle") return Tier::Triangle;
  if (s == "karakostas") return Tier::Karakostas;
  if (s == "pentagonal") return Tier::Pentagonal;
  throw std::invalid_argument("unknown tier '" + s + "'");
}

std::vector<Tier> parse_tier_list(const std::string& csv) {
  std::vector<Tier> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_tier(item));
  }
  if (out.empty()) throw std::invalid_argument("empty tier list");
  return out;
}

std::string to_string(Family f) {
  switch (f) {
    case Family::UnitNorm: return "unit_norm";
    case Family::Edge: return "edge";
    case Family::Triangle: return "triangle";
    case Family::SignedTriangle: return "signed_triangle";
    case Family::Pentagonal: return "pentagonal";
    case Family::Psd: return "psd";
  }
  return "?";
}

std::vector<Family> tier_families(Tier t) {
  switch (t) {
    case Tier::Standard: return {Family::UnitNorm, Family::Edge};
    case Tier::Triangle: return {Family::UnitNorm, Family::Edge, Family::Triangle};
    case Tier::Karakostas: return {Family::UnitNorm, Family::Edge, Family::Triangle, Family::SignedTriangle};
    case Tier::Pentagonal: return {Family::UnitNorm, Family::Edge, Family::Triangle, Family::Pentagonal};
  }
  return {};
}

namespace {

constexpr std::array<std::pair<int, int>, 10> kPairs{{{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}};
constexpr std::array<std::array<int, 2>, 3> kSigns{{{-1, -1}, {-1, 1}, {1, -1}}};

}  // namespace

std::pair<int, int> pentagonal_pair(int variant) {
  if (variant < 0 || variant >= 10) throw std::out_of_range("pentagonal variant");
  return kPairs[static_cast<std::size_t>(variant)];
}

void pentagonal_split(const ConstraintKey& key, std::array<int, 2>& s, std::array<int, 3>& t) {
  const auto [a, b] = pentagonal_pair(key.variant);
  s = {key.idx[static_cast<std::size_t>(a)], key.idx[static_cast<std::size_t>(b)]};
  int n = 0;
  for (int p = 0; p < 5; ++p) {
    if (p != a && p != b) t[static_cast<std::size_t>(n++)] = key.idx[static_cast<std::size_t>(p)];
  }
}

double Constraint::residual(const VectorSolution& sol) const {
  double r = constant;
  for (const auto& term : terms) r += term.coeff * sol.gram(term.i, term.j);
  return r;
}

double Constraint::violation(const VectorSolution& sol) const {
  const double r = residual(sol);
  return equality ? std::abs(r) : -r;
}

namespace {

void add_term(std::vector<GramTerm>& terms, int i, int j, double c) {
  if (i > j) std::swap(i, j);
  for (auto& t : terms) {
    if (t.i == i && t.j == j) {
      t.coeff += c;
      return;
    }
  }
  terms.push_back({i, j, c});
}

Constraint signed_triangle(int i, int j, int k, int si, int sj, Family f, int variant) {
  Constraint c;
  c.key.family = f;
  c.key.idx = {i, j, k, -1, -1};
  c.key.variant = variant;
  add_term(c.terms, i, j, si * sj);
  add_term(c.terms, i, k, -si);
  add_term(c.terms, j, k, -sj);
  add_term(c.terms, k, k, 1);
  return c;
}

Constraint pentagonal_row(const std::array<int, 5>& p, int variant) {
  Constraint c;
  c.key.family = Family::Pentagonal;
  c.key.idx = p;
  c.key.variant = variant;
  const auto [sa, sb] = kPairs[static_cast<std::size_t>(variant)];
  auto in_s = [&](int slot) { return slot == sa || slot == sb; };
  add_term(c.terms, p[static_cast<std::size_t>(sa)], p[static_cast<std::size_t>(sa)], 2);
  add_term(c.terms, p[static_cast<std::size_t>(sb)], p[static_cast<std::size_t>(sb)], 2);
  for (int x = 0; x < 5; ++x) {
    for (int y = x + 1; y < 5; ++y) {
      const bool cross = in_s(x) != in_s(y);
      add_term(c.terms, p[static_cast<std::size_t>(x)], p[static_cast<std::size_t>(y)], cross ? -2 : 2);
    }
  }
  return c;
}

void check_size(const VectorSolution& sol, const Graph& g) {
  if (sol.size() != g.order() + 1) {
    throw std::invalid_argument("solution has " + std::to_string(sol.size()) + " points but the graph needs " +
                                std::to_string(g.order() + 1));
  }
}

}  // namespace

void for_each_constraint(const Graph& g, Tier tier, const std::function<void(const Constraint&)>& fn) {
  const int points = g.order() + 1;
  for (Family f : tier_families(tier)) {
    switch (f) {
      case Family::UnitNorm:
        for (int i = 0; i < points; ++i) {
          Constraint c;
          c.key.family = f;
          c.key.idx[0] = i;
          c.equality = true;
          c.constant = -1;
          c.terms.push_back({i, i, 1});
          fn(c);
        }
        break;
      case Family::Edge:
        for (auto [a, b] : g.edges()) {
          Constraint c;
          c.key.family = f;
          c.key.idx = {a + 1, b + 1, -1, -1, -1};
          c.equality = true;
          add_term(c.terms, a + 1, b + 1, 1);
          add_term(c.terms, 0, a + 1, -1);
          add_term(c.terms, 0, b + 1, -1);
          add_term(c.terms, 0, 0, 1);
          fn(c);
        }
        break;
      case Family::Triangle:
        for (int i = 0; i < points; ++i) {
          for (int j = i + 1; j < points; ++j) {
            for (int k = 0; k < points; ++k) {
              if (k != i && k != j) fn(signed_triangle(i, j, k, 1, 1, f, 0));
            }
          }
        }
        break;
      case Family::SignedTriangle:
        for (int i = 0; i < points; ++i) {
          for (int j = i + 1; j < points; ++j) {
            for (int k = 0; k < points; ++k) {
              if (k == i || k == j) continue;
              for (int v = 0; v < 3; ++v) {
                fn(signed_triangle(i, j, k, kSigns[static_cast<std::size_t>(v)][0], kSigns[static_cast<std::size_t>(v)][1], f, v));
              }
            }
          }
        }
        break;
      case Family::Pentagonal: {
        std::array<int, 5> p{};
        for (p[0] = 0; p[0] < points; ++p[0]) {
          for (p[1] = p[0] + 1; p[1] < points; ++p[1]) {
            for (p[2] = p[1] + 1; p[2] < points; ++p[2]) {
              for (p[3] = p[2] + 1; p[3] < points; ++p[3]) {
                for (p[4] = p[3] + 1; p[4] < points; ++p[4]) {
                  for (int v = 0; v < 10; ++v) fn(pentagonal_row(p, v));
                }
              }
            }
          }
        }
        break;
      }
      case Family::Psd:
        break;
    }
  }
}

std::uint64_t family_count(const Graph& g, Family f) {
  const auto points = static_cast<std::uint64_t>(g.order() + 1);
  const int p = g.order() + 1;
  switch (f) {
    case Family::UnitNorm: return points;
    case Family::Edge: return static_cast<std::uint64_t>(g.edge_count());
    case Family::Triangle: return points * binomial(p - 1, 2);
    case Family::SignedTriangle: return 3 * points * binomial(p - 1, 2);
    case Family::Pentagonal: return 10 * binomial(p, 5);
    case Family::Psd: return 0;
  }
  return 0;
}

std::uint64_t constraint_count(const Graph& g, Tier tier) {
  std::uint64_t total = 0;
  for (Family f : tier_families(tier)) total += family_count(g, f);
  return total;
}

double objective(const VectorSolution& sol) {
  double s = 0;
  for (int i = 1; i < sol.size(); ++i) s += (1 + sol.gram(0, i)) / 2;
  return s;
}

double objective_distance_form(const VectorSolution& sol) {
  double s = 0;
  for (int i = 1; i < sol.size(); ++i) s += 1 - sol.sq_distance(0, i) / 4;
  return s;
}

PsdReport psd_check(const VectorSolution& sol) {
  const int n = sol.size();
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = sol.gram(i, j);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  PsdReport r;
  r.min_eigenvalue = n == 0 ? 0.0 : es.eigenvalues().minCoeff();
  r.trace = m.trace();
  r.ok = r.min_eigenvalue >= -1e-8 * std::max(1.0, std::abs(r.trace));
  return r;
}

namespace {

// Running maximum of violations with the smallest key among ties.
struct Worst {
  bool any = false;
  double value = 0.0;
  ConstraintKey key;
  std::uint64_t checked = 0;

  [[nodiscard]] bool beats(double v) const { return !any || v >= value; }
  void offer(double v, const ConstraintKey& k) {
    if (!any || v > value || (v == value && k < key)) {
      any = true;
      value = v;
      key = k;
    }
  }
  void merge(const Worst& o) {
    checked += o.checked;
    if (o.any) offer(o.value, o.key);
  }
};

FeasibilityReport assemble(const VectorSolution& sol, Tier tier, const CheckOptions& opt,
                           const std::vector<std::pair<Family, Worst>>& per_family, bool sampled) {
  FeasibilityReport r;
  r.tier = tier;
  r.tolerance = opt.tolerance;
  r.seed = opt.seed;
  r.sampled = sampled;
  Worst total;
  for (const auto& [f, w] : per_family) {
    FamilyStat st;
    st.family = f;
    st.checked = w.checked;
    st.worst_violation = w.value;
    st.witness = w.key;
    r.families.push_back(st);
    total.merge(w);
  }
  r.worst_violation = total.value;
  r.witness = total.key;
  r.constraints_checked = total.checked;
  r.objective_vc = objective(sol);
  r.objective_distance_form = objective_distance_form(sol);
  const PsdReport psd = psd_check(sol);
  r.psd_ok = psd.ok;
  r.psd_min_eigenvalue = psd.min_eigenvalue;
  r.feasible = r.worst_violation <= opt.tolerance && psd.ok;
  if (!psd.ok && r.worst_violation <= opt.tolerance) {
    r.witness = ConstraintKey{};
    r.witness.family = Family::Psd;
  }
  return r;
}

template <class Body>
Worst parallel_rows(int rows, Body body) {
  Worst total;
#pragma omp parallel
  {
    Worst local;
#pragma omp for schedule(dynamic, 1) nowait
    for (int i = 0; i < rows; ++i) body(i, local);
#pragma omp critical(vcgap_check_merge)
    total.merge(local);
  }
  return total;
}

Worst scan_triangle(const VectorSolution& sol, bool is_signed) {
  const int p = sol.size();
  return parallel_rows(p, [&](int i, Worst& w) {
    for (int j = i + 1; j < p; ++j) {
      for (int k = 0; k < p; ++k) {
        if (k == i || k == j) continue;
        const double gij = sol.gram(i, j), gik = sol.gram(i, k), gjk = sol.gram(j, k), gkk = sol.gram(k, k);
        if (!is_signed) {
          ++w.checked;
          const double v = -(gij - gik - gjk + gkk);
          if (w.beats(v)) w.offer(v, {Family::Triangle, {i, j, k, -1, -1}, 0});
          continue;
        }
        for (int s = 0; s < 3; ++s) {
          const double si = kSigns[static_cast<std::size_t>(s)][0], sj = kSigns[static_cast<std::size_t>(s)][1];
          ++w.checked;
          const double v = -(si * sj * gij - si * gik - sj * gjk + gkk);
          if (w.beats(v)) w.offer(v, {Family::SignedTriangle, {i, j, k, -1, -1}, s});
        }
      }
    }
  });
}

inline void pentagon_tuple(const std::vector<double>& d, int p, const std::array<int, 5>& t, Worst& w) {
  std::array<double, 10> pd{};
  double total = 0;
  for (std::size_t e = 0; e < 10; ++e) {
    pd[e] = d[static_cast<std::size_t>(t[static_cast<std::size_t>(kPairs[e].first)]) * static_cast<std::size_t>(p) +
              static_cast<std::size_t>(t[static_cast<std::size_t>(kPairs[e].second)])];
    total += pd[e];
  }
  // slack = total - 2 (d(S) + d(T)).
  for (int v = 0; v < 10; ++v) {
    const auto [a, b] = kPairs[static_cast<std::size_t>(v)];
    double within_t = 0;
    for (std::size_t e = 0; e < 10; ++e) {
      const auto [x, y] = kPairs[e];
      if (x != a && x != b && y != a && y != b) within_t += pd[e];
    }
    const double slack = total - 2 * (pd[static_cast<std::size_t>(v)] + within_t);
    ++w.checked;
    if (w.beats(-slack)) w.offer(-slack, {Family::Pentagonal, t, v});
  }
}

Worst scan_pentagonal(const VectorSolution& sol, const CheckOptions& opt, bool& sampled) {
  const int p = sol.size();
  std::vector<double> d(static_cast<std::size_t>(p) * static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) d[static_cast<std::size_t>(i) * static_cast<std::size_t>(p) + static_cast<std::size_t>(j)] = sol.sq_distance(i, j);
  }
  sampled = p > opt.exhaustive_points;
  const int first_limit = sampled ? std::min(p, 1) : p;
  Worst w = parallel_rows(first_limit * p, [&](int ab, Worst& local) {
    std::array<int, 5> t{ab / p, ab % p, 0, 0, 0};
    if (t[1] <= t[0]) return;
    for (t[2] = t[1] + 1; t[2] < p; ++t[2]) {
      for (t[3] = t[2] + 1; t[3] < p; ++t[3]) {
        for (t[4] = t[3] + 1; t[4] < p; ++t[4]) pentagon_tuple(d, p, t, local);
      }
    }
  });
  if (!sampled) return w;
  std::mt19937_64 rng(opt.seed);
  std::uniform_int_distribution<int> pick(0, p - 1);
  std::vector<std::array<int, 5>> tuples(opt.pentagonal_samples);
  for (auto& t : tuples) {
    for (int filled = 0; filled < 5;) {
      const int x = pick(rng);
      if (std::find(t.begin(), t.begin() + filled, x) == t.begin() + filled) t[static_cast<std::size_t>(filled++)] = x;
    }
    std::sort(t.begin(), t.end());
  }
  w.merge(parallel_rows(static_cast<int>(tuples.size()), [&](int i, Worst& local) {
    pentagon_tuple(d, p, tuples[static_cast<std::size_t>(i)], local);
  }));
  return w;
}

}  // namespace

FeasibilityReport check_tier(const VectorSolution& sol, const Graph& g, Tier tier, const CheckOptions& opt) {
  check_size(sol, g);
  std::vector<std::pair<Family, Worst>> per_family;
  bool sampled = false;
  for (Family f : tier_families(tier)) {
    Worst w;
    switch (f) {
      case Family::UnitNorm:
        for (int i = 0; i < sol.size(); ++i) {
          ++w.checked;
          w.offer(std::abs(sol.gram(i, i) - 1), {f, {i, -1, -1, -1, -1}, 0});
        }
        break;
      case Family::Edge:
        for (auto [a, b] : g.edges()) {
          ++w.checked;
          const double r = sol.gram(a + 1, b + 1) - sol.gram(0, a + 1) - sol.gram(0, b + 1) + sol.gram(0, 0);
          w.offer(std::abs(r), {f, {a + 1, b + 1, -1, -1, -1}, 0});
        }
        break;
      case Family::Triangle: w = scan_triangle(sol, false); break;
      case Family::SignedTriangle: w = scan_triangle(sol, true); break;
      case Family::Pentagonal: w = scan_pentagonal(sol, opt, sampled); break;
      case Family::Psd: break;
    }
    per_family.emplace_back(f, w);
  }
  return assemble(sol, tier, opt, per_family, sampled);
}

namespace serial {

FeasibilityReport check_tier(const VectorSolution& sol, const Graph& g, Tier tier, const CheckOptions& opt) {
  check_size(sol, g);
  std::vector<std::pair<Family, Worst>> per_family;
  for (Family f : tier_families(tier)) per_family.emplace_back(f, Worst{});
  for_each_constraint(g, tier, [&](const Constraint& c) {
    for (auto& [f, w] : per_family) {
      if (f == c.key.family) {
        ++w.checked;
        w.offer(c.violation(sol), c.key);
      }
    }
  });
  return assemble(sol, tier, opt, per_family, false);
}

}  // namespace serial

nlohmann::json to_json(const ConstraintKey& key) {
  nlohmann::json j;
  j["family"] = to_string(key.family);
  switch (key.family) {
    case Family::UnitNorm: j["indices"] = {key.idx[0]}; break;
    case Family::Edge: j["indices"] = {key.idx[0], key.idx[1]}; break;
    case Family::Triangle: j["indices"] = {key.idx[0], key.idx[1], key.idx[2]}; break;
    case Family::SignedTriangle:
      j["indices"] = {key.idx[0], key.idx[1], key.idx[2]};
      j["signs"] = {kSigns[static_cast<std::size_t>(key.variant)][0], kSigns[static_cast<std::size_t>(key.variant)][1]};
      break;
    case Family::Pentagonal: {
      std::array<int, 2> s{};
      std::array<int, 3> t{};
      pentagonal_split(key, s, t);
      j["S"] = s;
      j["T"] = t;
      break;
    }
    case Family::Psd: break;
  }
  return j;
}

nlohmann::json to_json(const FeasibilityReport& r) {
  nlohmann::json j;
  j["tier"] = to_string(r.tier);
  j["feasible"] = r.feasible;
  j["tolerance"] = r.tolerance;
  j["worst_violation"] = r.worst_violation;
  j["witness"] = to_json(r.witness);
  j["constraints_checked"] = r.constraints_checked;
  j["objective_vc"] = r.objective_vc;
  j["objective_distance_form"] = r.objective_distance_form;
  j["psd_ok"] = r.psd_ok;
  j["psd_min_eigenvalue"] = r.psd_min_eigenvalue;
  j["sampled"] = r.sampled;
  if (r.sampled) j["seed"] = r.seed;
  j["families"] = nlohmann::json::array();
  for (const auto& f : r.families) {
    j["families"].push_back({{"family", to_string(f.family)},
                             {"checked", f.checked},
                             {"worst_violation", f.worst_violation},
                             {"witness", to_json(f.witness)}});
  }
  return j;
}

}  // namespace vcgap
