#include "vcgap/isoperimetry.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace vcgap {

PoincareConstants poincare_constants() {
  PoincareConstants c;
  const double ln2 = std::log(2.0);
  c.alpha = ln2 / (14.0 - 8.0 * ln2);
  c.factor = (8.0 / 7.0) * (4.0 * c.alpha + 0.5);
  return c;
}

std::string to_string(IsoBound b) {
  switch (b) {
    case IsoBound::Standard:
      return "standard";
    case IsoBound::Generalized:
      return "generalized";
    case IsoBound::Symmetric:
      return "symmetric";
  }
  return "?";
}

double log2_int(std::uint64_t x) {
  if (x == 0) throw std::invalid_argument("log2 of zero");
  if (std::has_single_bit(x)) return static_cast<double>(std::countr_zero(x));
  return std::log2(static_cast<double>(x));
}

IsoperimetryRecord check_generalized(const VertexSet& s, IsoBound kind) {
  IsoperimetryRecord r;
  r.n = s.dim();
  r.set = s;
  r.size = s.size();
  r.boundary = edge_boundary(s);
  r.p = antipodal_count(s);
  r.pairs = r.p / 2;
  if (r.size > 0) {
    const double x = r.n - log2_int(static_cast<std::uint64_t>(r.size));
    switch (kind) {
      case IsoBound::Standard:
        r.bound = r.size * x;
        break;
      case IsoBound::Generalized:
        r.bound = r.size * x + r.p;
        break;
      case IsoBound::Symmetric:
        r.bound = r.size * (x + 1.0);
        break;
    }
  }
  r.slack = r.boundary - r.bound;
  return r;
}

namespace {

void check_census_dim(int n, bool symmetric_only) {
  const int cap = symmetric_only ? kMaxSymmetricCensusDim : kMaxGeneralCensusDim;
  if (n < 1 || n > cap) {
    throw std::invalid_argument("census dimension " + std::to_string(n) + " outside [1, " + std::to_string(cap) + "]");
  }
}

bool by_set(const IsoperimetryRecord& a, const IsoperimetryRecord& b) { return a.set < b.set; }
bool by_set_p(const PoincareRecord& a, const PoincareRecord& b) { return a.set < b.set; }

void judge(const VertexSet& s, const IsoCensusOptions& opt, IsoCensus& out) {
  const int size = s.size();
  if (size == 0) return;
  if (opt.restrict_small && size > static_cast<int>(s.universe() / 2)) return;
  ++out.checked;
  IsoperimetryRecord r = check_generalized(s, opt.kind);
  if (r.slack < -opt.tolerance) {
    out.violations.push_back(std::move(r));
  } else if (r.slack <= opt.tolerance) {
    out.equalities.push_back(std::move(r));
  }
}

void judge(const VertexSet& s, const PoincareConstants& c, double tol, PoincareCensus& out) {
  if (s.size() == 0) return;
  PoincareRecord r = poincare_check(s, c);
  if (out.checked == 0 || r.slack < out.min_slack) out.min_slack = r.slack;
  ++out.checked;
  if (r.slack < -tol) {
    out.violations.push_back(std::move(r));
  } else if (r.slack <= tol) {
    out.equalities.push_back(std::move(r));
  }
}

}  // namespace

IsoCensus census_generalized(int n, const IsoCensusOptions& opt) {
  check_census_dim(n, opt.symmetric_only);
  validate(opt.shard);
  IsoCensus out;
  out.n = n;
  out.options = opt;
  const std::uint64_t total = subset_count(n, opt.symmetric_only);
  const auto count = static_cast<std::int64_t>(total);
#pragma omp parallel
  {
    IsoCensus local;
#pragma omp for schedule(static) nowait
    for (std::int64_t i = 0; i < count; ++i) {
      const auto ordinal = static_cast<std::uint64_t>(i);
      if (!opt.shard.owns(ordinal)) continue;
      judge(subset_at(n, opt.symmetric_only, ordinal), opt, local);
    }
#pragma omp critical(vcgap_iso_merge)
    {
      out.checked += local.checked;
      out.violations.insert(out.violations.end(), local.violations.begin(), local.violations.end());
      out.equalities.insert(out.equalities.end(), local.equalities.begin(), local.equalities.end());
    }
  }
  std::sort(out.violations.begin(), out.violations.end(), by_set);
  std::sort(out.equalities.begin(), out.equalities.end(), by_set);
  return out;
}

IsoCensus serial::census_generalized(int n, const IsoCensusOptions& opt) {
  check_census_dim(n, opt.symmetric_only);
  IsoCensus out;
  out.n = n;
  out.options = opt;
  for_each_subset(n, opt.symmetric_only, [&](const VertexSet& s) { judge(s, opt, out); }, opt.shard);
  std::sort(out.violations.begin(), out.violations.end(), by_set);
  std::sort(out.equalities.begin(), out.equalities.end(), by_set);
  return out;
}

PoincareRecord poincare_check(const VertexSet& s, const PoincareConstants& c) {
  if (!s.is_symmetric()) throw std::invalid_argument("Poincare check needs an antipodally closed set");
  PoincareRecord r;
  r.n = s.dim();
  r.set = s;
  r.size = s.size();
  r.boundary = edge_boundary(s);
  const double universe = static_cast<double>(s.universe());
  r.lhs = c.factor * r.size * (universe - r.size) / universe;
  r.rhs = c.alpha * r.boundary + r.size / 2.0;
  r.slack = r.rhs - r.lhs;
  return r;
}

PoincareCensus poincare_census(int n, double tolerance, Shard shard) {
  check_census_dim(n, true);
  validate(shard);
  const PoincareConstants c = poincare_constants();
  PoincareCensus out;
  out.n = n;
  const auto count = static_cast<std::int64_t>(subset_count(n, true));
#pragma omp parallel
  {
    PoincareCensus local;
#pragma omp for schedule(static) nowait
    for (std::int64_t i = 0; i < count; ++i) {
      const auto ordinal = static_cast<std::uint64_t>(i);
      if (!shard.owns(ordinal)) continue;
      judge(subset_at(n, true, ordinal), c, tolerance, local);
    }
#pragma omp critical(vcgap_poincare_merge)
    {
      if (local.checked > 0 && (out.checked == 0 || local.min_slack < out.min_slack)) out.min_slack = local.min_slack;
      out.checked += local.checked;
      out.violations.insert(out.violations.end(), local.violations.begin(), local.violations.end());
      out.equalities.insert(out.equalities.end(), local.equalities.begin(), local.equalities.end());
    }
  }
  std::sort(out.violations.begin(), out.violations.end(), by_set_p);
  std::sort(out.equalities.begin(), out.equalities.end(), by_set_p);
  return out;
}

PoincareCensus serial::poincare_census(int n, double tolerance, Shard shard) {
  check_census_dim(n, true);
  const PoincareConstants c = poincare_constants();
  PoincareCensus out;
  out.n = n;
  for_each_subset(n, true, [&](const VertexSet& s) { judge(s, c, tolerance, out); }, shard);
  std::sort(out.violations.begin(), out.violations.end(), by_set_p);
  std::sort(out.equalities.begin(), out.equalities.end(), by_set_p);
  return out;
}

double lemma_f(double x, const PoincareConstants& c) {
  return (c.alpha * (x + 1.0) + 0.5) / (1.0 - std::exp2(-x));
}

LemmaScan calculus_lemma_scan(int grid, const PoincareConstants& c) {
  if (grid < 1000) throw std::invalid_argument("lemma scan needs at least 1000 grid points");
  constexpr double lo = 1.0;
  constexpr double hi = 64.0;
  const double step = (hi - lo) / (grid - 1);
  int best = 0;
  double best_val = lemma_f(lo, c);
  for (int i = 1; i < grid; ++i) {
    const double v = lemma_f(lo + step * i, c);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  double a = lo + step * std::max(0, best - 1);
  double b = lo + step * std::min(grid - 1, best + 1);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = lemma_f(x1, c);
  double f2 = lemma_f(x2, c);
  for (int it = 0; it < 200 && b - a > 1e-12; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = lemma_f(x1, c);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = lemma_f(x2, c);
    }
  }
  LemmaScan s;
  s.grid = grid;
  s.argmin = (a + b) / 2.0;
  s.minval = lemma_f(s.argmin, c);
  s.expected_min = c.factor;
  s.f_at_1 = lemma_f(1.0, c);
  const double h = 1e-5;
  s.derivative_at_3 = (lemma_f(3.0 + h, c) - lemma_f(3.0 - h, c)) / (2.0 * h);
  return s;
}

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v + 0.0);
  return buf;
}

}  // namespace

std::string census_csv(const std::vector<IsoperimetryRecord>& records, bool header) {
  std::ostringstream os;
  if (header) os << "n,set_bits_hex,size,boundary,p,bound,slack\n";
  for (const auto& r : records) {
    os << r.n << ",0x" << r.set.hex() << ',' << r.size << ',' << r.boundary << ',' << r.p << ',' << fmt(r.bound) << ','
       << fmt(r.slack) << '\n';
  }
  return os.str();
}

std::string census_csv(const std::vector<PoincareRecord>& records, bool header) {
  std::ostringstream os;
  if (header) os << "n,set_bits_hex,size,boundary,lhs,rhs,slack\n";
  for (const auto& r : records) {
    os << r.n << ",0x" << r.set.hex() << ',' << r.size << ',' << r.boundary << ',' << fmt(r.lhs) << ',' << fmt(r.rhs)
       << ',' << fmt(r.slack) << '\n';
  }
  return os.str();
}

nlohmann::json to_json(const PoincareConstants& c) { return {{"alpha", c.alpha}, {"factor", c.factor}}; }

nlohmann::json to_json(const IsoperimetryRecord& r) {
  return {{"n", r.n},         {"set_bits_hex", "0x" + r.set.hex()},
          {"size", r.size},   {"boundary", r.boundary},
          {"p", r.p},         {"antipodal_pairs", r.pairs},
          {"bound", r.bound}, {"slack", r.slack + 0.0}};
}

nlohmann::json to_json(const IsoCensus& c) {
  nlohmann::json v = nlohmann::json::array();
  for (const auto& r : c.violations) v.push_back(to_json(r));
  nlohmann::json e = nlohmann::json::array();
  for (const auto& r : c.equalities) e.push_back(to_json(r));
  return {{"n", c.n},
          {"bound", to_string(c.options.kind)},
          {"symmetric_only", c.options.symmetric_only},
          {"restrict_small", c.options.restrict_small},
          {"tolerance", c.options.tolerance},
          {"checked", c.checked},
          {"violation_count", c.violations.size()},
          {"violations", v},
          {"equality_count", c.equalities.size()},
          {"equalities", e}};
}

nlohmann::json to_json(const PoincareRecord& r) {
  return {{"n", r.n},       {"set_bits_hex", "0x" + r.set.hex()},
          {"size", r.size}, {"boundary", r.boundary},
          {"lhs", r.lhs},   {"rhs", r.rhs},
          {"slack", r.slack + 0.0}};
}

nlohmann::json to_json(const PoincareCensus& c) {
  nlohmann::json v = nlohmann::json::array();
  for (const auto& r : c.violations) v.push_back(to_json(r));
  nlohmann::json e = nlohmann::json::array();
  for (const auto& r : c.equalities) e.push_back(to_json(r));
  return {{"n", c.n},
          {"constants", to_json(poincare_constants())},
          {"checked", c.checked},
          {"min_slack", c.min_slack + 0.0},
          {"violation_count", c.violations.size()},
          {"violations", v},
          {"equality_count", c.equalities.size()},
          {"equalities", e}};
}

nlohmann::json to_json(const LemmaScan& s) {
  return {{"grid", s.grid},
          {"argmin", s.argmin},
          {"minval", s.minval},
          {"expected_min", s.expected_min},
          {"f_at_1", s.f_at_1},
          {"derivative_at_3", s.derivative_at_3}};
}

}  // namespace vcgap
