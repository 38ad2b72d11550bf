#include "vcgap/pentagon.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include "vcgap/charikar_table.hpp"

namespace vcgap {

namespace {

constexpr std::array<std::pair<int, int>, 10> kPairs{{{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}};

// Slot pairs and triples of the partition with S = slots (a, b).
void split_slots(int variant, std::array<int, 2>& s, std::array<int, 3>& t) {
  const auto [a, b] = kPairs[static_cast<std::size_t>(variant)];
  s = {a, b};
  int k = 0;
  for (int x = 0; x < 5; ++x) {
    if (x != a && x != b) t[static_cast<std::size_t>(k++)] = x;
  }
}

struct CensusBest {
  bool any = false;
  double slack = 0.0;
  std::array<int, 5> key{};  // S then T, both sorted
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;

  void offer(double v, const std::array<int, 5>& k) {
    if (!any || v < slack || (v == slack && k < key)) {
      any = true;
      slack = v;
      key = k;
    }
  }
  void merge(const CensusBest& o) {
    checked += o.checked;
    violations += o.violations;
    if (o.any) offer(o.slack, o.key);
  }
};

void census_tuple(const FiniteMetric& m, const std::array<int, 5>& pts, double tol, CensusBest& best) {
  std::array<double, 10> pd{};
  double total = 0;
  for (std::size_t e = 0; e < 10; ++e) {
    pd[e] = m(pts[static_cast<std::size_t>(kPairs[e].first)], pts[static_cast<std::size_t>(kPairs[e].second)]);
    total += pd[e];
  }
  for (int v = 0; v < 10; ++v) {
    std::array<int, 2> s{};
    std::array<int, 3> t{};
    split_slots(v, s, t);
    const double within = pd[static_cast<std::size_t>(v)] +
                          m(pts[static_cast<std::size_t>(t[0])], pts[static_cast<std::size_t>(t[1])]) +
                          m(pts[static_cast<std::size_t>(t[0])], pts[static_cast<std::size_t>(t[2])]) +
                          m(pts[static_cast<std::size_t>(t[1])], pts[static_cast<std::size_t>(t[2])]);
    const double slack = total - 2 * within;
    ++best.checked;
    if (slack < -tol) ++best.violations;
    if (!best.any || slack <= best.slack) {
      best.offer(slack, {pts[static_cast<std::size_t>(s[0])], pts[static_cast<std::size_t>(s[1])], pts[static_cast<std::size_t>(t[0])],
                         pts[static_cast<std::size_t>(t[1])], pts[static_cast<std::size_t>(t[2])]});
    }
  }
}

PentagonalCensus finish(const FiniteMetric& m, const CensusBest& b, bool exhaustive, std::uint64_t seed) {
  PentagonalCensus c;
  c.points = m.size();
  c.any = b.any;
  c.exhaustive = exhaustive;
  c.checked = b.checked;
  c.violations = b.violations;
  c.seed = seed;
  if (b.any) {
    c.witness = pentagonal_evaluate(m, {b.key[0], b.key[1]}, {b.key[2], b.key[3], b.key[4]});
    c.min_slack = c.witness.slack;
  }
  return c;
}

}  // namespace

PentagonalWitness pentagonal_evaluate(const FiniteMetric& m, std::array<int, 2> s, std::array<int, 3> t) {
  PentagonalWitness w;
  w.S = s;
  w.T = t;
  for (int a : s) {
    for (int b : t) w.lhs += m(a, b);
  }
  w.rhs = m(s[0], s[1]) + m(t[0], t[1]) + m(t[0], t[2]) + m(t[1], t[2]);
  w.slack = w.lhs - w.rhs;
  return w;
}

PentagonalCensus pentagonal_census(const FiniteMetric& m, const PentagonalCensusOptions& opt) {
  const int p = m.size();
  CensusBest best;
  const bool exhaustive = p <= opt.exhaustive_points;
  if (p >= 5 && exhaustive) {
#pragma omp parallel
    {
      CensusBest local;
#pragma omp for schedule(dynamic, 1) nowait
      for (int a = 0; a < p; ++a) {
        std::array<int, 5> t{a, 0, 0, 0, 0};
        for (t[1] = a + 1; t[1] < p; ++t[1]) {
          for (t[2] = t[1] + 1; t[2] < p; ++t[2]) {
            for (t[3] = t[2] + 1; t[3] < p; ++t[3]) {
              for (t[4] = t[3] + 1; t[4] < p; ++t[4]) census_tuple(m, t, opt.tolerance, local);
            }
          }
        }
      }
#pragma omp critical(vcgap_pentagon_merge)
      best.merge(local);
    }
  } else if (p >= 5) {
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<int> pick(0, p - 1);
    std::vector<std::array<int, 5>> tuples(opt.samples);
    for (auto& t : tuples) {
      for (int filled = 0; filled < 5;) {
        const int x = pick(rng);
        if (std::find(t.begin(), t.begin() + filled, x) == t.begin() + filled) t[static_cast<std::size_t>(filled++)] = x;
      }
      std::sort(t.begin(), t.end());
    }
    const auto count = static_cast<std::int64_t>(tuples.size());
#pragma omp parallel
    {
      CensusBest local;
#pragma omp for schedule(static) nowait
      for (std::int64_t i = 0; i < count; ++i) census_tuple(m, tuples[static_cast<std::size_t>(i)], opt.tolerance, local);
#pragma omp critical(vcgap_pentagon_merge)
      best.merge(local);
    }
  }
  return finish(m, best, exhaustive, opt.seed);
}

namespace serial {

PentagonalCensus pentagonal_census(const FiniteMetric& m, double tolerance) {
  const int p = m.size();
  CensusBest best;
  for (int s0 = 0; s0 < p; ++s0) {
    for (int s1 = s0 + 1; s1 < p; ++s1) {
      for (int t0 = 0; t0 < p; ++t0) {
        for (int t1 = t0 + 1; t1 < p; ++t1) {
          for (int t2 = t1 + 1; t2 < p; ++t2) {
            if (t0 == s0 || t0 == s1 || t1 == s0 || t1 == s1 || t2 == s0 || t2 == s1) continue;
            const auto w = pentagonal_evaluate(m, {s0, s1}, {t0, t1, t2});
            ++best.checked;
            if (w.slack < -tolerance) ++best.violations;
            best.offer(w.slack, {s0, s1, t0, t1, t2});
          }
        }
      }
    }
  }
  return finish(m, best, true, 0);
}

}  // namespace serial

// ---------------------------------------------------------------------------
// The function E and block shapes

double E_function(const SignProfile& prof, const CharikarParams& p) {
  if (prof.k != 4 || prof.dim != p.n) throw std::invalid_argument("E needs a 4-point profile in dimension n");
  auto q = [&](int a, int b) { return q_eval(static_cast<double>(prof.dot(a, b)) / p.n, p.t); };
  return q(0, 1) + q(0, 2) + q(1, 2) - q(0, 3) - q(1, 3) - q(2, 3);
}

Rational E_function_exact(const SignProfile& prof, const CharikarParams& p) {
  if (prof.k != 4 || prof.dim != p.n) throw std::invalid_argument("E needs a 4-point profile in dimension n");
  auto q = [&](int a, int b) { return q_eval(make_rational(prof.dot(a, b), p.n), p.t); };
  Rational e = q(0, 1) + q(0, 2) + q(1, 2) - q(0, 3) - q(1, 3) - q(2, 3);
  e.canonicalize();
  return e;
}

double apex_pair_slack(const SignProfile& prof, const CharikarParams& p) {
  if (prof.k != 4 || prof.dim != p.n) throw std::invalid_argument("slack needs a 4-point profile in dimension n");
  auto d = [&](int a, int b) { return 2 - 2 * cube_gram(p, prof.dot(a, b)); };
  const double apex = 2 - 2 * p.beta;
  const double cross = 3 * apex + d(3, 0) + d(3, 1) + d(3, 2);
  const double within = apex + d(0, 1) + d(0, 2) + d(1, 2);
  return cross - within;
}

double apex_pair_slack_from_E(double e, const CharikarParams& p) {
  const double b = p.beta;
  return 2 * (1 - b * b) / p.q_one * e + 4 * (1 - b);
}

double E_threshold(const CharikarParams& p) { return -2 * p.q_one / (1 + p.beta); }

BlockShape block_shape(const SignProfile& prof) {
  if (prof.k != 4) throw std::invalid_argument("block shape needs a 4-point profile");
  const auto& c = prof.counts;
  BlockShape s;
  s.p0_agrees = c[4] == 0;
  s.pure = true;
  for (int b = 0; b < 4; ++b) {
    if (c[static_cast<std::size_t>(b)] > 0 && c[static_cast<std::size_t>(b | 4)] > 0) s.pure = false;
  }
  if (!s.pure) return s;
  // Block 3 = P1 (u1 odd), block 1 = P2 (u2 odd), block 2 = P3 (u3 odd).
  // u4 sides with u1 on P1 when its bit is clear, with u2 / u3 when set.
  s.xi = 0;
  if (c[7] == 0 && c[3] > 0) ++s.xi;
  if (c[1] == 0 && c[5] > 0) ++s.xi;
  if (c[2] == 0 && c[6] > 0) ++s.xi;
  return s;
}

// ---------------------------------------------------------------------------
// Exhaustive verification over 4-point profiles plus the apex

namespace {

// Partitions of {apex = label 0, points 1..4}: 0..3 pair the apex with a
// point, 4..9 pair two points and put the apex in the triple.
struct Partition {
  std::array<int, 2> s;
  std::array<int, 3> t;
};

std::array<Partition, 10> make_partitions() {
  std::array<Partition, 10> out{};
  for (int a = 0; a < 4; ++a) {
    Partition& p = out[static_cast<std::size_t>(a)];
    p.s = {0, a + 1};
    int k = 0;
    for (int x = 1; x <= 4; ++x) {
      if (x != a + 1) p.t[static_cast<std::size_t>(k++)] = x;
    }
  }
  int idx = 4;
  for (int a = 1; a <= 4; ++a) {
    for (int b = a + 1; b <= 4; ++b) {
      Partition& p = out[static_cast<std::size_t>(idx++)];
      p.s = {a, b};
      p.t[0] = 0;
      int k = 1;
      for (int x = 1; x <= 4; ++x) {
        if (x != a && x != b) p.t[static_cast<std::size_t>(k++)] = x;
      }
    }
  }
  return out;
}

const std::array<Partition, 10> kPartitions = make_partitions();

void profile_distances(const SignProfile& prof, std::array<std::array<int, 4>, 4>& h) {
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      int d = 0;
      for (int pat = 0; pat < 8; ++pat) {
        const int ba = a == 0 ? 0 : (pat >> (a - 1)) & 1;
        const int bb = b == 0 ? 0 : (pat >> (b - 1)) & 1;
        if (ba != bb) d += prof.counts[static_cast<std::size_t>(pat)];
      }
      h[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = d;
    }
  }
}

template <class T>
void partition_slacks(const CharikarTable<T>& tb, const std::array<std::array<int, 4>, 4>& h, std::array<T, 10>& out) {
  // Label distances; label 0 is the apex.
  std::array<std::array<T, 5>, 5> d{};
  for (int a = 1; a <= 4; ++a) {
    d[0][static_cast<std::size_t>(a)] = tb.apex_dist;
    d[static_cast<std::size_t>(a)][0] = tb.apex_dist;
    for (int b = 1; b <= 4; ++b) {
      d[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = tb.dist[static_cast<std::size_t>(h[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)])];
    }
  }
  T total = 4 * tb.apex_dist;
  for (int a = 1; a <= 4; ++a) {
    for (int b = a + 1; b <= 4; ++b) total += d[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  }
  for (std::size_t v = 0; v < 10; ++v) {
    const auto& part = kPartitions[v];
    const auto& s = part.s;
    const auto& t = part.t;
    T within = d[static_cast<std::size_t>(s[0])][static_cast<std::size_t>(s[1])];
    within += d[static_cast<std::size_t>(t[0])][static_cast<std::size_t>(t[1])];
    within += d[static_cast<std::size_t>(t[0])][static_cast<std::size_t>(t[2])];
    within += d[static_cast<std::size_t>(t[1])][static_cast<std::size_t>(t[2])];
    out[v] = total - 2 * within;
  }
}

struct GroupBest {
  bool any = false;
  double slack = 0.0;
  std::uint64_t ordinal = 0;
  int variant = 0;
  bool any_distinct = false;
  double slack_distinct = 0.0;
  std::uint64_t checked = 0;

  void consider(double v, std::uint64_t ord, int var) {
    if (!any || v < slack || (v == slack && (ord < ordinal || (ord == ordinal && var < variant)))) {
      any = true;
      slack = v;
      ordinal = ord;
      variant = var;
    }
  }
  void consider_distinct(double v) {
    if (!any_distinct || v < slack_distinct) {
      any_distinct = true;
      slack_distinct = v;
    }
  }
  void offer(double v, std::uint64_t ord, int var, bool degenerate) {
    ++checked;
    consider(v, ord, var);
    if (!degenerate) consider_distinct(v);
  }
  void merge(const GroupBest& o) {
    checked += o.checked;
    if (o.any) consider(o.slack, o.ordinal, o.variant);
    if (o.any_distinct) consider_distinct(o.slack_distinct);
  }
};

bool is_degenerate(const std::array<std::array<int, 4>, 4>& h) {
  for (int a = 0; a < 4; ++a) {
    for (int b = a + 1; b < 4; ++b) {
      if (h[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] == 0) return true;
    }
  }
  return false;
}

void scan_profile(const CharikarTable<double>& tb, const SignProfile& prof, std::uint64_t ordinal, GroupBest& pair,
                  GroupBest& triple) {
  std::array<std::array<int, 4>, 4> h{};
  profile_distances(prof, h);
  const bool degen = is_degenerate(h);
  std::array<double, 10> sl{};
  partition_slacks(tb, h, sl);
  for (int v = 0; v < 10; ++v) (v < 4 ? pair : triple).offer(sl[static_cast<std::size_t>(v)], ordinal, v, degen);
}

struct SampledTuple {
  std::array<std::uint32_t, 5> u;
};

std::vector<SampledTuple> draw_tuples(int n, std::uint64_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::uint32_t mask = n >= 32 ? 0xffffffffu : ((1u << n) - 1);
  std::vector<SampledTuple> out(samples);
  for (auto& s : out) {
    for (auto& u : s.u) u = static_cast<std::uint32_t>(rng()) & mask;
  }
  return out;
}

void scan_sampled(const CharikarTable<double>& tb, const SampledTuple& st, std::uint64_t ordinal, GroupBest& best) {
  std::array<double, 10> pd{};
  double total = 0;
  bool degen = false;
  for (std::size_t e = 0; e < 10; ++e) {
    const int h = hamming_distance(st.u[static_cast<std::size_t>(kPairs[e].first)], st.u[static_cast<std::size_t>(kPairs[e].second)]);
    degen = degen || h == 0;
    pd[e] = tb.dist[static_cast<std::size_t>(h)];
    total += pd[e];
  }
  for (int v = 0; v < 10; ++v) {
    std::array<int, 2> s{};
    std::array<int, 3> t{};
    split_slots(v, s, t);
    double within = pd[static_cast<std::size_t>(v)];
    for (std::size_t e = 0; e < 10; ++e) {
      const auto [x, y] = kPairs[e];
      if (x != s[0] && x != s[1] && y != s[0] && y != s[1]) within += pd[e];
    }
    best.offer(total - 2 * within, ordinal, v, degen);
  }
}

template <class Scan>
PentagonalCharikarReport assemble_report(const CharikarParams& p, const PentagonalVerifyOptions& opt,
                                         const std::vector<SignProfile>& profiles, Scan scan) {
  if (p.n > kMaxPentagonalProfileDim) {
    throw std::invalid_argument("pentagonal profile enumeration is limited to n <= " + std::to_string(kMaxPentagonalProfileDim));
  }
  PentagonalCharikarReport r;
  r.t = p.t;
  r.n = p.n;
  r.seed = opt.seed;
  r.enumerated = profiles.size();
  GroupBest pair, triple, pure;
  const auto tb = make_table<double>(p);
  const bool run_sampled = opt.shard.index == 0 && opt.samples > 0;
  std::vector<SampledTuple> tuples;
  if (run_sampled) tuples = draw_tuples(p.n, opt.samples, opt.seed);
  r.sampled = tuples.size();
  scan(tb, profiles, tuples, pair, triple, pure);

  std::optional<Rational> exact_pair, exact_triple;
  if (opt.rational) {
    const auto tq = make_table<Rational>(p);
    const auto count = static_cast<std::int64_t>(profiles.size());
#pragma omp parallel
    {
      std::optional<Rational> lp, lt;
      std::array<Rational, 10> sl;
      std::array<std::array<int, 4>, 4> h{};
#pragma omp for schedule(static) nowait
      for (std::int64_t i = 0; i < count; ++i) {
        profile_distances(profiles[static_cast<std::size_t>(i)], h);
        partition_slacks(tq, h, sl);
        for (std::size_t v = 0; v < 10; ++v) {
          auto& slot = v < 4 ? lp : lt;
          if (!slot || sl[v] < *slot) slot = sl[v];
        }
      }
#pragma omp critical(vcgap_pentagon_exact)
      {
        if (lp && (!exact_pair || *lp < *exact_pair)) exact_pair = lp;
        if (lt && (!exact_triple || *lt < *exact_triple)) exact_triple = lt;
      }
    }
  }

  auto make_group = [&](const std::string& name, const GroupBest& b, bool from_profiles) {
    PentagonalGroup g;
    g.placement = name;
    g.any = b.any;
    g.min_slack = b.slack;
    g.min_slack_distinct = b.any_distinct ? b.slack_distinct : b.slack;
    g.checked = b.checked;
    if (!b.any) return g;
    if (from_profiles) {
      g.witness = profiles[static_cast<std::size_t>(b.ordinal)];
      const auto& part = kPartitions[static_cast<std::size_t>(b.variant)];
      g.s = part.s;
      g.t = part.t;
      g.shape = block_shape(g.witness);
      std::array<std::array<int, 4>, 4> h{};
      profile_distances(g.witness, h);
      g.degenerate = is_degenerate(h);
    } else {
      const auto& st = tuples[static_cast<std::size_t>(b.ordinal)];
      std::array<int, 2> s{};
      std::array<int, 3> t{};
      split_slots(b.variant, s, t);
      g.s = {s[0] + 1, s[1] + 1};
      g.t = {t[0] + 1, t[1] + 1, t[2] + 1};
      g.witness.k = 5;
      g.witness.dim = p.n;
      for (auto u : st.u) g.witness.counts.push_back(static_cast<int>(u));
      for (std::size_t a = 0; a < 5; ++a) {
        for (std::size_t c = a + 1; c < 5; ++c) g.degenerate = g.degenerate || st.u[a] == st.u[c];
      }
    }
    return g;
  };
  r.groups.push_back(make_group("apex-in-pair", pair, true));
  r.groups.back().exact_min_slack = exact_pair;
  r.groups.push_back(make_group("apex-in-triple", triple, true));
  r.groups.back().exact_min_slack = exact_triple;
  if (run_sampled) r.groups.push_back(make_group("pure-sampled", pure, false));

  bool first = true;
  bool exact_negative = false;
  for (const auto& g : r.groups) {
    if (!g.any) continue;
    if (first || g.min_slack < r.min_slack) {
      r.min_slack = g.min_slack;
      r.min_placement = g.placement;
    }
    first = false;
    if (g.exact_min_slack && sgn(*g.exact_min_slack) < 0) exact_negative = true;
  }
  r.feasible = r.min_slack >= -opt.tolerance && !exact_negative;
  return r;
}

}  // namespace

PentagonalCharikarReport verify_pentagonal_charikar(const CharikarParams& p, const PentagonalVerifyOptions& opt) {
  validate(opt.shard);
  if (p.n > kMaxPentagonalProfileDim) {
    throw std::invalid_argument("pentagonal profile enumeration is limited to n <= " + std::to_string(kMaxPentagonalProfileDim));
  }
  const auto profiles = enumerate_profiles(p.n, 4, opt.shard);
  return assemble_report(p, opt, profiles,
                         [](const CharikarTable<double>& tb, const std::vector<SignProfile>& profs,
                            const std::vector<SampledTuple>& tuples, GroupBest& pair, GroupBest& triple, GroupBest& pure) {
                           const auto count = static_cast<std::int64_t>(profs.size());
#pragma omp parallel
                           {
                             GroupBest lp, lt, ls;
#pragma omp for schedule(static) nowait
                             for (std::int64_t i = 0; i < count; ++i) {
                               scan_profile(tb, profs[static_cast<std::size_t>(i)], static_cast<std::uint64_t>(i), lp, lt);
                             }
                             const auto samples = static_cast<std::int64_t>(tuples.size());
#pragma omp for schedule(static) nowait
                             for (std::int64_t i = 0; i < samples; ++i) {
                               scan_sampled(tb, tuples[static_cast<std::size_t>(i)], static_cast<std::uint64_t>(i), ls);
                             }
#pragma omp critical(vcgap_pentagon_groups)
                             {
                               pair.merge(lp);
                               triple.merge(lt);
                               pure.merge(ls);
                             }
                           }
                         });
}

namespace serial {

PentagonalCharikarReport verify_pentagonal_charikar(const CharikarParams& p, const PentagonalVerifyOptions& opt) {
  validate(opt.shard);
  if (p.n > kMaxPentagonalProfileDim) {
    throw std::invalid_argument("pentagonal profile enumeration is limited to n <= " + std::to_string(kMaxPentagonalProfileDim));
  }
  std::vector<SignProfile> profiles;
  for_each_profile(p.n, 4, [&](const SignProfile& s) { profiles.push_back(s); }, opt.shard);
  return assemble_report(p, opt, profiles,
                         [](const CharikarTable<double>& tb, const std::vector<SignProfile>& profs,
                            const std::vector<SampledTuple>& tuples, GroupBest& pair, GroupBest& triple, GroupBest& pure) {
                           for (std::size_t i = 0; i < profs.size(); ++i) scan_profile(tb, profs[i], i, pair, triple);
                           for (std::size_t i = 0; i < tuples.size(); ++i) scan_sampled(tb, tuples[i], i, pure);
                         });
}

}  // namespace serial

// ---------------------------------------------------------------------------
// Reduction steps

ConvexityReport convexity_reduction_check(const CharikarParams& p, std::uint64_t trials, std::uint64_t seed) {
  ConvexityReport r;
  std::mt19937_64 rng(seed);
  bool first = true;
  while (r.trials < trials) {
    SignProfile prof{4, p.n, std::vector<int>(8, 0)};
    for (int l = 0; l < p.n; ++l) ++prof.counts[static_cast<std::size_t>(rng() & 7u)];
    std::vector<int> mixed;
    for (int b = 0; b < 4; ++b) {
      if (prof.counts[static_cast<std::size_t>(b)] > 0 && prof.counts[static_cast<std::size_t>(b | 4)] > 0) mixed.push_back(b);
    }
    if (mixed.empty()) continue;
    const int b = mixed[static_cast<std::size_t>(rng() % mixed.size())];
    const int size = prof.counts[static_cast<std::size_t>(b)] + prof.counts[static_cast<std::size_t>(b | 4)];
    SignProfile plus = prof, minus = prof;
    plus.counts[static_cast<std::size_t>(b)] = 0;
    plus.counts[static_cast<std::size_t>(b | 4)] = size;
    minus.counts[static_cast<std::size_t>(b)] = size;
    minus.counts[static_cast<std::size_t>(b | 4)] = 0;
    const double margin = E_function(prof, p) - std::min(E_function(plus, p), E_function(minus, p));
    if (first || margin < r.worst_margin) r.worst_margin = margin;
    first = false;
    ++r.trials;
  }
  r.ok = r.trials == 0 || r.worst_margin > -1e-12;
  return r;
}

P0Report p0_reduction_check(const CharikarParams& p) {
  std::map<std::array<int, 4>, std::pair<double, double>> best;  // (min E, min E with P0 agreeing)
  for_each_profile(p.n, 4, [&](const SignProfile& prof) {
    std::array<int, 4> key{};
    for (std::size_t b = 0; b < 4; ++b) key[b] = prof.counts[b] + prof.counts[b | 4];
    const double e = E_function(prof, p);
    auto [it, inserted] = best.try_emplace(key, e, INFINITY);
    if (!inserted) it->second.first = std::min(it->second.first, e);
    if (prof.counts[4] == 0) it->second.second = std::min(it->second.second, e);
  });
  P0Report r;
  bool first = true;
  for (const auto& [key, mins] : best) {
    ++r.triples;
    const double gap = mins.second - mins.first;
    if (gap <= 1e-12) ++r.attained_with_p0;
    if (first || gap > r.worst_gap) {
      r.worst_gap = gap;
      r.witness = SignProfile{3, p.n, {key[0], key[1], key[2], key[3]}};
    }
    first = false;
  }
  return r;
}

nlohmann::json to_json(const PentagonalWitness& w) {
  return {{"S", w.S}, {"T", w.T}, {"lhs", w.lhs}, {"rhs", w.rhs}, {"slack", w.slack}};
}

nlohmann::json to_json(const PentagonalCensus& c) {
  nlohmann::json j{{"points", c.points},
                   {"min_slack", c.min_slack},
                   {"exhaustive", c.exhaustive},
                   {"checked", c.checked},
                   {"violations", c.violations}};
  if (c.any) j["witness"] = to_json(c.witness);
  if (!c.exhaustive) j["seed"] = c.seed;
  return j;
}

nlohmann::json to_json(const PentagonalCharikarReport& r) {
  nlohmann::json j{{"t", r.t},
                   {"n", r.n},
                   {"feasible", r.feasible},
                   {"min_slack", r.min_slack},
                   {"min_placement", r.min_placement},
                   {"enumerated", r.enumerated},
                   {"sampled", r.sampled},
                   {"seed", r.seed}};
  j["groups"] = nlohmann::json::array();
  for (const auto& g : r.groups) {
    nlohmann::json gj{{"placement", g.placement},
                      {"min_slack", g.min_slack},
                      {"min_slack_distinct", g.min_slack_distinct},
                      {"checked", g.checked},
                      {"partition", {{"S", g.s}, {"T", g.t}}},
                      {"degenerate", g.degenerate}};
    if (g.witness.k == 5) {
      gj["witness"] = {{"vertices", g.witness.counts}};
    } else {
      gj["witness"] = {{"profile", g.witness.counts}, {"xi", g.shape.xi}, {"pure", g.shape.pure}, {"p0_agrees", g.shape.p0_agrees}};
    }
    if (g.exact_min_slack) gj["exact_min_slack"] = to_string(*g.exact_min_slack);
    j["groups"].push_back(gj);
  }
  return j;
}

}  // namespace vcgap
