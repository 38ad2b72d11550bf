#pragma once

// Deliberately naive reference computations used as test oracles.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>

#include "vcgap/graph.hpp"
#include "vcgap/isoperimetry.hpp"
#include "vcgap/metric.hpp"

namespace vcgap::testing {

inline int brute_force_vc(const Graph& g) {
  int best = g.order();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g.order()); ++mask) {
    bool covers = true;
    for (auto [i, j] : g.edges())
      if (!((mask >> i) & 1u) && !((mask >> j) & 1u)) covers = false;
    if (covers) best = std::min(best, __builtin_popcountll(mask));
  }
  return best;
}

inline double brute_min_pentagonal_slack(const FiniteMetric& m) {
  double best = std::numeric_limits<double>::infinity();
  const int p = m.size();
  for (int a = 0; a < p; ++a)
    for (int b = a + 1; b < p; ++b)
      for (int x = 0; x < p; ++x)
        for (int y = x + 1; y < p; ++y)
          for (int z = y + 1; z < p; ++z) {
            if (x == a || x == b || y == a || y == b || z == a || z == b) continue;
            double cross = m(a, x) + m(a, y) + m(a, z) + m(b, x) + m(b, y) + m(b, z);
            best = std::min(best, cross - m(a, b) - m(x, y) - m(x, z) - m(y, z));
          }
  return best;
}

struct NaiveIsoCensus {
  std::set<std::uint64_t> violations, equalities;
  std::uint64_t checked = 0;
};

// Direct loop over the 2^(2^n) membership words, nonempty sets only.
inline NaiveIsoCensus naive_iso_census(int n, IsoBound kind, bool symmetric_only, bool restrict_small,
                                       double tol = 1e-9) {
  NaiveIsoCensus out;
  const std::uint32_t size = 1u << n, mask = size - 1;
  const std::uint64_t words = std::uint64_t{1} << size;
  for (std::uint64_t w = 1; w < words; ++w) {
    auto in = [&](std::uint32_t u) { return (w >> u) & 1u; };
    int count = 0, boundary = 0, p = 0;
    bool symmetric = true;
    for (std::uint32_t u = 0; u < size; ++u) {
      if (!in(u)) continue;
      ++count;
      if (in(u ^ mask)) ++p;
      else symmetric = false;
      for (int l = 0; l < n; ++l)
        if (!in(u ^ (1u << l))) ++boundary;
    }
    if (symmetric_only && !symmetric) continue;
    if (restrict_small && count > static_cast<int>(size / 2)) continue;
    ++out.checked;
    double base = n - std::log2(static_cast<double>(count));
    double bound = kind == IsoBound::Standard      ? count * base
                   : kind == IsoBound::Generalized ? count * base + p
                                                   : count * (base + 1);
    double slack = boundary - bound;
    if (slack < -tol) out.violations.insert(w);
    if (std::abs(slack) <= tol) out.equalities.insert(w);
  }
  return out;
}

template <class Records>
std::set<std::uint64_t> words_of(const Records& recs) {
  std::set<std::uint64_t> s;
  for (const auto& r : recs) s.insert(r.set.words()[0]);
  return s;
}

}  // namespace vcgap::testing
