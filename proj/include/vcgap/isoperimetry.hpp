#pragma once

// Exhaustive audits of edge-isoperimetric bounds on the cube, the Poincare
// inequality for symmetric sets and the one-variable lemma behind its
// constant.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "vcgap/cube.hpp"
#include "vcgap/parallel.hpp"

namespace vcgap {

struct PoincareConstants {
  double alpha = 0.0;   // ln 2 / (14 - 8 ln 2)
  double factor = 0.0;  // (8/7)(4 alpha + 1/2)
};

[[nodiscard]] PoincareConstants poincare_constants();

enum class IsoBound {
  Standard,     // |S| (n - log2 |S|)
  Generalized,  // |S| (n - log2 |S|) + p(S)
  Symmetric,    // |S| (n - log2 |S| + 1)
};

[[nodiscard]] std::string to_string(IsoBound b);

struct IsoperimetryRecord {
  int n = 0;
  VertexSet set;
  int size = 0;
  int boundary = 0;
  int p = 0;      // vertices of S whose antipode is in S
  int pairs = 0;  // p / 2
  double bound = 0.0;
  double slack = 0.0;  // boundary - bound
};

// log2 of a positive integer, exact at powers of two.
[[nodiscard]] double log2_int(std::uint64_t x);

// Empty sets get bound 0.
[[nodiscard]] IsoperimetryRecord check_generalized(const VertexSet& s, IsoBound kind = IsoBound::Generalized);

struct IsoCensusOptions {
  IsoBound kind = IsoBound::Generalized;
  bool symmetric_only = false;
  // Judge only sets with |S| <= 2^(n-1).
  bool restrict_small = false;
  double tolerance = 1e-9;
  Shard shard;
};

struct IsoCensus {
  int n = 0;
  IsoCensusOptions options;
  std::uint64_t checked = 0;  // nonempty sets judged
  std::vector<IsoperimetryRecord> violations;  // sorted by set
  std::vector<IsoperimetryRecord> equalities;  // |slack| <= tolerance, sorted by set
};

// n <= 4 over all subsets, n <= 5 over symmetric ones. The empty set is
// skipped because log2 |S| is undefined there.
[[nodiscard]] IsoCensus census_generalized(int n, const IsoCensusOptions& opt = {});

namespace serial {
[[nodiscard]] IsoCensus census_generalized(int n, const IsoCensusOptions& opt = {});
}  // namespace serial

struct PoincareRecord {
  int n = 0;
  VertexSet set;
  int size = 0;
  int boundary = 0;
  double lhs = 0.0;  // factor |S| |S^c| / 2^n
  double rhs = 0.0;  // alpha |E(S, S^c)| + |S| / 2
  double slack = 0.0;
};

// Throws std::invalid_argument unless S is antipodally closed.
[[nodiscard]] PoincareRecord poincare_check(const VertexSet& s, const PoincareConstants& c = poincare_constants());

struct PoincareCensus {
  int n = 0;
  std::uint64_t checked = 0;
  std::vector<PoincareRecord> violations;
  // Nonempty sets with |slack| <= tolerance.
  std::vector<PoincareRecord> equalities;
  double min_slack = 0.0;
};

// All 2^(2^(n-1)) symmetric sets, n <= 5.
[[nodiscard]] PoincareCensus poincare_census(int n, double tolerance = 1e-9, Shard shard = {});

namespace serial {
[[nodiscard]] PoincareCensus poincare_census(int n, double tolerance = 1e-9, Shard shard = {});
}  // namespace serial

// f(x) = (alpha (x + 1) + 1/2) / (1 - 2^-x).
[[nodiscard]] double lemma_f(double x, const PoincareConstants& c = poincare_constants());

struct LemmaScan {
  int grid = 0;
  double argmin = 0.0;
  double minval = 0.0;
  double expected_min = 0.0;  // (8/7)(4 alpha + 1/2)
  double f_at_1 = 0.0;
  double derivative_at_3 = 0.0;  // central difference
};

// Grid over [1, 64] followed by golden-section refinement. grid >= 1000.
[[nodiscard]] LemmaScan calculus_lemma_scan(int grid = 4096, const PoincareConstants& c = poincare_constants());

// CSV rows: n,set_bits_hex,size,boundary,p,bound,slack
[[nodiscard]] std::string census_csv(const std::vector<IsoperimetryRecord>& records, bool header = true);
[[nodiscard]] std::string census_csv(const std::vector<PoincareRecord>& records, bool header = true);

[[nodiscard]] nlohmann::json to_json(const PoincareConstants& c);
[[nodiscard]] nlohmann::json to_json(const IsoperimetryRecord& r);
[[nodiscard]] nlohmann::json to_json(const IsoCensus& c);
[[nodiscard]] nlohmann::json to_json(const PoincareRecord& r);
[[nodiscard]] nlohmann::json to_json(const PoincareCensus& c);
[[nodiscard]] nlohmann::json to_json(const LemmaScan& s);

}  // namespace vcgap
