#pragma once

// Sparse SDPA-style export of a formulation tier and import of externally
// produced solutions.
//
// Export layout: '*' comment lines, then the number of rows, the number of
// blocks (1), the block size N + 1, the right-hand sides, then entries
// "row block i j value" with 1-based i <= j. Row 0 is the objective
// (minimize offset + <C, X>); row k >= 1 reads <F_k, X> >= b_k. Equalities
// become the pair F >= b, -F >= -b on consecutive rows.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vcgap/graph.hpp"
#include "vcgap/relaxations.hpp"

namespace vcgap {

inline constexpr int kMaxSdpPoints = 40;

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  [[nodiscard]] int line() const { return line_; }

 private:
  int line_;
};

struct SparseEntry {
  int i = 0, j = 0;  // 0-based, i <= j
  double value = 0.0;
  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

struct SdpRow {
  std::vector<SparseEntry> entries;
  double rhs = 0.0;
  friend bool operator==(const SdpRow&, const SdpRow&) = default;
};

struct SdpInstance {
  Tier tier = Tier::Standard;
  int order = 0;       // graph vertices
  int block_size = 0;  // order + 1
  double objective_offset = 0.0;
  std::vector<SparseEntry> objective;
  std::vector<SdpRow> rows;
};

// Throws std::invalid_argument when order + 1 > 40.
[[nodiscard]] SdpInstance build_sdp(const Graph& g, Tier tier);
[[nodiscard]] std::string write_sdpa(const SdpInstance& sdp);
[[nodiscard]] std::string export_sdpa(const Graph& g, Tier tier);
// Reads text written by write_sdpa; tier and order come from the header.
[[nodiscard]] SdpInstance parse_sdpa(const std::string& text);

// Constraints with paired rows merged back into equalities.
[[nodiscard]] std::uint64_t logical_constraint_count(const SdpInstance& sdp);

struct SdpCheck {
  bool feasible = false;
  double worst_violation = 0.0;  // max over rows of b - <F, X>
  int worst_row = -1;            // 1-based, -1 when there are no rows
  bool psd_ok = false;
  double objective = 0.0;        // offset + <C, X>
};

// Evaluates every exported row on a Gram matrix.
[[nodiscard]] SdpCheck check_sdp(const SdpInstance& sdp, const VectorSolution& sol, double tol = 1e-9);

// "gram N" then N rows of N numbers, or "coords N D" then N rows of D numbers.
[[nodiscard]] VectorSolution parse_solution(const std::string& text);
[[nodiscard]] std::string write_solution(const VectorSolution& sol, bool prefer_coords = true);

// Parses and validates against the tier. Throws ParseError on malformed text
// and std::invalid_argument when the point count does not match the graph.
[[nodiscard]] std::pair<VectorSolution, FeasibilityReport> import_solution(const std::string& text, const Graph& g,
                                                                          Tier tier, const CheckOptions& opt = {});

}  // namespace vcgap
