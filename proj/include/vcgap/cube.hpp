#pragma once

// Hypercube primitives. A vertex of Q_n = {-1,1}^n is a bit pattern where
// bit l set means coordinate l equals +1.

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "vcgap/parallel.hpp"

namespace vcgap {

inline constexpr int kMaxCubeDim = 32;

// Largest dimension for which a VertexSet can be materialized.
inline constexpr int kMaxVertexSetDim = 16;

struct CubePoint {
  std::uint32_t bits = 0;
  int dim = 0;

  CubePoint() = default;
  CubePoint(std::uint32_t bits, int dim);

  [[nodiscard]] CubePoint antipode() const;
  // Coordinate value in {-1,+1}.
  [[nodiscard]] int coord(int l) const { return ((bits >> l) & 1u) ? 1 : -1; }

  friend bool operator==(const CubePoint&, const CubePoint&) = default;
};

[[nodiscard]] std::uint32_t cube_mask(int dim);

// u.v = n - 2 * HammingDistance(u, v).
[[nodiscard]] int dot(const CubePoint& u, const CubePoint& v);

[[nodiscard]] inline int hamming_distance(std::uint32_t a, std::uint32_t b) {
  return __builtin_popcount(a ^ b);
}

// Subset of Q_n stored as a bit array of length 2^n.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(int dim);
  // Low 2^dim bits of `word` (dim <= 6).
  static VertexSet from_word(int dim, std::uint64_t word);
  static VertexSet full(int dim);

  [[nodiscard]] int dim() const { return dim_; }
  [[nodiscard]] std::uint32_t universe() const { return 1u << dim_; }
  [[nodiscard]] bool contains(std::uint32_t u) const {
    return (words_[u >> 6] >> (u & 63)) & 1u;
  }
  void insert(std::uint32_t u) { words_[u >> 6] |= std::uint64_t{1} << (u & 63); }
  void erase(std::uint32_t u) { words_[u >> 6] &= ~(std::uint64_t{1} << (u & 63)); }

  [[nodiscard]] int size() const;
  [[nodiscard]] VertexSet complement() const;
  [[nodiscard]] bool is_symmetric() const;
  [[nodiscard]] std::vector<std::uint32_t> members() const;
  [[nodiscard]] std::span<const std::uint64_t> words() const { return words_; }
  // Hex string of the membership array, most significant word first.
  [[nodiscard]] std::string hex() const;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  // Orders by dimension, then by the membership array read as an integer.
  friend bool operator<(const VertexSet& a, const VertexSet& b);

 private:
  int dim_ = 0;
  std::vector<std::uint64_t> words_;
};

// Number of cube edges with exactly one endpoint in S.
[[nodiscard]] int edge_boundary(const VertexSet& s);

// p(S): number of u in S with -u in S. Always even.
[[nodiscard]] int antipodal_count(const VertexSet& s);

// Terms of the first-coordinate split |E(S,S^c)| = E(S1) + E(S-1) + |S1 ^ S-1|,
// where S1 / S-1 are the projections of S onto the remaining coordinates.
struct SplitTerms {
  int upper_boundary = 0;
  int lower_boundary = 0;
  int symmetric_difference = 0;
  int total_boundary = 0;

  [[nodiscard]] bool holds() const {
    return upper_boundary + lower_boundary + symmetric_difference == total_boundary;
  }
};

[[nodiscard]] SplitTerms split_terms(const VertexSet& s);
[[nodiscard]] bool split_identity_check(const VertexSet& s);

// Counts of coordinates per sign pattern of points 2..k relative to point 1.
// Pattern bit (j-2) is set when point j differs from point 1 on that coordinate.
struct SignProfile {
  int k = 0;
  int dim = 0;
  std::vector<int> counts;

  // Pairwise dot product of points a and b (0-based) reconstructed from counts.
  [[nodiscard]] int dot(int a, int b) const;
  // A concrete tuple realizing the profile, with point 0 the all-ones vertex.
  [[nodiscard]] std::vector<CubePoint> realize() const;

  friend bool operator==(const SignProfile&, const SignProfile&) = default;
};

[[nodiscard]] SignProfile canonical_profile(std::span<const CubePoint> points, int k);

// Visits every composition of n into 2^(k-1) nonnegative parts exactly once,
// restricted to the items whose ordinal is congruent to shard.index.
void for_each_profile(int n, int k, const std::function<void(const SignProfile&)>& fn,
                      Shard shard = {});
[[nodiscard]] std::vector<SignProfile> enumerate_profiles(int n, int k, Shard shard = {});
[[nodiscard]] std::uint64_t profile_count(int n, int k);

// Exhaustive subset streams. General mode covers all 2^(2^n) sets (n <= 4),
// symmetric mode the 2^(2^(n-1)) antipodally closed sets (n <= 5).
inline constexpr int kMaxGeneralCensusDim = 4;
inline constexpr int kMaxSymmetricCensusDim = 5;

[[nodiscard]] std::uint64_t subset_count(int n, bool symmetric_only);
// The ordinal-th set of the stream (ordinal < subset_count).
[[nodiscard]] VertexSet subset_at(int n, bool symmetric_only, std::uint64_t ordinal);
void for_each_subset(int n, bool symmetric_only, const std::function<void(const VertexSet&)>& fn,
                     Shard shard = {});
[[nodiscard]] std::vector<VertexSet> enumerate_subsets(int n, bool symmetric_only,
                                                       Shard shard = {});

[[nodiscard]] std::uint64_t binomial(int n, int k);

}  // namespace vcgap
