#include "vcgap/cube.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace vcgap {

namespace {

void check_dim(int dim) {
  if (dim < 1 || dim > kMaxCubeDim) {
    throw std::invalid_argument("cube dimension " + std::to_string(dim) + " outside [1, 32]");
  }
}

int words_for(int dim) { return dim <= 6 ? 1 : (1 << (dim - 6)); }

}  // namespace

std::uint32_t cube_mask(int dim) {
  return dim >= 32 ? 0xffffffffu : ((1u << dim) - 1u);
}

CubePoint::CubePoint(std::uint32_t b, int d) : bits(b), dim(d) {
  check_dim(d);
  if ((b & ~cube_mask(d)) != 0) {
    throw std::invalid_argument("cube point bits exceed dimension " + std::to_string(d));
  }
}

CubePoint CubePoint::antipode() const { return CubePoint(bits ^ cube_mask(dim), dim); }

int dot(const CubePoint& u, const CubePoint& v) {
  if (u.dim != v.dim) {
    throw std::invalid_argument("dot: dimension mismatch " + std::to_string(u.dim) + " vs " +
                                std::to_string(v.dim));
  }
  return u.dim - 2 * hamming_distance(u.bits, v.bits);
}

// ---------------------------------------------------------------------------
// VertexSet

VertexSet::VertexSet(int dim) : dim_(dim) {
  if (dim < 0 || dim > kMaxVertexSetDim) {
    throw std::invalid_argument("vertex set dimension " + std::to_string(dim) +
                                " outside [0, 16]");
  }
  words_.assign(static_cast<std::size_t>(words_for(dim)), 0);
}

VertexSet VertexSet::from_word(int dim, std::uint64_t word) {
  if (dim > 6) throw std::invalid_argument("from_word needs dim <= 6");
  VertexSet s(dim);
  const int bits = 1 << dim;
  s.words_[0] = bits == 64 ? word : (word & ((std::uint64_t{1} << bits) - 1));
  return s;
}

VertexSet VertexSet::full(int dim) { return VertexSet(dim).complement(); }

int VertexSet::size() const {
  int total = 0;
  for (auto w : words_) total += __builtin_popcountll(w);
  return total;
}

VertexSet VertexSet::complement() const {
  VertexSet out(dim_);
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = ~words_[i];
  if (dim_ < 6) out.words_[0] &= (std::uint64_t{1} << (1u << dim_)) - 1;
  return out;
}

bool VertexSet::is_symmetric() const { return antipodal_count(*this) == size(); }

std::vector<std::uint32_t> VertexSet::members() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t u = 0; u < universe(); ++u) {
    if (contains(u)) out.push_back(u);
  }
  return out;
}

std::string VertexSet::hex() const {
  const std::uint32_t bits = universe();
  const int digits = static_cast<int>(std::max<std::uint32_t>(1, bits / 4));
  std::string out;
  out.reserve(static_cast<std::size_t>(digits));
  for (int d = digits - 1; d >= 0; --d) {
    unsigned nibble = 0;
    for (int b = 3; b >= 0; --b) {
      const std::uint32_t u = static_cast<std::uint32_t>(d * 4 + b);
      nibble = (nibble << 1) | ((u < bits && contains(u)) ? 1u : 0u);
    }
    out.push_back("0123456789abcdef"[nibble]);
  }
  return out;
}

bool operator<(const VertexSet& a, const VertexSet& b) {
  if (a.dim_ != b.dim_) return a.dim_ < b.dim_;
  return std::lexicographical_compare(a.words_.rbegin(), a.words_.rend(), b.words_.rbegin(),
                                      b.words_.rend());
}

int edge_boundary(const VertexSet& s) {
  int count = 0;
  const int n = s.dim();
  for (std::uint32_t u = 0; u < s.universe(); ++u) {
    if (!s.contains(u)) continue;
    for (int l = 0; l < n; ++l) {
      if (!s.contains(u ^ (1u << l))) ++count;
    }
  }
  return count;
}

int antipodal_count(const VertexSet& s) {
  const std::uint32_t mask = cube_mask(s.dim());
  int count = 0;
  for (std::uint32_t u = 0; u < s.universe(); ++u) {
    if (s.contains(u) && s.contains(u ^ mask)) ++count;
  }
  return count;
}

SplitTerms split_terms(const VertexSet& s) {
  if (s.dim() < 2) throw std::invalid_argument("split identity needs n >= 2");
  const int m = s.dim() - 1;
  VertexSet upper(m);
  VertexSet lower(m);
  for (std::uint32_t u = 0; u < s.universe(); ++u) {
    if (!s.contains(u)) continue;
    if (u & 1u) {
      upper.insert(u >> 1);
    } else {
      lower.insert(u >> 1);
    }
  }
  SplitTerms t;
  t.upper_boundary = edge_boundary(upper);
  t.lower_boundary = edge_boundary(lower);
  for (std::uint32_t v = 0; v < upper.universe(); ++v) {
    if (upper.contains(v) != lower.contains(v)) ++t.symmetric_difference;
  }
  t.total_boundary = edge_boundary(s);
  return t;
}

bool split_identity_check(const VertexSet& s) { return split_terms(s).holds(); }

// ---------------------------------------------------------------------------
// Sign profiles

namespace {

void check_arity(int k, int lo, int hi) {
  if (k < lo || k > hi) {
    throw std::invalid_argument("tuple arity " + std::to_string(k) + " outside [" +
                                std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

}  // namespace

int SignProfile::dot(int a, int b) const {
  if (a < 0 || b < 0 || a >= k || b >= k) throw std::out_of_range("profile point index");
  if (a == b) return dim;
  int total = 0;
  for (std::size_t pattern = 0; pattern < counts.size(); ++pattern) {
    const unsigned da = a == 0 ? 0u : (static_cast<unsigned>(pattern) >> (a - 1)) & 1u;
    const unsigned db = b == 0 ? 0u : (static_cast<unsigned>(pattern) >> (b - 1)) & 1u;
    total += (da == db) ? counts[pattern] : -counts[pattern];
  }
  return total;
}

std::vector<CubePoint> SignProfile::realize() const {
  std::vector<std::uint32_t> bits(static_cast<std::size_t>(k), 0);
  int coord = 0;
  for (std::size_t pattern = 0; pattern < counts.size(); ++pattern) {
    for (int c = 0; c < counts[pattern]; ++c, ++coord) {
      bits[0] |= 1u << coord;
      for (int j = 1; j < k; ++j) {
        const bool differs = (pattern >> (j - 1)) & 1u;
        if (!differs) bits[static_cast<std::size_t>(j)] |= 1u << coord;
      }
    }
  }
  std::vector<CubePoint> out;
  out.reserve(bits.size());
  for (auto b : bits) out.emplace_back(b, dim);
  return out;
}

SignProfile canonical_profile(std::span<const CubePoint> points, int k) {
  check_arity(k, 2, 4);
  if (points.size() != static_cast<std::size_t>(k)) {
    throw std::invalid_argument("canonical_profile: expected " + std::to_string(k) + " points");
  }
  const int n = points[0].dim;
  for (const auto& p : points) {
    if (p.dim != n) throw std::invalid_argument("canonical_profile: dimension mismatch");
  }
  SignProfile prof{k, n, std::vector<int>(std::size_t{1} << (k - 1), 0)};
  for (int l = 0; l < n; ++l) {
    unsigned pattern = 0;
    for (int j = 1; j < k; ++j) {
      const unsigned differs = ((points[static_cast<std::size_t>(j)].bits ^ points[0].bits) >> l) & 1u;
      pattern |= differs << (j - 1);
    }
    ++prof.counts[pattern];
  }
  return prof;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

std::uint64_t profile_count(int n, int k) {
  check_arity(k, 2, 4);
  const int parts = 1 << (k - 1);
  return binomial(n + parts - 1, parts - 1);
}

void for_each_profile(int n, int k, const std::function<void(const SignProfile&)>& fn,
                      Shard shard) {
  check_arity(k, 2, 4);
  check_dim(n);
  validate(shard);
  const int parts = 1 << (k - 1);
  SignProfile prof{k, n, std::vector<int>(static_cast<std::size_t>(parts), 0)};
  std::uint64_t ordinal = 0;
  // Lexicographic recursion over parts; the last part takes the remainder.
  auto rec = [&](auto&& self, int part, int remaining) -> void {
    if (part == parts - 1) {
      prof.counts[static_cast<std::size_t>(part)] = remaining;
      if (shard.owns(ordinal)) fn(prof);
      ++ordinal;
      return;
    }
    for (int c = remaining; c >= 0; --c) {
      prof.counts[static_cast<std::size_t>(part)] = c;
      self(self, part + 1, remaining - c);
    }
  };
  rec(rec, 0, n);
}

std::vector<SignProfile> enumerate_profiles(int n, int k, Shard shard) {
  std::vector<SignProfile> out;
  for_each_profile(n, k, [&](const SignProfile& p) { out.push_back(p); }, shard);
  return out;
}

// ---------------------------------------------------------------------------
// Subset streams

namespace {

void check_census_dim(int n, bool symmetric_only) {
  const int cap = symmetric_only ? kMaxSymmetricCensusDim : kMaxGeneralCensusDim;
  if (n < 1 || n > cap) {
    throw std::invalid_argument(std::string(symmetric_only ? "symmetric" : "general") +
                                " subset census supports 1 <= n <= " + std::to_string(cap) +
                                ", got n = " + std::to_string(n));
  }
}

}  // namespace

std::uint64_t subset_count(int n, bool symmetric_only) {
  check_census_dim(n, symmetric_only);
  const int free_bits = symmetric_only ? (1 << (n - 1)) : (1 << n);
  return std::uint64_t{1} << free_bits;
}

VertexSet subset_at(int n, bool symmetric_only, std::uint64_t ordinal) {
  if (ordinal >= subset_count(n, symmetric_only)) throw std::out_of_range("subset ordinal");
  if (!symmetric_only) return VertexSet::from_word(n, ordinal);
  // Bit r of the ordinal selects the antipodal pair {r, r ^ mask}, r < 2^(n-1).
  VertexSet s(n);
  const std::uint32_t mask = cube_mask(n);
  const std::uint32_t pairs = 1u << (n - 1);
  for (std::uint32_t r = 0; r < pairs; ++r) {
    if ((ordinal >> r) & 1u) {
      s.insert(r);
      s.insert(r ^ mask);
    }
  }
  return s;
}

void for_each_subset(int n, bool symmetric_only, const std::function<void(const VertexSet&)>& fn,
                     Shard shard) {
  validate(shard);
  const std::uint64_t total = subset_count(n, symmetric_only);
  for (std::uint64_t i = shard.index; i < total; i += shard.count) fn(subset_at(n, symmetric_only, i));
}

std::vector<VertexSet> enumerate_subsets(int n, bool symmetric_only, Shard shard) {
  std::vector<VertexSet> out;
  for_each_subset(n, symmetric_only, [&](const VertexSet& s) { out.push_back(s); }, shard);
  return out;
}

}  // namespace vcgap
