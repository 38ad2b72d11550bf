#pragma once

// Gram values and squared distances of the Charikar vectors indexed by the
// Hamming distance h of the underlying cube vertices.

#include <vector>

#include "vcgap/charikar.hpp"

namespace vcgap {

template <class T>
struct CharikarTable {
  int n = 0;
  T beta{};
  int edge_h = 0;
  std::vector<T> gram;  // y_u . y_v
  std::vector<T> dist;  // |y_u - y_v|^2
  T apex_dist{};        // |y_0 - y_u|^2
};

template <class T>
CharikarTable<T> make_table(const CharikarParams& p);

template <>
CharikarTable<double> make_table<double>(const CharikarParams& p);
template <>
CharikarTable<Rational> make_table<Rational>(const CharikarParams& p);

}  // namespace vcgap
