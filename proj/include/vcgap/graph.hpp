#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vcgap/metric.hpp"

namespace vcgap {

inline constexpr int kMaxGraphOrder = 64;
inline constexpr int kMaxExactCoverOrder = 32;

// Small simple undirected graph with one adjacency word per vertex.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int order);

  static Graph from_edges(int order, const std::vector<std::pair<int, int>>& edges);
  static Graph complete(int order);
  static Graph cycle(int order);
  static Graph path(int order);
  static Graph complete_bipartite(int a, int b);

  [[nodiscard]] int order() const { return static_cast<int>(adj_.size()); }
  [[nodiscard]] bool has_edge(int i, int j) const;
  [[nodiscard]] std::uint64_t neighbors(int i) const { return adj_[static_cast<std::size_t>(i)]; }
  [[nodiscard]] int degree(int i) const { return __builtin_popcountll(neighbors(i)); }
  [[nodiscard]] int edge_count() const;
  // Edges (i, j) with i < j in lexicographic order.
  [[nodiscard]] std::vector<std::pair<int, int>> edges() const;
  [[nodiscard]] bool is_connected() const;

  void add_edge(int i, int j);

  std::vector<std::string> labels;

  friend bool operator==(const Graph& a, const Graph& b) { return a.adj_ == b.adj_; }

 private:
  void check_vertex(int i) const;
  std::vector<std::uint64_t> adj_;
};

// {"n": N, "edges": [[i, j], ...]}; rejects duplicates, loops and out-of-range ends.
[[nodiscard]] Graph graph_from_json(const std::string& text);
[[nodiscard]] std::string graph_to_json(const Graph& g);

// Charikar's gap instance on {-1,1}^n: u ~ v iff u.v = -lambda n with
// lambda = 1 - 1/(2t), i.e. Hamming distance n - n/(4t).
struct HammingInstance {
  int n = 0;
  int t = 0;
  int edge_dot = 0;
  int edge_distance = 0;
  std::vector<std::string> warnings;

  [[nodiscard]] bool adjacent(std::uint32_t u, std::uint32_t v) const;
  [[nodiscard]] std::uint64_t degree() const;
  // Neighbour count of vertex u by scanning the whole cube (n <= 20).
  [[nodiscard]] std::uint64_t brute_force_degree(std::uint32_t u) const;
  // Materialized graph; only possible while 2^n <= 64.
  [[nodiscard]] Graph to_graph() const;
};

[[nodiscard]] HammingInstance hamming_graph(int n, int t);

struct VertexCover {
  int size = 0;
  std::uint64_t cover = 0;
};

// Exact minimum vertex cover by branch and bound on the complementary
// maximum independent set (order <= 32).
[[nodiscard]] VertexCover min_vertex_cover(const Graph& g);

[[nodiscard]] bool is_vertex_cover(const Graph& g, std::uint64_t cover);
[[nodiscard]] bool is_independent_set(const Graph& g, std::uint64_t set);

// All-pairs unit-length shortest paths; throws on disconnected input.
[[nodiscard]] FiniteMetric graph_metric(const Graph& g);

// Connected graphs on exactly `order` vertices, one per isomorphism class
// (order <= 8), in canonical form.
[[nodiscard]] std::vector<Graph> connected_graphs_up_to_iso(int order);

// Canonical relabeling: the lexicographically smallest adjacency matrix over
// all labelings compatible with a colour-refinement partition.
[[nodiscard]] Graph canonical_form(const Graph& g);

}  // namespace vcgap
