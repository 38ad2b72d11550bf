#include <algorithm>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"
#include "vcgap/graph.hpp"

using namespace vcgap;

namespace {

std::vector<std::vector<double>> floyd_warshall(const Graph& g) {
  const int n = g.order();
  const double inf = 1e18;
  std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
  for (int i = 0; i < n; ++i) d[i][i] = 0;
  for (auto [i, j] : g.edges()) d[i][j] = d[j][i] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

}  // namespace

TEST_CASE("named graphs") {
  CHECK(Graph::complete(5).edge_count() == 10);
  CHECK(Graph::cycle(5).edge_count() == 5);
  CHECK(Graph::path(4).edge_count() == 3);
  auto k23 = Graph::complete_bipartite(2, 3);
  CHECK(k23.edge_count() == 6);
  CHECK(k23.has_edge(0, 2));
  CHECK_FALSE(k23.has_edge(0, 1));
  CHECK_THROWS_AS(Graph(3).add_edge(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(Graph(65), std::invalid_argument);
}

TEST_CASE("minimum vertex cover agrees with exhaustive search") {
  testing::Gen gen(21);
  for (int trial = 0; trial < 200; ++trial) {
    int n = gen.uniform(0, 14);
    auto g = gen.graph(n, gen.real(0.1, 0.9));
    auto vc = min_vertex_cover(g);
    CHECK(vc.size == testing::brute_force_vc(g));
    CHECK(__builtin_popcountll(vc.cover) == vc.size);
    CHECK(is_vertex_cover(g, vc.cover));
    std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    CHECK(is_independent_set(g, all & ~vc.cover));
  }
  CHECK(min_vertex_cover(Graph::complete(6)).size == 5);
  CHECK(min_vertex_cover(Graph::cycle(7)).size == 4);
  CHECK(min_vertex_cover(Graph::complete_bipartite(2, 3)).size == 2);
}

TEST_CASE("vertex cover scales to 32 vertices") {
  testing::Gen gen(22);
  auto g = gen.graph(32, 0.3);
  auto vc = min_vertex_cover(g);
  CHECK(is_vertex_cover(g, vc.cover));
  for (int v = 0; v < 32; ++v)
    if ((vc.cover >> v) & 1u) CHECK_FALSE(is_vertex_cover(g, vc.cover & ~(std::uint64_t{1} << v)));
  CHECK_THROWS_AS((void)min_vertex_cover(Graph(33)), std::invalid_argument);
}

TEST_CASE("graph metric is the shortest path metric") {
  testing::Gen gen(23);
  for (int trial = 0; trial < 50; ++trial) {
    auto g = gen.connected_graph(gen.uniform(1, 12), 0.25);
    auto m = graph_metric(g);
    auto d = floyd_warshall(g);
    for (int i = 0; i < g.order(); ++i)
      for (int j = 0; j < g.order(); ++j) CHECK(m(i, j) == d[i][j]);
  }
  Graph split(4);
  split.add_edge(0, 1);
  split.add_edge(2, 3);
  CHECK_THROWS_AS((void)graph_metric(split), std::invalid_argument);
}

TEST_CASE("graph json round trip and rejection") {
  auto g = Graph::cycle(6);
  CHECK(graph_from_json(graph_to_json(g)) == g);
  CHECK_THROWS((void)graph_from_json(R"({"n": 3, "edges": [[0, 1], [1, 0]]})"));
  CHECK_THROWS((void)graph_from_json(R"({"n": 3, "edges": [[0, 0]]})"));
  CHECK_THROWS((void)graph_from_json(R"({"n": 3, "edges": [[0, 3]]})"));
  CHECK_THROWS((void)graph_from_json("{"));
}

TEST_CASE("hamming instance degrees") {
  for (auto [n, t] : {std::pair{4, 1}, {8, 1}, {8, 2}, {12, 1}, {16, 2}}) {
    auto h = hamming_graph(n, t);
    CHECK(h.edge_distance == n - n / (4 * t));
    CHECK(h.edge_dot == n - 2 * h.edge_distance);
    CHECK(h.degree() == h.brute_force_degree(0));
    CHECK(h.degree() == h.brute_force_degree(cube_mask(n) >> 1));
  }
  auto small = hamming_graph(4, 1).to_graph();
  CHECK(small.order() == 16);
  for (int i = 0; i < 16; ++i) CHECK(small.degree(i) == 4);
  CHECK_THROWS((void)hamming_graph(6, 1));
}

TEST_CASE("connected graphs up to isomorphism") {
  const int expected[] = {0, 1, 1, 2, 6, 21, 112, 853};
  for (int n = 1; n <= 7; ++n) {
    auto list = connected_graphs_up_to_iso(n);
    CHECK(list.size() == static_cast<std::size_t>(expected[n]));
    for (const auto& g : list) {
      CHECK(g.is_connected());
      CHECK(canonical_form(g) == g);
    }
  }
}

TEST_CASE("canonical form is invariant under relabeling") {
  testing::Gen gen(24);
  for (int trial = 0; trial < 100; ++trial) {
    int n = gen.uniform(2, 8);
    auto g = gen.graph(n, 0.5);
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), gen.engine());
    Graph h(n);
    for (auto [i, j] : g.edges()) h.add_edge(perm[i], perm[j]);
    CHECK(canonical_form(g) == canonical_form(h));
  }
}
