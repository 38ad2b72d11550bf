#include "vcgap/graph.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

#include "json.hpp"
#include "vcgap/cube.hpp"

namespace vcgap {

Graph::Graph(int order) {
  if (order < 0 || order > kMaxGraphOrder) {
    throw std::invalid_argument("graph order must be in [0, " + std::to_string(kMaxGraphOrder) + "]");
  }
  adj_.assign(static_cast<std::size_t>(order), 0);
}

void Graph::check_vertex(int i) const {
  if (i < 0 || i >= order()) throw std::out_of_range("vertex " + std::to_string(i) + " out of range");
}

bool Graph::has_edge(int i, int j) const {
  check_vertex(i);
  check_vertex(j);
  return ((adj_[static_cast<std::size_t>(i)] >> j) & 1u) != 0;
}

void Graph::add_edge(int i, int j) {
  check_vertex(i);
  check_vertex(j);
  if (i == j) throw std::invalid_argument("self-loop at vertex " + std::to_string(i));
  adj_[static_cast<std::size_t>(i)] |= std::uint64_t{1} << j;
  adj_[static_cast<std::size_t>(j)] |= std::uint64_t{1} << i;
}

int Graph::edge_count() const {
  int twice = 0;
  for (auto row : adj_) twice += __builtin_popcountll(row);
  return twice / 2;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < order(); ++i) {
    for (int j = i + 1; j < order(); ++j) {
      if ((adj_[static_cast<std::size_t>(i)] >> j) & 1u) out.emplace_back(i, j);
    }
  }
  return out;
}

bool Graph::is_connected() const {
  if (order() <= 1) return true;
  std::uint64_t seen = 1, frontier = 1;
  while (frontier) {
    std::uint64_t next = 0;
    for (std::uint64_t f = frontier; f; f &= f - 1) next |= adj_[static_cast<std::size_t>(__builtin_ctzll(f))];
    frontier = next & ~seen;
    seen |= next;
  }
  return __builtin_popcountll(seen) == order();
}

Graph Graph::from_edges(int order, const std::vector<std::pair<int, int>>& edges) {
  Graph g(order);
  for (auto [i, j] : edges) {
    if (i >= 0 && j >= 0 && i < order && j < order && g.has_edge(i, j)) {
      throw std::invalid_argument("duplicate edge (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
    g.add_edge(i, j);
  }
  return g;
}

Graph Graph::complete(int order) {
  Graph g(order);
  for (int i = 0; i < order; ++i) {
    for (int j = i + 1; j < order; ++j) g.add_edge(i, j);
  }
  return g;
}

Graph Graph::cycle(int order) {
  if (order < 3) throw std::invalid_argument("cycle needs at least 3 vertices");
  Graph g(order);
  for (int i = 0; i < order; ++i) g.add_edge(i, (i + 1) % order);
  return g;
}

Graph Graph::path(int order) {
  Graph g(order);
  for (int i = 0; i + 1 < order; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph Graph::complete_bipartite(int a, int b) {
  if (a < 0 || b < 0) throw std::invalid_argument("bipartite sides must be nonnegative");
  Graph g(a + b);
  for (int i = 0; i < a; ++i) {
    for (int j = 0; j < b; ++j) g.add_edge(i, a + j);
  }
  return g;
}

Graph graph_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("graph JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer()) {
    throw std::invalid_argument("graph JSON needs an integer \"n\"");
  }
  const int n = j["n"].get<int>();
  std::vector<std::pair<int, int>> edges;
  if (j.contains("edges")) {
    if (!j["edges"].is_array()) throw std::invalid_argument("graph JSON: \"edges\" must be an array");
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
        throw std::invalid_argument("graph JSON: each edge must be [i, j]");
      }
      edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
  }
  Graph g = Graph::from_edges(n, edges);
  if (j.contains("labels")) {
    for (const auto& l : j["labels"]) g.labels.push_back(l.is_string() ? l.get<std::string>() : l.dump());
    if (static_cast<int>(g.labels.size()) != n) throw std::invalid_argument("graph JSON: label count differs from n");
  }
  return g;
}

std::string graph_to_json(const Graph& g) {
  nlohmann::json j;
  j["n"] = g.order();
  j["edges"] = nlohmann::json::array();
  for (auto [a, b] : g.edges()) j["edges"].push_back({a, b});
  if (!g.labels.empty()) j["labels"] = g.labels;
  return j.dump();
}

// ---------------------------------------------------------------------------
// Hamming instances

HammingInstance hamming_graph(int n, int t) {
  if (t < 1) throw std::invalid_argument("t must be at least 1");
  if (n < 1 || n > 32) throw std::invalid_argument("cube dimension must be in [1, 32]");
  if (n % (4 * t) != 0) {
    throw std::invalid_argument("4t must divide n (n=" + std::to_string(n) + ", t=" + std::to_string(t) + ")");
  }
  HammingInstance h;
  h.n = n;
  h.t = t;
  h.edge_dot = -n + n / (2 * t);
  h.edge_distance = n - n / (4 * t);
  h.warnings.push_back("adjacency uses u.v = -lambda*n (distance n - n/(4t)), not distance n/(4t)");
  if (h.edge_distance % 2 != 0) {
    h.warnings.push_back("edge distance " + std::to_string(h.edge_distance) + " is odd; an even distance was required");
  }
  return h;
}

bool HammingInstance::adjacent(std::uint32_t u, std::uint32_t v) const {
  return hamming_distance(u, v) == edge_distance;
}

std::uint64_t HammingInstance::degree() const { return binomial(n, edge_distance); }

std::uint64_t HammingInstance::brute_force_degree(std::uint32_t u) const {
  if (n > 20) throw std::invalid_argument("brute-force degree is limited to n <= 20");
  std::uint64_t count = 0;
  for (std::uint32_t v = 0; v < (1u << n); ++v) count += adjacent(u, v) ? 1 : 0;
  return count;
}

Graph HammingInstance::to_graph() const {
  if (n > 6) throw std::invalid_argument("materialized Hamming graphs need 2^n <= 64");
  const int order = 1 << n;
  Graph g(order);
  for (int u = 0; u < order; ++u) {
    for (int v = u + 1; v < order; ++v) {
      if (adjacent(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v))) g.add_edge(u, v);
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Vertex cover

bool is_vertex_cover(const Graph& g, std::uint64_t cover) {
  for (auto [i, j] : g.edges()) {
    if (!((cover >> i) & 1u) && !((cover >> j) & 1u)) return false;
  }
  return true;
}

bool is_independent_set(const Graph& g, std::uint64_t set) {
  for (std::uint64_t s = set; s; s &= s - 1) {
    if (g.neighbors(__builtin_ctzll(s)) & set) return false;
  }
  return true;
}

namespace {

struct MisSearch {
  const Graph& g;
  std::uint64_t best = 0;
  int best_size = 0;

  void run(std::uint64_t current, int size, std::uint64_t candidates) {
    // Vertices with at most one candidate neighbour can always be taken.
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::uint64_t c = candidates; c; c &= c - 1) {
        const int v = __builtin_ctzll(c);
        if (!((candidates >> v) & 1u)) continue;
        const std::uint64_t nb = g.neighbors(v) & candidates;
        if (__builtin_popcountll(nb) <= 1) {
          current |= std::uint64_t{1} << v;
          ++size;
          candidates &= ~(nb | (std::uint64_t{1} << v));
          changed = true;
        }
      }
    }
    if (candidates == 0) {
      if (size > best_size) {
        best_size = size;
        best = current;
      }
      return;
    }
    if (size + __builtin_popcountll(candidates) <= best_size) return;
    int pick = -1, pick_deg = -1;
    for (std::uint64_t c = candidates; c; c &= c - 1) {
      const int v = __builtin_ctzll(c);
      const int d = __builtin_popcountll(g.neighbors(v) & candidates);
      if (d > pick_deg) {
        pick = v;
        pick_deg = d;
      }
    }
    const std::uint64_t bit = std::uint64_t{1} << pick;
    run(current | bit, size + 1, candidates & ~bit & ~g.neighbors(pick));
    run(current, size, candidates & ~bit);
  }
};

}  // namespace

VertexCover min_vertex_cover(const Graph& g) {
  if (g.order() > kMaxExactCoverOrder) {
    throw std::invalid_argument("exact vertex cover is limited to order <= " + std::to_string(kMaxExactCoverOrder));
  }
  const std::uint64_t all = g.order() == 0 ? 0 : ((std::uint64_t{1} << g.order()) - 1);
  MisSearch s{g};
  s.run(0, 0, all);
  return {g.order() - s.best_size, all & ~s.best};
}

FiniteMetric graph_metric(const Graph& g) {
  const int n = g.order();
  FiniteMetric m(n);
  for (int src = 0; src < n; ++src) {
    std::vector<int> dist(static_cast<std::size_t>(n), -1);
    dist[static_cast<std::size_t>(src)] = 0;
    std::queue<int> q;
    q.push(src);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (std::uint64_t nb = g.neighbors(u); nb; nb &= nb - 1) {
        const int v = __builtin_ctzll(nb);
        if (dist[static_cast<std::size_t>(v)] < 0) {
          dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
          q.push(v);
        }
      }
    }
    for (int v = 0; v < n; ++v) {
      if (dist[static_cast<std::size_t>(v)] < 0) throw std::invalid_argument("graph metric needs a connected graph");
      if (v > src) m.set(src, v, dist[static_cast<std::size_t>(v)]);
    }
  }
  m.labels = g.labels;
  return m;
}

// ---------------------------------------------------------------------------
// Canonical forms

namespace {

// Upper-triangle adjacency bits of g relabeled so that new vertex p is old
// vertex perm[p]; row-major, first pair is the most significant bit.
std::uint64_t adjacency_key(const Graph& g, const std::vector<int>& perm) {
  const int n = g.order();
  std::uint64_t key = 0;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) key = (key << 1) | (g.has_edge(perm[static_cast<std::size_t>(a)], perm[static_cast<std::size_t>(b)]) ? 1u : 0u);
  }
  return key;
}

std::vector<int> refine_colours(const Graph& g) {
  const int n = g.order();
  std::vector<int> colour(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) colour[static_cast<std::size_t>(v)] = g.degree(v);
  int classes = -1;
  while (true) {
    std::vector<std::pair<int, std::vector<int>>> sig(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
      auto& s = sig[static_cast<std::size_t>(v)];
      s.first = colour[static_cast<std::size_t>(v)];
      for (std::uint64_t nb = g.neighbors(v); nb; nb &= nb - 1) s.second.push_back(colour[static_cast<std::size_t>(__builtin_ctzll(nb))]);
      std::sort(s.second.begin(), s.second.end());
    }
    std::vector<std::pair<int, std::vector<int>>> sorted = sig;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (int v = 0; v < n; ++v) {
      colour[static_cast<std::size_t>(v)] =
          static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sig[static_cast<std::size_t>(v)]) - sorted.begin());
    }
    if (static_cast<int>(sorted.size()) == classes) break;
    classes = static_cast<int>(sorted.size());
  }
  return colour;
}

}  // namespace

Graph canonical_form(const Graph& g) {
  const int n = g.order();
  if (n > 12) throw std::invalid_argument("canonical form is limited to order <= 12");
  const auto colour = refine_colours(g);
  std::vector<std::vector<int>> cells;
  for (int v = 0; v < n; ++v) {
    const auto c = static_cast<std::size_t>(colour[static_cast<std::size_t>(v)]);
    if (cells.size() <= c) cells.resize(c + 1);
    cells[c].push_back(v);
  }
  // Odometer over the permutations of every cell.
  std::uint64_t best_key = 0;
  std::vector<int> best_perm;
  std::vector<int> perm;
  bool first = true;
  while (true) {
    perm.clear();
    for (const auto& c : cells) perm.insert(perm.end(), c.begin(), c.end());
    const std::uint64_t key = adjacency_key(g, perm);
    if (first || key > best_key) {
      best_key = key;
      best_perm = perm;
      first = false;
    }
    std::size_t ci = 0;
    while (ci < cells.size() && !std::next_permutation(cells[ci].begin(), cells[ci].end())) ++ci;
    if (ci == cells.size()) break;
  }
  Graph out(n);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (g.has_edge(best_perm[static_cast<std::size_t>(a)], best_perm[static_cast<std::size_t>(b)])) out.add_edge(a, b);
    }
  }
  if (!g.labels.empty()) {
    for (int p : best_perm) out.labels.push_back(g.labels[static_cast<std::size_t>(p)]);
  }
  return out;
}

std::vector<Graph> connected_graphs_up_to_iso(int order) {
  if (order < 1 || order > 8) throw std::invalid_argument("graph corpus order must be in [1, 8]");
  std::vector<Graph> level{Graph(1)};
  for (int n = 2; n <= order; ++n) {
    std::map<std::uint64_t, Graph> seen;
    std::vector<int> identity(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) identity[static_cast<std::size_t>(i)] = i;
    for (const auto& base : level) {
      for (std::uint64_t nb = 1; nb < (std::uint64_t{1} << (n - 1)); ++nb) {
        Graph h(n);
        for (auto [a, b] : base.edges()) h.add_edge(a, b);
        for (std::uint64_t s = nb; s; s &= s - 1) h.add_edge(n - 1, __builtin_ctzll(s));
        Graph c = canonical_form(h);
        seen.emplace(adjacency_key(c, identity), std::move(c));
      }
    }
    level.clear();
    for (auto& [key, g] : seen) level.push_back(std::move(g));
  }
  return level;
}

}  // namespace vcgap
