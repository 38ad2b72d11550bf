#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "support.hpp"
#include "vcgap/metric.hpp"
#include "vcgap/pentagon.hpp"
#include "vcgap/sdp_io.hpp"

using namespace vcgap;

namespace {

const Tier kTiers[] = {Tier::Standard, Tier::Triangle, Tier::Karakostas, Tier::Pentagonal};

struct Named {
  const char* name;
  Graph g;
};

std::vector<Named> corpus() {
  return {{"k3", Graph::complete(3)}, {"c5", Graph::cycle(5)}, {"k23", Graph::complete_bipartite(2, 3)}};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("row counts") {
  auto k3 = build_sdp(Graph::complete(3), Tier::Standard);
  CHECK(k3.rows.size() == 14);  // 3 edges and 4 unit norms, each as a row pair
  CHECK(logical_constraint_count(k3) == 7);
  CHECK(k3.block_size == 4);
  CHECK(k3.objective_offset == doctest::Approx(1.5));
  auto empty = build_sdp(Graph(4), Tier::Standard);
  CHECK(logical_constraint_count(empty) == 5);
  for (const auto& row : empty.rows) {
    REQUIRE(row.entries.size() == 1);
    CHECK(row.entries[0].i == row.entries[0].j);
  }
  auto k23 = build_sdp(Graph::complete_bipartite(2, 3), Tier::Pentagonal);
  CHECK(logical_constraint_count(k23) == constraint_count(Graph::complete_bipartite(2, 3), Tier::Pentagonal));
  // Pentagonal rows on six points equal the pentagonal census of any six-point metric.
  auto census = pentagonal_census(graph_metric(Graph::path(6)));
  CHECK(family_count(Graph::complete_bipartite(2, 3), Family::Pentagonal) == census.checked);
  CHECK_THROWS_AS((void)build_sdp(Graph(40), Tier::Standard), std::invalid_argument);
  CHECK_NOTHROW((void)build_sdp(Graph(39), Tier::Standard));
}

TEST_CASE("export and parse round trip preserves counts and verdicts") {
  testing::Gen gen(81);
  for (const auto& [name, g] : corpus())
    for (Tier tier : kTiers) {
      CAPTURE(name);
      auto text = export_sdpa(g, tier);
      CHECK(export_sdpa(g, tier) == text);
      auto sdp = parse_sdpa(text);
      CHECK(write_sdpa(sdp) == text);
      CHECK(sdp.tier == tier);
      CHECK(sdp.order == g.order());
      CHECK(logical_constraint_count(sdp) == constraint_count(g, tier));
      auto vc = min_vertex_cover(g);
      std::vector<VectorSolution> sols{VectorSolution::integral(g, vc.cover)};
      for (int k = 0; k < 5; ++k) sols.push_back(gen.unit_solution(g.order() + 1, 3));
      for (const auto& sol : sols) {
        auto direct = check_tier(sol, g, tier);
        auto viaf = check_sdp(sdp, sol);
        CHECK(direct.feasible == viaf.feasible);
        CHECK(viaf.worst_violation == doctest::Approx(direct.worst_violation).epsilon(1e-9));
        CHECK(viaf.objective == doctest::Approx(direct.objective_vc).epsilon(1e-12));
        auto [back, rep] = import_solution(write_solution(sol), g, tier);
        CHECK(rep.feasible == direct.feasible);
        CHECK(rep.worst_violation == doctest::Approx(direct.worst_violation).epsilon(1e-9));
        CHECK(rep.witness == direct.witness);
      }
    }
}

TEST_CASE("integral solution round trip reports the cover size") {
  for (const auto& [name, g] : corpus()) {
    auto vc = min_vertex_cover(g);
    auto sol = VectorSolution::integral(g, vc.cover);
    for (bool coords : {true, false}) {
      auto [back, rep] = import_solution(write_solution(sol, coords), g, Tier::Pentagonal);
      CHECK(rep.feasible);
      CHECK(rep.objective_vc == doctest::Approx(vc.size));
    }
  }
}

TEST_CASE("a perturbed Gram entry fails with its edge as witness") {
  auto g = Graph::complete(3);
  auto sol = VectorSolution::integral(g, 0b011);
  auto gram = sol.gram_data();
  const int p = sol.size();
  gram[1 * p + 2] += 0.1;
  gram[2 * p + 1] += 0.1;
  auto [back, rep] = import_solution(write_solution(VectorSolution::from_gram(p, gram), false), g, Tier::Standard);
  CHECK_FALSE(rep.feasible);
  CHECK(rep.witness.family == Family::Edge);
  CHECK(rep.witness.idx[0] == 1);
  CHECK(rep.witness.idx[1] == 2);
}

TEST_CASE("parse errors carry line numbers") {
  auto text = export_sdpa(Graph::cycle(5), Tier::Standard);
  // Cut inside the right-hand side line.
  auto rhs_line = text.find("\n22\n1\n6\n");
  REQUIRE(rhs_line != std::string::npos);
  std::string truncated = text.substr(0, rhs_line + 8);
  try {
    (void)parse_sdpa(truncated);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 11);
  }
  std::string bad_entry = text + "3 1 2 x 0.5\n";
  try {
    (void)parse_sdpa(bad_entry);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    int lines = 0;
    for (char c : text) lines += c == '\n';
    CHECK(e.line() == lines + 1);
  }
  try {
    (void)parse_solution("gram 2\n1 0\n0.5 1\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  try {
    (void)parse_solution("coords 3 1\n1\n-1\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
  CHECK_THROWS_AS((void)import_solution("coords 2 1\n1\n1\n", Graph::complete(3), Tier::Standard),
                  std::invalid_argument);
}

TEST_CASE("golden exports are byte stable") {
  const std::string dir = VCGAP_GOLDEN_DIR;
  const bool update = std::getenv("VCGAP_UPDATE_GOLDEN") != nullptr;
  for (const auto& [name, g] : corpus())
    for (Tier tier : kTiers) {
      std::string path = dir + "/" + name + "_" + to_string(tier) + ".sdpa";
      auto text = export_sdpa(g, tier);
      if (update) {
        std::ofstream(path, std::ios::binary) << text;
        continue;
      }
      CAPTURE(path);
      CHECK(slurp(path) == text);
    }
}
