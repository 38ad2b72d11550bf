#include <sys/wait.h>

#include <array>
#include <set>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "vcgap/graph.hpp"
#include "vcgap/metric.hpp"
#include "vcgap/relaxations.hpp"
#include "vcgap/sdp_io.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run lab(const std::string& args, const std::string& env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") + std::string(VCGAP_LAB) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch() {
  auto dir = fs::temp_directory_path() / "vcgap_cli_test";
  fs::create_directories(dir);
  return dir;
}

void put(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("isoperimetry census at n = 2 reports violations") {
  auto r = lab("--no-timestamp isoperimetry census --n 2");
  CHECK(r.code == 1);
  auto j = json::parse(r.out);
  CHECK(j["status"] == "violations");
  CHECK(j["reason"] == "isoperimetric_violation");
  std::set<std::string> sets;
  for (const auto& v : j["census"]["violations"]) sets.insert(v["set_bits_hex"].get<std::string>());
  for (const char* s : {"0x7", "0xb", "0xd", "0xe", "0xf"}) CHECK(sets.count(s) == 1);
  CHECK(lab("--no-timestamp isoperimetry census --n 4 --restrict-small").code == 0);
  CHECK(lab("--no-timestamp isoperimetry census --n 5 --symmetric --restrict-small").code == 0);
}

TEST_CASE("poincare census at n = 4 passes and lists equalities") {
  auto r = lab("--no-timestamp poincare census --n 4");
  CHECK(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["status"] == "pass");
  CHECK(j["census"]["equalities"].size() == 8);
}

TEST_CASE("charikar verify passes on all four tiers") {
  auto r = lab("--no-timestamp charikar verify --t 1 --n 8 --tiers edge,triangle,karakostas,pentagonal");
  CHECK(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["tiers"].size() == 4);
  CHECK(lab("--no-timestamp charikar embed --t 1 --n 4").code == 0);
}

TEST_CASE("reports are deterministic without the timestamp") {
  for (const char* args : {"--no-timestamp poincare census --n 3", "--no-timestamp --format csv isoperimetry census --n 3",
                           "--no-timestamp lemma scan", "--no-timestamp --format csv tensor analyze --n 3 --exact-c1"}) {
    auto a = lab(args);
    auto b = lab(args);
    auto c = lab(args, "VC_GAP_LAB_THREADS=1");
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
    CHECK(a.code == 0 + (std::string(args).find("isoperimetry") != std::string::npos));
  }
  auto stamped = lab("lemma scan");
  CHECK(json::parse(stamped.out).contains("generated_at"));
  auto csv = lab("--format csv lemma scan");
  CHECK(csv.out.rfind("# generated ", 0) == 0);
}

TEST_CASE("usage and io errors exit 2 with a reason") {
  auto unknown = lab("lemma scan --frobnicate");
  CHECK(unknown.code == 2);
  CHECK(json::parse(unknown.out)["reason"] == "usage");
  CHECK(lab("").code == 2);
  CHECK(lab("--format xml lemma scan").code == 2);
  auto missing = lab("graph vc --input /nonexistent/graph.json");
  CHECK(missing.code == 2);
  CHECK(json::parse(missing.out)["reason"] == "io");
  auto bad = scratch() / "bad.json";
  put(bad, "{\"n\": 2, \"edges\": [[0, 5]]}");
  auto parse = lab("graph vc --input " + bad.string());
  CHECK(parse.code == 2);
  CHECK(json::parse(parse.out)["reason"] == "parse");
  CHECK(lab("--shard 3/2 poincare census --n 3").code == 2);
  CHECK(lab("pentagonal census").code == 2);
}

TEST_CASE("graph, metric and sdp commands") {
  auto dir = scratch();
  auto graph = dir / "k23.json";
  put(graph, vcgap::graph_to_json(vcgap::Graph::complete_bipartite(2, 3)));
  auto vc = lab("--no-timestamp graph vc --input " + graph.string());
  CHECK(vc.code == 0);
  CHECK(json::parse(vc.out)["vc"] == 2);

  auto metric = dir / "k23_metric.json";
  put(metric, vcgap::metric_to_json(vcgap::graph_metric(vcgap::Graph::complete_bipartite(2, 3))));
  auto pent = lab("--no-timestamp pentagonal census --metric " + metric.string());
  CHECK(pent.code == 1);
  CHECK(json::parse(pent.out)["census"]["min_slack"].get<double>() == doctest::Approx(-2));
  CHECK(lab("--no-timestamp pentagonal census --charikar 1,8").code == 0);
  auto c1 = lab("--no-timestamp embed c1 --exact --metric " + metric.string());
  CHECK(c1.code == 0);
  CHECK(json::parse(c1.out)["report"]["c1_exact"].get<double>() == doctest::Approx(4.0 / 3.0));

  auto sdp = dir / "k23.sdpa";
  auto exp = lab("--no-timestamp sdp export --graph " + graph.string() + " --tier pentagonal --out " + sdp.string());
  CHECK(exp.code == 0);
  CHECK(slurp(sdp) == vcgap::export_sdpa(vcgap::Graph::complete_bipartite(2, 3), vcgap::Tier::Pentagonal));

  auto sol = dir / "k23_sol.txt";
  auto integral = vcgap::VectorSolution::integral(vcgap::Graph::complete_bipartite(2, 3), 0b00011);
  put(sol, vcgap::write_solution(integral));
  CHECK(lab("sdp validate --graph " + graph.string() + " --tier pentagonal --solution " + sol.string()).code == 0);
  auto gram = integral.gram_data();
  gram[1 * 6 + 3] += 0.1;
  gram[3 * 6 + 1] += 0.1;
  put(sol, vcgap::write_solution(vcgap::VectorSolution::from_gram(6, gram), false));
  auto bad = lab("sdp validate --graph " + graph.string() + " --tier standard --solution " + sol.string());
  CHECK(bad.code == 1);
  CHECK(json::parse(bad.out)["reason"] == "infeasible");
  put(sol, "gram 6\n1 0 0\n");
  auto trunc = lab("sdp validate --graph " + graph.string() + " --tier standard --solution " + sol.string());
  CHECK(trunc.code == 2);
  CHECK(json::parse(trunc.out)["reason"] == "parse");
}

TEST_CASE("report written to --out") {
  auto path = scratch() / "lemma.json";
  fs::remove(path);
  auto r = lab("--no-timestamp --out " + path.string() + " lemma scan");
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(json::parse(slurp(path))["status"] == "pass");
}
