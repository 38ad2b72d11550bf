// vcgap-lab: batch front end over the vcgap library.
//
// Exit codes: 0 every check passed, 1 violations found (report attached),
// 2 usage, parse or I/O error. Every report carries "status" and "reason".

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "vcgap/charikar.hpp"
#include "vcgap/embed.hpp"
#include "vcgap/graph.hpp"
#include "vcgap/isoperimetry.hpp"
#include "vcgap/metric.hpp"
#include "vcgap/parallel.hpp"
#include "vcgap/pentagon.hpp"
#include "vcgap/relaxations.hpp"
#include "vcgap/sdp_io.hpp"

using nlohmann::json;
using namespace vcgap;

namespace {

struct RunConfig {
  std::string format = "json";
  std::string out;
  bool no_timestamp = false;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  std::string shard = "0/1";
};

// Thrown for bad input files and bad flag values; maps to exit code 2.
struct UsageError : std::runtime_error {
  UsageError(std::string reason, const std::string& what) : std::runtime_error(what), reason(std::move(reason)) {}
  std::string reason;
};

struct Outcome {
  int code = 0;
  std::string reason = "ok";
  json body = json::object();
  std::string csv;  // preformatted rows; empty means flatten body
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("io", "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("io", "cannot write " + path);
  out << text;
  if (!out) throw UsageError("io", "write failed for " + path);
}

Shard parse_shard(const std::string& spec) {
  auto slash = spec.find('/');
  if (slash == std::string::npos) throw UsageError("usage", "shard must read INDEX/COUNT");
  Shard s;
  try {
    s.index = std::stoull(spec.substr(0, slash));
    s.count = std::stoull(spec.substr(slash + 1));
    validate(s);
  } catch (const std::exception& e) {
    throw UsageError("usage", "bad shard '" + spec + "': " + e.what());
  }
  return s;
}

Graph load_graph(const std::string& path) {
  try {
    return graph_from_json(read_file(path));
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError("parse", path + ": " + e.what());
  }
}

FiniteMetric load_metric(const std::string& path) {
  try {
    return metric_from_json(read_file(path));
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError("parse", path + ": " + e.what());
  }
}

Tier tier_arg(const std::string& s) {
  try {
    return parse_tier(s);
  } catch (const std::exception& e) {
    throw UsageError("usage", e.what());
  }
}

void flatten(const json& j, const std::string& prefix, std::ostringstream& os) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), os);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), os);
  } else {
    os << prefix << ',' << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

std::string timestamp() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void emit(const RunConfig& cfg, const std::string& command, Outcome& o) {
  static const char* kStatus[] = {"pass", "violations", "error"};
  std::string text;
  if (cfg.format == "csv") {
    std::ostringstream os;
    if (!cfg.no_timestamp) os << "# generated " << timestamp() << '\n';
    os << "command," << command << "\nstatus," << kStatus[o.code] << "\nreason," << o.reason << '\n';
    if (o.csv.empty()) {
      flatten(o.body, "", os);
    } else {
      os << o.csv;
    }
    text = os.str();
  } else {
    json j = o.body;
    j["command"] = command;
    j["status"] = kStatus[o.code];
    j["reason"] = o.reason;
    j["exit_code"] = o.code;
    if (!cfg.no_timestamp) j["generated_at"] = timestamp();
    text = j.dump(2) + "\n";
  }
  if (cfg.out.empty() || o.code == 2) {
    std::cout << text;
  } else {
    write_file(cfg.out, text);
  }
}

Outcome charikar_verify(const RunConfig& cfg, int t, int n, const std::string& tiers) {
  auto p = charikar_params(t, n);
  Outcome o;
  o.body["params"] = to_json(p);
  CharikarSolution sol(p);
  o.body["objective"] = sol.objective();
  o.body["gap"] = to_json(gap_report(p));
  VerifyOptions vo;
  vo.tolerance = cfg.tol;
  vo.seed = cfg.seed;
  vo.shard = parse_shard(cfg.shard);
  bool ok = true;
  std::vector<Tier> list;
  try {
    list = parse_tier_list(tiers);
  } catch (const std::exception& e) {
    throw UsageError("usage", e.what());
  }
  for (Tier tier : list) {
    auto v = verify_construction(p, tier, vo);
    ok = ok && v.feasible;
    o.body["tiers"].push_back(to_json(v));
  }
  if (!ok) {
    o.code = 1;
    o.reason = "constraint_violation";
  }
  return o;
}

Outcome charikar_embed(int t, int n) {
  auto p = charikar_params(t, n);
  auto e = appendix_embedding(p);
  Outcome o;
  o.body["params"] = to_json(p);
  o.body["embedding"] = to_json(e);
  if (std::abs(e.norm - e.expected_norm) > 1e-9) {
    o.code = 1;
    o.reason = "norm_mismatch";
  }
  return o;
}

Outcome pentagonal(const RunConfig& cfg, const std::string& metric_path, const std::string& charikar) {
  Outcome o;
  if (!metric_path.empty() == !charikar.empty()) throw UsageError("usage", "give exactly one of --metric, --charikar");
  if (!metric_path.empty()) {
    auto m = load_metric(metric_path);
    PentagonalCensusOptions opt;
    opt.tolerance = cfg.tol;
    opt.seed = cfg.seed;
    auto c = pentagonal_census(m, opt);
    o.body["census"] = to_json(c);
    if (c.violations > 0) {
      o.code = 1;
      o.reason = "pentagonal_violation";
    }
    return o;
  }
  int t = 0, n = 0;
  if (std::sscanf(charikar.c_str(), "%d,%d", &t, &n) != 2) throw UsageError("usage", "--charikar expects T,N");
  auto p = charikar_params(t, n);
  PentagonalVerifyOptions opt;
  opt.tolerance = cfg.tol;
  opt.seed = cfg.seed;
  opt.shard = parse_shard(cfg.shard);
  auto r = verify_pentagonal_charikar(p, opt);
  o.body["report"] = to_json(r);
  if (!r.feasible) {
    o.code = 1;
    o.reason = "pentagonal_violation";
  }
  return o;
}

Outcome isoperimetry(const RunConfig& cfg, int n, bool symmetric, bool restrict_small, const std::string& bound) {
  IsoCensusOptions opt;
  opt.symmetric_only = symmetric;
  opt.restrict_small = restrict_small;
  opt.tolerance = cfg.tol;
  opt.shard = parse_shard(cfg.shard);
  if (bound.empty()) {
    opt.kind = symmetric ? IsoBound::Symmetric : IsoBound::Generalized;
  } else if (bound == "standard") {
    opt.kind = IsoBound::Standard;
  } else if (bound == "generalized") {
    opt.kind = IsoBound::Generalized;
  } else if (bound == "symmetric") {
    opt.kind = IsoBound::Symmetric;
  } else {
    throw UsageError("usage", "unknown bound " + bound);
  }
  auto c = census_generalized(n, opt);
  Outcome o;
  o.body["census"] = to_json(c);
  o.csv = "# violations\n" + census_csv(c.violations) + "# equalities\n" + census_csv(c.equalities);
  if (!c.violations.empty()) {
    o.code = 1;
    o.reason = "isoperimetric_violation";
  }
  return o;
}

Outcome poincare(const RunConfig& cfg, int n) {
  auto c = poincare_census(n, cfg.tol, parse_shard(cfg.shard));
  Outcome o;
  o.body["constants"] = to_json(poincare_constants());
  o.body["census"] = to_json(c);
  o.csv = "# violations\n" + census_csv(c.violations) + "# equalities\n" + census_csv(c.equalities);
  if (!c.violations.empty()) {
    o.code = 1;
    o.reason = "poincare_violation";
  }
  return o;
}

Outcome lemma() {
  auto s = calculus_lemma_scan();
  Outcome o;
  o.body["scan"] = to_json(s);
  if (std::abs(s.argmin - 3.0) > 1e-6 || std::abs(s.minval - s.expected_min) > 1e-9) {
    o.code = 1;
    o.reason = "lemma_mismatch";
  }
  return o;
}

Outcome tensor(const RunConfig& cfg, int n, bool exact_c1) {
  if (n < 1 || n > kMaxTensorDim) throw UsageError("usage", "--n must lie in [1, 8]");
  auto tm = tensor_metric(n);
  auto ids = check_tensor_identities(n);
  auto tri = triangle_census(tm.metric, cfg.tol);
  auto neg = negative_type_report(tm.metric);
  Outcome o;
  o.body["n"] = n;
  o.body["points"] = tm.metric.size();
  o.body["identities"] = {{"origin_distance_ok", ids.origin_distance_ok},
                          {"edge_distance_ok", ids.edge_distance_ok},
                          {"pair_sum_ok", ids.pair_sum_ok},
                          {"pair_sum", ids.pair_sum},
                          {"expected_pair_sum", ids.expected_pair_sum}};
  o.body["triangle"] = {{"checked", tri.checked}, {"violations", tri.violations}, {"min_slack", tri.min_slack}};
  o.body["negative_type"] = {{"ok", neg.negative_type}, {"min_eigenvalue", neg.min_eigenvalue}};
  if (n >= 2) o.body["poincare_distortion_bound"] = poincare_distortion_bound(n);
  if (exact_c1) {
    if (tm.metric.size() <= kMaxDistortionPoints) {
      DistortionOptions opt;
      opt.tolerance = cfg.tol;
      o.body["c1"] = to_json(min_distortion_l1(tm.metric, opt));
    } else {
      o.body["c1"] = to_json(poincare_report(n));
    }
  }
  bool ok = ids.origin_distance_ok && ids.edge_distance_ok && ids.pair_sum_ok && tri.violations == 0 &&
            neg.negative_type;
  if (!ok) {
    o.code = 1;
    o.reason = "tensor_identity_failure";
  }
  return o;
}

Outcome embed_c1(const RunConfig& cfg, const std::string& path, bool exact) {
  auto m = load_metric(path);
  if (m.size() > kMaxDistortionPoints) throw UsageError("usage", "at most 17 points for the exact LP");
  DistortionOptions opt;
  opt.tolerance = cfg.tol;
  opt.mode = exact ? LpMode::Rational : LpMode::Float;
  Outcome o;
  o.body["report"] = to_json(min_distortion_l1(m, opt));
  return o;
}

Outcome graph_vc(const std::string& path) {
  auto g = load_graph(path);
  if (g.order() > kMaxExactCoverOrder) throw UsageError("usage", "exact cover limited to 32 vertices");
  auto vc = min_vertex_cover(g);
  Outcome o;
  o.body["order"] = g.order();
  o.body["edges"] = g.edge_count();
  o.body["vc"] = vc.size;
  o.body["independence_number"] = g.order() - vc.size;
  std::vector<int> cover;
  for (int i = 0; i < g.order(); ++i)
    if ((vc.cover >> i) & 1u) cover.push_back(i);
  o.body["cover"] = cover;
  return o;
}

Outcome sdp_export(const std::string& graph_path, const std::string& tier, const std::string& out) {
  auto g = load_graph(graph_path);
  Tier t = tier_arg(tier);
  if (g.order() + 1 > kMaxSdpPoints) throw UsageError("usage", "graph order + 1 exceeds 40");
  auto sdp = build_sdp(g, t);
  write_file(out, write_sdpa(sdp));
  Outcome o;
  o.body["path"] = out;
  o.body["tier"] = to_string(t);
  o.body["rows"] = sdp.rows.size();
  o.body["constraints"] = logical_constraint_count(sdp);
  o.body["objective_offset"] = sdp.objective_offset;
  return o;
}

Outcome sdp_validate(const RunConfig& cfg, const std::string& graph_path, const std::string& tier,
                     const std::string& solution) {
  auto g = load_graph(graph_path);
  Tier t = tier_arg(tier);
  auto text = read_file(solution);
  CheckOptions opt;
  opt.tolerance = cfg.tol;
  opt.seed = cfg.seed;
  Outcome o;
  try {
    auto [sol, rep] = import_solution(text, g, t, opt);
    o.body["report"] = to_json(rep);
    if (!rep.feasible) {
      o.code = 1;
      o.reason = "infeasible";
    }
  } catch (const ParseError& e) {
    throw UsageError("parse", solution + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError("dimension_mismatch", e.what());
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  configure_workers_from_env();
  RunConfig cfg;
  CLI::App app{"vcgap-lab: vertex cover SDP gap experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", cfg.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", cfg.out, "Report path (default stdout)");
  app.add_flag("--no-timestamp", cfg.no_timestamp, "Omit the generation time");
  app.add_option("--seed", cfg.seed, "Seed for sampled censuses");
  app.add_option("--tol", cfg.tol, "Feasibility tolerance");
  app.add_option("--shard", cfg.shard, "Census shard INDEX/COUNT");

  std::string command;
  std::function<Outcome()> action;
  int t = 1, n = 0;
  std::string tiers = "edge,triangle,karakostas,pentagonal", metric, charikar, input, tier, out, solution, bound;
  bool symmetric = false, restrict_small = false, exact = false;

  auto* ch = app.add_subcommand("charikar", "Charikar gap construction");
  ch->require_subcommand(1);
  auto* chv = ch->add_subcommand("verify", "Check the construction against formulation tiers");
  chv->add_option("--t", t)->required();
  chv->add_option("--n", n)->required();
  chv->add_option("--tiers", tiers);
  chv->callback([&] { command = "charikar verify"; action = [&] { return charikar_verify(cfg, t, n, tiers); }; });
  auto* che = ch->add_subcommand("embed", "Explicit l1 embedding of the construction");
  che->add_option("--t", t)->required();
  che->add_option("--n", n)->required();
  che->callback([&] { command = "charikar embed"; action = [&] { return charikar_embed(t, n); }; });

  auto* pe = app.add_subcommand("pentagonal", "Pentagonal inequality audits");
  pe->require_subcommand(1);
  auto* pec = pe->add_subcommand("census", "Minimum pentagonal slack");
  pec->add_option("--metric", metric);
  pec->add_option("--charikar", charikar, "T,N");
  pec->callback([&] { command = "pentagonal census"; action = [&] { return pentagonal(cfg, metric, charikar); }; });

  auto* iso = app.add_subcommand("isoperimetry", "Edge-isoperimetric audits");
  iso->require_subcommand(1);
  auto* isoc = iso->add_subcommand("census", "Exhaustive subset census");
  isoc->add_option("--n", n)->required();
  isoc->add_flag("--symmetric", symmetric, "Only antipodally closed sets");
  isoc->add_flag("--restrict-small", restrict_small, "Judge only |S| <= 2^(n-1)");
  isoc->add_option("--bound", bound, "standard|generalized|symmetric");
  isoc->callback([&] {
    command = "isoperimetry census";
    action = [&] { return isoperimetry(cfg, n, symmetric, restrict_small, bound); };
  });

  auto* po = app.add_subcommand("poincare", "Poincare inequality audits");
  po->require_subcommand(1);
  auto* poc = po->add_subcommand("census", "All symmetric sets");
  poc->add_option("--n", n)->required();
  poc->callback([&] { command = "poincare census"; action = [&] { return poincare(cfg, n); }; });

  auto* le = app.add_subcommand("lemma", "One-variable lemma");
  le->require_subcommand(1);
  le->add_subcommand("scan", "Locate the minimum")->callback([&] {
    command = "lemma scan";
    action = [] { return lemma(); };
  });

  auto* te = app.add_subcommand("tensor", "Tensor cube metric");
  te->require_subcommand(1);
  auto* tea = te->add_subcommand("analyze", "Identities, negative type and distortion");
  tea->add_option("--n", n)->required();
  tea->add_flag("--exact-c1", exact, "Solve the distortion LP when small enough");
  tea->callback([&] { command = "tensor analyze"; action = [&] { return tensor(cfg, n, exact); }; });

  auto* em = app.add_subcommand("embed", "l1 embeddings");
  em->require_subcommand(1);
  auto* emc = em->add_subcommand("c1", "Minimum l1 distortion");
  emc->add_option("--metric", metric)->required();
  emc->add_flag("--exact", exact, "Rational arithmetic");
  emc->callback([&] { command = "embed c1"; action = [&] { return embed_c1(cfg, metric, exact); }; });

  auto* gr = app.add_subcommand("graph", "Graph utilities");
  gr->require_subcommand(1);
  auto* grv = gr->add_subcommand("vc", "Exact minimum vertex cover");
  grv->add_option("--input", input)->required();
  grv->callback([&] { command = "graph vc"; action = [&] { return graph_vc(input); }; });

  auto* sd = app.add_subcommand("sdp", "Sparse SDP export and solution import");
  sd->require_subcommand(1);
  auto* sde = sd->add_subcommand("export", "Write a formulation tier");
  sde->add_option("--graph", input)->required();
  sde->add_option("--tier", tier)->required();
  sde->add_option("--out", out, "SDP file path")->required();
  sde->callback([&] { command = "sdp export"; action = [&] { return sdp_export(input, tier, out); }; });
  auto* sdv = sd->add_subcommand("validate", "Check a solution against a tier");
  sdv->add_option("--graph", input)->required();
  sdv->add_option("--tier", tier)->required();
  sdv->add_option("--solution", solution)->required();
  sdv->callback([&] {
    command = "sdp validate";
    action = [&] { return sdp_validate(cfg, input, tier, solution); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    Outcome o;
    o.code = 2;
    o.reason = "usage";
    o.body["message"] = e.what();
    std::cerr << "error: " << e.what() << "\n";
    emit(cfg, command.empty() ? "none" : command, o);
    return 2;
  }

  Outcome o;
  try {
    o = action();
  } catch (const UsageError& e) {
    o = Outcome{2, e.reason, {{"message", e.what()}}, {}};
  } catch (const std::invalid_argument& e) {
    o = Outcome{2, "invalid_argument", {{"message", e.what()}}, {}};
  } catch (const std::exception& e) {
    o = Outcome{2, "error", {{"message", e.what()}}, {}};
  }
  if (o.code == 2) std::cerr << "error: " << o.body["message"].get<std::string>() << "\n";
  try {
    emit(cfg, command, o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return o.code;
}
