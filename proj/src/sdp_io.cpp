#include "vcgap/sdp_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>

namespace vcgap {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v + 0.0);
  return buf;
}

SdpRow to_row(const Constraint& c, double sign) {
  std::map<std::pair<int, int>, double> acc;
  for (const auto& t : c.terms) {
    const int i = std::min(t.i, t.j);
    const int j = std::max(t.i, t.j);
    acc[{i, j}] += i == j ? t.coeff : t.coeff / 2.0;
  }
  SdpRow row;
  for (const auto& [ij, v] : acc) {
    if (v != 0.0) row.entries.push_back({ij.first, ij.second, sign * v});
  }
  row.rhs = -sign * c.constant + 0.0;
  return row;
}

SdpRow negated(const SdpRow& r) {
  SdpRow out;
  for (const auto& e : r.entries) out.entries.push_back({e.i, e.j, -e.value});
  out.rhs = -r.rhs + 0.0;
  return out;
}

double inner(const std::vector<SparseEntry>& entries, const VectorSolution& sol) {
  double s = 0;
  for (const auto& e : entries) s += (e.i == e.j ? 1.0 : 2.0) * e.value * sol.gram(e.i, e.j);
  return s;
}

// Splits on whitespace after treating SDPA punctuation as blanks.
std::vector<std::string> tokens(std::string line) {
  for (char& ch : line) {
    if (ch == ',' || ch == '{' || ch == '}' || ch == '(' || ch == ')') ch = ' ';
  }
  std::istringstream is(line);
  std::vector<std::string> out;
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

double parse_number(const std::string& t, int line) {
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end == t.c_str() || *end != '\0' || !std::isfinite(v)) throw ParseError(line, "not a number: '" + t + "'");
  return v;
}

int parse_int(const std::string& t, int line) {
  char* end = nullptr;
  const long v = std::strtol(t.c_str(), &end, 10);
  if (end == t.c_str() || *end != '\0' || v < 0 || v > 100'000'000) {
    throw ParseError(line, "not a nonnegative integer: '" + t + "'");
  }
  return static_cast<int>(v);
}

struct Lines {
  std::vector<std::string> text;
  std::size_t pos = 0;

  explicit Lines(const std::string& all) {
    std::istringstream is(all);
    std::string l;
    while (std::getline(is, l)) {
      if (!l.empty() && l.back() == '\r') l.pop_back();
      text.push_back(l);
    }
  }
  // Next line with tokens, skipping blanks; returns its 1-based number.
  int next(std::vector<std::string>& out, const std::string& what) {
    while (pos < text.size()) {
      out = tokens(text[pos++]);
      if (!out.empty()) return static_cast<int>(pos);
    }
    throw ParseError(static_cast<int>(text.size()) + 1, "unexpected end of input, expected " + what);
  }
};

}  // namespace

SdpInstance build_sdp(const Graph& g, Tier tier) {
  const int points = g.order() + 1;
  if (points > kMaxSdpPoints) {
    throw std::invalid_argument("SDP export is limited to " + std::to_string(kMaxSdpPoints) + " points");
  }
  SdpInstance sdp;
  sdp.tier = tier;
  sdp.order = g.order();
  sdp.block_size = points;
  sdp.objective_offset = g.order() / 2.0;
  for (int i = 1; i < points; ++i) sdp.objective.push_back({0, i, 0.25});
  for_each_constraint(g, tier, [&](const Constraint& c) {
    sdp.rows.push_back(to_row(c, 1.0));
    if (c.equality) sdp.rows.push_back(to_row(c, -1.0));
  });
  return sdp;
}

std::string write_sdpa(const SdpInstance& sdp) {
  std::ostringstream os;
  os << "* vcgap sparse SDP export\n";
  os << "* tier " << to_string(sdp.tier) << "\n";
  os << "* order " << sdp.order << "\n";
  os << "* point 1 is the apex v_0, point i + 1 is vertex i\n";
  os << "* constraints " << logical_constraint_count(sdp) << ", equalities split into row pairs\n";
  os << "* objective offset " << num(sdp.objective_offset) << ": minimize offset + <C, X>\n";
  os << "* row k >= 1 reads <F_k, X> >= b_k\n";
  os << sdp.rows.size() << "\n1\n" << sdp.block_size << "\n";
  for (std::size_t k = 0; k < sdp.rows.size(); ++k) os << (k ? " " : "") << num(sdp.rows[k].rhs);
  os << "\n";
  for (const auto& e : sdp.objective) os << "0 1 " << e.i + 1 << ' ' << e.j + 1 << ' ' << num(e.value) << "\n";
  for (std::size_t k = 0; k < sdp.rows.size(); ++k) {
    for (const auto& e : sdp.rows[k].entries) {
      os << k + 1 << " 1 " << e.i + 1 << ' ' << e.j + 1 << ' ' << num(e.value) << "\n";
    }
  }
  return os.str();
}

std::string export_sdpa(const Graph& g, Tier tier) { return write_sdpa(build_sdp(g, tier)); }

SdpInstance parse_sdpa(const std::string& text) {
  Lines lines(text);
  SdpInstance sdp;
  bool have_tier = false;
  bool have_order = false;
  while (lines.pos < lines.text.size()) {
    const std::string& l = lines.text[lines.pos];
    if (l.empty() || (l[0] != '*' && l[0] != '"')) break;
    const int lineno = static_cast<int>(lines.pos) + 1;
    std::istringstream is(l.substr(1));
    std::string key;
    std::string value;
    is >> key >> value;
    if (key == "tier") {
      try {
        sdp.tier = parse_tier(value);
      } catch (const std::exception& e) {
        throw ParseError(lineno, e.what());
      }
      have_tier = true;
    } else if (key == "order") {
      sdp.order = parse_int(value, lineno);
      have_order = true;
    } else if (key == "objective" && value == "offset") {
      std::string v;
      is >> v;
      if (!v.empty() && v.back() == ':') v.pop_back();
      sdp.objective_offset = parse_number(v, lineno);
    }
    ++lines.pos;
  }
  if (!have_tier || !have_order) throw ParseError(static_cast<int>(lines.pos) + 1, "header lacks tier or order");

  std::vector<std::string> tok;
  int ln = lines.next(tok, "row count");
  if (tok.size() != 1) throw ParseError(ln, "expected the row count alone");
  const int m = parse_int(tok[0], ln);
  ln = lines.next(tok, "block count");
  if (tok.size() != 1 || parse_int(tok[0], ln) != 1) throw ParseError(ln, "expected exactly one block");
  ln = lines.next(tok, "block size");
  if (tok.size() != 1) throw ParseError(ln, "expected one block size");
  sdp.block_size = parse_int(tok[0], ln);
  if (sdp.block_size != sdp.order + 1) throw ParseError(ln, "block size does not match order + 1");
  ln = lines.next(tok, "right-hand sides");
  if (static_cast<int>(tok.size()) != m) {
    throw ParseError(ln, "expected " + std::to_string(m) + " right-hand sides, got " + std::to_string(tok.size()));
  }
  sdp.rows.resize(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) sdp.rows[static_cast<std::size_t>(k)].rhs = parse_number(tok[static_cast<std::size_t>(k)], ln);
  while (lines.pos < lines.text.size()) {
    tok = tokens(lines.text[lines.pos++]);
    ln = static_cast<int>(lines.pos);
    if (tok.empty()) continue;
    if (tok.size() != 5) throw ParseError(ln, "entry needs 'row block i j value'");
    const int k = parse_int(tok[0], ln);
    const int block = parse_int(tok[1], ln);
    const int i = parse_int(tok[2], ln);
    const int j = parse_int(tok[3], ln);
    const double v = parse_number(tok[4], ln);
    if (k > m) throw ParseError(ln, "row index out of range");
    if (block != 1) throw ParseError(ln, "block index out of range");
    if (i < 1 || j < i || j > sdp.block_size) throw ParseError(ln, "entry indices must satisfy 1 <= i <= j <= size");
    const SparseEntry e{i - 1, j - 1, v};
    if (k == 0) {
      sdp.objective.push_back(e);
    } else {
      sdp.rows[static_cast<std::size_t>(k - 1)].entries.push_back(e);
    }
  }
  return sdp;
}

std::uint64_t logical_constraint_count(const SdpInstance& sdp) {
  std::uint64_t count = 0;
  for (std::size_t k = 0; k < sdp.rows.size(); ++k) {
    ++count;
    if (k + 1 < sdp.rows.size() && sdp.rows[k + 1] == negated(sdp.rows[k])) ++k;
  }
  return count;
}

SdpCheck check_sdp(const SdpInstance& sdp, const VectorSolution& sol, double tol) {
  if (sol.size() != sdp.block_size) throw std::invalid_argument("solution size does not match the SDP block");
  SdpCheck out;
  for (std::size_t k = 0; k < sdp.rows.size(); ++k) {
    const double v = sdp.rows[k].rhs - inner(sdp.rows[k].entries, sol);
    if (out.worst_row < 0 || v > out.worst_violation) {
      out.worst_violation = v;
      out.worst_row = static_cast<int>(k) + 1;
    }
  }
  out.worst_violation = std::max(0.0, out.worst_violation);
  out.psd_ok = psd_check(sol).ok;
  out.feasible = out.psd_ok && out.worst_violation <= tol;
  out.objective = sdp.objective_offset + inner(sdp.objective, sol);
  return out;
}

VectorSolution parse_solution(const std::string& text) {
  Lines lines(text);
  std::vector<std::string> tok;
  int ln = lines.next(tok, "'gram N' or 'coords N D'");
  if (tok[0] == "gram") {
    if (tok.size() != 2) throw ParseError(ln, "expected 'gram N'");
    const int n = parse_int(tok[1], ln);
    if (n < 1) throw ParseError(ln, "gram size must be positive");
    std::vector<double> gram;
    std::vector<int> row_line;
    gram.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) {
      ln = lines.next(tok, "gram row " + std::to_string(r + 1) + " of " + std::to_string(n));
      if (static_cast<int>(tok.size()) != n) {
        throw ParseError(ln, "gram row has " + std::to_string(tok.size()) + " entries, expected " + std::to_string(n));
      }
      for (const auto& t : tok) gram.push_back(parse_number(t, ln));
      row_line.push_back(ln);
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < i; ++j) {
        const double a = gram[static_cast<std::size_t>(i * n + j)];
        const double b = gram[static_cast<std::size_t>(j * n + i)];
        if (std::abs(a - b) > 1e-9 * std::max(1.0, std::abs(a))) {
          throw ParseError(row_line[static_cast<std::size_t>(i)], "gram matrix is not symmetric");
        }
      }
    }
    return VectorSolution::from_gram(n, std::move(gram));
  }
  if (tok[0] == "coords") {
    if (tok.size() != 3) throw ParseError(ln, "expected 'coords N D'");
    const int n = parse_int(tok[1], ln);
    const int d = parse_int(tok[2], ln);
    if (n < 1 || d < 1) throw ParseError(ln, "coords sizes must be positive");
    std::vector<std::vector<double>> coords;
    for (int r = 0; r < n; ++r) {
      ln = lines.next(tok, "coordinate row " + std::to_string(r + 1) + " of " + std::to_string(n));
      if (static_cast<int>(tok.size()) != d) {
        throw ParseError(ln, "coordinate row has " + std::to_string(tok.size()) + " entries, expected " +
                                 std::to_string(d));
      }
      std::vector<double> row;
      for (const auto& t : tok) row.push_back(parse_number(t, ln));
      coords.push_back(std::move(row));
    }
    return VectorSolution::from_coords(std::move(coords));
  }
  throw ParseError(ln, "expected 'gram N' or 'coords N D'");
}

std::string write_solution(const VectorSolution& sol, bool prefer_coords) {
  std::ostringstream os;
  if (prefer_coords && sol.realization()) {
    const auto& c = *sol.realization();
    os << "coords " << c.size() << ' ' << (c.empty() ? 0 : c[0].size()) << "\n";
    for (const auto& row : c) {
      for (std::size_t k = 0; k < row.size(); ++k) os << (k ? " " : "") << num(row[k]);
      os << "\n";
    }
    return os.str();
  }
  os << "gram " << sol.size() << "\n";
  for (int i = 0; i < sol.size(); ++i) {
    for (int j = 0; j < sol.size(); ++j) os << (j ? " " : "") << num(sol.gram(i, j));
    os << "\n";
  }
  return os.str();
}

std::pair<VectorSolution, FeasibilityReport> import_solution(const std::string& text, const Graph& g, Tier tier,
                                                             const CheckOptions& opt) {
  VectorSolution sol = parse_solution(text);
  if (sol.size() != g.order() + 1) {
    throw std::invalid_argument("solution has " + std::to_string(sol.size()) + " points, graph needs " +
                                std::to_string(g.order() + 1));
  }
  FeasibilityReport rep = check_tier(sol, g, tier, opt);
  return {std::move(sol), std::move(rep)};
}

}  // namespace vcgap
