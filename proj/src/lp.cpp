#include "vcgap/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>
#include <string>

namespace vcgap {

std::string to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "unknown";
}

namespace {

template <class T>
struct Num;

template <>
struct Num<double> {
  static bool neg(double x, double eps) { return x < -eps; }
  static bool pos(double x, double eps) { return x > eps; }
  static bool zero(double x, double eps) { return std::abs(x) <= eps; }
  static void clean(double& x) {
    if (std::abs(x) < 1e-13) x = 0.0;
  }
  static bool finite(double x) { return std::isfinite(x); }
  static double abs(double x) { return std::abs(x); }
};

template <>
struct Num<Rational> {
  static bool neg(const Rational& x, double) { return sgn(x) < 0; }
  static bool pos(const Rational& x, double) { return sgn(x) > 0; }
  static bool zero(const Rational& x, double) { return sgn(x) == 0; }
  static void clean(Rational&) {}
  static bool finite(const Rational&) { return true; }
  static Rational abs(const Rational& x) { return sgn(x) < 0 ? Rational(-x) : x; }
};

template <class T>
class Tableau {
 public:
  Tableau(int rows, int cols) : m_(rows), n_(cols), a_(static_cast<std::size_t>(rows) * (cols + 1), T(0)),
                                obj_(static_cast<std::size_t>(cols) + 1, T(0)), basis_(static_cast<std::size_t>(rows), -1) {}

  T& at(int i, int j) { return a_[static_cast<std::size_t>(i) * (n_ + 1) + j]; }
  const T& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * (n_ + 1) + j]; }
  T& rhs(int i) { return at(i, n_); }
  int rows() const { return m_; }
  int cols() const { return n_; }
  std::vector<int>& basis() { return basis_; }
  std::vector<T>& obj() { return obj_; }

  void pivot(int r, int c) {
    const T inv = T(1) / at(r, c);
    for (int j = 0; j <= n_; ++j) {
      if (!Num<T>::zero(at(r, j), 0.0)) at(r, j) *= inv;
    }
    at(r, c) = T(1);
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      eliminate(&at(i, 0), r, c);
    }
    eliminate(obj_.data(), r, c);
    basis_[static_cast<std::size_t>(r)] = c;
  }

  // Reset the objective row to `cost` priced out against the current basis.
  void set_objective(const std::vector<T>& cost) {
    cost_ = cost;
    for (int j = 0; j < n_; ++j) obj_[static_cast<std::size_t>(j)] = cost[static_cast<std::size_t>(j)];
    obj_[static_cast<std::size_t>(n_)] = T(0);
    for (int i = 0; i < m_; ++i) {
      const T cb = cost[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])];
      if (Num<T>::zero(cb, 0.0)) continue;
      for (int j = 0; j <= n_; ++j) {
        if (!Num<T>::zero(at(i, j), 0.0)) obj_[static_cast<std::size_t>(j)] -= cb * at(i, j);
      }
    }
  }

  // Simplex on the current objective row. Dantzig pricing falls back to
  // Bland's rule for good once `degenerate_limit` degenerate pivots run in a row.
  LpStatus run(const std::vector<bool>& allowed, double eps, std::int64_t& pivots, const SimplexOptions& opt) {
    bool bland = opt.rule == PivotRule::Bland;
    int degenerate_run = 0;
    for (;;) {
      int enter = -1;
      for (int j = 0; j < n_; ++j) {
        if (!allowed[static_cast<std::size_t>(j)] || !Num<T>::neg(obj_[static_cast<std::size_t>(j)], eps)) continue;
        if (enter < 0 || (!bland && obj_[static_cast<std::size_t>(j)] < obj_[static_cast<std::size_t>(enter)])) enter = j;
        if (bland) break;
      }
      if (enter < 0) return LpStatus::Optimal;
      int leave = -1;
      T best{};
      for (int i = 0; i < m_; ++i) {
        const T& coef = at(i, enter);
        if (!Num<T>::pos(coef, eps)) continue;
        // Round-off can push a basic value slightly below zero.
        T ratio = Num<T>::neg(at(i, n_), 0.0) ? T(0) : T(at(i, n_) / coef);
        if (leave < 0) {
          leave = i;
          best = ratio;
          continue;
        }
        if constexpr (std::is_same_v<T, double>) {
          const double slack = eps * (1.0 + std::abs(best));
          // Among near ties Bland takes the lowest basic column, Dantzig the
          // largest pivot element.
          const bool tie_wins = bland ? basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)]
                                      : coef > at(leave, enter);
          if (ratio < best - slack) {
            leave = i;
            best = ratio;
          } else if (ratio <= best + slack && tie_wins) {
            leave = i;
            best = std::min(best, ratio);
          }
        } else {
          const int cmp_r = cmp(ratio, best);
          if (cmp_r < 0 || (cmp_r == 0 && basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])) {
            leave = i;
            best = ratio;
          }
        }
      }
      if (leave < 0) return LpStatus::Unbounded;
      if (!bland) {
        degenerate_run = Num<T>::zero(best, eps) ? degenerate_run + 1 : 0;
        if (degenerate_run >= opt.degenerate_limit) bland = true;
      }
      pivot(leave, enter);
      if (opt.refactor_interval > 0 && (pivots + 1) % opt.refactor_interval == 0) refactor();
      if (++pivots > opt.pivot_guard) {
        throw PivotGuardTripped("simplex exceeded pivot guard of " + std::to_string(opt.pivot_guard));
      }
    }
  }

  // Snapshot of the constraint rows used by refactor() and thaw().
  void freeze() {
    orig_ = a_;
    orig_basis_ = basis_;
  }
  void thaw() {
    a_ = orig_;
    basis_ = orig_basis_;
  }

  // Pivots the given columns into the basis. False when some column cannot
  // enter or the resulting basis is not primal feasible.
  bool crash(const std::vector<int>& wanted, double eps) {
    std::vector<bool> keep(static_cast<std::size_t>(n_), false);
    for (int c : wanted) keep[static_cast<std::size_t>(c)] = true;
    for (int c : wanted) {
      if (std::find(basis_.begin(), basis_.end(), c) != basis_.end()) continue;
      int row = -1;
      for (int i = 0; i < m_; ++i) {
        if (keep[static_cast<std::size_t>(basis_[static_cast<std::size_t>(i)])]) continue;
        if (Num<T>::zero(at(i, c), eps)) continue;
        if (row < 0 || Num<T>::abs(at(i, c)) > Num<T>::abs(at(row, c))) row = i;
      }
      if (row < 0) return false;
      pivot(row, c);
    }
    for (int i = 0; i < m_; ++i) {
      if (Num<T>::neg(rhs(i), 1e3 * eps)) return false;
      if (Num<T>::neg(rhs(i), 0.0)) rhs(i) = T(0);
    }
    return true;
  }

  // Recomputes B^-1 [A | b] and the objective row from the snapshot, which
  // discards the round-off accumulated by float pivots.
  void refactor() {
    if constexpr (std::is_same_v<T, double>) {
      if (orig_.empty() || m_ == 0) return;
      if (orig_.size() != a_.size()) return;
      using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
      Mat full = Eigen::Map<const Mat>(orig_.data(), m_, n_ + 1);
      if (!shift_.empty()) {
        for (int i = 0; i < m_; ++i) full(i, n_) += shift_[static_cast<std::size_t>(i)];
      }
      Mat b(m_, m_);
      for (int k = 0; k < m_; ++k) b.col(k) = full.col(basis_[static_cast<std::size_t>(k)]);
      const Eigen::PartialPivLU<Mat> lu(b);
      Mat x = lu.solve(full);
      for (int i = 0; i < m_; ++i) {
        for (int j = 0; j <= n_; ++j) {
          double v = x(i, j);
          Num<T>::clean(v);
          at(i, j) = v;
        }
        at(i, basis_[static_cast<std::size_t>(i)]) = 1.0;
      }
      if (!cost_.empty()) set_objective(cost_);
    }
  }

  // Raises every basic value by a small distinct amount, so the current basis
  // stays primal feasible and degenerate ties disappear. The shift is kept in
  // original row space so refactor() preserves it until clear_shift().
  void perturb(double scale) {
    if constexpr (std::is_same_v<T, double>) {
      shift_.assign(static_cast<std::size_t>(m_), 0.0);
      for (int k = 0; k < m_; ++k) {
        const auto h = static_cast<double>((static_cast<std::uint64_t>(k) * 2654435761u) % 1000u);
        const double delta = scale * (1.0 + h / 1000.0);
        rhs(k) += delta;
        const int col = basis_[static_cast<std::size_t>(k)];
        for (int i = 0; i < m_; ++i) {
          shift_[static_cast<std::size_t>(i)] += delta * orig_[static_cast<std::size_t>(i) * (n_ + 1) + col];
        }
      }
    }
  }

  void clear_shift() {
    shift_.clear();
    refactor();
  }

  // Dual simplex from a dual feasible basis until every basic value is
  // nonnegative. False when the program is primal infeasible.
  bool dual_cleanup(const std::vector<bool>& allowed, double eps, std::int64_t& pivots, const SimplexOptions& opt) {
    for (;;) {
      int leave = -1;
      for (int i = 0; i < m_; ++i) {
        if (Num<T>::neg(rhs(i), eps) && (leave < 0 || rhs(i) < rhs(leave))) leave = i;
      }
      if (leave < 0) {
        for (int i = 0; i < m_; ++i) {
          if (Num<T>::neg(rhs(i), 0.0)) rhs(i) = T(0);
        }
        return true;
      }
      int enter = -1;
      T best{};
      for (int j = 0; j < n_; ++j) {
        if (!allowed[static_cast<std::size_t>(j)] || !Num<T>::neg(at(leave, j), eps)) continue;
        T ratio = obj_[static_cast<std::size_t>(j)] / -at(leave, j);
        if (Num<T>::neg(ratio, 0.0)) ratio = T(0);
        if (enter < 0 || ratio < best) {
          enter = j;
          best = ratio;
        }
      }
      if (enter < 0) return false;
      pivot(leave, enter);
      if (++pivots > opt.pivot_guard) {
        throw PivotGuardTripped("simplex exceeded pivot guard of " + std::to_string(opt.pivot_guard));
      }
    }
  }

  [[nodiscard]] bool dual_feasible(const std::vector<bool>& allowed, double eps) const {
    for (int j = 0; j < n_; ++j) {
      if (allowed[static_cast<std::size_t>(j)] && Num<T>::neg(obj_[static_cast<std::size_t>(j)], eps)) return false;
    }
    return true;
  }

  void drop_row(int r) {
    if (!orig_.empty()) {
      orig_.erase(orig_.begin() + static_cast<std::ptrdiff_t>(r) * (n_ + 1),
                  orig_.begin() + static_cast<std::ptrdiff_t>(r + 1) * (n_ + 1));
    }
    a_.erase(a_.begin() + static_cast<std::ptrdiff_t>(r) * (n_ + 1),
             a_.begin() + static_cast<std::ptrdiff_t>(r + 1) * (n_ + 1));
    basis_.erase(basis_.begin() + r);
    --m_;
  }

 private:
  void eliminate(T* row, int r, int c) {
    if (Num<T>::zero(row[c], 0.0)) return;
    const T f = row[c];
    const T* src = &at(r, 0);
    for (int j = 0; j <= n_; ++j) {
      if (Num<T>::zero(src[j], 0.0)) continue;
      row[j] -= f * src[j];
      Num<T>::clean(row[j]);
    }
    row[c] = T(0);
  }

  int m_;
  int n_;
  std::vector<T> a_;
  std::vector<T> obj_;
  std::vector<int> basis_;
  std::vector<T> cost_;
  std::vector<T> orig_;  // initial [A | b], kept for reinversion
  std::vector<int> orig_basis_;
  std::vector<double> shift_;  // perturbation of the original right-hand sides
};

constexpr int kNoCode = std::numeric_limits<int>::min();

template <class T>
BasicLpSolution<T> run_simplex(const BasicLinearProgram<T>& lp, const SimplexOptions& opt) {
  lp.validate();
  const double eps = std::is_same_v<T, double> ? opt.tolerance : 0.0;
  const int nvars = lp.num_variables();
  const int m = lp.num_rows();
  const bool maximize = lp.sense == Sense::Maximize;

  // Column layout: structural (free variables split), slack/surplus, artificial.
  std::vector<int> plus_col(static_cast<std::size_t>(nvars));
  std::vector<int> minus_col(static_cast<std::size_t>(nvars), -1);
  int ncols = 0;
  for (int j = 0; j < nvars; ++j) {
    plus_col[static_cast<std::size_t>(j)] = ncols++;
    if (lp.free_vars[static_cast<std::size_t>(j)]) minus_col[static_cast<std::size_t>(j)] = ncols++;
  }

  std::vector<int> flip(static_cast<std::size_t>(m), 1);
  std::vector<Relation> rel(lp.relations);
  for (int i = 0; i < m; ++i) {
    if (Num<T>::neg(lp.rhs[static_cast<std::size_t>(i)], 0.0)) {
      flip[static_cast<std::size_t>(i)] = -1;
      auto& r = rel[static_cast<std::size_t>(i)];
      if (r == Relation::LessEqual) {
        r = Relation::GreaterEqual;
      } else if (r == Relation::GreaterEqual) {
        r = Relation::LessEqual;
      }
    }
  }
  std::vector<int> slack_col(static_cast<std::size_t>(m), -1);
  for (int i = 0; i < m; ++i) {
    if (rel[static_cast<std::size_t>(i)] != Relation::Equal) slack_col[static_cast<std::size_t>(i)] = ncols++;
  }
  const int first_artificial = ncols;
  std::vector<int> art_col(static_cast<std::size_t>(m), -1);
  for (int i = 0; i < m; ++i) {
    if (rel[static_cast<std::size_t>(i)] != Relation::LessEqual) art_col[static_cast<std::size_t>(i)] = ncols++;
  }
  // Unit column of each row: reads the row price off the objective row.
  std::vector<int> unit_col(static_cast<std::size_t>(m));

  Tableau<T> tab(m, ncols);
  for (int i = 0; i < m; ++i) {
    const auto& row = lp.rows[static_cast<std::size_t>(i)];
    const T sign(flip[static_cast<std::size_t>(i)]);
    for (int j = 0; j < nvars; ++j) {
      const T& v = row[static_cast<std::size_t>(j)];
      if (Num<T>::zero(v, 0.0)) continue;
      tab.at(i, plus_col[static_cast<std::size_t>(j)]) = sign * v;
      if (minus_col[static_cast<std::size_t>(j)] >= 0) tab.at(i, minus_col[static_cast<std::size_t>(j)]) = -(sign * v);
    }
    tab.rhs(i) = sign * lp.rhs[static_cast<std::size_t>(i)];
    const Relation r = rel[static_cast<std::size_t>(i)];
    if (r == Relation::LessEqual) {
      tab.at(i, slack_col[static_cast<std::size_t>(i)]) = T(1);
      tab.basis()[static_cast<std::size_t>(i)] = slack_col[static_cast<std::size_t>(i)];
      unit_col[static_cast<std::size_t>(i)] = slack_col[static_cast<std::size_t>(i)];
    } else {
      if (r == Relation::GreaterEqual) tab.at(i, slack_col[static_cast<std::size_t>(i)]) = T(-1);
      tab.at(i, art_col[static_cast<std::size_t>(i)]) = T(1);
      tab.basis()[static_cast<std::size_t>(i)] = art_col[static_cast<std::size_t>(i)];
      unit_col[static_cast<std::size_t>(i)] = art_col[static_cast<std::size_t>(i)];
    }
  }

  tab.freeze();
  BasicLpSolution<T> sol;
  std::vector<bool> allowed(static_cast<std::size_t>(ncols), true);

  if (opt.warm_basis != nullptr) {
    std::vector<int> wanted;
    for (int code : *opt.warm_basis) {
      int col = -1;
      if (code >= 0 && code < nvars) col = plus_col[static_cast<std::size_t>(code)];
      if (code < 0 && -code - 1 < m) col = slack_col[static_cast<std::size_t>(-code - 1)];
      if (col >= 0) wanted.push_back(col);
    }
    if (!tab.crash(wanted, eps)) {
      tab.thaw();
    } else if (opt.refactor_interval > 0) {
      tab.refactor();
    }
  }

  if (first_artificial < ncols) {
    std::vector<T> phase1(static_cast<std::size_t>(ncols), T(0));
    for (int j = first_artificial; j < ncols; ++j) phase1[static_cast<std::size_t>(j)] = T(1);
    tab.set_objective(phase1);
    tab.run(allowed, eps, sol.pivots, opt);
    if (opt.refactor_interval > 0) {
      tab.refactor();
      tab.run(allowed, eps, sol.pivots, opt);
    }
    T infeasibility = -tab.obj()[static_cast<std::size_t>(ncols)];
    T scale(1);
    for (const auto& b : lp.rhs) scale = std::max<T>(scale, Num<T>::abs(b));
    if (Num<T>::pos(infeasibility, eps * to_double(scale))) {
      sol.status = LpStatus::Infeasible;
      return sol;
    }
    // Drive zero-level artificials out of the basis; rows with no other
    // support are redundant and dropped.
    for (int i = tab.rows() - 1; i >= 0; --i) {
      if (tab.basis()[static_cast<std::size_t>(i)] < first_artificial) continue;
      int col = -1;
      for (int j = 0; j < first_artificial; ++j) {
        if (!Num<T>::zero(tab.at(i, j), eps)) {
          col = j;
          break;
        }
      }
      if (col >= 0) {
        tab.pivot(i, col);
      } else {
        tab.drop_row(i);
      }
    }
    for (int j = first_artificial; j < ncols; ++j) allowed[static_cast<std::size_t>(j)] = false;
  }

  std::vector<T> cost(static_cast<std::size_t>(ncols), T(0));
  for (int j = 0; j < nvars; ++j) {
    const T c = maximize ? T(-lp.objective[static_cast<std::size_t>(j)]) : lp.objective[static_cast<std::size_t>(j)];
    cost[static_cast<std::size_t>(plus_col[static_cast<std::size_t>(j)])] = c;
    if (minus_col[static_cast<std::size_t>(j)] >= 0) cost[static_cast<std::size_t>(minus_col[static_cast<std::size_t>(j)])] = -c;
  }
  tab.set_objective(cost);
  const bool perturbed = std::is_same_v<T, double> && opt.perturb && opt.refactor_interval > 0;
  if (!perturbed) {
    sol.status = tab.run(allowed, eps, sol.pivots, opt);
    if (sol.status == LpStatus::Optimal && opt.refactor_interval > 0) {
      tab.refactor();
      sol.status = tab.run(allowed, eps, sol.pivots, opt);
    }
  } else {
    double scale = 1.0;
    for (const auto& b : lp.rhs) scale = std::max(scale, to_double(Num<T>::abs(b)));
    // Solve with perturbed right-hand sides, restore the true ones, repair
    // primal feasibility by dual pivots; repeat while reduced costs disagree.
    for (int attempt = 0; attempt < 4; ++attempt) {
      tab.perturb(1e-5 * scale);
      sol.status = tab.run(allowed, eps, sol.pivots, opt);
      if (sol.status != LpStatus::Optimal) break;
      tab.clear_shift();
      if (!tab.dual_cleanup(allowed, eps, sol.pivots, opt)) {
        sol.status = LpStatus::Infeasible;
        break;
      }
      if (tab.dual_feasible(allowed, eps)) break;
    }
  }
  if (sol.status != LpStatus::Optimal) return sol;

  std::vector<T> colval(static_cast<std::size_t>(ncols), T(0));
  for (int i = 0; i < tab.rows(); ++i) colval[static_cast<std::size_t>(tab.basis()[static_cast<std::size_t>(i)])] = tab.rhs(i);
  sol.primal.assign(static_cast<std::size_t>(nvars), T(0));
  sol.value = T(0);
  for (int j = 0; j < nvars; ++j) {
    T v = colval[static_cast<std::size_t>(plus_col[static_cast<std::size_t>(j)])];
    if (minus_col[static_cast<std::size_t>(j)] >= 0) v -= colval[static_cast<std::size_t>(minus_col[static_cast<std::size_t>(j)])];
    sol.primal[static_cast<std::size_t>(j)] = v;
    sol.value += lp.objective[static_cast<std::size_t>(j)] * v;
  }
  std::vector<int> code_of(static_cast<std::size_t>(ncols), kNoCode);
  for (int j = 0; j < nvars; ++j) code_of[static_cast<std::size_t>(plus_col[static_cast<std::size_t>(j)])] = j;
  for (int i = 0; i < m; ++i) {
    if (slack_col[static_cast<std::size_t>(i)] >= 0) code_of[static_cast<std::size_t>(slack_col[static_cast<std::size_t>(i)])] = -i - 1;
  }
  for (int b : tab.basis()) {
    if (code_of[static_cast<std::size_t>(b)] != kNoCode) sol.basis.push_back(code_of[static_cast<std::size_t>(b)]);
  }
  sol.duals.assign(static_cast<std::size_t>(m), T(0));
  for (int i = 0; i < m; ++i) {
    T y = -tab.obj()[static_cast<std::size_t>(unit_col[static_cast<std::size_t>(i)])];
    if (flip[static_cast<std::size_t>(i)] < 0) y = -y;
    if (maximize) y = -y;
    Num<T>::clean(y);
    sol.duals[static_cast<std::size_t>(i)] = y;
  }
  return sol;
}

template <class T>
T violation_of(const BasicLinearProgram<T>& lp, const std::vector<T>& x) {
  T worst(0);
  for (int j = 0; j < lp.num_variables(); ++j) {
    if (!lp.free_vars[static_cast<std::size_t>(j)]) worst = std::max<T>(worst, T(-x[static_cast<std::size_t>(j)]));
  }
  for (int i = 0; i < lp.num_rows(); ++i) {
    T lhs(0);
    const auto& row = lp.rows[static_cast<std::size_t>(i)];
    for (int j = 0; j < lp.num_variables(); ++j) lhs += row[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
    const T diff = lhs - lp.rhs[static_cast<std::size_t>(i)];
    switch (lp.relations[static_cast<std::size_t>(i)]) {
      case Relation::LessEqual: worst = std::max<T>(worst, diff); break;
      case Relation::GreaterEqual: worst = std::max<T>(worst, T(-diff)); break;
      case Relation::Equal: worst = std::max<T>(worst, Num<T>::abs(diff)); break;
    }
  }
  return worst;
}

}  // namespace

template <class T>
void BasicLinearProgram<T>::validate() const {
  const std::size_t n = objective.size();
  if (free_vars.size() != n) throw std::invalid_argument("LP: free flag count differs from variable count");
  if (relations.size() != rows.size() || rhs.size() != rows.size()) {
    throw std::invalid_argument("LP: row, relation and rhs counts differ");
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != n) {
      throw std::invalid_argument("LP: row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                                  " coefficients, expected " + std::to_string(n));
    }
    for (const auto& v : rows[i]) {
      if (!Num<T>::finite(v)) throw std::invalid_argument("LP: non-finite coefficient in row " + std::to_string(i));
    }
    if (!Num<T>::finite(rhs[i])) throw std::invalid_argument("LP: non-finite rhs in row " + std::to_string(i));
  }
  for (const auto& c : objective) {
    if (!Num<T>::finite(c)) throw std::invalid_argument("LP: non-finite objective coefficient");
  }
}

template struct BasicLinearProgram<double>;
template struct BasicLinearProgram<Rational>;

RationalProgram to_rational(const LinearProgram& lp) {
  lp.validate();
  RationalProgram out;
  out.sense = lp.sense;
  out.free_vars = lp.free_vars;
  out.relations = lp.relations;
  for (double c : lp.objective) out.objective.push_back(exact_rational(c));
  for (double b : lp.rhs) out.rhs.push_back(exact_rational(b));
  out.rows.reserve(lp.rows.size());
  for (const auto& row : lp.rows) {
    std::vector<Rational> r;
    r.reserve(row.size());
    for (double v : row) r.push_back(exact_rational(v));
    out.rows.push_back(std::move(r));
  }
  return out;
}

BasicLpSolution<double> simplex(const LinearProgram& lp, const SimplexOptions& opt) {
  return run_simplex(lp, opt);
}

RationalLpSolution simplex(const RationalProgram& lp, const SimplexOptions& opt) {
  return run_simplex(lp, opt);
}

RationalLpSolution solve_exact(const RationalProgram& lp, const SimplexOptions& opt) {
  return run_simplex(lp, opt);
}

double max_violation(const LinearProgram& lp, const std::vector<double>& x) { return violation_of(lp, x); }

Rational max_violation(const RationalProgram& lp, const std::vector<Rational>& x) { return violation_of(lp, x); }

namespace {

LpSolution from_exact(RationalLpSolution exact) {
  LpSolution out;
  out.status = exact.status;
  out.value = to_double(exact.value);
  out.pivots = exact.pivots;
  for (const auto& v : exact.primal) out.primal.push_back(to_double(v));
  for (const auto& v : exact.duals) out.duals.push_back(to_double(v));
  out.mode = LpMode::Rational;
  out.exact = std::move(exact);
  return out;
}

}  // namespace

LpSolution solve(const LinearProgram& lp, LpMode mode, const SimplexOptions& opt) {
  if (mode == LpMode::Rational) return from_exact(solve_exact(to_rational(lp), opt));

  LpSolution out;
  bool breakdown = false;
  try {
    static_cast<BasicLpSolution<double>&>(out) = run_simplex(lp, opt);
    if (out.status == LpStatus::Optimal) {
      double scale = 1.0;
      for (double b : lp.rhs) scale = std::max(scale, std::abs(b));
      breakdown = max_violation(lp, out.primal) > 1e-7 * scale;
    }
  } catch (const PivotGuardTripped&) {
    breakdown = true;
  }
  if (!breakdown) return out;
  LpSolution exact = from_exact(solve_exact(to_rational(lp), opt));
  exact.rational_fallback = true;
  return exact;
}

}  // namespace vcgap
