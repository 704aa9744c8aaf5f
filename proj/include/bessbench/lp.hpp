#pragma once

// Dense linear programs in bounded-variable form and a two-phase primal
// simplex solver. Pivoting is deterministic: Dantzig pricing with a
// lowest-index tie-break, falling back to Bland's rule on degenerate stalls
// so crafted ties cannot cycle. Equalities are handled with phase-1
// artificials (no big-M). Callers that can name a feasible starting basis
// may pass a crash plan to skip phase 1 entirely.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bessbench/errors.hpp"

namespace bessbench {

inline constexpr double kLpInf = std::numeric_limits<double>::infinity();

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration-limit";
  }
  return "unknown";
}

// minimize c.x  s.t.  A_eq x = b_eq,  A_ub x <= b_ub,  lower <= x <= upper
struct LpProblem {
  std::size_t n = 0;
  std::vector<double> c;
  std::vector<double> lower, upper;
  std::vector<double> a_eq, b_eq;  // row-major, n columns per row
  std::vector<double> a_ub, b_ub;

  LpProblem() = default;
  explicit LpProblem(std::size_t nvars) { resize(nvars); }

  void resize(std::size_t nvars) {
    n = nvars;
    c.assign(n, 0.0);
    lower.assign(n, 0.0);
    upper.assign(n, kLpInf);
  }

  std::size_t n_eq() const { return b_eq.size(); }
  std::size_t n_ub() const { return b_ub.size(); }

  std::size_t add_eq(double rhs) {
    a_eq.resize(a_eq.size() + n, 0.0);
    b_eq.push_back(rhs);
    return n_eq() - 1;
  }
  std::size_t add_ub(double rhs) {
    a_ub.resize(a_ub.size() + n, 0.0);
    b_ub.push_back(rhs);
    return n_ub() - 1;
  }

  double& eq(std::size_t i, std::size_t j) { return a_eq[i * n + j]; }
  double& ub(std::size_t i, std::size_t j) { return a_ub[i * n + j]; }
  double eq(std::size_t i, std::size_t j) const { return a_eq[i * n + j]; }
  double ub(std::size_t i, std::size_t j) const { return a_ub[i * n + j]; }

  void validate() const {
    if (n == 0) throw ConfigError("lp: problem has no variables");
    if (c.size() != n || lower.size() != n || upper.size() != n) {
      throw ConfigError("lp: c/lower/upper size mismatch");
    }
    if (a_eq.size() != n_eq() * n || a_ub.size() != n_ub() * n) {
      throw ConfigError("lp: constraint matrix size mismatch");
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (!(lower[j] <= upper[j])) {
        throw ConfigError("lp: lower > upper for variable " + std::to_string(j));
      }
      if (std::isnan(c[j])) throw ConfigError("lp: objective has NaN");
    }
    auto finite = [](const std::vector<double>& v, const char* what) {
      for (double x : v) {
        if (!std::isfinite(x)) {
          throw ConfigError(std::string("lp: non-finite coefficient in ") + what);
        }
      }
    };
    finite(a_eq, "A_eq");
    finite(b_eq, "b_eq");
    finite(a_ub, "A_ub");
    finite(b_ub, "b_ub");
  }
};

struct LpSolution {
  std::vector<double> x;
  double objective = 0.0;
  LpStatus status = LpStatus::IterationLimit;
  std::size_t iterations = 0;
};

struct LpOptions {
  double tol = 1e-7;          // feasibility / optimality tolerance
  std::size_t max_iter = 0;   // 0 = automatic from problem size
  bool bland_only = false;    // pure Bland pivoting (slow, never cycles)
  bool refine = true;         // refresh basic values from a fresh LU when done
};

struct FeasibilityReport {
  double max_eq_violation = 0.0;
  double max_ub_violation = 0.0;
  double max_bound_violation = 0.0;
  double max_violation() const {
    return std::max({max_eq_violation, max_ub_violation, max_bound_violation});
  }
  bool within(double tol) const { return max_violation() <= tol; }
};

inline FeasibilityReport check_feasible(const LpProblem& p,
                                        std::span<const double> x) {
  if (x.size() != p.n) throw ConfigError("check_feasible: dimension mismatch");
  FeasibilityReport r;
  for (std::size_t i = 0; i < p.n_eq(); ++i) {
    double act = 0.0;
    for (std::size_t j = 0; j < p.n; ++j) act += p.eq(i, j) * x[j];
    r.max_eq_violation = std::max(r.max_eq_violation, std::abs(act - p.b_eq[i]));
  }
  for (std::size_t i = 0; i < p.n_ub(); ++i) {
    double act = 0.0;
    for (std::size_t j = 0; j < p.n; ++j) act += p.ub(i, j) * x[j];
    r.max_ub_violation = std::max(r.max_ub_violation, act - p.b_ub[i]);
  }
  r.max_ub_violation = std::max(r.max_ub_violation, 0.0);
  for (std::size_t j = 0; j < p.n; ++j) {
    r.max_bound_violation = std::max(
        {r.max_bound_violation, p.lower[j] - x[j], x[j] - p.upper[j]});
  }
  return r;
}

// Pivot hints executed before phase 1: (row, column) pairs, rows indexed
// equalities first then inequalities. If the resulting basis is primal
// feasible phase 1 is skipped, otherwise the solver falls back to a cold
// two-phase start.
using CrashPlan = std::vector<std::pair<std::size_t, std::size_t>>;

namespace detail {

class Simplex {
 public:
  Simplex(const LpProblem& p, const LpOptions& opt) : p_(p), opt_(opt) {
    m_ = p.n_eq() + p.n_ub();
    n_struct_ = p.n;
    n_slack_ = p.n_ub();
  }

  LpSolution run(const CrashPlan* crash) {
    LpSolution sol;
    init_tableau();
    bool skip_phase1 = false;
    if (crash != nullptr && try_crash(*crash)) skip_phase1 = true;

    const std::size_t budget =
        opt_.max_iter > 0 ? opt_.max_iter : 50 * (m_ + n_struct_) + 1000;

    if (!skip_phase1 && n_art_ > 0) {
      build_phase1_costs();
      const LpStatus st = iterate(budget, /*phase1=*/true);
      if (st == LpStatus::IterationLimit) {
        sol.status = st;
        sol.iterations = iterations_;
        return sol;
      }
      double art_sum = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        if (is_artificial(basic_col_[i])) art_sum += std::abs(x_basic_[i]);
      }
      if (art_sum > feas_tol()) {
        sol.status = LpStatus::Infeasible;
        sol.iterations = iterations_;
        return sol;
      }
      drive_out_artificials();
    }

    ban_artificials();
    build_phase2_costs();
    const LpStatus st = iterate(budget, /*phase1=*/false);
    sol.status = st;
    sol.iterations = iterations_;
    if (st != LpStatus::Optimal) return sol;

    if (opt_.refine) refine_basics();

    sol.x.resize(n_struct_);
    for (std::size_t j = 0; j < n_struct_; ++j) {
      sol.x[j] = stat_[j] == Stat::Basic ? x_basic_[in_row_[j]] : value(j);
    }
    double obj = 0.0;
    for (std::size_t j = 0; j < n_struct_; ++j) obj += p_.c[j] * sol.x[j];
    sol.objective = obj;
    return sol;
  }

 private:
  enum class Stat : std::uint8_t { Lower, Upper, Free, Basic };

  const LpProblem& p_;
  const LpOptions& opt_;
  std::size_t m_ = 0, n_struct_ = 0, n_slack_ = 0, n_art_ = 0;
  std::size_t ncols_ = 0, stride_ = 0;
  std::vector<double> tab_;      // m_ rows of [columns..., rhs]
  std::vector<double> cost_;     // reduced-cost row for the active phase
  std::vector<double> lo_, hi_;
  std::vector<Stat> stat_;
  std::vector<std::uint8_t> banned_;
  std::vector<std::size_t> basic_col_;  // per row
  std::vector<std::size_t> in_row_;     // per column, SIZE_MAX when nonbasic
  std::vector<double> x_basic_;
  std::vector<std::int8_t> art_sign_;   // per row: +-1 row scaling at init
  std::size_t iterations_ = 0;
  bool bland_mode_ = false;
  std::size_t stall_ = 0;

  static constexpr std::size_t kNoRow = static_cast<std::size_t>(-1);
  static constexpr double kPivTol = 1e-9;
  static constexpr double kRatioTieTol = 1e-10;

  double feas_tol() const { return std::max(opt_.tol, 1e-9); }
  bool is_artificial(std::size_t j) const {
    return j >= n_struct_ + n_slack_;
  }
  double value(std::size_t j) const {
    switch (stat_[j]) {
      case Stat::Lower: return lo_[j];
      case Stat::Upper: return hi_[j];
      default: return 0.0;
    }
  }
  double* row(std::size_t i) { return tab_.data() + i * stride_; }
  double& rhs(std::size_t i) { return tab_[i * stride_ + ncols_]; }

  // Row i of the combined system: equalities first, then inequalities.
  double coef(std::size_t i, std::size_t j) const {
    return i < p_.n_eq() ? p_.eq(i, j) : p_.ub(i - p_.n_eq(), j);
  }
  double rhs_orig(std::size_t i) const {
    return i < p_.n_eq() ? p_.b_eq[i] : p_.b_ub[i - p_.n_eq()];
  }

  void init_tableau() {
    // Nonbasic statuses for structural variables.
    stat_.assign(n_struct_, Stat::Lower);
    for (std::size_t j = 0; j < n_struct_; ++j) {
      if (std::isfinite(p_.lower[j])) {
        stat_[j] = Stat::Lower;
      } else if (std::isfinite(p_.upper[j])) {
        stat_[j] = Stat::Upper;
      } else {
        stat_[j] = Stat::Free;
      }
    }
    lo_ = p_.lower;
    hi_ = p_.upper;

    // Row activities at the nonbasic point decide slack vs artificial.
    std::vector<double> act(m_, 0.0);
    for (std::size_t j = 0; j < n_struct_; ++j) {
      const double v =
          stat_[j] == Stat::Lower ? lo_[j] : (stat_[j] == Stat::Upper ? hi_[j] : 0.0);
      if (v == 0.0) continue;
      for (std::size_t i = 0; i < p_.n_eq(); ++i) act[i] += p_.eq(i, j) * v;
      for (std::size_t i = 0; i < p_.n_ub(); ++i) {
        act[p_.n_eq() + i] += p_.ub(i, j) * v;
      }
    }

    std::vector<std::size_t> art_row;
    art_sign_.assign(m_, 1);
    for (std::size_t i = 0; i < m_; ++i) {
      const double res = rhs_orig(i) - act[i];
      if (i < p_.n_eq()) {
        art_row.push_back(i);
        art_sign_[i] = res >= 0.0 ? 1 : -1;
      } else if (res < 0.0) {
        art_row.push_back(i);
        art_sign_[i] = -1;
      }
    }
    n_art_ = art_row.size();

    ncols_ = n_struct_ + n_slack_ + n_art_;
    stride_ = ncols_ + 1;
    tab_.assign(m_ * stride_, 0.0);
    lo_.resize(ncols_, 0.0);
    hi_.resize(ncols_, kLpInf);
    stat_.resize(ncols_, Stat::Lower);
    banned_.assign(ncols_, 0);
    basic_col_.assign(m_, 0);
    in_row_.assign(ncols_, kNoRow);
    x_basic_.assign(m_, 0.0);

    for (std::size_t i = 0; i < m_; ++i) {
      const double s = static_cast<double>(art_sign_[i]);
      double* r = row(i);
      for (std::size_t j = 0; j < n_struct_; ++j) r[j] = s * coef(i, j);
      if (i >= p_.n_eq()) r[n_struct_ + (i - p_.n_eq())] = s;  // slack
      rhs(i) = s * rhs_orig(i);
    }
    for (std::size_t k = 0; k < n_art_; ++k) {
      row(art_row[k])[n_struct_ + n_slack_ + k] = 1.0;
    }

    // Choose the starting basis: slack where the residual allows it,
    // artificial otherwise.
    std::vector<std::uint8_t> has_art(m_, 0);
    for (std::size_t k = 0; k < n_art_; ++k) has_art[art_row[k]] = 1;
    std::size_t art_idx = 0;
    for (std::size_t i = 0; i < m_; ++i) {
      std::size_t bc;
      if (has_art[i]) {
        bc = n_struct_ + n_slack_ + art_idx++;
      } else {
        bc = n_struct_ + (i - p_.n_eq());
      }
      basic_col_[i] = bc;
      in_row_[bc] = i;
      stat_[bc] = Stat::Basic;
      x_basic_[i] = static_cast<double>(art_sign_[i]) * (rhs_orig(i) - act[i]);
    }
  }

  // Gauss-Jordan pivot on (r, jin); cost row handled by the caller.
  void pivot_rows(std::size_t r, std::size_t jin) {
    double* pr = row(r);
    const double inv = 1.0 / pr[jin];
    for (std::size_t k = 0; k < stride_; ++k) pr[k] *= inv;
    pr[jin] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* ri = row(i);
      const double f = ri[jin];
      if (f == 0.0) continue;
      for (std::size_t k = 0; k < stride_; ++k) ri[k] -= f * pr[k];
      ri[jin] = 0.0;
    }
    if (!cost_.empty()) {
      const double f = cost_[jin];
      if (f != 0.0) {
        for (std::size_t k = 0; k < ncols_; ++k) cost_[k] -= f * pr[k];
        cost_[jin] = 0.0;
      }
    }
  }

  void make_basic(std::size_t r, std::size_t jin, Stat leaving_stat) {
    const std::size_t out = basic_col_[r];
    stat_[out] = leaving_stat;
    in_row_[out] = kNoRow;
    basic_col_[r] = jin;
    in_row_[jin] = r;
    stat_[jin] = Stat::Basic;
  }

  bool try_crash(const CrashPlan& plan) {
    cost_.clear();
    for (const auto& [r, j] : plan) {
      if (r >= m_ || j >= n_struct_) return false;
      if (stat_[j] == Stat::Basic) continue;
      if (std::abs(row(r)[j]) < 1e-7) return false;
      pivot_rows(r, j);
      make_basic(r, j, Stat::Lower);
    }
    recompute_x_basic();
    // The crash point must be primal feasible and free of artificials.
    const double tol = feas_tol() * 10.0;
    for (std::size_t i = 0; i < m_; ++i) {
      const std::size_t bc = basic_col_[i];
      if (is_artificial(bc) && std::abs(x_basic_[i]) > tol) return restart_cold();
      if (x_basic_[i] < lo_[bc] - tol || x_basic_[i] > hi_[bc] + tol) {
        return restart_cold();
      }
    }
    return true;
  }

  bool restart_cold() {
    init_tableau();
    return false;
  }

  void recompute_x_basic() {
    for (std::size_t i = 0; i < m_; ++i) x_basic_[i] = rhs(i);
    for (std::size_t j = 0; j < ncols_; ++j) {
      if (stat_[j] == Stat::Basic) continue;
      const double v = value(j);
      if (v == 0.0) continue;
      for (std::size_t i = 0; i < m_; ++i) x_basic_[i] -= row(i)[j] * v;
    }
  }

  void build_phase1_costs() {
    cost_.assign(ncols_, 0.0);
    for (std::size_t j = n_struct_ + n_slack_; j < ncols_; ++j) cost_[j] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (!is_artificial(basic_col_[i])) continue;
      const double* ri = row(i);
      for (std::size_t k = 0; k < ncols_; ++k) cost_[k] -= ri[k];
    }
  }

  void build_phase2_costs() {
    cost_.assign(ncols_, 0.0);
    for (std::size_t j = 0; j < n_struct_; ++j) cost_[j] = p_.c[j];
    for (std::size_t i = 0; i < m_; ++i) {
      const std::size_t bc = basic_col_[i];
      if (bc >= n_struct_) continue;
      const double f = p_.c[bc];
      if (f == 0.0) continue;
      const double* ri = row(i);
      for (std::size_t k = 0; k < ncols_; ++k) cost_[k] -= f * ri[k];
    }
    for (std::size_t i = 0; i < m_; ++i) cost_[basic_col_[i]] = 0.0;
  }

  void ban_artificials() {
    for (std::size_t j = n_struct_ + n_slack_; j < ncols_; ++j) banned_[j] = 1;
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (!is_artificial(basic_col_[i])) continue;
      const double* ri = row(i);
      std::size_t pick = kNoRow;
      for (std::size_t j = 0; j < n_struct_ + n_slack_; ++j) {
        if (stat_[j] == Stat::Basic) continue;
        if (std::abs(ri[j]) > 1e-7) {
          pick = j;
          break;
        }
      }
      if (pick == kNoRow) {
        // Redundant row: pin the artificial at zero and leave it basic.
        const std::size_t bc = basic_col_[i];
        lo_[bc] = hi_[bc] = 0.0;
        continue;
      }
      const double entering_value = value(pick);
      pivot_rows(i, pick);
      make_basic(i, pick, Stat::Lower);
      x_basic_[i] = entering_value;  // degenerate pivot, point unchanged
    }
  }

  struct Entering {
    std::size_t col = kNoRow;
    int dir = 0;
    double viol = 0.0;
  };

  Entering price() const {
    Entering best;
    for (std::size_t j = 0; j < ncols_; ++j) {
      if (stat_[j] == Stat::Basic || banned_[j]) continue;
      if (lo_[j] == hi_[j]) continue;  // fixed
      const double d = cost_[j];
      int dir = 0;
      if ((stat_[j] == Stat::Lower || stat_[j] == Stat::Free) && d < -opt_.tol) {
        dir = +1;
      } else if ((stat_[j] == Stat::Upper || stat_[j] == Stat::Free) &&
                 d > opt_.tol) {
        dir = -1;
      } else {
        continue;
      }
      const double v = std::abs(d);
      if (bland_mode_) return {j, dir, v};
      if (v > best.viol) best = {j, dir, v};
    }
    return best;
  }

  enum class StepKind { Pivot, BoundFlip, Unbounded };

  struct RatioResult {
    StepKind kind = StepKind::Unbounded;
    std::size_t leave_row = kNoRow;
    double delta = 0.0;
    bool leave_at_upper = false;
  };

  RatioResult ratio_test(std::size_t jin, int dir) const {
    const double sigma = static_cast<double>(dir);
    double min_delta = kLpInf;
    // The entering variable's own opposite bound.
    if (std::isfinite(lo_[jin]) && std::isfinite(hi_[jin])) {
      min_delta = hi_[jin] - lo_[jin];
    }
    const double* base = tab_.data() + jin;
    for (std::size_t i = 0; i < m_; ++i) {
      const double a = base[i * stride_];
      if (std::abs(a) <= kPivTol) continue;
      const double coef = -sigma * a;  // d x_basic[i] / d delta
      const std::size_t bc = basic_col_[i];
      double d;
      if (coef < 0.0) {
        if (!std::isfinite(lo_[bc])) continue;
        d = (x_basic_[i] - lo_[bc]) / (-coef);
      } else {
        if (!std::isfinite(hi_[bc])) continue;
        d = (hi_[bc] - x_basic_[i]) / coef;
      }
      if (d < 0.0) d = 0.0;  // feasibility dust
      if (d < min_delta) min_delta = d;
    }
    if (!std::isfinite(min_delta)) return {};

    // Second pass: deterministic tie-break among blockers at min_delta.
    RatioResult r;
    r.delta = min_delta;
    r.kind = StepKind::BoundFlip;
    double best_pivot = -1.0;
    std::size_t best_index = jin;  // the self bound flip competes as a blocker
    bool have_row = false;
    for (std::size_t i = 0; i < m_; ++i) {
      const double a = base[i * stride_];
      if (std::abs(a) <= kPivTol) continue;
      const double coef = -sigma * a;
      const std::size_t bc = basic_col_[i];
      double d;
      bool at_upper;
      if (coef < 0.0) {
        if (!std::isfinite(lo_[bc])) continue;
        d = (x_basic_[i] - lo_[bc]) / (-coef);
        at_upper = false;
      } else {
        if (!std::isfinite(hi_[bc])) continue;
        d = (hi_[bc] - x_basic_[i]) / coef;
        at_upper = true;
      }
      if (d < 0.0) d = 0.0;
      if (d > min_delta + kRatioTieTol) continue;
      bool take;
      if (bland_mode_) {
        take = !have_row ? bc < best_index : bc < best_index;
      } else {
        take = !have_row || std::abs(a) > best_pivot ||
               (std::abs(a) == best_pivot && bc < best_index);
      }
      if (take) {
        have_row = true;
        best_pivot = std::abs(a);
        best_index = bc;
        r.leave_row = i;
        r.leave_at_upper = at_upper;
        r.kind = StepKind::Pivot;
      }
    }
    if (bland_mode_ && std::isfinite(hi_[jin]) && std::isfinite(lo_[jin]) &&
        hi_[jin] - lo_[jin] <= min_delta + kRatioTieTol && jin < best_index) {
      r.kind = StepKind::BoundFlip;  // self flip wins the Bland tie-break
    }
    if (r.kind == StepKind::BoundFlip) {
      r.delta = std::isfinite(hi_[jin]) ? hi_[jin] - lo_[jin] : min_delta;
    }
    return r;
  }

  void apply_step(std::size_t jin, int dir, const RatioResult& rr) {
    const double sigma = static_cast<double>(dir);
    const double* base = tab_.data() + jin;
    if (rr.delta != 0.0) {
      for (std::size_t i = 0; i < m_; ++i) {
        const double a = base[i * stride_];
        if (a != 0.0) x_basic_[i] -= sigma * a * rr.delta;
      }
    }
    if (rr.kind == StepKind::BoundFlip) {
      stat_[jin] = stat_[jin] == Stat::Lower ? Stat::Upper : Stat::Lower;
      return;
    }
    const double entering_value = value(jin) + sigma * rr.delta;
    const std::size_t r = rr.leave_row;
    pivot_rows(r, jin);
    make_basic(r, jin, rr.leave_at_upper ? Stat::Upper : Stat::Lower);
    x_basic_[r] = entering_value;
  }

  LpStatus iterate(std::size_t budget, bool phase1) {
    bland_mode_ = opt_.bland_only;
    stall_ = 0;
    while (true) {
      if (iterations_ >= budget) return LpStatus::IterationLimit;
      const Entering e = price();
      if (e.col == kNoRow) return LpStatus::Optimal;
      const RatioResult rr = ratio_test(e.col, e.dir);
      if (rr.kind == StepKind::Unbounded) {
        // Phase 1 is bounded below by zero; hitting this means numerics
        // already went wrong, so surface it as the closest status.
        return phase1 ? LpStatus::Infeasible : LpStatus::Unbounded;
      }
      apply_step(e.col, e.dir, rr);
      ++iterations_;
      if (rr.delta > 1e-9) {
        stall_ = 0;
        bland_mode_ = opt_.bland_only;
      } else if (!bland_mode_ && ++stall_ > 40) {
        bland_mode_ = true;  // anti-cycling fallback
      }
    }
  }

  // Fresh LU solve of B x_B = b - N x_N to shed accumulated pivot drift.
  void refine_basics() {
    const std::size_t m = m_;
    std::vector<double> B(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t bc = basic_col_[i];
      if (bc < n_struct_) {
        for (std::size_t r = 0; r < m; ++r) B[r * m + i] = coef(r, bc);
      } else if (bc < n_struct_ + n_slack_) {
        B[(p_.n_eq() + (bc - n_struct_)) * m + i] = 1.0;
      } else {
        // Artificial pinned at zero on a redundant row.
        const std::size_t r = in_row_[bc];
        B[r * m + i] = static_cast<double>(art_sign_[r]);
      }
    }
    std::vector<double> rhsv(m);
    for (std::size_t i = 0; i < m; ++i) rhsv[i] = rhs_orig(i);
    for (std::size_t j = 0; j < n_struct_; ++j) {
      if (stat_[j] == Stat::Basic) continue;
      const double v = value(j);
      if (v == 0.0) continue;
      for (std::size_t i = 0; i < m; ++i) rhsv[i] -= coef(i, j) * v;
    }
    // (nonbasic slacks and artificials sit at zero)

    // LU with partial pivoting, in place.
    std::vector<std::size_t> perm(m);
    for (std::size_t i = 0; i < m; ++i) perm[i] = i;
    for (std::size_t k = 0; k < m; ++k) {
      std::size_t piv = k;
      double best = std::abs(B[perm[k] * m + k]);
      for (std::size_t i = k + 1; i < m; ++i) {
        const double v = std::abs(B[perm[i] * m + k]);
        if (v > best) {
          best = v;
          piv = i;
        }
      }
      if (best < 1e-12) return;  // near-singular: keep iterated values
      std::swap(perm[k], perm[piv]);
      const double d = B[perm[k] * m + k];
      for (std::size_t i = k + 1; i < m; ++i) {
        double& f = B[perm[i] * m + k];
        f /= d;
        if (f == 0.0) continue;
        const double* src = &B[perm[k] * m];
        double* dst = &B[perm[i] * m];
        for (std::size_t j = k + 1; j < m; ++j) dst[j] -= f * src[j];
      }
    }
    std::vector<double> y(m);
    for (std::size_t i = 0; i < m; ++i) {
      double s = rhsv[perm[i]];
      const double* ri = &B[perm[i] * m];
      for (std::size_t j = 0; j < i; ++j) s -= ri[j] * y[j];
      y[i] = s;
    }
    std::vector<double> xb(m);
    for (std::size_t ii = m; ii-- > 0;) {
      double s = y[ii];
      const double* ri = &B[perm[ii] * m];
      for (std::size_t j = ii + 1; j < m; ++j) s -= ri[j] * xb[j];
      xb[ii] = s / ri[ii];
    }
    x_basic_ = std::move(xb);
  }
};

}  // namespace detail

inline LpSolution solve(const LpProblem& problem, const LpOptions& options = {},
                        const CrashPlan* crash = nullptr) {
  problem.validate();
  detail::Simplex s(problem, options);
  return s.run(crash);
}

// Plain-text dump in the LP interchange format, for cross-checking against
// external solvers.
inline void dump_lp(const LpProblem& p, std::ostream& os) {
  auto var = [](std::size_t j) { return "x" + std::to_string(j + 1); };
  os << "Minimize\n obj:";
  for (std::size_t j = 0; j < p.n; ++j) {
    if (p.c[j] == 0.0) continue;
    os << (p.c[j] >= 0 ? " + " : " - ") << std::abs(p.c[j]) << ' ' << var(j);
  }
  os << "\nSubject To\n";
  auto put_row = [&](const double* a, double b, const char* rel,
                     std::size_t idx) {
    os << " c" << idx << ":";
    bool any = false;
    for (std::size_t j = 0; j < p.n; ++j) {
      if (a[j] == 0.0) continue;
      os << (a[j] >= 0 ? " + " : " - ") << std::abs(a[j]) << ' ' << var(j);
      any = true;
    }
    if (!any) os << " 0 " << var(0);
    os << ' ' << rel << ' ' << b << '\n';
  };
  std::size_t idx = 1;
  for (std::size_t i = 0; i < p.n_eq(); ++i) {
    put_row(&p.a_eq[i * p.n], p.b_eq[i], "=", idx++);
  }
  for (std::size_t i = 0; i < p.n_ub(); ++i) {
    put_row(&p.a_ub[i * p.n], p.b_ub[i], "<=", idx++);
  }
  os << "Bounds\n";
  for (std::size_t j = 0; j < p.n; ++j) {
    if (std::isfinite(p.lower[j]) && std::isfinite(p.upper[j])) {
      os << ' ' << p.lower[j] << " <= " << var(j) << " <= " << p.upper[j]
         << '\n';
    } else if (std::isfinite(p.lower[j])) {
      if (p.lower[j] != 0.0) os << ' ' << var(j) << " >= " << p.lower[j] << '\n';
    } else if (std::isfinite(p.upper[j])) {
      os << " -inf <= " << var(j) << " <= " << p.upper[j] << '\n';
    } else {
      os << ' ' << var(j) << " free\n";
    }
  }
  os << "End\n";
}

}  // namespace bessbench
