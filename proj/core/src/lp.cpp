#include "ehsched/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "ehsched/core.hpp"

namespace ehsched {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kReducedCostTol = 1e-9; // optimality threshold
constexpr double kPivotTol = 1e-9;       // smallest pivot admitted
constexpr double kZeroTol = 1e-12;       // treat tableau entries as zero
constexpr double kPhase1Tol = 1e-7;      // residual infeasibility threshold

enum VarState : unsigned char { kAtLower, kAtUpper, kBasic };

// Dense bounded-variable simplex over the dictionary
//   x_B = bcol - T_N x_N,
// maintained by explicit Gauss-Jordan pivots. Rows are pre-scaled by powers
// of two (exact in binary floating point, so scaling cannot perturb the
// pivot sequence across platforms). Pricing is Dantzig's rule with
// smallest-index ties; after a run of degenerate steps it falls back to
// Bland's rule, which cannot cycle.
class Simplex {
 public:
  explicit Simplex(const LinearProgram& lp) : lp_(lp) {
    n_ = lp.num_vars();
    m_ = lp.num_rows();
    build();
  }

  LpSolution solve() {
    LpSolution sol;
    if (have_artificials_) {
      run_phase(cost1_);
      double infeas = 0.0;
      for (int r = 0; r < m_; ++r)
        if (basis_[r] >= art_begin_) infeas += std::max(beta_[r], 0.0);
      if (infeas > kPhase1Tol) {
        sol.status = LpStatus::kInfeasible;
        sol.iterations = iterations_;
        return sol;
      }
      retire_artificials();
    }
    const bool bounded = run_phase(cost2_);
    sol.iterations = iterations_;
    if (!bounded) {
      sol.status = LpStatus::kUnbounded;
      return sol;
    }
    extract(sol);
    return sol;
  }

 private:
  const LinearProgram& lp_;
  int n_ = 0;           // structural variables
  int m_ = 0;           // rows
  int width_ = 0;       // structurals + slacks + artificials
  int art_begin_ = 0;   // first artificial column (== width_ when none)
  bool have_artificials_ = false;
  bool phase1_ = false;

  std::vector<double> tab_;    // m_ x width_ row-major dictionary
  std::vector<double> bcol_;   // B^{-1} b
  std::vector<double> beta_;   // current basic values per row
  std::vector<double> cost1_;  // phase-1 reduced costs
  std::vector<double> cost2_;  // phase-2 reduced costs
  std::vector<double> lo_, up_, val_;
  std::vector<int> basis_;
  std::vector<VarState> state_;
  int iterations_ = 0;
  int degenerate_run_ = 0;
  bool bland_ = false;

  double* row(int r) { return tab_.data() + static_cast<size_t>(r) * width_; }

  static double pow2_scale(double max_abs) {
    if (!(max_abs > 0.0)) return 1.0;
    return std::exp2(-std::round(std::log2(max_abs)));
  }

  void build() {
    // Count prospective artificials first so columns can be laid out once.
    std::vector<double> residual(m_);
    std::vector<double> rscale(m_);
    for (int r = 0; r < m_; ++r) {
      double mx = 0.0;
      for (int j = 0; j < n_; ++j) mx = std::max(mx, std::abs(lp_.rows[r][j]));
      rscale[r] = pow2_scale(mx);
    }

    val_.assign(n_, 0.0);
    for (int j = 0; j < n_; ++j) val_[j] = lp_.lower[j];

    for (int r = 0; r < m_; ++r) {
      double dot = 0.0;
      for (int j = 0; j < n_; ++j) dot += rscale[r] * lp_.rows[r][j] * val_[j];
      residual[r] = rscale[r] * lp_.rhs[r] - dot;
    }

    // Singleton-column crash: a structural variable appearing in exactly one
    // row can absorb that row's deficit directly if its bounds allow,
    // avoiding an artificial variable (and often all of phase 1).
    std::vector<int> column_nnz(n_, 0);
    for (int r = 0; r < m_; ++r)
      for (int j = 0; j < n_; ++j)
        if (lp_.rows[r][j] != 0.0) ++column_nnz[j];

    std::vector<int> crash_col(m_, -1);
    int artificials = 0;
    for (int r = 0; r < m_; ++r) {
      if (residual[r] >= 0.0) continue;
      for (int j = 0; j < n_; ++j) {
        const double a = lp_.rows[r][j];
        if (a == 0.0 || column_nnz[j] != 1) continue;
        const double v = val_[j] + residual[r] / (rscale[r] * a);
        if (v >= lp_.lower[j] - kZeroTol && v <= lp_.upper[j] + kZeroTol) {
          crash_col[r] = j;
          break;
        }
      }
      if (crash_col[r] < 0) ++artificials;
    }

    art_begin_ = n_ + m_;
    width_ = art_begin_ + artificials;
    have_artificials_ = artificials > 0;

    tab_.assign(static_cast<size_t>(m_) * width_, 0.0);
    bcol_.assign(m_, 0.0);
    beta_.assign(m_, 0.0);
    basis_.assign(m_, -1);
    lo_.resize(width_);
    up_.resize(width_);
    val_.resize(width_, 0.0);
    state_.assign(width_, kAtLower);

    for (int j = 0; j < n_; ++j) {
      lo_[j] = lp_.lower[j];
      up_[j] = lp_.upper[j];
      val_[j] = lo_[j];
    }
    for (int r = 0; r < m_; ++r) {
      lo_[n_ + r] = 0.0;
      up_[n_ + r] = kInf;
      val_[n_ + r] = 0.0;
    }
    for (int a = 0; a < artificials; ++a) {
      lo_[art_begin_ + a] = 0.0;
      up_[art_begin_ + a] = kInf;
      val_[art_begin_ + a] = 0.0;
    }

    int next_artificial = art_begin_;
    for (int r = 0; r < m_; ++r) {
      double* t = row(r);
      for (int j = 0; j < n_; ++j) t[j] = rscale[r] * lp_.rows[r][j];
      t[n_ + r] = 1.0;
      bcol_[r] = rscale[r] * lp_.rhs[r];

      if (residual[r] >= 0.0) {
        basis_[r] = n_ + r;
        state_[n_ + r] = kBasic;
        beta_[r] = residual[r];
      } else if (crash_col[r] >= 0) {
        const int j = crash_col[r];
        const double piv = t[j];
        for (int c = 0; c < width_; ++c) t[c] /= piv;
        bcol_[r] /= piv;
        basis_[r] = j;
        state_[j] = kBasic;
        beta_[r] = val_[j] + residual[r] / piv;
        val_[j] = 0.0;
      } else {
        for (int c = 0; c < width_; ++c) t[c] = -t[c];
        bcol_[r] = -bcol_[r];
        const int a = next_artificial++;
        t[a] = 1.0;
        basis_[r] = a;
        state_[a] = kBasic;
        beta_[r] = -residual[r];
      }
    }

    cost1_.assign(width_, 0.0);
    cost2_.assign(width_, 0.0);
    for (int a = art_begin_; a < width_; ++a) cost1_[a] = 1.0;
    for (int j = 0; j < n_; ++j) cost2_[j] = lp_.objective[j];
    reduce_cost_row(cost1_);
    reduce_cost_row(cost2_);
  }

  void reduce_cost_row(std::vector<double>& cost) {
    for (int r = 0; r < m_; ++r) {
      const double f = cost[basis_[r]];
      if (f == 0.0) continue;
      const double* t = row(r);
      for (int c = 0; c < width_; ++c) cost[c] -= f * t[c];
    }
  }

  // Entering column under the active pricing rule, or -1 at optimality.
  int price(const std::vector<double>& cost) const {
    int best = -1;
    double best_violation = kReducedCostTol;
    for (int j = 0; j < width_; ++j) {
      if (state_[j] == kBasic) continue;
      if (!phase1_ && j >= art_begin_) continue; // artificials retired
      if (lo_[j] == up_[j]) continue;            // fixed, cannot move
      const double z = cost[j];
      const double violation = state_[j] == kAtLower ? -z : z;
      if (violation <= kReducedCostTol) continue;
      if (bland_) return j;
      if (violation > best_violation) {
        best_violation = violation;
        best = j;
      }
    }
    return best;
  }

  // One phase of the simplex. Returns false iff unbounded.
  bool run_phase(std::vector<double>& cost) {
    phase1_ = (&cost == &cost1_);
    bland_ = false;
    degenerate_run_ = 0;
    const long long limit =
        20000LL + 50LL * (static_cast<long long>(m_) + width_);
    while (true) {
      if (++iterations_ > limit)
        throw std::runtime_error("simplex: iteration limit exceeded");
      const int e = price(cost);
      if (e < 0) return true;
      const double sigma = state_[e] == kAtLower ? 1.0 : -1.0;

      double best_t = up_[e] - lo_[e]; // bound-to-bound flip distance
      int leave_row = -1;
      bool leave_at_upper = false;
      double leave_pivot = 0.0;
      for (int r = 0; r < m_; ++r) {
        const double a = row(r)[e];
        if (std::abs(a) <= kPivotTol) continue;
        const double rate = sigma * a; // beta_[r] moves at -rate per unit
        const int b = basis_[r];
        double limit_r;
        bool hits_upper;
        if (rate > 0.0) {
          limit_r = (beta_[r] - lo_[b]) / rate;
          hits_upper = false;
        } else {
          if (up_[b] == kInf) continue;
          limit_r = (up_[b] - beta_[r]) / (-rate);
          hits_upper = true;
        }
        if (limit_r < 0.0) limit_r = 0.0; // degenerate roundoff

        bool better;
        if (leave_row < 0) {
          // Competing against the bound flip: take any strictly shorter
          // blocking step (a tie keeps the flip, which avoids a pivot).
          better = limit_r < best_t;
        } else {
          const double tie = 1e-9 * (1.0 + best_t);
          if (limit_r < best_t - tie) {
            better = true;
          } else if (limit_r <= best_t + tie) {
            // Tie: prefer the numerically larger pivot, then the smaller
            // basic index (always the smaller index in Bland mode).
            if (bland_)
              better = basis_[r] < basis_[leave_row];
            else
              better =
                  std::abs(a) > std::abs(leave_pivot) + kZeroTol ||
                  (std::abs(std::abs(a) - std::abs(leave_pivot)) <= kZeroTol &&
                   basis_[r] < basis_[leave_row]);
          } else {
            better = false;
          }
        }
        if (better) {
          best_t = std::min(limit_r, best_t);
          leave_row = r;
          leave_at_upper = hits_upper;
          leave_pivot = a;
        }
      }

      if (leave_row < 0 && best_t == kInf) {
        if (phase1_)
          throw std::runtime_error("simplex: phase 1 ray (internal error)");
        return false; // unbounded
      }

      const double step = best_t;
      if (step <= kZeroTol) {
        if (++degenerate_run_ > 100 + m_) bland_ = true;
      } else {
        degenerate_run_ = 0;
        bland_ = false;
      }

      // Move the basics.
      for (int r = 0; r < m_; ++r) {
        const double a = row(r)[e];
        if (a != 0.0) beta_[r] -= sigma * a * step;
      }

      if (leave_row < 0) {
        // Bound flip: the entering variable crossed to its other bound.
        state_[e] = state_[e] == kAtLower ? kAtUpper : kAtLower;
        val_[e] = state_[e] == kAtLower ? lo_[e] : up_[e];
        continue;
      }

      pivot(leave_row, e, val_[e] + sigma * step, leave_at_upper);
    }
  }

  void pivot(int r, int e, double entering_value, bool leaving_at_upper) {
    const int lv = basis_[r];
    double* pr = row(r);
    const double piv = pr[e];
    const double inv = 1.0 / piv;
    for (int c = 0; c < width_; ++c) pr[c] *= inv;
    pr[e] = 1.0;
    bcol_[r] *= inv;
    for (int rr = 0; rr < m_; ++rr) {
      if (rr == r) continue;
      double* t = row(rr);
      const double f = t[e];
      if (std::abs(f) <= kZeroTol) {
        t[e] = 0.0;
        continue;
      }
      for (int c = 0; c < width_; ++c) t[c] -= f * pr[c];
      t[e] = 0.0;
      bcol_[rr] -= f * bcol_[r];
    }
    for (std::vector<double>* cost : {&cost1_, &cost2_}) {
      const double f = (*cost)[e];
      if (f == 0.0) continue;
      for (int c = 0; c < width_; ++c) (*cost)[c] -= f * pr[c];
      (*cost)[e] = 0.0;
    }
    basis_[r] = e;
    state_[e] = kBasic;
    beta_[r] = entering_value;
    state_[lv] = leaving_at_upper ? kAtUpper : kAtLower;
    val_[lv] = leaving_at_upper ? up_[lv] : lo_[lv];
  }

  // After phase 1: swap surviving basic artificials for structural or slack
  // columns where possible and freeze every artificial at zero.
  void retire_artificials() {
    for (int r = 0; r < m_; ++r) {
      if (basis_[r] < art_begin_) continue;
      const double* t = row(r);
      int enter = -1;
      double best = kPivotTol;
      for (int j = 0; j < art_begin_; ++j) {
        if (state_[j] == kBasic) continue;
        const double a = std::abs(t[j]);
        if (a > best) {
          best = a;
          enter = j;
        }
      }
      if (enter >= 0) {
        const double entering_value = val_[enter];
        pivot(r, enter, entering_value, false);
        beta_[r] = entering_value;
      }
      // else: redundant row; the artificial stays basic at ~0 and its row is
      // zero on every real column, so it can never block a later pivot.
    }
    for (int a = art_begin_; a < width_; ++a) {
      if (state_[a] == kBasic) continue;
      up_[a] = 0.0;
      state_[a] = kAtLower;
      val_[a] = 0.0;
    }
  }

  void refresh_beta() {
    for (int r = 0; r < m_; ++r) {
      const double* t = row(r);
      double v = bcol_[r];
      for (int j = 0; j < width_; ++j)
        if (state_[j] != kBasic && val_[j] != 0.0) v -= t[j] * val_[j];
      beta_[r] = v;
    }
  }

  void extract(LpSolution& sol) {
    refresh_beta();
    std::vector<double> x(width_, 0.0);
    for (int j = 0; j < width_; ++j)
      if (state_[j] != kBasic) x[j] = val_[j];
    for (int r = 0; r < m_; ++r) x[basis_[r]] = beta_[r];

    sol.x.assign(x.begin(), x.begin() + n_);
    for (int j = 0; j < n_; ++j) {
      sol.x[j] = std::min(std::max(sol.x[j], lp_.lower[j]), lp_.upper[j]);
    }
    double obj = 0.0;
    for (int j = 0; j < n_; ++j) obj += lp_.objective[j] * sol.x[j];
    sol.objective_value = obj;
    sol.status = LpStatus::kOptimal;

    // The optimality contract promises constraint satisfaction to 1e-7.
    for (int r = 0; r < m_; ++r) {
      double dot = 0.0, scale = std::abs(lp_.rhs[r]);
      for (int j = 0; j < n_; ++j) {
        dot += lp_.rows[r][j] * sol.x[j];
        scale = std::max(scale, std::abs(lp_.rows[r][j] * sol.x[j]));
      }
      if (dot > lp_.rhs[r] + 1e-7 * (1.0 + scale))
        throw std::runtime_error(
            "simplex: optimal point violates row " + std::to_string(r));
    }
  }
};

} // namespace

void LinearProgram::validate() const {
  const int n = num_vars();
  auto bad = [](const std::string& msg) {
    throw std::invalid_argument("LinearProgram: " + msg);
  };
  if (static_cast<int>(lower.size()) != n ||
      static_cast<int>(upper.size()) != n)
    bad("bounds length must equal variable count");
  if (rows.size() != rhs.size()) bad("rows and rhs lengths differ");
  for (int j = 0; j < n; ++j) {
    if (!std::isfinite(objective[j])) bad("objective must be finite");
    if (!std::isfinite(lower[j])) bad("lower bounds must be finite");
    if (std::isnan(upper[j]) || upper[j] == -kInf)
      bad("upper bounds must be finite or +infinity");
    if (lower[j] > upper[j])
      bad("lower bound exceeds upper bound at variable " + std::to_string(j));
  }
  for (size_t r = 0; r < rows.size(); ++r) {
    if (static_cast<int>(rows[r].size()) != n)
      bad("row " + std::to_string(r) + " length must equal variable count");
    for (double a : rows[r])
      if (!std::isfinite(a)) bad("row coefficients must be finite");
    if (!std::isfinite(rhs[r])) bad("rhs must be finite");
  }
}

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
  }
  return "optimal";
}

LpSolution solve_lp(const LinearProgram& lp) {
  lp.validate();
  Simplex simplex(lp);
  return simplex.solve();
}

LinearProgram build_relaxation(const Instance& inst, int budget) {
  inst.validate();
  if (budget < 0 || budget > inst.n_slots)
    throw std::invalid_argument("budget must lie in [0, n_slots]");
  const int n = inst.n_slots;
  const std::vector<double> p_inv = channel_inversion_powers(inst);

  LinearProgram lp;
  const int vars = 3 * n; // [conv | renew | chi]
  lp.objective.assign(vars, 0.0);
  lp.lower.assign(vars, 0.0);
  lp.upper.assign(vars, kInf);
  for (int i = 0; i < n; ++i) {
    lp.objective[i] = inst.price_conv;
    lp.objective[n + i] = inst.price_renew;
    lp.upper[2 * n + i] = 1.0;
  }

  lp.rows.reserve(2 * n + 1);
  lp.rhs.reserve(2 * n + 1);
  // Coverage: conv_i + renew_i + p_inv_i chi_i >= p_inv_i.
  for (int i = 0; i < n; ++i) {
    std::vector<double> r(vars, 0.0);
    r[i] = -1.0;
    r[n + i] = -1.0;
    r[2 * n + i] = -p_inv[i];
    lp.rows.push_back(std::move(r));
    lp.rhs.push_back(-p_inv[i]);
  }
  // Prefix harvested-energy budgets.
  double harvested = inst.initial_storage;
  for (int k = 0; k < n; ++k) {
    harvested += inst.arrivals[k];
    std::vector<double> r(vars, 0.0);
    for (int i = 0; i <= k; ++i) r[n + i] = 1.0;
    lp.rows.push_back(std::move(r));
    lp.rhs.push_back(harvested);
  }
  // Outage budget.
  std::vector<double> r(vars, 0.0);
  for (int i = 0; i < n; ++i) r[2 * n + i] = 1.0;
  lp.rows.push_back(std::move(r));
  lp.rhs.push_back(static_cast<double>(budget));
  return lp;
}

LowerBound lower_bound(const Instance& inst, int budget) {
  const LinearProgram lp = build_relaxation(inst, budget);
  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::kOptimal)
    throw std::runtime_error(
        std::string("relaxation solve returned ") + to_string(sol.status) +
        " (must be feasible and bounded; solver bug)");
  LowerBound lb;
  lb.value = sol.objective_value;
  lb.chi.assign(sol.x.begin() + 2 * inst.n_slots,
                sol.x.begin() + 3 * inst.n_slots);
  return lb;
}

} // namespace ehsched
