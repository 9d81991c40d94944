#pragma once

#include "ehsched/types.hpp"

namespace ehsched {

// Dense linear program:  minimize objective . x
//                        subject to rows[r] . x <= rhs[r] for every r,
//                                   lower[j] <= x[j] <= upper[j].
// Lower bounds must be finite; upper bounds may be +infinity.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  std::vector<double> lower;
  std::vector<double> upper;

  int num_vars() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }
  void validate() const; // throws std::invalid_argument
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

const char* to_string(LpStatus s);

struct LpSolution {
  std::vector<double> x;
  double objective_value = 0.0;
  LpStatus status = LpStatus::kOptimal;
  int iterations = 0;
};

// Deterministic bounded-variable two-phase primal simplex. Given the same
// program it performs the identical pivot sequence on every platform.
LpSolution solve_lp(const LinearProgram& lp);

// Continuous relaxation of the drop-selection problem. Variables are stacked
// [conv(n), renew(n), chi(n)] with chi in [0,1]; rows are n coverage rows
// (-conv_i - renew_i - p_inv_i * chi_i <= -p_inv_i), n prefix harvested-energy
// rows, and one outage-budget row (sum chi <= budget).
LinearProgram build_relaxation(const Instance& inst, int budget);

struct LowerBound {
  double value = 0.0;
  std::vector<double> chi; // relaxed drop indicators, one per slot
};

// Optimal value of build_relaxation(inst, budget): a certified lower bound on
// every integral schedule that drops at most `budget` slots.
LowerBound lower_bound(const Instance& inst, int budget);

} // namespace ehsched
