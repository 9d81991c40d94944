#pragma once

// Shared helpers for the unit tests: instance builders, a random instance
// sampler, and a brute-force vertex-enumeration LP oracle used to
// cross-check the simplex implementation.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "ehsched/ehsched.hpp"

namespace testutil {

// Instance whose channel inversion powers equal `p_inv` (rate=1, noise=1,
// gains chosen accordingly), alpha=1, beta=0.2.
inline ehsched::Instance instance_with_pinv(const std::vector<double>& p_inv,
                                            const std::vector<double>& arrivals,
                                            double epsilon = 0.0,
                                            double initial_storage = 0.0) {
  ehsched::Instance inst;
  inst.n_slots = static_cast<int>(p_inv.size());
  inst.rate = 1.0;
  inst.noise = 1.0;
  inst.price_conv = 1.0;
  inst.price_renew = 0.2;
  const double scale = std::expm1(1.0);
  inst.gains.reserve(p_inv.size());
  for (double p : p_inv) inst.gains.push_back(scale / p);
  inst.arrivals = arrivals;
  inst.initial_storage = initial_storage;
  inst.epsilon = epsilon;
  inst.validate();
  return inst;
}

// Random Rayleigh-fading instance with U(0, arrival_high) arrivals.
inline ehsched::Instance random_instance(ehsched::SplitMix64& rng, int n,
                                         double arrival_high = 1.0,
                                         double initial_storage = 0.0) {
  ehsched::Instance inst;
  inst.n_slots = n;
  inst.rate = 1.0;
  inst.noise = 1.0;
  inst.price_conv = 1.0;
  inst.price_renew = 0.2;
  inst.gains.reserve(n);
  inst.arrivals.reserve(n);
  for (int i = 0; i < n; ++i) inst.gains.push_back(rng.next_exponential(1.0));
  for (int i = 0; i < n; ++i)
    inst.arrivals.push_back(rng.next_uniform(0.0, arrival_high));
  inst.initial_storage = initial_storage;
  inst.epsilon = 0.0;
  return inst;
}

inline ehsched::DropSet drop_set(std::vector<int> slots) {
  ehsched::DropSet d;
  d.slots = std::move(slots);
  return d;
}

// ---------------------------------------------------------------------------
// Brute-force LP oracle: enumerate every potential vertex (intersection of
// num_vars linearly independent active constraints drawn from rows and
// bounds), keep the feasible ones, and minimize the objective over them.
// Requires all bounds finite so the feasible region, if nonempty, is a
// polytope and therefore has an optimal vertex.

struct BruteForceLp {
  bool feasible = false;
  double objective_value = 0.0;
  std::vector<double> x;
};

namespace detail {

// Solves a.x = b by Gaussian elimination with partial pivoting;
// returns nothing when the system is (near-)singular.
inline std::optional<std::vector<double>> solve_square(
    std::vector<std::vector<double>> a, std::vector<double> b) {
  const int n = static_cast<int>(b.size());
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    if (std::abs(a[pivot][col]) < 1e-10) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      if (f == 0.0) continue;
      for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

} // namespace detail

inline BruteForceLp brute_force_lp(const ehsched::LinearProgram& lp,
                                   double tol = 1e-7) {
  const int n = lp.num_vars();
  const int m = lp.num_rows();
  // Constraint list: rows 0..m-1, then lower bounds, then upper bounds.
  const int total = m + 2 * n;
  auto constraint_row = [&](int c) {
    std::vector<double> row(n, 0.0);
    if (c < m) return lp.rows[c];
    row[(c - m) % n] = 1.0;
    return row;
  };
  auto constraint_rhs = [&](int c) {
    if (c < m) return lp.rhs[c];
    if (c < m + n) return lp.lower[c - m];
    return lp.upper[c - m - n];
  };

  BruteForceLp best;
  auto feasible_point = [&](const std::vector<double>& x) {
    for (int j = 0; j < n; ++j)
      if (x[j] < lp.lower[j] - tol || x[j] > lp.upper[j] + tol) return false;
    for (int r = 0; r < m; ++r) {
      double lhs = 0.0;
      for (int j = 0; j < n; ++j) lhs += lp.rows[r][j] * x[j];
      if (lhs > lp.rhs[r] + tol) return false;
    }
    return true;
  };

  // Enumerate all C(total, n) active sets.
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  while (true) {
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    bool usable = true;
    for (int i = 0; i < n && usable; ++i) {
      const int c = idx[i];
      if (c >= m + n && !std::isfinite(constraint_rhs(c))) usable = false;
      a.push_back(constraint_row(c));
      b.push_back(constraint_rhs(c));
    }
    if (usable) {
      if (auto x = detail::solve_square(a, b); x && feasible_point(*x)) {
        double obj = 0.0;
        for (int j = 0; j < n; ++j) obj += lp.objective[j] * (*x)[j];
        if (!best.feasible || obj < best.objective_value) {
          best.feasible = true;
          best.objective_value = obj;
          best.x = *x;
        }
      }
    }
    // Next combination.
    int pos = n - 1;
    while (pos >= 0 && idx[pos] == total - n + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int i = pos + 1; i < n; ++i) idx[i] = idx[i - 1] + 1;
  }
  return best;
}

} // namespace testutil
