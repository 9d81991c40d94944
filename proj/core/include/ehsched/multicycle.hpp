#pragma once

#include <cstdint>

#include "ehsched/exact.hpp"
#include "ehsched/lp.hpp"
#include "ehsched/types.hpp"

namespace ehsched {

// A horizon of `cycles` back-to-back cycles of `slots_per_cycle` slots each.
// Exactly drops_per_cycle slots must be dropped in every cycle; harvested
// energy left over at the end of a cycle carries into the next one.
struct MultiCycleInstance {
  int cycles = 0;
  int slots_per_cycle = 0;
  int drops_per_cycle = 0;
  double rate = 0.0;
  double noise = 1.0;
  double price_conv = 1.0;
  double price_renew = 0.0;
  std::vector<double> gains;    // cycles * slots_per_cycle values
  std::vector<double> arrivals; // cycles * slots_per_cycle values

  int total_slots() const { return cycles * slots_per_cycle; }
  void validate() const; // throws std::invalid_argument
};

// Single-cycle view of cycle `cycle` (0-based) with carried-in storage.
// epsilon is set so the drop budget equals drops_per_cycle.
Instance cycle_instance(const MultiCycleInstance& mc, int cycle,
                        double storage);

// Flattened view over the whole horizon with the given initial storage and a
// drop budget of cycles * drops_per_cycle (used for bounds and certificates).
Instance flatten(const MultiCycleInstance& mc, double storage);

// Results index slots 1..cycles*slots_per_cycle over the whole horizon.

// Cycle-by-cycle LP rounding: each cycle is solved with lpcr using the
// storage left over from the previous cycle.
SolveResult mc_lpcr(const MultiCycleInstance& mc);

// Drops the drops_per_cycle worst gains inside every cycle, then runs one
// greedy allocation over the whole horizon. Attaches kOptimal when every
// cycle satisfies a per-cycle WCR certificate.
SolveResult mc_wcr(const MultiCycleInstance& mc);

// Baseline: independent uniformly random drop sets per cycle.
SolveResult mc_random_drop(const MultiCycleInstance& mc, std::uint64_t seed);

// Exhaustive search over the product of per-cycle drop sets. Throws
// CapExceededError when the product count exceeds `cap`.
SolveResult mc_oracle(const MultiCycleInstance& mc,
                      long long cap = kDefaultSubsetCap);

// LP relaxation of the whole horizon with per-cycle budget rows: a certified
// lower bound on every feasible multi-cycle schedule.
LowerBound mc_lower_bound(const MultiCycleInstance& mc);

// Per-cycle WCR certificates for a schedule produced by mc_wcr (kNone entries
// where no certificate applies).
std::vector<Certificate> mc_wcr_certificates(const MultiCycleInstance& mc,
                                             const SolveResult& result);

struct StorageSensitivity {
  double cost_at_s = 0.0;
  double cost_at_s_plus_delta = 0.0;
  // cost(S) - cost(S + delta) <= (price_conv - price_renew) * delta + 1e-7
  bool bound_holds = false;
};

// Optimal-cost drop when the initial storage grows by `delta`, obtained from
// the exhaustive oracle at both storage levels.
StorageSensitivity storage_sensitivity(const Instance& inst, int budget,
                                       double delta,
                                       long long cap = kDefaultSubsetCap);

} // namespace ehsched
