#pragma once

#include <stdexcept>

#include "ehsched/types.hpp"

namespace ehsched {

// Hard ceiling on the number of drop sets an exhaustive search may cost out.
inline constexpr long long kDefaultSubsetCap = 2'000'000;

struct CapExceededError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Costs every drop set of size exactly drop_budget(...) (or `budget` when
// passed explicitly) and returns the cheapest; ties resolve to the
// lexicographically smallest drop set. Throws CapExceededError when the
// number of subsets exceeds `cap`.
SolveResult oracle_exhaustive(const Instance& inst, int budget,
                              long long cap = kDefaultSubsetCap);

struct CandidateScan {
  std::vector<int> scanned;   // candidates before pruning, in scan order
  std::vector<int> surviving; // candidates actually costed, in scan order
};

// Candidate drop slots for the single-drop search: the left-to-right running
// maxima of the inversion powers, minus candidates whose own arrival already
// covers their inversion power (the global maximum is always kept). With
// `cumulative_prune` the arrival test uses the whole arrival prefix plus
// initial storage instead of the slot's own arrival; this removes a superset
// of candidates and exists for comparison under test.
CandidateScan drop_one_candidates(const Instance& inst,
                                  bool cumulative_prune = false);

// Optimal single-drop schedule via the pruned candidate scan.
SolveResult solve_drop_one(const Instance& inst);

// Candidate keep slots for the single-keep search: successive minima of the
// inversion powers scanning left to right, truncated at the first candidate
// whose inversion power is already covered by storage plus the arrivals up to
// it (later candidates can never be cheaper).
CandidateScan keep_one_candidates(const Instance& inst);

// Optimal schedule that keeps exactly one slot (budget n_slots - 1).
SolveResult solve_keep_one(const Instance& inst);

// Slots that some optimal schedule never drops: slot i is forced kept when at
// least `budget` earlier slots have strictly larger inversion power.
std::vector<int> forced_keep_slots(const Instance& inst, int budget);

// Exhaustive search restricted to drop sets that avoid forced-keep slots.
SolveResult solve_pruned_search(const Instance& inst, int budget,
                                long long cap = kDefaultSubsetCap);

} // namespace ehsched
