#pragma once

#include <cstdint>
#include <span>

#include "ehsched/types.hpp"

namespace ehsched {

// Rounds relaxed drop indicators to a drop set of exactly `budget` slots:
// sort by chi descending, break ties toward larger inversion power, then
// lower slot index.
DropSet round_chi_to_drop_set(const Instance& inst, std::span<const double> chi,
                              int budget);

// LP-relaxation rounding: solve the continuous relaxation, drop the `budget`
// slots with the largest relaxed indicators, then schedule greedily.
SolveResult lpcr(const Instance& inst, int budget);

// Worst-channel removal: drop the `budget` slots with the smallest gains
// (ties drop the earlier slot), then schedule greedily. When an optimality
// certificate applies it is attached to the result.
SolveResult wcr(const Instance& inst, int budget);

// Baseline: drop a uniformly random subset of size `budget`, drawn from a
// deterministic stream keyed by (seed, instance contents).
SolveResult random_drop(const Instance& inst, int budget, std::uint64_t seed);

// Checks the a-posteriori optimality certificates for a WCR schedule, in
// order: full renewable use, no conventional energy, non-decreasing gains.
// Returns kNone when none applies.
Certificate wcr_certificate(const Instance& inst, const SolveResult& result);

} // namespace ehsched
