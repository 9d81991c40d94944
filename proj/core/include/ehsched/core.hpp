#pragma once

#include "ehsched/types.hpp"

namespace ehsched {

// Minimum received power that supports the target rate in slot `slot`
// (1-based): noise * (e^rate - 1) / gain.
double channel_inversion_power(const Instance& inst, int slot);

// channel_inversion_power for every slot.
std::vector<double> channel_inversion_powers(const Instance& inst);

// 1 when the allocated power in `slot` leaves the link in outage, else 0.
// A slot is served when conv + renew >= inversion power (within kFeasTol).
int outage_indicator(const Instance& inst, const Allocation& alloc, int slot);

// Largest number of slots that may be dropped under outage fraction epsilon:
// floor(n_slots * epsilon), with the product snapped to the nearest integer
// first when it is within 1e-9 (guards against 200 * 0.005 = 0.9999...).
int drop_budget(int n_slots, double epsilon);

// price_conv * sum(conv) + price_renew * sum(renew). Throws when the
// allocation length does not match the instance.
double total_cost(const Instance& inst, const Allocation& alloc);

// Checks non-negativity, the prefix harvested-energy balance, and the outage
// budget. Collects one human-readable violation string per failure.
FeasibilityReport check_feasible(const Instance& inst, const Allocation& alloc);

// Cost-optimal allocation for a fixed drop set: serve every kept slot at its
// inversion power, spending harvested energy as early as possible and topping
// up with conventional energy. Dropped slots get (0, 0).
Allocation greedy_allocate(const Instance& inst, const DropSet& drop);

// Verifies that `alloc` solves the fixed-drop-set subproblem by constructing
// the dual multipliers of its LP form and checking primal feasibility, dual
// feasibility, complementary slackness, and stationarity at kFeasTol.
bool verify_greedy_kkt(const Instance& inst, const DropSet& drop,
                       const Allocation& alloc);

} // namespace ehsched
