#include "ehsched/heuristics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ehsched/core.hpp"
#include "ehsched/lp.hpp"
#include "ehsched/rng.hpp"

namespace ehsched {

namespace {

SolveResult result_for_drop(const Instance& inst, DropSet drop,
                            long long examined) {
  SolveResult res;
  res.drop_set = std::move(drop);
  res.allocation = greedy_allocate(inst, res.drop_set);
  res.total_cost = total_cost(inst, res.allocation);
  res.candidates_examined = examined;
  return res;
}

} // namespace

DropSet round_chi_to_drop_set(const Instance& inst,
                              std::span<const double> chi, int budget) {
  if (static_cast<int>(chi.size()) != inst.n_slots)
    throw std::invalid_argument("chi length must equal n_slots");
  if (budget < 0 || budget > inst.n_slots)
    throw std::invalid_argument("budget must lie in [0, n_slots]");
  const std::vector<double> p_inv = channel_inversion_powers(inst);
  std::vector<int> order(inst.n_slots);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (chi[a] != chi[b]) return chi[a] > chi[b];
    if (p_inv[a] != p_inv[b]) return p_inv[a] > p_inv[b];
    return a < b;
  });
  DropSet drop;
  drop.slots.reserve(budget);
  for (int i = 0; i < budget; ++i) drop.slots.push_back(order[i] + 1);
  std::sort(drop.slots.begin(), drop.slots.end());
  return drop;
}

SolveResult lpcr(const Instance& inst, int budget) {
  const LowerBound lb = lower_bound(inst, budget);
  return result_for_drop(
      inst, round_chi_to_drop_set(inst, lb.chi, budget), 1);
}

SolveResult wcr(const Instance& inst, int budget) {
  inst.validate();
  if (budget < 0 || budget > inst.n_slots)
    throw std::invalid_argument("budget must lie in [0, n_slots]");
  std::vector<int> order(inst.n_slots);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (inst.gains[a] != inst.gains[b]) return inst.gains[a] < inst.gains[b];
    return a < b; // equal gains: drop the earlier slot first
  });
  DropSet drop;
  drop.slots.reserve(budget);
  for (int i = 0; i < budget; ++i) drop.slots.push_back(order[i] + 1);
  std::sort(drop.slots.begin(), drop.slots.end());
  SolveResult res = result_for_drop(inst, std::move(drop), 1);
  res.certificate = wcr_certificate(inst, res);
  return res;
}

SolveResult random_drop(const Instance& inst, int budget, std::uint64_t seed) {
  inst.validate();
  if (budget < 0 || budget > inst.n_slots)
    throw std::invalid_argument("budget must lie in [0, n_slots]");
  SplitMix64 rng(mix_keys({fnv1a("ehsched.random_drop"), seed,
                           hash_instance(inst)}));
  DropSet drop;
  drop.slots = sample_subset(rng, inst.n_slots, budget);
  return result_for_drop(inst, std::move(drop), 1);
}

Certificate wcr_certificate(const Instance& inst, const SolveResult& result) {
  const double total_harvest =
      inst.initial_storage +
      std::accumulate(inst.arrivals.begin(), inst.arrivals.end(), 0.0);
  const double used_renew = std::accumulate(result.allocation.renew.begin(),
                                            result.allocation.renew.end(), 0.0);
  if (std::abs(used_renew - total_harvest) <= kFeasTol)
    return Certificate::kFullRenewableUse;

  const double used_conv = std::accumulate(result.allocation.conv.begin(),
                                           result.allocation.conv.end(), 0.0);
  if (std::abs(used_conv) <= kFeasTol) return Certificate::kNoConventional;

  bool non_decreasing = true;
  for (int i = 1; i < inst.n_slots; ++i)
    if (inst.gains[i] < inst.gains[i - 1] - kFeasTol) {
      non_decreasing = false;
      break;
    }
  if (non_decreasing) return Certificate::kNonDecreasingChannel;
  return Certificate::kNone;
}

} // namespace ehsched
