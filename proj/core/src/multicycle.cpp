#include "ehsched/multicycle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "ehsched/core.hpp"
#include "ehsched/heuristics.hpp"
#include "ehsched/rng.hpp"
#include "internal.hpp"

namespace ehsched {

namespace {

// epsilon value whose drop budget equals `drops` out of `n`. drop_budget
// snaps near-integer products, so K/N encodes exactly; the all-drop case
// needs a value just below 1 that still snaps to n.
double epsilon_for(int drops, int n) {
  if (drops == n) return 1.0 - 1e-12;
  return static_cast<double>(drops) / static_cast<double>(n);
}

} // namespace

void MultiCycleInstance::validate() const {
  auto bad = [](const std::string& msg) {
    throw std::invalid_argument("MultiCycleInstance: " + msg);
  };
  if (cycles < 1) bad("cycles must be >= 1");
  if (slots_per_cycle < 1) bad("slots_per_cycle must be >= 1");
  if (drops_per_cycle < 0 || drops_per_cycle > slots_per_cycle)
    bad("drops_per_cycle must lie in [0, slots_per_cycle]");
  if (static_cast<int>(gains.size()) != total_slots() ||
      static_cast<int>(arrivals.size()) != total_slots())
    bad("gains/arrivals must hold cycles * slots_per_cycle values");
  flatten(*this, 0.0).validate();
}

Instance cycle_instance(const MultiCycleInstance& mc, int cycle,
                        double storage) {
  if (cycle < 0 || cycle >= mc.cycles)
    throw std::out_of_range("cycle index out of range");
  Instance inst;
  inst.n_slots = mc.slots_per_cycle;
  inst.rate = mc.rate;
  inst.noise = mc.noise;
  inst.price_conv = mc.price_conv;
  inst.price_renew = mc.price_renew;
  const auto begin = cycle * mc.slots_per_cycle;
  inst.gains.assign(mc.gains.begin() + begin,
                    mc.gains.begin() + begin + mc.slots_per_cycle);
  inst.arrivals.assign(mc.arrivals.begin() + begin,
                       mc.arrivals.begin() + begin + mc.slots_per_cycle);
  inst.initial_storage = storage;
  inst.epsilon = epsilon_for(mc.drops_per_cycle, mc.slots_per_cycle);
  return inst;
}

Instance flatten(const MultiCycleInstance& mc, double storage) {
  Instance inst;
  inst.n_slots = mc.total_slots();
  inst.rate = mc.rate;
  inst.noise = mc.noise;
  inst.price_conv = mc.price_conv;
  inst.price_renew = mc.price_renew;
  inst.gains = mc.gains;
  inst.arrivals = mc.arrivals;
  inst.initial_storage = storage;
  inst.epsilon =
      epsilon_for(mc.cycles * mc.drops_per_cycle, mc.total_slots());
  return inst;
}

namespace {

// Assemble the global result given per-cycle drop slots (1-based within the
// whole horizon), running one greedy allocation over the flattened instance.
SolveResult assemble(const MultiCycleInstance& mc, std::vector<int> drops,
                     long long examined) {
  SolveResult res;
  std::sort(drops.begin(), drops.end());
  res.drop_set.slots = std::move(drops);
  const Instance flat = flatten(mc, 0.0);
  res.allocation = greedy_allocate(flat, res.drop_set);
  res.total_cost = total_cost(flat, res.allocation);
  res.candidates_examined = examined;
  return res;
}

} // namespace

SolveResult mc_lpcr(const MultiCycleInstance& mc) {
  mc.validate();
  std::vector<int> drops;
  drops.reserve(mc.cycles * mc.drops_per_cycle);
  Allocation all;
  all.conv.reserve(mc.total_slots());
  all.renew.reserve(mc.total_slots());
  double storage = 0.0;
  long long examined = 0;
  for (int c = 0; c < mc.cycles; ++c) {
    const Instance inst = cycle_instance(mc, c, storage);
    SolveResult cycle_res;
    try {
      cycle_res = lpcr(inst, mc.drops_per_cycle);
    } catch (const std::runtime_error& e) {
      throw std::runtime_error("mc_lpcr cycle " + std::to_string(c + 1) +
                               ": " + e.what());
    }
    examined += cycle_res.candidates_examined;
    for (int s : cycle_res.drop_set.slots)
      drops.push_back(c * mc.slots_per_cycle + s);
    all.conv.insert(all.conv.end(), cycle_res.allocation.conv.begin(),
                    cycle_res.allocation.conv.end());
    all.renew.insert(all.renew.end(), cycle_res.allocation.renew.begin(),
                     cycle_res.allocation.renew.end());
    const double arrived = std::accumulate(inst.arrivals.begin(),
                                           inst.arrivals.end(), 0.0);
    const double used = std::accumulate(cycle_res.allocation.renew.begin(),
                                        cycle_res.allocation.renew.end(), 0.0);
    storage = std::max(0.0, storage + arrived - used);
  }
  SolveResult res;
  std::sort(drops.begin(), drops.end());
  res.drop_set.slots = std::move(drops);
  res.allocation = std::move(all);
  res.total_cost = total_cost(flatten(mc, 0.0), res.allocation);
  res.candidates_examined = examined;
  return res;
}

SolveResult mc_wcr(const MultiCycleInstance& mc) {
  mc.validate();
  std::vector<int> drops;
  drops.reserve(mc.cycles * mc.drops_per_cycle);
  for (int c = 0; c < mc.cycles; ++c) {
    const int base = c * mc.slots_per_cycle;
    std::vector<int> order(mc.slots_per_cycle);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      if (mc.gains[base + a] != mc.gains[base + b])
        return mc.gains[base + a] < mc.gains[base + b];
      return a < b;
    });
    for (int i = 0; i < mc.drops_per_cycle; ++i)
      drops.push_back(base + order[i] + 1);
  }
  SolveResult res = assemble(mc, std::move(drops), 1);
  const std::vector<Certificate> certs = mc_wcr_certificates(mc, res);
  const bool all_certified =
      std::all_of(certs.begin(), certs.end(),
                  [](Certificate c) { return c != Certificate::kNone; });
  if (all_certified) res.certificate = Certificate::kOptimal;
  return res;
}

SolveResult mc_random_drop(const MultiCycleInstance& mc, std::uint64_t seed) {
  mc.validate();
  SplitMix64 rng(mix_keys({fnv1a("ehsched.mc_random_drop"), seed,
                           hash_instance(flatten(mc, 0.0))}));
  std::vector<int> drops;
  drops.reserve(mc.cycles * mc.drops_per_cycle);
  for (int c = 0; c < mc.cycles; ++c) {
    const std::vector<int> pick =
        sample_subset(rng, mc.slots_per_cycle, mc.drops_per_cycle);
    for (int s : pick) drops.push_back(c * mc.slots_per_cycle + s);
  }
  return assemble(mc, std::move(drops), 1);
}

SolveResult mc_oracle(const MultiCycleInstance& mc, long long cap) {
  mc.validate();
  const int n = mc.slots_per_cycle;
  const int k = mc.drops_per_cycle;

  // C(n, k)^cycles combinations, saturating against the cap.
  double per_cycle = 1.0;
  for (int i = 1; i <= std::min(k, n - k); ++i)
    per_cycle = per_cycle * (n - std::min(k, n - k) + i) / i;
  double total = 1.0;
  for (int c = 0; c < mc.cycles; ++c) {
    total *= per_cycle;
    if (total > static_cast<double>(cap)) break;
  }
  if (total > static_cast<double>(cap))
    throw CapExceededError("multi-cycle exhaustive search exceeds the cap of " +
                           std::to_string(cap));

  const Instance flat = flatten(mc, 0.0);
  const std::vector<double> p_inv = channel_inversion_powers(flat);

  // Odometer over per-cycle combinations, last cycle fastest, so the
  // concatenated drop sets appear in lexicographic order.
  std::vector<std::vector<int>> combo(mc.cycles, std::vector<int>(k));
  std::vector<char> keep(flat.n_slots, 1);
  for (int c = 0; c < mc.cycles; ++c)
    for (int i = 0; i < k; ++i) {
      combo[c][i] = i;
      keep[c * n + i] = 0;
    }

  auto advance_cycle = [&](int c) -> bool {
    std::vector<int>& pick = combo[c];
    int pos = k - 1;
    while (pos >= 0 && pick[pos] == n - k + pos) --pos;
    if (pos < 0) {
      // Wrap this cycle back to its first combination.
      for (int i = 0; i < k; ++i) keep[c * n + pick[i]] = 1;
      for (int i = 0; i < k; ++i) {
        pick[i] = i;
        keep[c * n + i] = 0;
      }
      return false;
    }
    keep[c * n + pick[pos]] = 1;
    ++pick[pos];
    keep[c * n + pick[pos]] = 0;
    for (int q = pos + 1; q < k; ++q) {
      keep[c * n + pick[q]] = 1;
      pick[q] = pick[q - 1] + 1;
      keep[c * n + pick[q]] = 0;
    }
    return true;
  };

  double best_cost = 0.0;
  std::vector<int> best_drop;
  long long examined = 0;
  while (true) {
    const double cost = internal::greedy_cost_masked(
        p_inv, flat.arrivals, flat.initial_storage, flat.price_conv,
        flat.price_renew, keep);
    ++examined;
    if (examined == 1 || cost < best_cost) {
      best_cost = cost;
      best_drop.clear();
      for (int c = 0; c < mc.cycles; ++c)
        for (int i = 0; i < k; ++i) best_drop.push_back(c * n + combo[c][i] + 1);
    }
    int c = mc.cycles - 1;
    while (c >= 0 && !advance_cycle(c)) --c;
    if (c < 0) break;
  }
  return assemble(mc, std::move(best_drop), examined);
}

LowerBound mc_lower_bound(const MultiCycleInstance& mc) {
  mc.validate();
  const Instance flat = flatten(mc, 0.0);
  // Relaxation of the whole horizon, except the single outage-budget row is
  // replaced by one row per cycle.
  LinearProgram lp = build_relaxation(flat, mc.cycles * mc.drops_per_cycle);
  lp.rows.pop_back();
  lp.rhs.pop_back();
  const int n_tot = flat.n_slots;
  for (int c = 0; c < mc.cycles; ++c) {
    std::vector<double> row(3 * n_tot, 0.0);
    for (int i = 0; i < mc.slots_per_cycle; ++i)
      row[2 * n_tot + c * mc.slots_per_cycle + i] = 1.0;
    lp.rows.push_back(std::move(row));
    lp.rhs.push_back(static_cast<double>(mc.drops_per_cycle));
  }
  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::kOptimal)
    throw std::runtime_error(
        std::string("multi-cycle relaxation solve returned ") +
        to_string(sol.status));
  LowerBound lb;
  lb.value = sol.objective_value;
  lb.chi.assign(sol.x.begin() + 2 * n_tot, sol.x.begin() + 3 * n_tot);
  return lb;
}

std::vector<Certificate> mc_wcr_certificates(const MultiCycleInstance& mc,
                                             const SolveResult& result) {
  mc.validate();
  if (static_cast<int>(result.allocation.renew.size()) != mc.total_slots())
    throw std::invalid_argument("allocation length does not match horizon");
  std::vector<Certificate> certs;
  certs.reserve(mc.cycles);
  double storage = 0.0;
  for (int c = 0; c < mc.cycles; ++c) {
    const Instance inst = cycle_instance(mc, c, storage);
    SolveResult slice;
    const int base = c * mc.slots_per_cycle;
    for (int s : result.drop_set.slots)
      if (s > base && s <= base + mc.slots_per_cycle)
        slice.drop_set.slots.push_back(s - base);
    slice.allocation.conv.assign(
        result.allocation.conv.begin() + base,
        result.allocation.conv.begin() + base + mc.slots_per_cycle);
    slice.allocation.renew.assign(
        result.allocation.renew.begin() + base,
        result.allocation.renew.begin() + base + mc.slots_per_cycle);
    slice.total_cost = total_cost(inst, slice.allocation);
    certs.push_back(wcr_certificate(inst, slice));
    const double arrived = std::accumulate(inst.arrivals.begin(),
                                           inst.arrivals.end(), 0.0);
    const double used = std::accumulate(slice.allocation.renew.begin(),
                                        slice.allocation.renew.end(), 0.0);
    storage = std::max(0.0, storage + arrived - used);
  }
  return certs;
}

StorageSensitivity storage_sensitivity(const Instance& inst, int budget,
                                       double delta, long long cap) {
  if (!(delta >= 0.0) || !std::isfinite(delta))
    throw std::invalid_argument("delta must be finite and >= 0");
  StorageSensitivity out;
  out.cost_at_s = oracle_exhaustive(inst, budget, cap).total_cost;
  Instance bumped = inst;
  bumped.initial_storage += delta;
  out.cost_at_s_plus_delta = oracle_exhaustive(bumped, budget, cap).total_cost;
  out.bound_holds =
      out.cost_at_s - out.cost_at_s_plus_delta <=
      (inst.price_conv - inst.price_renew) * delta + 1e-7;
  return out;
}

} // namespace ehsched
