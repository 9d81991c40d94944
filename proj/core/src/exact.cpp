#include "ehsched/exact.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ehsched/core.hpp"
#include "internal.hpp"

namespace ehsched {

namespace {

using internal::greedy_cost_masked;

// Number of size-k subsets of n elements, saturating at cap + 1.
long long subset_count(int n, int k, long long cap) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long c = 1;
  for (int i = 1; i <= k; ++i) {
    const double projected = static_cast<double>(c) * (n - k + i) / i;
    if (projected > static_cast<double>(cap) * 2.0) return cap + 1;
    c = c * (n - k + i) / i; // exact: product of i consecutive ints / i!
    if (c > cap) return cap + 1;
  }
  return c;
}

SolveResult finish(const Instance& inst, std::vector<int> drop_slots,
                   long long examined) {
  SolveResult res;
  res.drop_set.slots = std::move(drop_slots);
  std::sort(res.drop_set.slots.begin(), res.drop_set.slots.end());
  res.allocation = greedy_allocate(inst, res.drop_set);
  res.total_cost = total_cost(inst, res.allocation);
  res.candidates_examined = examined;
  return res;
}

} // namespace

SolveResult oracle_exhaustive(const Instance& inst, int budget,
                              long long cap) {
  inst.validate();
  const int n = inst.n_slots;
  if (budget < 0 || budget > n)
    throw std::invalid_argument("budget must lie in [0, n_slots]");
  const long long count = subset_count(n, budget, cap);
  if (count > cap)
    throw CapExceededError(
        "exhaustive search over C(" + std::to_string(n) + ", " +
        std::to_string(budget) + ") subsets exceeds the cap of " +
        std::to_string(cap));

  const std::vector<double> p_inv = channel_inversion_powers(inst);
  std::vector<char> keep(n, 1);
  std::vector<int> drop(budget); // current 0-based combination, ascending
  for (int i = 0; i < budget; ++i) {
    drop[i] = i;
    keep[i] = 0;
  }

  double best_cost = 0.0;
  std::vector<int> best_drop;
  long long examined = 0;
  while (true) {
    const double cost =
        greedy_cost_masked(p_inv, inst.arrivals, inst.initial_storage,
                           inst.price_conv, inst.price_renew, keep);
    ++examined;
    // Lexicographic enumeration + strict improvement keeps the
    // lexicographically smallest drop set among ties.
    if (examined == 1 || cost < best_cost) {
      best_cost = cost;
      best_drop = drop;
    }
    // Advance to the next combination in lexicographic order.
    int pos = budget - 1;
    while (pos >= 0 && drop[pos] == n - budget + pos) --pos;
    if (pos < 0) break;
    keep[drop[pos]] = 1;
    ++drop[pos];
    keep[drop[pos]] = 0;
    for (int q = pos + 1; q < budget; ++q) {
      keep[drop[q]] = 1;
      drop[q] = drop[q - 1] + 1;
      keep[drop[q]] = 0;
    }
  }

  std::vector<int> slots(best_drop.size());
  for (size_t i = 0; i < best_drop.size(); ++i) slots[i] = best_drop[i] + 1;
  return finish(inst, std::move(slots), examined);
}

CandidateScan drop_one_candidates(const Instance& inst, bool cumulative_prune) {
  inst.validate();
  const std::vector<double> p_inv = channel_inversion_powers(inst);
  const int n = inst.n_slots;

  CandidateScan scan;
  // Take the largest inversion power of the prefix (ties -> later slot),
  // truncate there, repeat toward the front. Equivalently: the left-to-right
  // running maxima, recorded back to front.
  int end = n; // exclusive
  while (end > 0) {
    int arg = 0;
    for (int i = 1; i < end; ++i)
      if (p_inv[i] >= p_inv[arg]) arg = i;
    scan.scanned.push_back(arg + 1);
    end = arg;
  }

  // Global maximum is scanned first and never pruned; later (i.e. earlier in
  // time) candidates are pruned when arrivals already cover their inversion
  // power, so keeping them costs no more than keeping the maximum.
  for (size_t idx = 0; idx < scan.scanned.size(); ++idx) {
    const int slot = scan.scanned[idx];
    if (idx > 0) {
      double covered = inst.arrivals[slot - 1];
      if (cumulative_prune) {
        covered = inst.initial_storage;
        for (int i = 0; i < slot; ++i) covered += inst.arrivals[i];
      }
      if (p_inv[slot - 1] < covered) continue;
    }
    scan.surviving.push_back(slot);
  }
  return scan;
}

SolveResult solve_drop_one(const Instance& inst) {
  const int budget = drop_budget(inst.n_slots, inst.epsilon);
  if (budget != 1)
    throw std::invalid_argument(
        "solve_drop_one requires a drop budget of 1, got " +
        std::to_string(budget));
  const CandidateScan scan = drop_one_candidates(inst);

  SolveResult best;
  bool first = true;
  for (int slot : scan.surviving) {
    DropSet drop;
    drop.slots = {slot};
    Allocation alloc = greedy_allocate(inst, drop);
    const double cost = total_cost(inst, alloc);
    if (first || cost < best.total_cost) {
      best.drop_set = drop;
      best.allocation = std::move(alloc);
      best.total_cost = cost;
      first = false;
    }
  }
  best.candidates_examined = static_cast<long long>(scan.surviving.size());
  return best;
}

CandidateScan keep_one_candidates(const Instance& inst) {
  inst.validate();
  const std::vector<double> p_inv = channel_inversion_powers(inst);
  const int n = inst.n_slots;

  CandidateScan scan;
  // Successive minima scanning forward (ties -> earlier slot): the slot with
  // the smallest inversion power, then the smallest after it, and so on.
  int begin = 0;
  while (begin < n) {
    int arg = begin;
    for (int i = begin + 1; i < n; ++i)
      if (p_inv[i] < p_inv[arg]) arg = i;
    scan.scanned.push_back(arg + 1);
    begin = arg + 1;
  }

  // Once storage plus arrivals through candidate k already exceed its
  // inversion power, slot k is served entirely by harvested energy; later
  // candidates have larger p_inv and weakly less energy headroom, so the
  // scan stops there.
  double cumulative = inst.initial_storage;
  int last_arrival_through = 0;
  for (int slot : scan.scanned) {
    for (int i = last_arrival_through; i < slot; ++i)
      cumulative += inst.arrivals[i];
    last_arrival_through = slot;
    scan.surviving.push_back(slot);
    if (cumulative > p_inv[slot - 1]) break;
  }
  return scan;
}

SolveResult solve_keep_one(const Instance& inst) {
  const int budget = drop_budget(inst.n_slots, inst.epsilon);
  if (budget != inst.n_slots - 1)
    throw std::invalid_argument(
        "solve_keep_one requires a drop budget of n_slots - 1, got " +
        std::to_string(budget));
  const CandidateScan scan = keep_one_candidates(inst);

  SolveResult best;
  bool first = true;
  for (int keep_slot : scan.surviving) {
    DropSet drop;
    drop.slots.reserve(inst.n_slots - 1);
    for (int s = 1; s <= inst.n_slots; ++s)
      if (s != keep_slot) drop.slots.push_back(s);
    Allocation alloc = greedy_allocate(inst, drop);
    const double cost = total_cost(inst, alloc);
    if (first || cost < best.total_cost) {
      best.drop_set = std::move(drop);
      best.allocation = std::move(alloc);
      best.total_cost = cost;
      first = false;
    }
  }
  best.candidates_examined = static_cast<long long>(scan.surviving.size());
  return best;
}

std::vector<int> forced_keep_slots(const Instance& inst, int budget) {
  inst.validate();
  if (budget < 1 || budget > inst.n_slots - 1)
    throw std::invalid_argument("budget must lie in [1, n_slots - 1]");
  const std::vector<double> p_inv = channel_inversion_powers(inst);
  std::vector<int> forced;
  for (int i = 0; i < inst.n_slots; ++i) {
    int larger_before = 0;
    for (int j = 0; j < i; ++j)
      if (p_inv[j] > p_inv[i]) ++larger_before;
    if (larger_before >= budget) forced.push_back(i + 1);
  }
  return forced;
}

SolveResult solve_pruned_search(const Instance& inst, int budget,
                                long long cap) {
  inst.validate();
  if (budget < 0 || budget > inst.n_slots)
    throw std::invalid_argument("budget must lie in [0, n_slots]");
  if (budget == 0 || budget == inst.n_slots)
    return oracle_exhaustive(inst, budget, cap);

  const std::vector<int> forced = forced_keep_slots(inst, budget);
  std::vector<int> droppable; // 1-based slots that may be dropped
  {
    size_t f = 0;
    for (int s = 1; s <= inst.n_slots; ++s) {
      if (f < forced.size() && forced[f] == s) {
        ++f;
        continue;
      }
      droppable.push_back(s);
    }
  }
  const int pool = static_cast<int>(droppable.size());
  const long long count = subset_count(pool, budget, cap);
  if (count > cap)
    throw CapExceededError(
        "pruned search over C(" + std::to_string(pool) + ", " +
        std::to_string(budget) + ") subsets exceeds the cap of " +
        std::to_string(cap));

  const std::vector<double> p_inv = channel_inversion_powers(inst);
  const int n = inst.n_slots;
  std::vector<char> keep(n, 1);
  std::vector<int> pick(budget); // indices into droppable, ascending
  for (int i = 0; i < budget; ++i) {
    pick[i] = i;
    keep[droppable[i] - 1] = 0;
  }

  double best_cost = 0.0;
  std::vector<int> best_drop;
  long long examined = 0;
  while (true) {
    const double cost =
        greedy_cost_masked(p_inv, inst.arrivals, inst.initial_storage,
                           inst.price_conv, inst.price_renew, keep);
    ++examined;
    if (examined == 1 || cost < best_cost) {
      best_cost = cost;
      best_drop.clear();
      for (int idx : pick) best_drop.push_back(droppable[idx]);
    }
    int pos = budget - 1;
    while (pos >= 0 && pick[pos] == pool - budget + pos) --pos;
    if (pos < 0) break;
    keep[droppable[pick[pos]] - 1] = 1;
    ++pick[pos];
    keep[droppable[pick[pos]] - 1] = 0;
    for (int q = pos + 1; q < budget; ++q) {
      keep[droppable[pick[q]] - 1] = 1;
      pick[q] = pick[q - 1] + 1;
      keep[droppable[pick[q]] - 1] = 0;
    }
  }
  return finish(inst, std::move(best_drop), examined);
}

} // namespace ehsched
