#include "ehsched/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ehsched {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

bool finite(double v) { return std::isfinite(v); }

} // namespace

void Instance::validate() const {
  require(n_slots >= 1, "n_slots must be >= 1");
  require(finite(rate) && rate >= 0.0, "rate must be finite and >= 0");
  require(finite(noise) && noise > 0.0, "noise must be finite and > 0");
  require(finite(price_conv) && finite(price_renew),
          "prices must be finite");
  require(price_renew > 0.0, "price_renew must be > 0");
  require(price_conv > price_renew, "price_conv must exceed price_renew");
  require(static_cast<int>(gains.size()) == n_slots,
          "gains length must equal n_slots");
  require(static_cast<int>(arrivals.size()) == n_slots,
          "arrivals length must equal n_slots");
  for (int i = 0; i < n_slots; ++i) {
    require(finite(gains[i]) && gains[i] > 0.0,
            "gain at slot " + std::to_string(i + 1) +
                " must be finite and > 0");
    require(finite(arrivals[i]) && arrivals[i] >= 0.0,
            "arrival at slot " + std::to_string(i + 1) +
                " must be finite and >= 0");
  }
  require(finite(initial_storage) && initial_storage >= 0.0,
          "initial_storage must be finite and >= 0");
  require(finite(epsilon) && epsilon >= 0.0 && epsilon < 1.0,
          "epsilon must lie in [0, 1)");
}

bool DropSet::contains(int slot) const {
  return std::binary_search(slots.begin(), slots.end(), slot);
}

const char* to_string(Certificate c) {
  switch (c) {
    case Certificate::kNone: return "none";
    case Certificate::kOptimal: return "optimal";
    case Certificate::kFullRenewableUse: return "full-renewable-use";
    case Certificate::kNoConventional: return "no-conventional";
    case Certificate::kNonDecreasingChannel: return "non-decreasing-channel";
  }
  return "none";
}

double channel_inversion_power(const Instance& inst, int slot) {
  if (slot < 1 || slot > inst.n_slots)
    throw std::out_of_range("slot index " + std::to_string(slot) +
                            " outside [1, " + std::to_string(inst.n_slots) +
                            "]");
  return inst.noise * std::expm1(inst.rate) / inst.gains[slot - 1];
}

std::vector<double> channel_inversion_powers(const Instance& inst) {
  std::vector<double> p(inst.n_slots);
  const double top = inst.noise * std::expm1(inst.rate);
  for (int i = 0; i < inst.n_slots; ++i) p[i] = top / inst.gains[i];
  return p;
}

int outage_indicator(const Instance& inst, const Allocation& alloc, int slot) {
  if (slot < 1 || slot > inst.n_slots)
    throw std::out_of_range("slot index out of range");
  const double total = alloc.conv[slot - 1] + alloc.renew[slot - 1];
  return total < channel_inversion_power(inst, slot) - kFeasTol ? 1 : 0;
}

int drop_budget(int n_slots, double epsilon) {
  if (!(epsilon >= 0.0) || epsilon >= 1.0)
    throw std::invalid_argument("epsilon must lie in [0, 1)");
  const double product = static_cast<double>(n_slots) * epsilon;
  const double nearest = std::round(product);
  if (std::abs(product - nearest) <= 1e-9)
    return static_cast<int>(nearest);
  return static_cast<int>(std::floor(product));
}

double total_cost(const Instance& inst, const Allocation& alloc) {
  if (static_cast<int>(alloc.conv.size()) != inst.n_slots ||
      static_cast<int>(alloc.renew.size()) != inst.n_slots)
    throw std::invalid_argument("allocation length does not match n_slots");
  double sum_conv = 0.0, sum_renew = 0.0;
  for (int i = 0; i < inst.n_slots; ++i) {
    sum_conv += alloc.conv[i];
    sum_renew += alloc.renew[i];
  }
  return inst.price_conv * sum_conv + inst.price_renew * sum_renew;
}

FeasibilityReport check_feasible(const Instance& inst,
                                 const Allocation& alloc) {
  FeasibilityReport report;
  auto violate = [&report](std::string msg) {
    report.ok = false;
    report.violations.push_back(std::move(msg));
  };
  if (static_cast<int>(alloc.conv.size()) != inst.n_slots ||
      static_cast<int>(alloc.renew.size()) != inst.n_slots) {
    violate("allocation length does not match n_slots");
    return report;
  }
  for (int i = 0; i < inst.n_slots; ++i) {
    if (alloc.conv[i] < -kFeasTol)
      violate("negative conventional power at slot " + std::to_string(i + 1));
    if (alloc.renew[i] < -kFeasTol)
      violate("negative renewable power at slot " + std::to_string(i + 1));
  }
  double available = inst.initial_storage;
  for (int i = 0; i < inst.n_slots; ++i) {
    available += inst.arrivals[i] - alloc.renew[i];
    if (available < -kFeasTol) {
      violate("prefix energy-harvesting constraint at slot " +
              std::to_string(i + 1));
      break; // one breach taints every later prefix; report the first
    }
  }
  int outages = 0;
  for (int i = 1; i <= inst.n_slots; ++i)
    outages += outage_indicator(inst, alloc, i);
  const int budget = drop_budget(inst.n_slots, inst.epsilon);
  if (outages > budget)
    violate("outage budget: " + std::to_string(outages) + " outages > " +
            std::to_string(budget) + " allowed");
  return report;
}

Allocation greedy_allocate(const Instance& inst, const DropSet& drop) {
  for (int s : drop.slots)
    if (s < 1 || s > inst.n_slots)
      throw std::out_of_range("drop slot " + std::to_string(s) +
                              " outside [1, " + std::to_string(inst.n_slots) +
                              "]");
  Allocation alloc;
  alloc.conv.assign(inst.n_slots, 0.0);
  alloc.renew.assign(inst.n_slots, 0.0);
  const std::vector<double> p_inv = channel_inversion_powers(inst);
  double stored = inst.initial_storage;
  for (int i = 0; i < inst.n_slots; ++i) {
    stored += inst.arrivals[i];
    if (drop.contains(i + 1)) continue;
    const double renew = std::min(p_inv[i], stored);
    alloc.renew[i] = renew;
    alloc.conv[i] = p_inv[i] - renew;
    stored -= renew;
  }
  return alloc;
}

bool verify_greedy_kkt(const Instance& inst, const DropSet& drop,
                       const Allocation& alloc) {
  const int n = inst.n_slots;
  if (static_cast<int>(alloc.conv.size()) != n ||
      static_cast<int>(alloc.renew.size()) != n)
    throw std::invalid_argument("allocation length does not match n_slots");

  const double margin = inst.price_conv - inst.price_renew;
  if (margin < -kFeasTol) return false; // dual feasibility needs alpha >= beta

  // Fixed drop set reduces the problem to an LP in the renewable draws x_i
  // with per-slot caps c_i (the inversion power on kept slots, 0 on dropped
  // ones) and the prefix harvested-energy constraints. Conventional power is
  // then pinned at c_i - x_i.
  std::vector<double> caps = channel_inversion_powers(inst);
  for (int i = 0; i < n; ++i)
    if (drop.contains(i + 1)) caps[i] = 0.0;

  // The allocation must have the pinned shape at all.
  for (int i = 0; i < n; ++i)
    if (std::abs(alloc.conv[i] - (caps[i] - alloc.renew[i])) > kFeasTol)
      return false;

  // Primal feasibility: 0 <= x <= c and every prefix constraint.
  for (int i = 0; i < n; ++i)
    if (alloc.renew[i] < -kFeasTol || alloc.renew[i] > caps[i] + kFeasTol)
      return false;
  double used = 0.0, harvested = inst.initial_storage;
  int tight_prefix = 0; // largest index K whose prefix constraint is tight
  for (int i = 0; i < n; ++i) {
    used += alloc.renew[i];
    harvested += inst.arrivals[i];
    if (used > harvested + kFeasTol) return false;
    if (std::abs(used - harvested) <= kFeasTol) tight_prefix = i + 1;
  }

  // Multipliers: mu on prefix constraints (only mu_K nonzero), lambda on the
  // caps x_i <= c_i, gamma = 0 on x_i >= 0. All are >= 0 since alpha > beta.
  const int big_k = tight_prefix;
  std::vector<double> lambda(n, 0.0);
  for (int i = big_k; i < n; ++i) lambda[i] = margin;
  // mu_K = margin when K > 0; stationarity per slot i reads
  //   -margin + lambda_i + sum_{j>=i} mu_j = 0.
  for (int i = 0; i < n; ++i) {
    const double mu_tail = (big_k > 0 && i + 1 <= big_k) ? margin : 0.0;
    if (std::abs(-margin + lambda[i] + mu_tail) > kFeasTol) return false;
  }

  // Complementary slackness. lambda_i > 0 requires the cap tight; mu_K > 0
  // requires prefix K tight (true by construction of K, checked anyway).
  for (int i = 0; i < n; ++i)
    if (lambda[i] > kFeasTol && std::abs(alloc.renew[i] - caps[i]) > kFeasTol)
      return false;
  if (big_k > 0) {
    double u = 0.0, h = inst.initial_storage;
    for (int i = 0; i < big_k; ++i) {
      u += alloc.renew[i];
      h += inst.arrivals[i];
    }
    if (std::abs(u - h) > kFeasTol) return false;
  }
  return true;
}

} // namespace ehsched
