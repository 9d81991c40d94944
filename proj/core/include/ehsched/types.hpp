#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ehsched {

inline constexpr const char* kVersionString = "1.0.0";

// Absolute tolerance for feasibility comparisons (energy balances, outage
// threshold, multiplier sign checks).
inline constexpr double kFeasTol = 1e-9;

// Relative tolerance for comparing costs produced by different solvers.
inline constexpr double kCostRelTol = 1e-7;

// One scheduling problem: n_slots block-fading slots, a fixed-rate link that
// either inverts the channel or stays silent, and two energy sources priced
// per unit (conventional at price_conv, harvested at price_renew).
struct Instance {
  int n_slots = 0;
  double rate = 0.0;        // target rate per channel use (nats)
  double noise = 1.0;       // receiver noise power
  double price_conv = 1.0;  // unit price of conventional energy
  double price_renew = 0.0; // unit price of harvested energy
  std::vector<double> gains;    // per-slot channel power gain, > 0
  std::vector<double> arrivals; // per-slot harvested energy, >= 0
  double initial_storage = 0.0; // harvested energy available before slot 1
  double epsilon = 0.0;         // allowed outage fraction, in [0, 1)

  // Throws std::invalid_argument when any field is out of domain.
  void validate() const;
};

// Per-slot energy drawn from each source. Entry i corresponds to slot i+1.
struct Allocation {
  std::vector<double> conv;
  std::vector<double> renew;
};

// Slots deliberately left in outage. Slots are 1-based, sorted, unique.
struct DropSet {
  std::vector<int> slots;

  bool contains(int slot) const;
  int size() const { return static_cast<int>(slots.size()); }
};

enum class Certificate {
  kNone,
  kOptimal,
  kFullRenewableUse,
  kNoConventional,
  kNonDecreasingChannel,
};

const char* to_string(Certificate c);

struct SolveResult {
  DropSet drop_set;
  Allocation allocation;
  double total_cost = 0.0;
  // Number of drop-set candidates whose schedule was actually costed.
  long long candidates_examined = 0;
  Certificate certificate = Certificate::kNone;
};

struct FeasibilityReport {
  bool ok = true;
  std::vector<std::string> violations;
};

} // namespace ehsched
