#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ehsched/partial_cesi.hpp"
#include "ehsched/types.hpp"

namespace ehsched {

enum class ExperimentKind {
  kSearchCount,   // mean candidate counts of the two single-drop searches
  kCostVsDrops,   // mean cost of bound/lpcr/wcr/random across a drop grid
  kGapToBound,    // mean relative gap of the heuristics to the LP bound
  kMulticycleGap, // gap experiment on the cycle layout
  kPartialCesi,   // mean cost of the statistics-only policy across eps
};

const char* to_string(ExperimentKind k);

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::kCostVsDrops;
  int n_slots = 200;
  int realizations = 100;
  std::uint64_t seed = 1;
  ChannelDistribution fading = ChannelDistribution::exponential(1.0);
  double arrival_high = 1.0; // arrivals ~ U(0, arrival_high)
  double rate = 1.0;
  double noise = 1.0;
  double price_conv = 1.0;
  double price_renew = 0.2;
  std::vector<int> drop_grid;          // cost-vs-drops / gap-to-bound
  std::vector<int> n_grid;             // search-count
  std::vector<double> eps_grid;        // partial-cesi
  std::vector<double> arrival_highs;   // partial-cesi arrival laws
  int cycles = 4;                      // multicycle-gap
  int slots_per_cycle = 50;            // multicycle-gap
  int threads = 1;                     // 0 = hardware concurrency
  std::string out;                     // default CSV path

  // Flat key=value text, one pair per line, `#` comments. Unknown keys are
  // rejected. Grids are comma-separated. Missing grids take the defaults
  // noted in resolve().
  static ExperimentConfig parse(std::istream& in,
                                const std::string& source_name);
  static ExperimentConfig parse_file(const std::string& path);

  // Fills empty grids with experiment-appropriate defaults and validates.
  void resolve();

  // Canonical resolved form; equal configs produce equal text.
  std::string canonical_text() const;
  std::uint64_t config_hash() const;
};

struct Csv {
  std::vector<std::string> comments; // emitted as "# ..." lines
  std::string header;                // column header line
  std::vector<std::string> rows;

  std::string to_text() const;
  void write_file(const std::string& path) const;
};

// Instance with gains from config.fading and arrivals U(0, arrival_high),
// drawn from a stream keyed by (seed, sampling parameters, index) so any
// realization is recomputable in isolation.
Instance sample_instance(const ExperimentConfig& config, int realization_index);

// Aggregate tables behind the CSV emitters, exposed for the test suites.

struct SearchCountRow {
  std::string family; // rayleigh | nakagami | lognormal
  int n = 0;
  std::string algorithm; // alg1 | alg2
  double mean_candidates = 0.0;
};
std::vector<SearchCountRow> compute_search_count(const ExperimentConfig& c);

struct DropGridTable {
  std::vector<int> drops;       // grid values (per-cycle for multicycle)
  std::vector<double> bound;    // mean lower bound per grid value
  std::vector<double> lpcr;     // mean costs
  std::vector<double> wcr;
  std::vector<double> random;
  std::vector<double> lpcr_gap; // mean relative gaps to the bound
  std::vector<double> wcr_gap;
  std::vector<double> random_gap;
  std::vector<int> absolute_gap_count; // realizations with bound < 1e-12
};
DropGridTable compute_cost_vs_drops(const ExperimentConfig& c);
DropGridTable compute_multicycle_gap(const ExperimentConfig& c);

struct PartialCesiRow {
  double eps = 0.0;
  double arrival_high = 0.0;
  double mean_cost = 0.0;
};
std::vector<PartialCesiRow> compute_partial_cesi(const ExperimentConfig& c);

Csv run_search_count(const ExperimentConfig& c);
Csv run_cost_vs_drops(const ExperimentConfig& c);
Csv run_gap_to_bound(const ExperimentConfig& c);
Csv run_multicycle_gap(const ExperimentConfig& c);
Csv run_partial_cesi(const ExperimentConfig& c);

// Dispatch on config.experiment.
Csv run_experiment(const ExperimentConfig& c);

} // namespace ehsched
