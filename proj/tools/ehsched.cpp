// Command-line front end: solve instance files, evaluate the relaxation
// bound, run seeded CSV experiments, and self-check the exact solvers.
//
// Exit codes: 0 success, 1 internal failure, 2 invalid input, 3 enumeration
// cap exceeded.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ehsched/ehsched.hpp"

namespace {

using namespace ehsched;

// Outage fraction whose drop budget is exactly `drops` out of `n` slots.
double epsilon_with_budget(int drops, int n) {
  if (drops < 0 || drops > n)
    throw std::invalid_argument("--drops must lie in [0, " +
                                std::to_string(n) + "]");
  if (drops == n) return 1.0 - 1e-12; // snaps back to n under drop_budget
  return static_cast<double>(drops) / n;
}

std::string format_drop_set(const DropSet& drop) {
  if (drop.slots.empty()) return "none";
  std::string s;
  for (size_t i = 0; i < drop.slots.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(drop.slots[i]);
  }
  return s;
}

void print_result(const Instance& inst, const std::string& method,
                  const SolveResult& result, bool print_allocation) {
  std::cout << "method=" << method << "\n";
  std::cout << "n_slots=" << inst.n_slots << "\n";
  std::cout << "dropped=" << result.drop_set.size() << "\n";
  std::cout << "dropped_slots=" << format_drop_set(result.drop_set) << "\n";
  std::cout << "total_cost=" << format_double(result.total_cost) << "\n";
  std::cout << "candidates_examined=" << result.candidates_examined << "\n";
  std::cout << "certificate=" << to_string(result.certificate) << "\n";
  const FeasibilityReport report = check_feasible(inst, result.allocation);
  std::cout << "feasible=" << (report.ok ? "yes" : "no") << "\n";
  for (const std::string& v : report.violations)
    std::cout << "violation=" << v << "\n";
  if (print_allocation) {
    std::cout << "slot,conv,renew\n";
    for (int i = 0; i < inst.n_slots; ++i)
      std::cout << (i + 1) << ',' << format_double(result.allocation.conv[i])
                << ',' << format_double(result.allocation.renew[i]) << "\n";
  }
}

int run_solve(const std::string& path, const std::string& method, int drops,
              std::uint64_t seed, long long cap, bool print_allocation) {
  Instance inst = parse_instance_file(path);
  if (drops >= 0) inst.epsilon = epsilon_with_budget(drops, inst.n_slots);
  const int budget = drop_budget(inst.n_slots, inst.epsilon);

  SolveResult result;
  if (method == "oracle") {
    result = oracle_exhaustive(inst, budget, cap);
  } else if (method == "alg1") {
    result = solve_drop_one(inst);
  } else if (method == "alg2") {
    result = solve_keep_one(inst);
  } else if (method == "pruned") {
    result = solve_pruned_search(inst, budget, cap);
  } else if (method == "lpcr") {
    result = lpcr(inst, budget);
  } else if (method == "wcr") {
    result = wcr(inst, budget);
  } else if (method == "random") {
    result = random_drop(inst, budget, seed);
  } else {
    throw std::invalid_argument("unknown method '" + method + "'");
  }
  print_result(inst, method, result, print_allocation);
  return 0;
}

int run_solve_mc(const std::string& path, const std::string& method,
                 std::uint64_t seed, long long cap, bool print_allocation) {
  const MultiCycleInstance mc = parse_multicycle_file(path);
  SolveResult result;
  if (method == "oracle") {
    result = mc_oracle(mc, cap);
  } else if (method == "lpcr") {
    result = mc_lpcr(mc);
  } else if (method == "wcr") {
    result = mc_wcr(mc);
  } else if (method == "random") {
    result = mc_random_drop(mc, seed);
  } else {
    throw std::invalid_argument("unknown method '" + method + "'");
  }
  const Instance flat = flatten(mc, 0.0);
  std::cout << "cycles=" << mc.cycles
            << " slots_per_cycle=" << mc.slots_per_cycle
            << " drops_per_cycle=" << mc.drops_per_cycle << "\n";
  print_result(flat, method, result, print_allocation);
  return 0;
}

int run_bound(const std::string& path, int drops) {
  const Instance inst = parse_instance_file(path);
  const LowerBound bound = lower_bound(inst, drops);
  std::cout << "drops=" << drops << "\n";
  std::cout << "lower_bound=" << format_double(bound.value) << "\n";
  std::cout << "chi=";
  for (size_t i = 0; i < bound.chi.size(); ++i) {
    if (i) std::cout << ' ';
    std::cout << format_double(bound.chi[i]);
  }
  std::cout << "\n";
  return 0;
}

int run_experiment_cmd(const std::string& config_path,
                       const std::string& out_override) {
  ExperimentConfig config = ExperimentConfig::parse_file(config_path);
  if (!out_override.empty()) config.out = out_override;
  const Csv csv = run_experiment(config);
  if (config.out.empty()) {
    std::cout << csv.to_text();
  } else {
    csv.write_file(config.out);
    std::cout << "wrote " << config.out << " (" << csv.rows.size()
              << " rows)\n";
  }
  return 0;
}

int run_selftest() {
  bool all_ok = true;
  auto report = [&](const char* name, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS" : "FAIL") << "  " << name;
    if (!detail.empty()) std::cout << "  (" << detail << ")";
    std::cout << "\n";
    all_ok = all_ok && ok;
  };

  ExperimentConfig cfg;
  cfg.seed = 987654321;

  // Exact solvers against the exhaustive oracle on small instances.
  {
    bool ok = true;
    std::string detail;
    int comparisons = 0;
    for (int r = 0; r < 100 && ok; ++r) {
      cfg.n_slots = 6 + r % 7;
      Instance inst = sample_instance(cfg, r);
      const int n = inst.n_slots;
      for (int m = 1; m < n && ok; ++m) {
        const SolveResult exact = oracle_exhaustive(inst, m);
        SolveResult candidate;
        if (m == 1) {
          inst.epsilon = 1.0 / n;
          candidate = solve_drop_one(inst);
        } else if (m == n - 1) {
          inst.epsilon = static_cast<double>(n - 1) / n;
          candidate = solve_keep_one(inst);
        } else {
          candidate = solve_pruned_search(inst, m);
        }
        ++comparisons;
        const double scale = std::max(1.0, std::abs(exact.total_cost));
        if (std::abs(candidate.total_cost - exact.total_cost) >
            kCostRelTol * scale) {
          ok = false;
          detail = "realization " + std::to_string(r) + " M=" +
                   std::to_string(m) + ": " +
                   format_double(candidate.total_cost) + " vs oracle " +
                   format_double(exact.total_cost);
        }
      }
    }
    if (ok) detail = std::to_string(comparisons) + " comparisons";
    report("oracle equivalence", ok, detail);
  }

  // KKT certificate on greedy allocations for random drop sets.
  {
    bool ok = true;
    std::string detail;
    SplitMix64 picker(mix_keys({fnv1a("ehsched.selftest"), cfg.seed}));
    for (int r = 0; r < 300 && ok; ++r) {
      cfg.n_slots = 5 + r % 20;
      const Instance inst = sample_instance(cfg, 1000 + r);
      const int m = static_cast<int>(picker.next() %
                                     static_cast<std::uint64_t>(inst.n_slots));
      DropSet drop;
      drop.slots = sample_subset(picker, inst.n_slots, m);
      const Allocation alloc = greedy_allocate(inst, drop);
      if (!verify_greedy_kkt(inst, drop, alloc)) {
        ok = false;
        detail = "pair " + std::to_string(r) + " (N=" +
                 std::to_string(inst.n_slots) + ", M=" + std::to_string(m) +
                 ")";
      }
    }
    if (ok) detail = "300 pairs";
    report("greedy KKT certificate", ok, detail);
  }

  std::cout << (all_ok ? "selftest passed" : "selftest FAILED") << "\n";
  return all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum-cost transmit-power schedules for a block-fading "
               "link with harvested and conventional energy"};
  app.set_version_flag("--version",
                       std::string("ehsched ") + kVersionString);
  app.require_subcommand(1);

  std::string instance_path;
  std::string method = "pruned";
  int drops = -1;
  std::uint64_t seed = 1;
  long long cap = kDefaultSubsetCap;
  bool print_allocation = false;

  CLI::App* solve = app.add_subcommand("solve", "Solve one instance file");
  solve->add_option("instance", instance_path, "instance file")->required();
  solve
      ->add_option("--method", method,
                   "oracle|alg1|alg2|pruned|lpcr|wcr|random")
      ->check(CLI::IsMember(
          {"oracle", "alg1", "alg2", "pruned", "lpcr", "wcr", "random"}));
  solve->add_option("--drops", drops,
                    "override the drop budget (default: from epsilon)");
  solve->add_option("--seed", seed, "seed for --method random");
  solve->add_option("--cap", cap, "enumeration cap for oracle/pruned");
  solve->add_flag("--allocation", print_allocation,
                  "print the per-slot power allocation");

  std::string mc_path;
  std::string mc_method = "wcr";
  CLI::App* solve_mc =
      app.add_subcommand("solve-mc", "Solve one multi-cycle instance file");
  solve_mc->add_option("instance", mc_path, "multi-cycle instance file")
      ->required();
  solve_mc->add_option("--method", mc_method, "oracle|lpcr|wcr|random")
      ->check(CLI::IsMember({"oracle", "lpcr", "wcr", "random"}));
  solve_mc->add_option("--seed", seed, "seed for --method random");
  solve_mc->add_option("--cap", cap, "enumeration cap for oracle");
  solve_mc->add_flag("--allocation", print_allocation,
                     "print the per-slot power allocation");

  std::string bound_path;
  int bound_drops = 0;
  CLI::App* bound =
      app.add_subcommand("bound", "Relaxation lower bound for an instance");
  bound->add_option("instance", bound_path, "instance file")->required();
  bound->add_option("--drops", bound_drops, "drop budget")->required();

  std::string config_path;
  std::string out_override;
  CLI::App* experiment =
      app.add_subcommand("experiment", "Run a seeded CSV experiment");
  experiment->add_option("config", config_path, "key=value config file")
      ->required();
  experiment->add_option("--out", out_override,
                         "output CSV path (overrides the config)");

  CLI::App* selftest = app.add_subcommand(
      "selftest", "Run the oracle-equivalence and KKT property suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(solve))
      return run_solve(instance_path, method, drops, seed, cap,
                       print_allocation);
    if (app.got_subcommand(solve_mc))
      return run_solve_mc(mc_path, mc_method, seed, cap, print_allocation);
    if (app.got_subcommand(bound)) return run_bound(bound_path, bound_drops);
    if (app.got_subcommand(experiment))
      return run_experiment_cmd(config_path, out_override);
    if (app.got_subcommand(selftest)) return run_selftest();
  } catch (const CapExceededError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
