#include "ehsched/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "ehsched/core.hpp"
#include "ehsched/exact.hpp"
#include "ehsched/heuristics.hpp"
#include "ehsched/instance_io.hpp"
#include "ehsched/lp.hpp"
#include "ehsched/multicycle.hpp"
#include "ehsched/rng.hpp"

namespace ehsched {

namespace {

[[noreturn]] void cfg_fail(const std::string& source, int line,
                           const std::string& msg) {
  throw ParseError(source + ":" + std::to_string(line) + ": " + msg);
}

// Runs fn(r) for every realization index. Worker count never changes the
// output: each index writes into its own slot and aggregation happens later
// in index order.
template <typename Fn>
void for_each_realization(int realizations, int threads, Fn&& fn) {
  int workers = threads == 0
                    ? static_cast<int>(std::thread::hardware_concurrency())
                    : threads;
  workers = std::max(1, std::min(workers, realizations));
  if (workers <= 1) {
    for (int r = 0; r < realizations; ++r) fn(r);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (true) {
      const int r = next.fetch_add(1);
      if (r >= realizations) return;
      try {
        fn(r);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::vector<int> parse_int_list(const std::string& source, int line,
                                const std::string& value) {
  std::vector<int> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      const long v = std::stol(item, &used);
      if (used != item.size()) throw std::invalid_argument("");
      out.push_back(static_cast<int>(v));
    } catch (const std::exception&) {
      cfg_fail(source, line, "bad integer '" + item + "'");
    }
  }
  if (out.empty()) cfg_fail(source, line, "empty list");
  return out;
}

std::vector<double> parse_double_list(const std::string& source, int line,
                                      const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      const double v = std::stod(item, &used);
      if (used != item.size() || !std::isfinite(v))
        throw std::invalid_argument("");
      out.push_back(v);
    } catch (const std::exception&) {
      cfg_fail(source, line, "bad number '" + item + "'");
    }
  }
  if (out.empty()) cfg_fail(source, line, "empty list");
  return out;
}

std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

std::string join_doubles(const std::vector<double>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += format_double(v[i]);
  }
  return s;
}

char hex_digit(unsigned v) { return "0123456789abcdef"[v & 0xf]; }

std::string hex16(std::uint64_t v) {
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[i] = hex_digit(static_cast<unsigned>(v));
    v >>= 4;
  }
  return s;
}

} // namespace

const char* to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::kSearchCount: return "search-count";
    case ExperimentKind::kCostVsDrops: return "cost-vs-drops";
    case ExperimentKind::kGapToBound: return "gap-to-bound";
    case ExperimentKind::kMulticycleGap: return "multicycle-gap";
    case ExperimentKind::kPartialCesi: return "partial-cesi";
  }
  return "cost-vs-drops";
}

namespace {

ExperimentKind kind_from(const std::string& s, const std::string& source,
                         int line) {
  if (s == "search-count") return ExperimentKind::kSearchCount;
  if (s == "cost-vs-drops") return ExperimentKind::kCostVsDrops;
  if (s == "gap-to-bound") return ExperimentKind::kGapToBound;
  if (s == "multicycle-gap") return ExperimentKind::kMulticycleGap;
  if (s == "partial-cesi") return ExperimentKind::kPartialCesi;
  cfg_fail(source, line,
           "unknown experiment '" + s +
               "' (expected search-count|cost-vs-drops|gap-to-bound|"
               "multicycle-gap|partial-cesi)");
}

} // namespace

ExperimentConfig ExperimentConfig::parse(std::istream& in,
                                         const std::string& source_name) {
  ExperimentConfig c;
  std::string raw;
  int number = 0;
  bool any = false;
  while (std::getline(in, raw)) {
    ++number;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    // Trim.
    const auto first = raw.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = raw.find_last_not_of(" \t\r");
    const std::string line = raw.substr(first, last - first + 1);
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      cfg_fail(source_name, number, "expected key=value, got '" + line + "'");
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    any = true;

    auto real = [&](const std::string& what) {
      try {
        size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size() || !std::isfinite(v))
          throw std::invalid_argument("");
        return v;
      } catch (const std::exception&) {
        cfg_fail(source_name, number, what + ": bad number '" + value + "'");
      }
    };
    auto count = [&](const std::string& what) {
      const double v = real(what);
      if (v != std::floor(v) || v < 0.0 || v > 1e9)
        cfg_fail(source_name, number,
                 what + " must be a non-negative integer");
      return static_cast<int>(v);
    };

    if (key == "experiment") {
      c.experiment = kind_from(value, source_name, number);
    } else if (key == "n_slots") {
      c.n_slots = count("n_slots");
    } else if (key == "realizations") {
      c.realizations = count("realizations");
    } else if (key == "seed") {
      try {
        size_t used = 0;
        c.seed = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument("");
      } catch (const std::exception&) {
        cfg_fail(source_name, number, "seed: bad integer '" + value + "'");
      }
    } else if (key == "fading") {
      try {
        c.fading = ChannelDistribution::parse(value);
      } catch (const std::invalid_argument& e) {
        cfg_fail(source_name, number, e.what());
      }
    } else if (key == "arrival_high") {
      c.arrival_high = real("arrival_high");
    } else if (key == "rate") {
      c.rate = real("rate");
    } else if (key == "noise") {
      c.noise = real("noise");
    } else if (key == "price_conv") {
      c.price_conv = real("price_conv");
    } else if (key == "price_renew") {
      c.price_renew = real("price_renew");
    } else if (key == "drop_grid") {
      c.drop_grid = parse_int_list(source_name, number, value);
    } else if (key == "n_grid") {
      c.n_grid = parse_int_list(source_name, number, value);
    } else if (key == "eps_grid") {
      c.eps_grid = parse_double_list(source_name, number, value);
    } else if (key == "arrival_highs") {
      c.arrival_highs = parse_double_list(source_name, number, value);
    } else if (key == "cycles") {
      c.cycles = count("cycles");
    } else if (key == "slots_per_cycle") {
      c.slots_per_cycle = count("slots_per_cycle");
    } else if (key == "threads") {
      c.threads = count("threads");
    } else if (key == "out") {
      c.out = value;
    } else {
      cfg_fail(source_name, number, "unknown key '" + key + "'");
    }
  }
  if (!any) cfg_fail(source_name, 1, "empty config");
  c.resolve();
  return c;
}

ExperimentConfig ExperimentConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  return parse(in, path);
}

void ExperimentConfig::resolve() {
  auto bad = [](const std::string& msg) {
    throw std::invalid_argument("ExperimentConfig: " + msg);
  };
  if (realizations < 1) bad("realizations must be >= 1");
  if (n_slots < 1) bad("n_slots must be >= 1");
  if (!(arrival_high > 0.0)) bad("arrival_high must be > 0");
  if (!(noise > 0.0)) bad("noise must be > 0");
  if (!(rate >= 0.0)) bad("rate must be >= 0");
  if (!(price_renew > 0.0) || !(price_conv > price_renew))
    bad("prices must satisfy price_conv > price_renew > 0");
  if (cycles < 1) bad("cycles must be >= 1");
  if (slots_per_cycle < 1) bad("slots_per_cycle must be >= 1");
  if (threads < 0) bad("threads must be >= 0");
  fading.validate();

  auto tenth_grid = [](int n) {
    std::vector<int> grid;
    const int step = std::max(1, n / 10);
    for (int v = step; v <= n - step; v += step) grid.push_back(v);
    if (grid.empty()) grid.push_back(n >= 1 ? 1 : 0);
    return grid;
  };

  switch (experiment) {
    case ExperimentKind::kSearchCount:
      if (n_grid.empty())
        for (int n = 20; n <= 200; n += 20) n_grid.push_back(n);
      for (int n : n_grid)
        if (n < 2) bad("search-count n_grid values must be >= 2");
      break;
    case ExperimentKind::kCostVsDrops:
    case ExperimentKind::kGapToBound:
      if (drop_grid.empty()) drop_grid = tenth_grid(n_slots);
      for (int m : drop_grid)
        if (m < 0 || m > n_slots) bad("drop_grid values must lie in [0, N]");
      break;
    case ExperimentKind::kMulticycleGap:
      if (drop_grid.empty()) drop_grid = tenth_grid(slots_per_cycle);
      for (int m : drop_grid)
        if (m < 0 || m > slots_per_cycle)
          bad("drop_grid values must lie in [0, slots_per_cycle]");
      break;
    case ExperimentKind::kPartialCesi:
      if (eps_grid.empty())
        for (int i = 1; i <= 10; ++i) eps_grid.push_back(0.05 * i);
      for (double e : eps_grid)
        if (!(e > 0.0) || !(e < 1.0)) bad("eps_grid values must lie in (0,1)");
      if (arrival_highs.empty()) arrival_highs = {10.0, 50.0};
      for (double b : arrival_highs)
        if (!(b > 0.0)) bad("arrival_highs values must be > 0");
      break;
  }
}

std::string ExperimentConfig::canonical_text() const {
  // threads and out are execution details: they must not change results, so
  // they stay outside the hashed text.
  std::string s;
  s += "experiment=" + std::string(to_string(experiment)) + "\n";
  s += "n_slots=" + std::to_string(n_slots) + "\n";
  s += "realizations=" + std::to_string(realizations) + "\n";
  s += "seed=" + std::to_string(seed) + "\n";
  s += "fading=" + fading.to_text() + "\n";
  s += "arrival_high=" + format_double(arrival_high) + "\n";
  s += "rate=" + format_double(rate) + "\n";
  s += "noise=" + format_double(noise) + "\n";
  s += "price_conv=" + format_double(price_conv) + "\n";
  s += "price_renew=" + format_double(price_renew) + "\n";
  // Grids the experiment does not use stay empty after resolve(); omitting
  // them keeps the canonical text parseable as a config file.
  if (!drop_grid.empty()) s += "drop_grid=" + join_ints(drop_grid) + "\n";
  if (!n_grid.empty()) s += "n_grid=" + join_ints(n_grid) + "\n";
  if (!eps_grid.empty()) s += "eps_grid=" + join_doubles(eps_grid) + "\n";
  if (!arrival_highs.empty())
    s += "arrival_highs=" + join_doubles(arrival_highs) + "\n";
  s += "cycles=" + std::to_string(cycles) + "\n";
  s += "slots_per_cycle=" + std::to_string(slots_per_cycle) + "\n";
  return s;
}

std::uint64_t ExperimentConfig::config_hash() const {
  return fnv1a(canonical_text());
}

namespace {

// Stream key for one realization: the seed, the sampling-relevant parameters,
// and the realization index.
std::uint64_t stream_key(const ExperimentConfig& c, int realization_index) {
  const std::string domain = c.fading.to_text() + "|n=" +
                             std::to_string(c.n_slots) + "|b=" +
                             format_double(c.arrival_high);
  return mix_keys({fnv1a("ehsched.sample"), c.seed, fnv1a(domain),
                   static_cast<std::uint64_t>(realization_index)});
}

} // namespace

Instance sample_instance(const ExperimentConfig& config,
                         int realization_index) {
  SplitMix64 rng(stream_key(config, realization_index));
  Instance inst;
  inst.n_slots = config.n_slots;
  inst.rate = config.rate;
  inst.noise = config.noise;
  inst.price_conv = config.price_conv;
  inst.price_renew = config.price_renew;
  inst.gains.resize(config.n_slots);
  inst.arrivals.resize(config.n_slots);
  for (int i = 0; i < config.n_slots; ++i)
    inst.gains[i] = config.fading.sample(rng);
  for (int i = 0; i < config.n_slots; ++i)
    inst.arrivals[i] = rng.next_uniform(0.0, config.arrival_high);
  inst.initial_storage = 0.0;
  inst.epsilon = 0.0;
  return inst;
}

std::string Csv::to_text() const {
  std::string s;
  for (const std::string& c : comments) s += "# " + c + "\n";
  s += header + "\n";
  for (const std::string& r : rows) s += r + "\n";
  return s;
}

void Csv::write_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + path);
  const std::string text = to_text();
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("failed writing " + path);
}

namespace {

std::vector<std::string> standard_comments(const ExperimentConfig& c) {
  std::vector<std::string> comments;
  comments.push_back(std::string("ehsched ") + kVersionString);
  comments.push_back("experiment=" + std::string(to_string(c.experiment)) +
                     " seed=" + std::to_string(c.seed) +
                     " config_hash=" + hex16(c.config_hash()));
  if (c.fading.kind == FadingKind::kLognormal) {
    const double mu = std::log(c.fading.mean) - 0.5 * c.fading.sigma2;
    comments.push_back(
        "lognormal normalized to mean gain " + format_double(c.fading.mean) +
        ": underlying normal mu=" + format_double(mu) +
        " sigma2=" + format_double(c.fading.sigma2));
  }
  return comments;
}

} // namespace

std::vector<SearchCountRow> compute_search_count(const ExperimentConfig& c) {
  if (c.experiment != ExperimentKind::kSearchCount)
    throw std::invalid_argument("config experiment must be search-count");
  struct Family {
    const char* name;
    ChannelDistribution dist;
  };
  const Family families[] = {
      {"rayleigh", ChannelDistribution::exponential(1.0)},
      {"nakagami", ChannelDistribution::nakagami(2.0, 1.0)},
      {"lognormal", ChannelDistribution::lognormal(1.0, 1.0)},
  };

  std::vector<SearchCountRow> rows;
  for (const Family& family : families) {
    for (int n : c.n_grid) {
      ExperimentConfig derived = c;
      derived.n_slots = n;
      derived.fading = family.dist;
      std::vector<std::pair<long long, long long>> counts(c.realizations);
      for_each_realization(c.realizations, c.threads, [&](int r) {
        Instance inst = sample_instance(derived, r);
        inst.epsilon = 1.0 / n; // budget 1
        const SolveResult one = solve_drop_one(inst);
        inst.epsilon = static_cast<double>(n - 1) / n; // budget n-1
        const SolveResult keep = solve_keep_one(inst);
        counts[r] = {one.candidates_examined, keep.candidates_examined};
      });
      double sum1 = 0.0, sum2 = 0.0;
      for (const auto& [c1, c2] : counts) {
        sum1 += static_cast<double>(c1);
        sum2 += static_cast<double>(c2);
      }
      rows.push_back({family.name, n, "alg1", sum1 / c.realizations});
      rows.push_back({family.name, n, "alg2", sum2 / c.realizations});
    }
  }
  return rows;
}

namespace {

struct MethodSample {
  double bound = 0.0;
  double lpcr = 0.0;
  double wcr = 0.0;
  double random = 0.0;
};

DropGridTable aggregate(const ExperimentConfig& c,
                        const std::vector<std::vector<MethodSample>>& samples) {
  DropGridTable table;
  table.drops = c.drop_grid;
  const size_t g = c.drop_grid.size();
  table.bound.assign(g, 0.0);
  table.lpcr.assign(g, 0.0);
  table.wcr.assign(g, 0.0);
  table.random.assign(g, 0.0);
  table.lpcr_gap.assign(g, 0.0);
  table.wcr_gap.assign(g, 0.0);
  table.random_gap.assign(g, 0.0);
  table.absolute_gap_count.assign(g, 0);
  for (size_t k = 0; k < g; ++k) {
    for (int r = 0; r < c.realizations; ++r) {
      const MethodSample& s = samples[r][k];
      table.bound[k] += s.bound;
      table.lpcr[k] += s.lpcr;
      table.wcr[k] += s.wcr;
      table.random[k] += s.random;
      if (s.bound >= 1e-12) {
        table.lpcr_gap[k] += (s.lpcr - s.bound) / s.bound;
        table.wcr_gap[k] += (s.wcr - s.bound) / s.bound;
        table.random_gap[k] += (s.random - s.bound) / s.bound;
      } else {
        // Degenerate bound: report the gap absolutely and flag it.
        table.lpcr_gap[k] += s.lpcr - s.bound;
        table.wcr_gap[k] += s.wcr - s.bound;
        table.random_gap[k] += s.random - s.bound;
        ++table.absolute_gap_count[k];
      }
    }
    const double inv = 1.0 / c.realizations;
    table.bound[k] *= inv;
    table.lpcr[k] *= inv;
    table.wcr[k] *= inv;
    table.random[k] *= inv;
    table.lpcr_gap[k] *= inv;
    table.wcr_gap[k] *= inv;
    table.random_gap[k] *= inv;
  }
  return table;
}

} // namespace

DropGridTable compute_cost_vs_drops(const ExperimentConfig& c) {
  if (c.experiment != ExperimentKind::kCostVsDrops &&
      c.experiment != ExperimentKind::kGapToBound)
    throw std::invalid_argument(
        "config experiment must be cost-vs-drops or gap-to-bound");
  std::vector<std::vector<MethodSample>> samples(
      c.realizations, std::vector<MethodSample>(c.drop_grid.size()));
  for_each_realization(c.realizations, c.threads, [&](int r) {
    const Instance inst = sample_instance(c, r);
    const std::uint64_t call_seed =
        mix_keys({c.seed, static_cast<std::uint64_t>(r)});
    for (size_t k = 0; k < c.drop_grid.size(); ++k) {
      const int m = c.drop_grid[k];
      MethodSample s;
      const LowerBound lb = lower_bound(inst, m);
      s.bound = lb.value;
      // Reuse the relaxation solve for LPCR instead of solving twice.
      const DropSet lpcr_drop = round_chi_to_drop_set(inst, lb.chi, m);
      s.lpcr = total_cost(inst, greedy_allocate(inst, lpcr_drop));
      s.wcr = wcr(inst, m).total_cost;
      s.random = random_drop(inst, m, call_seed).total_cost;
      samples[r][k] = s;
    }
  });
  return aggregate(c, samples);
}

DropGridTable compute_multicycle_gap(const ExperimentConfig& c) {
  if (c.experiment != ExperimentKind::kMulticycleGap)
    throw std::invalid_argument("config experiment must be multicycle-gap");
  const int total = c.cycles * c.slots_per_cycle;
  std::vector<std::vector<MethodSample>> samples(
      c.realizations, std::vector<MethodSample>(c.drop_grid.size()));
  for_each_realization(c.realizations, c.threads, [&](int r) {
    ExperimentConfig derived = c;
    derived.n_slots = total;
    const Instance flat_sample = sample_instance(derived, r);
    MultiCycleInstance mc;
    mc.cycles = c.cycles;
    mc.slots_per_cycle = c.slots_per_cycle;
    mc.rate = c.rate;
    mc.noise = c.noise;
    mc.price_conv = c.price_conv;
    mc.price_renew = c.price_renew;
    mc.gains = flat_sample.gains;
    mc.arrivals = flat_sample.arrivals;
    const std::uint64_t call_seed =
        mix_keys({c.seed, static_cast<std::uint64_t>(r)});
    for (size_t k = 0; k < c.drop_grid.size(); ++k) {
      mc.drops_per_cycle = c.drop_grid[k];
      MethodSample s;
      s.bound = mc_lower_bound(mc).value;
      s.lpcr = mc_lpcr(mc).total_cost;
      s.wcr = mc_wcr(mc).total_cost;
      s.random = mc_random_drop(mc, call_seed).total_cost;
      samples[r][k] = s;
    }
  });
  return aggregate(c, samples);
}

std::vector<PartialCesiRow> compute_partial_cesi(const ExperimentConfig& c) {
  if (c.experiment != ExperimentKind::kPartialCesi)
    throw std::invalid_argument("config experiment must be partial-cesi");
  // One uniform [0,1) sequence per realization, scaled by each arrival high:
  // common random numbers make the U(0,b) curves directly comparable.
  const size_t n_eps = c.eps_grid.size();
  const size_t n_b = c.arrival_highs.size();
  std::vector<std::vector<double>> cost_sum(
      c.realizations, std::vector<double>(n_eps * n_b, 0.0));
  for_each_realization(c.realizations, c.threads, [&](int r) {
    SplitMix64 rng(mix_keys({fnv1a("ehsched.partial-cesi"), c.seed,
                             static_cast<std::uint64_t>(c.n_slots),
                             static_cast<std::uint64_t>(r)}));
    std::vector<double> unit(c.n_slots);
    for (int i = 0; i < c.n_slots; ++i) unit[i] = rng.next_double();
    std::vector<double> arrivals(c.n_slots);
    for (size_t bi = 0; bi < n_b; ++bi) {
      for (int i = 0; i < c.n_slots; ++i)
        arrivals[i] = c.arrival_highs[bi] * unit[i];
      for (size_t ei = 0; ei < n_eps; ++ei) {
        const PartialCesiResult res = allocate_partial_cesi(
            c.fading, c.rate, c.noise, c.eps_grid[ei], arrivals, 0.0,
            c.price_conv, c.price_renew);
        cost_sum[r][ei * n_b + bi] = res.total_cost;
      }
    }
  });
  std::vector<PartialCesiRow> rows;
  rows.reserve(n_eps * n_b);
  for (size_t ei = 0; ei < n_eps; ++ei) {
    for (size_t bi = 0; bi < n_b; ++bi) {
      double sum = 0.0;
      for (int r = 0; r < c.realizations; ++r) sum += cost_sum[r][ei * n_b + bi];
      rows.push_back(
          {c.eps_grid[ei], c.arrival_highs[bi], sum / c.realizations});
    }
  }
  return rows;
}

Csv run_search_count(const ExperimentConfig& c) {
  const std::vector<SearchCountRow> rows = compute_search_count(c);
  Csv csv;
  csv.comments = standard_comments(c);
  csv.comments.push_back(
      "families: rayleigh=exp:mean=1 nakagami:m=2,mean=1 "
      "lognormal:sigma2=1,mean=1 (lognormal normalized to unit mean gain)");
  csv.header = "family,N,algorithm,mean_candidates";
  for (const SearchCountRow& r : rows)
    csv.rows.push_back(r.family + "," + std::to_string(r.n) + "," +
                       r.algorithm + "," + format_double(r.mean_candidates));
  return csv;
}

namespace {

void append_flag_comments(Csv& csv, const ExperimentConfig& c,
                          const DropGridTable& t) {
  for (size_t k = 0; k < t.drops.size(); ++k)
    if (t.absolute_gap_count[k] > 0)
      csv.comments.push_back(
          "absolute gaps (lower bound < 1e-12) at M=" +
          std::to_string(t.drops[k]) + " in " +
          std::to_string(t.absolute_gap_count[k]) + "/" +
          std::to_string(c.realizations) + " realizations");
}

} // namespace

Csv run_cost_vs_drops(const ExperimentConfig& c) {
  const DropGridTable t = compute_cost_vs_drops(c);
  Csv csv;
  csv.comments = standard_comments(c);
  csv.header = "M,method,mean_cost";
  for (size_t k = 0; k < t.drops.size(); ++k) {
    const std::string m = std::to_string(t.drops[k]);
    csv.rows.push_back(m + ",bound," + format_double(t.bound[k]));
    csv.rows.push_back(m + ",lpcr," + format_double(t.lpcr[k]));
    csv.rows.push_back(m + ",wcr," + format_double(t.wcr[k]));
    csv.rows.push_back(m + ",random," + format_double(t.random[k]));
  }
  return csv;
}

namespace {

Csv gap_csv(const ExperimentConfig& c, const DropGridTable& t) {
  Csv csv;
  csv.comments = standard_comments(c);
  append_flag_comments(csv, c, t);
  csv.header = "M,method,mean_relative_gap";
  for (size_t k = 0; k < t.drops.size(); ++k) {
    const std::string m = std::to_string(t.drops[k]);
    csv.rows.push_back(m + ",lpcr," + format_double(t.lpcr_gap[k]));
    csv.rows.push_back(m + ",wcr," + format_double(t.wcr_gap[k]));
    csv.rows.push_back(m + ",random," + format_double(t.random_gap[k]));
  }
  return csv;
}

} // namespace

Csv run_gap_to_bound(const ExperimentConfig& c) {
  return gap_csv(c, compute_cost_vs_drops(c));
}

Csv run_multicycle_gap(const ExperimentConfig& c) {
  return gap_csv(c, compute_multicycle_gap(c));
}

Csv run_partial_cesi(const ExperimentConfig& c) {
  const std::vector<PartialCesiRow> rows = compute_partial_cesi(c);
  Csv csv;
  csv.comments = standard_comments(c);
  csv.header = "eps,arrival_high,mean_cost";
  for (const PartialCesiRow& r : rows)
    csv.rows.push_back(format_double(r.eps) + "," +
                       format_double(r.arrival_high) + "," +
                       format_double(r.mean_cost));
  return csv;
}

Csv run_experiment(const ExperimentConfig& c) {
  switch (c.experiment) {
    case ExperimentKind::kSearchCount: return run_search_count(c);
    case ExperimentKind::kCostVsDrops: return run_cost_vs_drops(c);
    case ExperimentKind::kGapToBound: return run_gap_to_bound(c);
    case ExperimentKind::kMulticycleGap: return run_multicycle_gap(c);
    case ExperimentKind::kPartialCesi: return run_partial_cesi(c);
  }
  throw std::invalid_argument("unknown experiment kind");
}

} // namespace ehsched
