#include <benchmark/benchmark.h>

#include <cstdint>

#include "ehsched/ehsched.hpp"

using namespace ehsched;

namespace {

Instance make_instance(int n, std::uint64_t seed) {
  SplitMix64 rng(mix_keys({fnv1a("ehsched.bench"), seed}));
  const ChannelDistribution rayleigh = ChannelDistribution::exponential(1.0);
  Instance inst;
  inst.n_slots = n;
  inst.rate = 1.0;
  inst.noise = 1.0;
  inst.price_conv = 1.0;
  inst.price_renew = 0.2;
  inst.gains.resize(n);
  inst.arrivals.resize(n);
  for (int i = 0; i < n; ++i) inst.gains[i] = rayleigh.sample(rng);
  for (int i = 0; i < n; ++i) inst.arrivals[i] = rng.next_double();
  return inst;
}

void BM_GreedyAllocate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Instance inst = make_instance(n, 1);
  SplitMix64 rng(7);
  DropSet drop;
  drop.slots = sample_subset(rng, n, n / 10);
  for (auto _ : state) {
    Allocation alloc = greedy_allocate(inst, drop);
    benchmark::DoNotOptimize(alloc);
  }
}
BENCHMARK(BM_GreedyAllocate)->Arg(50)->Arg(200)->Arg(1000);

void BM_LowerBound(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Instance inst = make_instance(n, 2);
  for (auto _ : state) {
    LowerBound bound = lower_bound(inst, n / 10);
    benchmark::DoNotOptimize(bound);
  }
}
BENCHMARK(BM_LowerBound)->Arg(25)->Arg(50)->Arg(100)->Arg(200);

void BM_DropOne(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Instance inst = make_instance(n, 3);
  inst.epsilon = 1.0 / n;
  for (auto _ : state) {
    SolveResult result = solve_drop_one(inst);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_DropOne)->Arg(50)->Arg(200)->Arg(1000);

void BM_KeepOne(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Instance inst = make_instance(n, 4);
  inst.epsilon = static_cast<double>(n - 1) / n;
  for (auto _ : state) {
    SolveResult result = solve_keep_one(inst);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_KeepOne)->Arg(50)->Arg(200)->Arg(1000);

void BM_OracleExhaustive(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Instance inst = make_instance(n, 5);
  for (auto _ : state) {
    SolveResult result = oracle_exhaustive(inst, n / 2);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_OracleExhaustive)->Arg(10)->Arg(14)->Arg(18);

void BM_PrunedSearch(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Instance inst = make_instance(n, 5);
  for (auto _ : state) {
    SolveResult result = solve_pruned_search(inst, n / 2);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_PrunedSearch)->Arg(10)->Arg(14)->Arg(18);

void BM_Wcr(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Instance inst = make_instance(n, 6);
  for (auto _ : state) {
    SolveResult result = wcr(inst, n / 5);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_Wcr)->Arg(50)->Arg(200)->Arg(1000);

void BM_Lpcr(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Instance inst = make_instance(n, 7);
  for (auto _ : state) {
    SolveResult result = lpcr(inst, n / 5);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_Lpcr)->Arg(25)->Arg(50)->Arg(100)->Arg(200);

} // namespace

BENCHMARK_MAIN();
