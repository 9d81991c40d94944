#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "ehsched/ehsched.hpp"
#include "test_util.hpp"

using namespace ehsched;
using testutil::instance_with_pinv;
using testutil::random_instance;

namespace {

MultiCycleInstance random_mc(SplitMix64& rng, int cycles, int slots, int drops,
                             double arrival_high = 1.0) {
  MultiCycleInstance mc;
  mc.cycles = cycles;
  mc.slots_per_cycle = slots;
  mc.drops_per_cycle = drops;
  mc.rate = 1.0;
  mc.noise = 1.0;
  mc.price_conv = 1.0;
  mc.price_renew = 0.2;
  const int total = cycles * slots;
  for (int i = 0; i < total; ++i)
    mc.gains.push_back(rng.next_exponential(1.0));
  for (int i = 0; i < total; ++i)
    mc.arrivals.push_back(rng.next_uniform(0.0, arrival_high));
  return mc;
}

// Per-cycle drop counts of a drop set over the flattened horizon.
std::vector<int> drops_by_cycle(const MultiCycleInstance& mc,
                                const DropSet& drop) {
  std::vector<int> counts(mc.cycles, 0);
  for (int slot : drop.slots)
    ++counts[(slot - 1) / mc.slots_per_cycle];
  return counts;
}

} // namespace

TEST_SUITE_BEGIN("multicycle");

TEST_CASE("single-cycle degeneration") {
  SplitMix64 rng(0x12345999ULL);
  for (int trial = 0; trial < 25; ++trial) {
    MultiCycleInstance mc = random_mc(rng, 1, 8, 2);
    Instance single = flatten(mc, 0.0);

    const SolveResult a = mc_lpcr(mc);
    const SolveResult b = lpcr(single, 2);
    CAPTURE(trial);
    CHECK(a.drop_set.slots == b.drop_set.slots);
    CHECK(a.total_cost == doctest::Approx(b.total_cost).epsilon(1e-12));

    const SolveResult c = mc_wcr(mc);
    const SolveResult d = wcr(single, 2);
    CHECK(c.drop_set.slots == d.drop_set.slots);
    CHECK(c.total_cost == doctest::Approx(d.total_cost).epsilon(1e-12));

    const SolveResult e = mc_oracle(mc);
    const SolveResult f = oracle_exhaustive(single, 2);
    CHECK(e.drop_set.slots == f.drop_set.slots);
    CHECK(e.total_cost == doctest::Approx(f.total_cost).epsilon(1e-12));
  }
}

TEST_CASE("leftover energy carries across cycles") {
  SUBCASE("drained first cycle starts the second from zero") {
    // Cycle 1 drops its expensive opener and keeps slot 2, which swallows
    // the cycle's whole 1.0 harvest; nothing carries into cycle 2.
    std::vector<double> p_inv = {9.0, 1.0, 2.0, 2.0};
    std::vector<double> arrivals = {0.5, 0.5, 0.25, 0.25};
    MultiCycleInstance mc;
    mc.cycles = 2;
    mc.slots_per_cycle = 2;
    mc.drops_per_cycle = 1;
    mc.rate = 1.0;
    mc.noise = 1.0;
    mc.price_conv = 1.0;
    mc.price_renew = 0.2;
    const double scale = std::expm1(1.0);
    for (double p : p_inv) mc.gains.push_back(scale / p);
    mc.arrivals = arrivals;

    const SolveResult result = mc_lpcr(mc);
    CHECK(result.drop_set.contains(1));
    double renew_cycle1 = result.allocation.renew[0] + result.allocation.renew[1];
    CHECK(renew_cycle1 == doctest::Approx(1.0).epsilon(1e-9));
    // Cycle 2 can only draw on its own arrivals.
    double renew_cycle2 = result.allocation.renew[2] + result.allocation.renew[3];
    CHECK(renew_cycle2 <= 0.5 + 1e-9);
  }

  SUBCASE("unused harvest flows into the next cycle") {
    // Cycle 1 keeps only a nearly-free slot, so almost all harvest carries.
    std::vector<double> p_inv = {0.1, 5.0, 4.0, 4.0};
    std::vector<double> arrivals = {2.0, 0.0, 0.0, 0.0};
    MultiCycleInstance mc;
    mc.cycles = 2;
    mc.slots_per_cycle = 2;
    mc.drops_per_cycle = 1;
    mc.rate = 1.0;
    mc.noise = 1.0;
    mc.price_conv = 1.0;
    mc.price_renew = 0.2;
    const double scale = std::expm1(1.0);
    for (double p : p_inv) mc.gains.push_back(scale / p);
    mc.arrivals = arrivals;

    const SolveResult result = mc_wcr(mc);
    // WCR drops the worst gain per cycle: slot 2 (p=5) and then one of the
    // equal cycle-2 slots (earlier: slot 3).
    CHECK(result.drop_set.slots == std::vector<int>{2, 3});
    // Kept: slot 1 uses 0.1 renewable, slot 4 uses the carried 1.9.
    CHECK(result.allocation.renew[0] == doctest::Approx(0.1).epsilon(1e-9));
    CHECK(result.allocation.renew[3] == doctest::Approx(1.9).epsilon(1e-9));
    CHECK(result.allocation.conv[3] == doctest::Approx(4.0 - 1.9).epsilon(1e-9));
  }

  SUBCASE("dropping whole cycles is free") {
    SplitMix64 rng(0xaaee99ULL);
    MultiCycleInstance mc = random_mc(rng, 3, 4, 4);
    CHECK(mc_lpcr(mc).total_cost == doctest::Approx(0.0));
    CHECK(mc_wcr(mc).total_cost == doctest::Approx(0.0));
    CHECK(mc_oracle(mc).total_cost == doctest::Approx(0.0));
  }
}

TEST_CASE("per-cycle drop counts are exact for every solver") {
  SplitMix64 rng(0x445566ULL);
  for (int trial = 0; trial < 20; ++trial) {
    const int cycles = 2 + static_cast<int>(rng.next() % 2);
    const int slots = 3 + static_cast<int>(rng.next() % 3);
    const int drops = 1 + static_cast<int>(rng.next() % slots);
    MultiCycleInstance mc = random_mc(rng, cycles, slots, drops);
    const std::vector<int> expect(cycles, drops);
    CAPTURE(trial);
    CHECK(drops_by_cycle(mc, mc_lpcr(mc).drop_set) == expect);
    CHECK(drops_by_cycle(mc, mc_wcr(mc).drop_set) == expect);
    CHECK(drops_by_cycle(mc, mc_random_drop(mc, trial).drop_set) == expect);
    CHECK(drops_by_cycle(mc, mc_oracle(mc).drop_set) == expect);
  }
}

TEST_CASE("oracle enumerates the per-cycle cross product") {
  SplitMix64 rng(0x10101010ULL);
  MultiCycleInstance mc = random_mc(rng, 2, 3, 1);
  const SolveResult result = mc_oracle(mc);
  CHECK(result.candidates_examined == 9); // C(3,1)^2

  mc.drops_per_cycle = 0;
  CHECK(mc_oracle(mc).candidates_examined == 1);

  // Cap applies to the product count.
  mc.drops_per_cycle = 1;
  CHECK_THROWS_AS(mc_oracle(mc, 8), CapExceededError);
}

TEST_CASE("global non-decreasing gains make WCR drop cycle prefixes") {
  MultiCycleInstance mc;
  mc.cycles = 2;
  mc.slots_per_cycle = 3;
  mc.drops_per_cycle = 1;
  mc.rate = 1.0;
  mc.noise = 1.0;
  mc.price_conv = 1.0;
  mc.price_renew = 0.2;
  mc.gains = {0.3, 0.5, 0.8, 1.0, 1.5, 2.0};
  mc.arrivals = {0.2, 0.2, 0.2, 0.2, 0.2, 0.2};
  const SolveResult result = mc_wcr(mc);
  CHECK(result.drop_set.slots == std::vector<int>{1, 4});
  CHECK(result.certificate == Certificate::kOptimal);
}

TEST_CASE("multi-cycle sandwich") {
  SplitMix64 rng(0x77553311ULL);
  for (int trial = 0; trial < 30; ++trial) {
    const int cycles = 2 + static_cast<int>(rng.next() % 2);
    const int slots = 3 + static_cast<int>(rng.next() % 3);
    const int drops = 1 + static_cast<int>(rng.next() % (slots - 1));
    MultiCycleInstance mc = random_mc(rng, cycles, slots, drops);
    const double bound = mc_lower_bound(mc).value;
    const double exact = mc_oracle(mc).total_cost;
    const double lp_round = mc_lpcr(mc).total_cost;
    const double worst = mc_wcr(mc).total_cost;
    const double rand = mc_random_drop(mc, 17).total_cost;
    const double slack = 1e-7 * (1.0 + exact);
    CAPTURE(trial);
    CHECK(bound <= exact + slack);
    CHECK(exact <= lp_round + slack);
    CHECK(exact <= worst + slack);
    CHECK(exact <= rand + slack);
  }
}

TEST_CASE("per-cycle certificates imply global WCR optimality") {
  SplitMix64 rng(0x24242424ULL);
  for (int trial = 0; trial < 40; ++trial) {
    const int cycles = 2 + static_cast<int>(rng.next() % 2);
    const int slots = 4;
    const int drops = 1 + static_cast<int>(rng.next() % 2);
    MultiCycleInstance mc = random_mc(rng, cycles, slots, drops);
    // Sort the gains inside each cycle so every cycle is non-decreasing.
    for (int c = 0; c < cycles; ++c)
      std::sort(mc.gains.begin() + c * slots,
                mc.gains.begin() + (c + 1) * slots);

    const SolveResult result = mc_wcr(mc);
    const std::vector<Certificate> certs = mc_wcr_certificates(mc, result);
    REQUIRE(static_cast<int>(certs.size()) == cycles);
    for (Certificate c : certs) CHECK(c != Certificate::kNone);
    CHECK(result.certificate == Certificate::kOptimal);

    const SolveResult exact = mc_oracle(mc);
    CAPTURE(trial);
    CHECK(result.total_cost ==
          doctest::Approx(exact.total_cost).epsilon(1e-7));
  }
}

TEST_CASE("storage sensitivity bound") {
  SUBCASE("tight single-slot construction") {
    const Instance inst = instance_with_pinv({2.0}, {0.0});
    const StorageSensitivity s = storage_sensitivity(inst, 0, 1.0);
    CHECK(s.cost_at_s == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(s.cost_at_s_plus_delta == doctest::Approx(1.2).epsilon(1e-12));
    CHECK(s.cost_at_s - s.cost_at_s_plus_delta ==
          doctest::Approx(0.8).epsilon(1e-12)); // exactly (alpha-beta)*delta
    CHECK(s.bound_holds);
  }

  SUBCASE("zero delta changes nothing") {
    SplitMix64 rng(0x8899aabbULL);
    const Instance inst = random_instance(rng, 6);
    const StorageSensitivity s = storage_sensitivity(inst, 2, 0.0);
    CHECK(s.cost_at_s == doctest::Approx(s.cost_at_s_plus_delta));
    CHECK(s.bound_holds);
  }

  SUBCASE("huge delta saturates at the conventional spend") {
    const Instance inst = instance_with_pinv({2.0, 1.0}, {0.0, 0.0});
    const StorageSensitivity s = storage_sensitivity(inst, 0, 100.0);
    // With storage 100 everything is renewable: cost 0.2 * 3.
    CHECK(s.cost_at_s == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(s.cost_at_s_plus_delta == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(s.bound_holds);
  }

  SUBCASE("random instance-delta pairs") {
    SplitMix64 rng(0xccbbaa00ULL);
    for (int trial = 0; trial < 100; ++trial) {
      const int n = 3 + static_cast<int>(rng.next() % 8);
      const Instance inst =
          random_instance(rng, n, 1.0, rng.next_uniform(0.0, 1.0));
      const int m = static_cast<int>(rng.next() % n);
      const double delta = rng.next_uniform(0.0, 3.0);
      const StorageSensitivity s = storage_sensitivity(inst, m, delta);
      CAPTURE(trial);
      CHECK(s.bound_holds);
      CHECK(s.cost_at_s_plus_delta <= s.cost_at_s + 1e-9);
    }
  }
}

TEST_CASE("validation") {
  SplitMix64 rng(0x55005500ULL);
  MultiCycleInstance mc = random_mc(rng, 2, 3, 1);
  CHECK_NOTHROW(mc.validate());

  MultiCycleInstance bad = mc;
  bad.drops_per_cycle = 4;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = mc;
  bad.gains.pop_back();
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = mc;
  bad.price_renew = 2.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_SUITE_END();
