#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <vector>

#include "doctest.h"
#include "ehsched/ehsched.hpp"
#include "test_util.hpp"

using namespace ehsched;
using testutil::brute_force_lp;
using testutil::instance_with_pinv;
using testutil::random_instance;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

LinearProgram make_lp(std::vector<double> objective,
                      std::vector<std::vector<double>> rows,
                      std::vector<double> rhs, std::vector<double> lower,
                      std::vector<double> upper) {
  LinearProgram lp;
  lp.objective = std::move(objective);
  lp.rows = std::move(rows);
  lp.rhs = std::move(rhs);
  lp.lower = std::move(lower);
  lp.upper = std::move(upper);
  return lp;
}

} // namespace

TEST_SUITE_BEGIN("lp");

TEST_CASE("textbook programs") {
  SUBCASE("single variable squeezed by a row and a bound") {
    // minimize x subject to x >= 3 (as -x <= -3), 0 <= x <= 10
    const LinearProgram lp =
        make_lp({1.0}, {{-1.0}}, {-3.0}, {0.0}, {10.0});
    const LpSolution sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::kOptimal);
    CHECK(sol.x[0] == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(sol.objective_value == doctest::Approx(3.0).epsilon(1e-9));
  }

  SUBCASE("triangle vertex") {
    // minimize -x - y subject to x + y <= 1, x,y in [0,1]
    const LinearProgram lp = make_lp({-1.0, -1.0}, {{1.0, 1.0}}, {1.0},
                                     {0.0, 0.0}, {1.0, 1.0});
    const LpSolution sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::kOptimal);
    CHECK(sol.objective_value == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(sol.x[0] + sol.x[1] == doctest::Approx(1.0).epsilon(1e-9));
  }

  SUBCASE("infeasible pair") {
    // x <= 0 and x >= 1 cannot hold together.
    const LinearProgram lp =
        make_lp({1.0}, {{1.0}, {-1.0}}, {0.0, -1.0}, {0.0}, {kInf});
    CHECK(solve_lp(lp).status == LpStatus::kInfeasible);
  }

  SUBCASE("unbounded ray") {
    const LinearProgram lp = make_lp({-1.0}, {}, {}, {0.0}, {kInf});
    CHECK(solve_lp(lp).status == LpStatus::kUnbounded);
  }

  SUBCASE("bounded by a row instead of a bound") {
    const LinearProgram lp = make_lp({-1.0}, {{1.0}}, {5.0}, {0.0}, {kInf});
    const LpSolution sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::kOptimal);
    CHECK(sol.x[0] == doctest::Approx(5.0).epsilon(1e-9));
  }

  SUBCASE("degenerate equality sandwich") {
    // x <= 2 and x >= 2 force x = 2.
    const LinearProgram lp =
        make_lp({1.0}, {{1.0}, {-1.0}}, {2.0, -2.0}, {0.0}, {kInf});
    const LpSolution sol = solve_lp(lp);
    REQUIRE(sol.status == LpStatus::kOptimal);
    CHECK(sol.x[0] == doctest::Approx(2.0).epsilon(1e-9));
  }
}

TEST_CASE("validation rejects malformed programs") {
  LinearProgram lp = make_lp({1.0, 1.0}, {{1.0}}, {1.0}, {0.0, 0.0},
                             {1.0, 1.0});
  CHECK_THROWS_AS(lp.validate(), std::invalid_argument); // ragged row

  lp = make_lp({1.0}, {}, {}, {2.0}, {1.0}); // lower > upper
  CHECK_THROWS_AS(lp.validate(), std::invalid_argument);

  lp = make_lp({1.0}, {{1.0}}, {1.0, 2.0}, {0.0}, {1.0}); // rhs mismatch
  CHECK_THROWS_AS(lp.validate(), std::invalid_argument);
}

TEST_CASE("random boxed programs match a vertex-enumeration oracle") {
  SplitMix64 rng(0xfeedfacecafebeefULL);
  int optimal_seen = 0;
  int infeasible_seen = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 2 + static_cast<int>(rng.next() % 2); // 2..3 variables
    const int m = 1 + static_cast<int>(rng.next() % 4); // 1..4 rows
    LinearProgram lp;
    // Coefficients snapped to quarters to provoke ties and degeneracy.
    auto coef = [&] {
      return std::round(rng.next_uniform(-2.0, 2.0) * 4.0) / 4.0;
    };
    for (int j = 0; j < n; ++j) {
      lp.objective.push_back(coef());
      lp.lower.push_back(0.0);
      lp.upper.push_back(0.5 + 0.5 * static_cast<double>(rng.next() % 5));
    }
    for (int r = 0; r < m; ++r) {
      std::vector<double> row;
      for (int j = 0; j < n; ++j) row.push_back(coef());
      lp.rows.push_back(row);
      lp.rhs.push_back(std::round(rng.next_uniform(-1.0, 3.0) * 4.0) / 4.0);
    }

    const testutil::BruteForceLp expected = brute_force_lp(lp);
    const LpSolution sol = solve_lp(lp);
    CAPTURE(trial);
    if (expected.feasible) {
      ++optimal_seen;
      REQUIRE(sol.status == LpStatus::kOptimal);
      CHECK(sol.objective_value ==
            doctest::Approx(expected.objective_value).epsilon(1e-6));
      // The reported x must satisfy the program.
      for (int j = 0; j < n; ++j) {
        CHECK(sol.x[j] >= lp.lower[j] - 1e-7);
        CHECK(sol.x[j] <= lp.upper[j] + 1e-7);
      }
      for (int r = 0; r < m; ++r) {
        double lhs = 0.0;
        for (int j = 0; j < n; ++j) lhs += lp.rows[r][j] * sol.x[j];
        CHECK(lhs <= lp.rhs[r] + 1e-7);
      }
      double obj = 0.0;
      for (int j = 0; j < n; ++j) obj += lp.objective[j] * sol.x[j];
      CHECK(sol.objective_value == doctest::Approx(obj).epsilon(1e-7));
    } else {
      ++infeasible_seen;
      REQUIRE(sol.status == LpStatus::kInfeasible);
    }
  }
  // The generator must exercise both outcomes to mean anything.
  CHECK(optimal_seen > 100);
  CHECK(infeasible_seen > 10);
}

TEST_CASE("deterministic replay of the same program") {
  SplitMix64 rng(0x0123456789abcdefULL);
  Instance inst = random_instance(rng, 40);
  const LinearProgram lp = build_relaxation(inst, 12);
  const LpSolution a = solve_lp(lp);
  const LpSolution b = solve_lp(lp);
  REQUIRE(a.status == LpStatus::kOptimal);
  REQUIRE(a.x.size() == b.x.size());
  CHECK(a.iterations == b.iterations);
  CHECK(std::memcmp(a.x.data(), b.x.data(), a.x.size() * sizeof(double)) == 0);
  CHECK(std::memcmp(&a.objective_value, &b.objective_value, sizeof(double)) ==
        0);
}

TEST_CASE("relaxation structure") {
  SUBCASE("N=1, M=0") {
    const Instance inst = instance_with_pinv({2.0}, {0.5});
    const LinearProgram lp = build_relaxation(inst, 0);
    CHECK(lp.num_vars() == 3);
    CHECK(lp.num_rows() == 3);
  }

  SUBCASE("N=2, M=2 budget row") {
    const Instance inst = instance_with_pinv({2.0, 1.0}, {0.5, 0.0});
    const LinearProgram lp = build_relaxation(inst, 2);
    REQUIRE(lp.num_rows() == 5);
    CHECK(lp.rhs.back() == doctest::Approx(2.0)); // chi budget row is last
    const std::vector<double>& budget = lp.rows.back();
    for (int j = 0; j < 4; ++j) CHECK(budget[j] == 0.0);
    CHECK(budget[4] == 1.0);
    CHECK(budget[5] == 1.0);
  }

  SUBCASE("N=3 dimensions") {
    const Instance inst = instance_with_pinv({2.0, 1.0, 3.0}, {1.0, 2.0, 0.0});
    const LinearProgram lp = build_relaxation(inst, 1);
    CHECK(lp.num_vars() == 9);
    CHECK(lp.num_rows() == 7);
    // chi variables are boxed in [0,1]; powers are non-negative.
    for (int j = 0; j < 6; ++j) {
      CHECK(lp.lower[j] == 0.0);
      CHECK(std::isinf(lp.upper[j]));
    }
    for (int j = 6; j < 9; ++j) {
      CHECK(lp.lower[j] == 0.0);
      CHECK(lp.upper[j] == 1.0);
    }
  }

  SUBCASE("budget out of range") {
    const Instance inst = instance_with_pinv({2.0}, {0.0});
    CHECK_THROWS_AS(build_relaxation(inst, -1), std::invalid_argument);
    CHECK_THROWS_AS(build_relaxation(inst, 2), std::invalid_argument);
  }
}

TEST_CASE("lower bound closed forms") {
  SUBCASE("drop everything costs nothing") {
    const Instance inst = instance_with_pinv({2.0, 1.0, 3.0}, {1.0, 0.0, 0.0});
    const LowerBound lb = lower_bound(inst, 3);
    CHECK(lb.value == doctest::Approx(0.0).epsilon(1e-9));
    for (double chi : lb.chi) CHECK(chi == doctest::Approx(1.0).epsilon(1e-7));
  }

  SUBCASE("no arrivals: alpha times sum of smallest inversion powers") {
    SplitMix64 rng(0x5544332211ULL);
    for (int trial = 0; trial < 20; ++trial) {
      const int n = 3 + static_cast<int>(rng.next() % 8);
      std::vector<double> p_inv, zeros(n, 0.0);
      for (int i = 0; i < n; ++i)
        p_inv.push_back(rng.next_uniform(0.5, 4.0));
      const Instance inst = instance_with_pinv(p_inv, zeros);
      for (int m = 0; m <= n; ++m) {
        std::vector<double> sorted = p_inv;
        std::sort(sorted.begin(), sorted.end());
        double expect = 0.0;
        for (int i = 0; i + m < n; ++i) expect += sorted[i];
        const LowerBound lb = lower_bound(inst, m);
        CAPTURE(trial);
        CAPTURE(m);
        CHECK(lb.value ==
              doctest::Approx(inst.price_conv * expect).epsilon(1e-7));
      }
    }
  }

  SUBCASE("bounded above by the oracle optimum") {
    const Instance inst =
        instance_with_pinv({2.0, 1.0, 3.0}, {1.0, 2.0, 0.0}, 0.34);
    const LowerBound lb = lower_bound(inst, 1);
    CHECK(lb.value <= 1.4 + 1e-9);
  }
}

TEST_CASE("relaxation is integral without arrivals and sandwiches the oracle") {
  SplitMix64 rng(0xabcdef012345ULL);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 4 + static_cast<int>(rng.next() % 9); // 4..12
    Instance inst = random_instance(rng, n);

    // Integrality with zero arrivals and (almost surely) distinct gains.
    Instance dry = inst;
    std::fill(dry.arrivals.begin(), dry.arrivals.end(), 0.0);
    dry.initial_storage = 0.0;
    for (int m = 0; m <= n; ++m) {
      const LowerBound lb = lower_bound(dry, m);
      const SolveResult exact = oracle_exhaustive(dry, m);
      const SolveResult heuristic = wcr(dry, m);
      CAPTURE(trial);
      CAPTURE(m);
      for (double chi : lb.chi)
        CHECK(std::min(chi, 1.0 - chi) < 1e-7); // integral
      CHECK(lb.value == doctest::Approx(exact.total_cost).epsilon(1e-7));
      CHECK(lb.value == doctest::Approx(heuristic.total_cost).epsilon(1e-7));
    }

    // General sandwich: bound <= oracle <= both heuristics.
    for (int m = 0; m <= n; ++m) {
      const double bound = lower_bound(inst, m).value;
      const double exact = oracle_exhaustive(inst, m).total_cost;
      const double lp_round = lpcr(inst, m).total_cost;
      const double worst_channel = wcr(inst, m).total_cost;
      const double slack = 1e-7 * (1.0 + exact);
      CAPTURE(trial);
      CAPTURE(m);
      CHECK(bound <= exact + slack);
      CHECK(exact <= lp_round + slack);
      CHECK(exact <= worst_channel + slack);
    }
  }
}

TEST_SUITE_END();
