#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "myopic/rates.hpp"
#include "myopic/scaling.hpp"

using namespace myopic;

TEST_CASE("zeta partial sums and limits") {
  CHECK(zeta_partial(2.0, 1) == 1.0);
  CHECK(zeta_partial(2.0, 10) == doctest::Approx(1.5497677311665408).epsilon(1e-15));
  const double pi2 = std::numbers::pi * std::numbers::pi;
  CHECK(std::abs(6.0 * zeta(2.0) - pi2) < 1e-9);
  CHECK(6.0 * zeta(4.0) == doctest::Approx(6.493939402266828).epsilon(1e-13));
  double bound = 0.0;
  zeta(2.0, &bound);
  CHECK(bound > 0.0);
  CHECK(bound < 1e-11);
  CHECK_THROWS_AS(zeta_partial(1.5, 10), std::invalid_argument);
  CHECK_THROWS_AS(zeta_partial(2.0, 0), std::invalid_argument);
}

TEST_CASE("zeta decreases with the exponent and bounds partial sums") {
  double previous = zeta(2.0);
  for (double eta = 2.5; eta <= 6.0; eta += 0.5) {
    const double z = zeta(eta);
    CHECK(z < previous);
    CHECK(zeta_partial(eta, 500) < z);
    previous = z;
  }
}

TEST_CASE("fixed-half allocation satisfies both interference bounds") {
  for (int T : {3, 4, 10, 60}) {
    const auto c = uniform_line_config(T, 1.0, 1.0, 1.0, 2.0);
    const auto rows = interference_bound_check(c, fixed_half_allocation(T));
    REQUIRE(rows.size() == static_cast<std::size_t>(T - 1));
    for (const auto& row : rows) {
      CHECK(row.holds);
      CHECK(row.interference_ratio >= 0.0);
      CHECK(row.zeta_bound == doctest::Approx(std::numbers::pi * std::numbers::pi));
    }
  }
}

TEST_CASE("bound check requires a uniform unit line") {
  const auto spaced = uniform_line_config(5, 2.0, 1.0, 1.0, 2.0);
  CHECK_THROWS_AS(interference_bound_check(spaced, fixed_half_allocation(5)),
                  std::invalid_argument);
  const auto uneven = make_config({0, 1, 2, 3}, {1, 2, 1}, {1, 1, 1});
  CHECK_THROWS_AS(interference_bound_check(uneven, fixed_half_allocation(4)),
                  std::invalid_argument);
}

TEST_CASE("grid maximum of the interference equals brute force") {
  for (int T = 3; T <= 7; ++T) {
    const auto c = uniform_line_config(T, 1.0, 1.0, 1.0, 2.0);
    const int n = T - 2;
    const int levels = 6;  // step 0.2
    int combos = 1;
    for (int i = 0; i < n; ++i) combos *= levels;
    for (int t = 2; t <= T; ++t) {
      double brute = -1.0;
      std::vector<double> f(static_cast<std::size_t>(n));
      for (int code = 0; code < combos; ++code) {
        int rest = code;
        for (auto& x : f) {
          x = (rest % levels) * 0.2;
          rest /= levels;
        }
        brute = std::max(brute, myopic_interference_power(c, PowerAllocation::two_hop(T, f), 2, t));
      }
      CAPTURE(T);
      CAPTURE(t);
      CHECK(max_interference_ratio_on_grid(c, t, 0.2) == doctest::Approx(brute).epsilon(1e-12));
    }
  }
}

TEST_CASE("three-node line has no interference on any grid") {
  const auto c = uniform_line_config(3, 1.0, 1.0, 1.0, 2.0);
  CHECK(max_interference_ratio_on_grid(c, 2, 0.1) == 0.0);
  CHECK(max_interference_ratio_on_grid(c, 3, 0.1) == 0.0);
  CHECK_THROWS_AS(max_interference_ratio_on_grid(c, 2, 0.3), std::invalid_argument);
  CHECK_THROWS_AS(max_interference_ratio_on_grid(c, 4, 0.1), std::invalid_argument);
}

TEST_CASE("grid maximum stays below pi squared") {
  const auto c = uniform_line_config(120, 1.0, 1.0, 1.0, 2.0);
  for (int t : {2, 3, 30, 60, 117, 120}) {
    CHECK(max_interference_ratio_on_grid(c, t, 0.1) < std::numbers::pi * std::numbers::pi);
  }
}

TEST_CASE("fixed-half rates stay above the floor") {
  const double floor = rate_floor(2.0, 1.0, 1.0);
  CHECK(floor > 0.0);
  const double signal = fixed_half_interior_signal(2.0, 1.0);
  CHECK(floor == doctest::Approx(0.5 * std::log2(1.0 + signal / (std::numbers::pi * std::numbers::pi + 1.0))));
  const auto series =
      asymptotic_rate_experiment({5, 10, 40, 100}, 2.0, 1.0, 1.0, 2, AllocationPolicy::FixedHalf);
  REQUIRE(series.size() == 4);
  for (const auto& p : series) {
    CHECK(p.min_rate > floor);
    CHECK(p.bottleneck >= 2);
    CHECK(p.bottleneck <= p.node_count);
  }
  CHECK(series[3].min_rate <= series[0].min_rate);
}

TEST_CASE("interior fixed-half signal by hand") {
  const double s = std::pow(std::sqrt(0.5 / 9.0) + std::sqrt(0.5 / 4.0), 2) +
                   std::pow(std::sqrt(0.5 / 4.0) + std::sqrt(0.5), 2);
  CHECK(fixed_half_interior_signal(2.0, 1.0) == doctest::Approx(s).epsilon(1e-15));
  CHECK(fixed_half_interior_signal(2.0, 3.0) == doctest::Approx(3.0 * s).epsilon(1e-15));
}

TEST_CASE("optimized policy never loses to fixed half") {
  const auto fixed =
      asymptotic_rate_experiment({4, 6}, 2.0, 1.0, 1.0, 2, AllocationPolicy::FixedHalf);
  const auto opt =
      asymptotic_rate_experiment({4, 6}, 2.0, 1.0, 1.0, 2, AllocationPolicy::Optimized);
  for (std::size_t i = 0; i < fixed.size(); ++i) CHECK(opt[i].min_rate >= fixed[i].min_rate);
}

TEST_CASE("experiment rejects unsupported settings") {
  CHECK_THROWS_AS(asymptotic_rate_experiment({5}, 2.0, 1.0, 1.0, 3, AllocationPolicy::FixedHalf),
                  std::invalid_argument);
  CHECK_THROWS_AS(asymptotic_rate_experiment({2}, 2.0, 1.0, 1.0, 2, AllocationPolicy::Optimized),
                  std::invalid_argument);
}
