#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "myopic/oracle.hpp"
#include "myopic/rates.hpp"
#include "myopic/scaling.hpp"
#include "reference_formulas.hpp"

using namespace myopic;

namespace {

std::vector<double> random_fractions(std::mt19937_64& rng, int T) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> f(static_cast<std::size_t>(T - 2));
  for (auto& x : f) x = u(rng);
  return f;
}

// 1-based alpha with the last relay's fraction pinned to zero.
std::vector<double> padded(const std::vector<double>& f) {
  std::vector<double> a{0.0};
  a.insert(a.end(), f.begin(), f.end());
  a.push_back(0.0);
  return a;
}

}  // namespace

TEST_CASE("one-hop rates") {
  const auto two = uniform_line_config(2, 1.0, 1.0, 1.0, 2.0);
  CHECK(one_hop_node_rate(two, 2) == doctest::Approx(0.5).epsilon(1e-14));

  const auto three = uniform_line_config(3, 1.0, 1.0, 1.0, 2.0);
  // Node 2 hears only node 1; node 3 hears node 2 over node 1 at distance 2.
  CHECK(one_hop_node_rate(three, 2) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(one_hop_node_rate(three, 3) == doctest::Approx(0.42399845327747504).epsilon(1e-14));

  CHECK_THROWS_AS(one_hop_node_rate(three, 1), std::invalid_argument);
  CHECK_THROWS_AS(one_hop_node_rate(three, 4), std::invalid_argument);
}

TEST_CASE("k = 1 reduces to one-hop rates") {
  const auto c = make_config({0, 0.7, 2.0, 2.5, 4.0}, {1, 2, 0.5, 3}, {1, 0.4, 2, 1}, 1.5, 3.1);
  const auto alloc = PowerAllocation::fresh_only(5, 1);
  for (int t = 2; t <= 5; ++t) {
    CHECK(myopic_node_rate(c, alloc, 1, t) ==
          doctest::Approx(one_hop_node_rate(c, t)).epsilon(1e-14));
  }
}

TEST_CASE("two-hop signal power matches the interior expression") {
  std::mt19937_64 rng(5);
  const int T = 10;
  const double eta = 2.6;
  const auto c = uniform_line_config(T, 1.0, 1.0, 1.0, eta);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_fractions(rng, T);
    const auto alloc = PowerAllocation::two_hop(T, f);
    const auto alpha = padded(f);
    for (int t = 4; t <= T; ++t) {
      CHECK(myopic_signal_power(c, alloc, 2, t) ==
            doctest::Approx(reference::two_hop_signal(alpha, eta, t)).epsilon(1e-12));
    }
  }
}

TEST_CASE("fresh-only two-hop signal is 2^-eta P + P") {
  const auto c = uniform_line_config(8, 1.0, 3.0, 1.0, 2.5);
  const auto alloc = PowerAllocation::fresh_only(8, 2);
  for (int t = 3; t <= 8; ++t) {
    CHECK(myopic_signal_power(c, alloc, 2, t) ==
          doctest::Approx(3.0 * std::pow(2.0, -2.5) + 3.0).epsilon(1e-14));
  }
}

TEST_CASE("three-node two-hop has no interference") {
  const auto c = uniform_line_config(3, 1.0, 2.0, 1.0, 2.0);
  const std::vector<double> f{0.3};
  const auto alloc = PowerAllocation::two_hop(3, f);
  CHECK(myopic_interference_power(c, alloc, 2, 2) == 0.0);
  CHECK(myopic_interference_power(c, alloc, 2, 3) == 0.0);
}

TEST_CASE("interference matches the corrected printed expression") {
  std::mt19937_64 rng(9);
  const int T = 12;
  const auto c = uniform_line_config(T, 1.0, 1.0, 1.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_fractions(rng, T);
    const auto alloc = PowerAllocation::two_hop(T, f);
    const auto alpha = padded(f);
    for (int t = 4; t <= T - 4; ++t) {
      const double generalized = myopic_interference_power(c, alloc, 2, t);
      CHECK(generalized ==
            doctest::Approx(reference::two_hop_interference_corrected(alpha, 2.0, T, t))
                .epsilon(1e-12));
      CHECK(reference::two_hop_interference_printed(alpha, 2.0, T, t) - generalized ==
            doctest::Approx(reference::two_hop_interference_slip(alpha, 2.0, T, t))
                .epsilon(1e-12));
    }
  }
}

TEST_CASE("power breakdown accounts for the whole received variance") {
  const auto c = make_config({0, 1, 1.8, 3.1, 4.0, 5.5}, {1, 2, 3, 0.5, 1.5}, {1, 1, 0.3, 2, 1},
                             0.8, 2.2);
  for (int k = 1; k <= 5; ++k) {
    const auto alloc = PowerAllocation::centroid(6, k);
    const auto sys = build_system(c, alloc, SchemeSpec::myopic(6, k));
    for (int t = 2; t <= 6; ++t) {
      const double total = myopic_signal_power(c, alloc, k, t) +
                           myopic_interference_power(c, alloc, k, t) +
                           known_stream_power(c, alloc, k, t) + c.noise_at(t);
      const auto y = sys.find(Label::Y(t));
      CHECK(total == doctest::Approx(sys.covariance(y, y)).epsilon(1e-13));
    }
  }
}

TEST_CASE("omniscient three-node rates by hand") {
  const auto c = make_config({0, 1, 3}, {2, 1}, {1, 0.5}, 1.0, 2.0);
  const auto alloc = PowerAllocation::from_rows(3, {{0.6, 0.4}, {1.0, 0.0}});
  // g12 = 1, g13 = 1/9, g23 = 1/4.
  const double r2 = 0.5 * std::log2(1.0 + 0.6 * 2.0 / 1.0);
  const double s3 = 0.6 * 2.0 / 9.0 + std::pow(std::sqrt(0.4 * 2.0 / 9.0) + std::sqrt(0.25), 2);
  const double r3 = 0.5 * std::log2(1.0 + s3 / 0.5);
  CHECK(omniscient_node_rate(c, alloc, 2) == doctest::Approx(r2).epsilon(1e-13));
  CHECK(omniscient_node_rate(c, alloc, 3) == doctest::Approx(r3).epsilon(1e-13));
}

TEST_CASE("deeper views never lower node rates for an embedded allocation") {
  std::mt19937_64 rng(17);
  std::exponential_distribution<double> expo(1.0);
  for (int T = 3; T <= 7; ++T) {
    const auto c = uniform_line_config(T, 1.0, 2.0, 1.0, 2.0);
    for (int k = 1; k < T - 1; ++k) {
      PowerAllocation alloc(T, k);
      for (int t = 1; t < T; ++t) {
        for (int m = 0; m < alloc.row_width(t); ++m) alloc.at(t, m) = expo(rng);
      }
      alloc.renormalize();
      const auto deeper = alloc.embedded(k + 1);
      const auto omni = alloc.embedded(T - 1);
      for (int t = 2; t <= T; ++t) {
        const double r = myopic_node_rate(c, alloc, k, t);
        CHECK(myopic_node_rate(c, deeper, k + 1, t) >= r - 1e-12);
        CHECK(omniscient_node_rate(c, omni, t) >= r - 1e-12);
      }
    }
  }
}

TEST_CASE("end-to-end rate is the minimum node rate") {
  const auto c = uniform_line_config(6, 1.0, 1.0, 1.0, 2.0);
  const auto alloc = PowerAllocation::centroid(6, 2);
  const auto report = end_to_end_rate(c, alloc, SchemeSpec::myopic(6, 2));
  REQUIRE(report.per_node.size() == 5);
  double lowest = report.per_node.front().bits;
  int where = 2;
  for (const auto& r : report.per_node) {
    CHECK(r.bits == doctest::Approx(myopic_node_rate(c, alloc, 2, r.node)).epsilon(1e-14));
    if (r.bits < lowest) {
      lowest = r.bits;
      where = r.node;
    }
  }
  CHECK(report.end_to_end == lowest);
  CHECK(report.bottleneck == where);
}

TEST_CASE("ties in the bottleneck go to the smallest node") {
  const auto report =
      make_report({0.7, 0.3, 0.3, 0.9}, SchemeSpec::myopic(5, 1), PowerAllocation(5, 1));
  CHECK(report.bottleneck == 3);
  CHECK(report.end_to_end == 0.3);
}

TEST_CASE("rates are invariant to a common scaling of power and noise") {
  const auto base = make_config({0, 1, 2.5, 3}, {1, 2, 3}, {0.5, 1, 1.5}, 1.0, 2.0);
  const auto scaled = make_config({0, 1, 2.5, 3}, {4, 8, 12}, {2, 4, 6}, 1.0, 2.0);
  const auto alloc = PowerAllocation::centroid(4, 2);
  for (int t = 2; t <= 4; ++t) {
    CHECK(myopic_node_rate(base, alloc, 2, t) == myopic_node_rate(scaled, alloc, 2, t));
  }
}

TEST_CASE("two-hop interference stays below six zeta") {
  std::mt19937_64 rng(3);
  for (const double eta : {2.0, 3.0, 4.0}) {
    const auto c = uniform_line_config(40, 1.0, 1.0, 1.0, eta);
    for (int trial = 0; trial < 5; ++trial) {
      const auto alloc = PowerAllocation::two_hop(40, random_fractions(rng, 40));
      for (int t = 2; t <= 40; ++t) {
        CHECK(myopic_interference_power(c, alloc, 2, t) < 6.0 * zeta(eta));
      }
    }
  }
}

TEST_CASE("invalid arguments") {
  const auto c = uniform_line_config(4, 1.0, 1.0, 1.0, 2.0);
  const auto alloc = PowerAllocation::centroid(4, 2);
  CHECK_THROWS_AS(myopic_node_rate(c, alloc, 2, 1), std::invalid_argument);
  CHECK_THROWS_AS(myopic_node_rate(c, alloc, 3, 2), std::invalid_argument);
  auto bad = alloc;
  bad.at(1, 0) = 0.9;
  CHECK_THROWS_AS(myopic_node_rate(c, bad, 2, 2), std::invalid_argument);
}
