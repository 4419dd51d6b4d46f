#include "myopic/verify.hpp"

#include <algorithm>
#include <cmath>

#include "myopic/oracle.hpp"
#include "myopic/rates.hpp"

namespace myopic {

RandomInstance random_instance(std::mt19937_64& rng, int min_nodes, int max_nodes,
                               int max_hops) {
  std::uniform_int_distribution<int> nodes(min_nodes, max_nodes);
  const int T = nodes(rng);
  std::uniform_int_distribution<int> hops(1, std::min(max_hops, T - 1));
  const int k = hops(rng);

  std::uniform_real_distribution<double> gap(0.2, 3.0);
  std::uniform_real_distribution<double> power(0.01, 10.0);
  std::uniform_real_distribution<double> noise(0.1, 2.0);
  std::uniform_real_distribution<double> kappa(0.5, 2.0);
  std::uniform_real_distribution<double> eta(2.0, 4.0);

  std::vector<double> positions{0.0};
  for (int i = 1; i < T; ++i) positions.push_back(positions.back() + gap(rng));
  std::vector<double> powers;
  std::vector<double> noises;
  for (int i = 1; i < T; ++i) {
    powers.push_back(power(rng));
    noises.push_back(noise(rng));
  }
  RandomInstance inst{make_config(std::move(positions), std::move(powers), std::move(noises),
                                  kappa(rng), eta(rng)),
                      SchemeSpec{k, identity_ordering(T)}, PowerAllocation(T, k)};
  std::shuffle(inst.scheme.ordering.begin() + 1, inst.scheme.ordering.end() - 1, rng);

  std::exponential_distribution<double> expo(1.0);
  for (int t = 1; t < T; ++t) {
    for (int m = 0; m < inst.allocation.row_width(t); ++m) inst.allocation.at(t, m) = expo(rng);
  }
  inst.allocation.renormalize();
  return inst;
}

OracleTrialSummary run_oracle_trials(std::uint64_t seed, int trials, double tolerance) {
  std::mt19937_64 rng(seed);
  OracleTrialSummary summary;
  for (int n = 0; n < trials; ++n) {
    const auto inst = random_instance(rng);
    const int T = inst.config.node_count;
    const auto sys = build_system(inst.config, inst.allocation, inst.scheme);
    const auto closed = end_to_end_rate(inst.config, inst.allocation, inst.scheme);
    bool ok = true;
    for (const auto& [node, bits] : closed.per_node) {
      const double exact = node_rate_oracle(sys, T, inst.scheme.hops, node);
      const double err = std::abs(exact - bits);
      summary.max_error = std::max(summary.max_error, err);
      ++summary.node_checks;
      if (!(err < tolerance)) ok = false;
    }
    ++summary.trials;
    if (ok) {
      ++summary.passed;
    } else if (summary.first_failure < 0) {
      summary.first_failure = n;
    }
  }
  return summary;
}

}  // namespace myopic
