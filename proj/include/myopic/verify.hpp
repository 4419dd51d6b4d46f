#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "myopic/channel.hpp"
#include "myopic/scheme.hpp"

namespace myopic {

struct RandomInstance {
  ChannelConfig config;
  SchemeSpec scheme;
  PowerAllocation allocation;
};

/// Random line channel with positive powers, random hop depth up to
/// `max_hops`, random relay ordering and a random simplex allocation.
RandomInstance random_instance(std::mt19937_64& rng, int min_nodes = 2, int max_nodes = 8,
                               int max_hops = 3);

struct OracleTrialSummary {
  int trials = 0;
  int passed = 0;
  int node_checks = 0;
  double max_error = 0.0;
  /// Seed-relative index of the first failing trial, -1 if none.
  int first_failure = -1;

  bool ok() const { return passed == trials; }
};

/// Compares closed-form node rates with the log-determinant oracle on
/// `trials` random instances.
OracleTrialSummary run_oracle_trials(std::uint64_t seed, int trials, double tolerance = 1e-9);

}  // namespace myopic
