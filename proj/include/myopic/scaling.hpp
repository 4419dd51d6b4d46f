#pragma once

#include <cstdint>
#include <vector>

#include "myopic/optimizer.hpp"
#include "myopic/scheme.hpp"

namespace myopic {

/// sum_{n=1}^{terms} n^(-eta).
double zeta_partial(double eta, std::int64_t terms);

/// zeta(eta) for eta > 1 from 10^6 explicit terms plus an Euler-Maclaurin
/// tail. `error_bound` receives the width of the integral tail bracket.
double zeta(double eta, double* error_bound = nullptr);

struct InterferenceBoundRow {
  int node;
  double interference_ratio;  // P_int(t) / P
  double partial_bound;       // 6 * zeta_partial(eta, T)
  double zeta_bound;          // 6 * zeta(eta); pi^2 for eta = 2
  bool holds;
};

/// Checks P_int(t)/P against both bounds at every receiver of a uniform
/// unit-spaced equal-power two-hop network.
std::vector<InterferenceBoundRow> interference_bound_check(const ChannelConfig& config,
                                                           const PowerAllocation& alloc);

/// Largest P_int(t)/P over two-hop allocations whose repetition fractions lie
/// on the grid {0, step, 2 step, ..., 1}. Exact over the grid: the
/// interference is a chain sum over neighbouring fractions, maximized by
/// dynamic programming.
double max_interference_ratio_on_grid(const ChannelConfig& config, int receiver, double step);

enum class AllocationPolicy { FixedHalf, Optimized };

struct ScalingPoint {
  int node_count;
  double min_rate;
  int bottleneck;
};

/// Minimum node rate of a uniform unit-spaced line for each T.
std::vector<ScalingPoint> asymptotic_rate_experiment(const std::vector<int>& node_counts,
                                                     double eta, double power, double noise,
                                                     int hops, AllocationPolicy policy,
                                                     const OptimizerOptions& options = {});

/// Two-hop allocation with every repetition fraction equal to 1/2.
PowerAllocation fixed_half_allocation(int node_count);

/// Interior two-hop signal power with all repetition fractions 1/2, unit
/// spacing and equal power P.
double fixed_half_interior_signal(double eta, double power);

/// 0.5 log2(1 + P_sig / (6 zeta(eta) P + N)) with the interior fixed-half
/// signal power; a lower bound on interior node rates.
double rate_floor(double eta, double power, double noise);

}  // namespace myopic
