#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "myopic/channel.hpp"
#include "myopic/rates.hpp"
#include "myopic/scheme.hpp"

namespace myopic {

struct OptimizerOptions {
  /// Coarse grid points per line search before golden-section refinement.
  int grid_points = 9;
  int golden_iterations = 48;
  /// Cap on coordinate-ascent sweeps per start and smoothing stage.
  int max_iterations = 500;
  /// Stop a stage when a full sweep improves the objective by less (bits).
  double tolerance = 1e-9;
  std::uint64_t seed = 1;
  /// Random simplex starts in addition to the corners and the centroid.
  int random_starts = 4;
  /// Lower-depth allocation embedded with zero new columns as one more start.
  std::optional<PowerAllocation> warm_start;
  /// Exhaustive ordering search is limited to T <= this cap.
  int ordering_enumeration_cap = 8;
};

struct AllocationResult {
  PowerAllocation allocation;
  RateReport report;
  /// False when the best start stopped at the iteration cap.
  bool converged = true;
  int iterations = 0;
};

/// Maximizes the minimum node rate over per-node simplex allocations for a
/// fixed scheme (hop depth and ordering).
AllocationResult optimize_allocation(const ChannelConfig& config, const SchemeSpec& scheme,
                                     const OptimizerOptions& options = {});

class UnsupportedSizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OrderingMode { Exhaustive, IdentityOnly };

struct OrderingResult {
  std::vector<int> ordering;
  AllocationResult best;
};

/// Searches relay orderings (ignoring `scheme.ordering`). Ties keep the
/// lexicographically first ordering, so the identity wins ties.
OrderingResult optimize_ordering(const ChannelConfig& config, const SchemeSpec& scheme,
                                 const OptimizerOptions& options = {},
                                 OrderingMode mode = OrderingMode::Exhaustive);

/// Optimizes k = 1..max_hops in turn, warm-starting each depth from the
/// previous optimum. Entry k-1 holds depth k.
std::vector<AllocationResult> optimize_depth_ladder(const ChannelConfig& config, int max_hops,
                                                    const OptimizerOptions& options = {});

}  // namespace myopic
