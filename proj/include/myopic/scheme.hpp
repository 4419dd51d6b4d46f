#pragma once

#include <span>
#include <vector>

namespace myopic {

/// Coding constraint: hop depth k (omniscient coding is k = T-1) and the
/// relay ordering. `ordering` is a 1-based permutation of 1..T that fixes
/// the source and destination.
struct SchemeSpec {
  int hops = 1;
  std::vector<int> ordering;

  static SchemeSpec myopic(int node_count, int hops);
  static SchemeSpec omniscient(int node_count);

  bool is_omniscient(int node_count) const { return hops == node_count - 1; }
};

std::vector<int> identity_ordering(int node_count);

void validate_ordering(std::span<const int> ordering, int node_count);
void validate(const SchemeSpec& scheme, int node_count);

/// Per-transmitter split of power across the k streams it carries.
///
/// Row t (t = 1..T-1) holds (a_{t,0}, ..., a_{t,k-1}); a_{t,m} is the
/// fraction of P_t spent on stream U_{t+m}. Entries with t+m > T-1 are zero.
class PowerAllocation {
 public:
  PowerAllocation() = default;
  PowerAllocation(int node_count, int hops);

  /// All power on each node's new stream.
  static PowerAllocation fresh_only(int node_count, int hops);
  /// Each row spread evenly over its admissible streams.
  static PowerAllocation centroid(int node_count, int hops);
  /// Two-hop allocation from per-node repetition fractions a_t = a_{t,1},
  /// given for t = 1..T-2. Node T-1 carries only its own stream.
  static PowerAllocation two_hop(int node_count, std::span<const double> repeat_fraction);
  static PowerAllocation from_rows(int node_count, std::vector<std::vector<double>> rows);

  int node_count() const { return node_count_; }
  int hops() const { return hops_; }

  /// Number of streams transmitter t may carry: min(k, T-t).
  int row_width(int transmitter) const;

  double at(int transmitter, int offset) const {
    return values_[static_cast<std::size_t>((transmitter - 1) * hops_ + offset)];
  }
  double& at(int transmitter, int offset) {
    return values_[static_cast<std::size_t>((transmitter - 1) * hops_ + offset)];
  }
  std::span<const double> row(int transmitter) const {
    return {values_.data() + static_cast<std::ptrdiff_t>((transmitter - 1) * hops_),
            static_cast<std::size_t>(hops_)};
  }
  std::span<double> row(int transmitter) {
    return {values_.data() + static_cast<std::ptrdiff_t>((transmitter - 1) * hops_),
            static_cast<std::size_t>(hops_)};
  }
  const std::vector<double>& values() const { return values_; }

  /// Same allocation with `hops` columns; new columns are zero.
  PowerAllocation embedded(int hops) const;

  /// Clamps negatives and rescales each row to sum to one.
  void renormalize();

  friend bool operator==(const PowerAllocation&, const PowerAllocation&) = default;

 private:
  int node_count_ = 0;
  int hops_ = 0;
  std::vector<double> values_;
};

inline constexpr double kSimplexTolerance = 1e-12;

/// Throws std::invalid_argument unless every row is a valid simplex point
/// and boundary entries vanish.
void validate(const PowerAllocation& alloc);
void validate(const PowerAllocation& alloc, int node_count, int hops);

}  // namespace myopic
