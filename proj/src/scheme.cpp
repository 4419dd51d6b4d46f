#include "myopic/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace myopic {

SchemeSpec SchemeSpec::myopic(int node_count, int hops) {
  SchemeSpec scheme{hops, identity_ordering(node_count)};
  validate(scheme, node_count);
  return scheme;
}

SchemeSpec SchemeSpec::omniscient(int node_count) {
  return myopic(node_count, node_count - 1);
}

std::vector<int> identity_ordering(int node_count) {
  std::vector<int> order(static_cast<std::size_t>(std::max(node_count, 0)));
  std::iota(order.begin(), order.end(), 1);
  return order;
}

void validate_ordering(std::span<const int> ordering, int node_count) {
  if (ordering.size() != static_cast<std::size_t>(node_count)) {
    throw std::invalid_argument("ordering: expected " + std::to_string(node_count) +
                                " entries, got " + std::to_string(ordering.size()));
  }
  if (ordering.empty() || ordering.front() != 1 || ordering.back() != node_count) {
    throw std::invalid_argument("ordering: source and destination must stay fixed");
  }
  std::vector<bool> seen(static_cast<std::size_t>(node_count + 1), false);
  for (int v : ordering) {
    if (v < 1 || v > node_count || seen[static_cast<std::size_t>(v)]) {
      throw std::invalid_argument("ordering: not a permutation of 1..T");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

void validate(const SchemeSpec& scheme, int node_count) {
  if (node_count < 2) throw std::invalid_argument("scheme: node_count must be >= 2");
  if (scheme.hops < 1 || scheme.hops > node_count - 1) {
    throw std::invalid_argument("scheme: hops must lie in 1.." + std::to_string(node_count - 1) +
                                ", got " + std::to_string(scheme.hops));
  }
  validate_ordering(scheme.ordering, node_count);
}

PowerAllocation::PowerAllocation(int node_count, int hops) : node_count_(node_count), hops_(hops) {
  if (node_count < 2) throw std::invalid_argument("allocation: node_count must be >= 2");
  if (hops < 1 || hops > node_count - 1) {
    throw std::invalid_argument("allocation: hops must lie in 1..T-1");
  }
  values_.assign(static_cast<std::size_t>((node_count - 1) * hops), 0.0);
}

int PowerAllocation::row_width(int transmitter) const {
  return std::min(hops_, node_count_ - transmitter);
}

PowerAllocation PowerAllocation::fresh_only(int node_count, int hops) {
  PowerAllocation alloc(node_count, hops);
  for (int t = 1; t < node_count; ++t) alloc.at(t, 0) = 1.0;
  return alloc;
}

PowerAllocation PowerAllocation::centroid(int node_count, int hops) {
  PowerAllocation alloc(node_count, hops);
  for (int t = 1; t < node_count; ++t) {
    const int w = alloc.row_width(t);
    for (int m = 0; m < w; ++m) alloc.at(t, m) = 1.0 / w;
  }
  return alloc;
}

PowerAllocation PowerAllocation::two_hop(int node_count, std::span<const double> repeat_fraction) {
  if (node_count < 3) throw std::invalid_argument("two_hop: needs T >= 3");
  if (repeat_fraction.size() != static_cast<std::size_t>(node_count - 2)) {
    throw std::invalid_argument("two_hop: expected T-2 repetition fractions");
  }
  PowerAllocation alloc(node_count, 2);
  for (int t = 1; t <= node_count - 2; ++t) {
    const double a = repeat_fraction[static_cast<std::size_t>(t - 1)];
    alloc.at(t, 0) = 1.0 - a;
    alloc.at(t, 1) = a;
  }
  alloc.at(node_count - 1, 0) = 1.0;
  validate(alloc);
  return alloc;
}

PowerAllocation PowerAllocation::from_rows(int node_count, std::vector<std::vector<double>> rows) {
  if (rows.size() != static_cast<std::size_t>(node_count - 1)) {
    throw std::invalid_argument("allocation: expected T-1 rows");
  }
  const auto hops = static_cast<int>(rows.front().size());
  PowerAllocation alloc(node_count, hops);
  for (int t = 1; t < node_count; ++t) {
    const auto& r = rows[static_cast<std::size_t>(t - 1)];
    if (r.size() != static_cast<std::size_t>(hops)) {
      throw std::invalid_argument("allocation: ragged rows");
    }
    std::copy(r.begin(), r.end(), alloc.row(t).begin());
  }
  validate(alloc);
  return alloc;
}

PowerAllocation PowerAllocation::embedded(int hops) const {
  if (hops < hops_) throw std::invalid_argument("embedded: cannot drop streams");
  PowerAllocation out(node_count_, hops);
  for (int t = 1; t < node_count_; ++t) {
    for (int m = 0; m < hops_; ++m) out.at(t, m) = at(t, m);
  }
  return out;
}

void PowerAllocation::renormalize() {
  for (int t = 1; t < node_count_; ++t) {
    auto r = row(t);
    const int w = row_width(t);
    double sum = 0.0;
    for (int m = 0; m < hops_; ++m) {
      if (m >= w || !(r[static_cast<std::size_t>(m)] > 0.0)) r[static_cast<std::size_t>(m)] = 0.0;
      sum += r[static_cast<std::size_t>(m)];
    }
    if (sum <= 0.0) {
      r[0] = 1.0;
      continue;
    }
    for (auto& v : r) v /= sum;
  }
}

void validate(const PowerAllocation& alloc) {
  const int T = alloc.node_count();
  if (T < 2 || alloc.hops() < 1) throw std::invalid_argument("allocation: empty");
  for (int t = 1; t < T; ++t) {
    double sum = 0.0;
    for (int m = 0; m < alloc.hops(); ++m) {
      const double v = alloc.at(t, m);
      if (!(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument("allocation: entry (" + std::to_string(t) + "," +
                                    std::to_string(m) + ") outside [0,1]");
      }
      if (t + m > T - 1 && v != 0.0) {
        throw std::invalid_argument("allocation: node " + std::to_string(t) +
                                    " assigns power to nonexistent stream U_" +
                                    std::to_string(t + m));
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > kSimplexTolerance) {
      throw std::invalid_argument("allocation: row " + std::to_string(t) + " sums to " +
                                  std::to_string(sum));
    }
  }
}

void validate(const PowerAllocation& alloc, int node_count, int hops) {
  if (alloc.node_count() != node_count || alloc.hops() != hops) {
    throw std::invalid_argument("allocation: shape (" + std::to_string(alloc.node_count()) + "," +
                                std::to_string(alloc.hops()) + ") does not match (" +
                                std::to_string(node_count) + "," + std::to_string(hops) + ")");
  }
  validate(alloc);
}

}  // namespace myopic
