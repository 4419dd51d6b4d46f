#include "myopic/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

namespace myopic {

namespace {

// Incremental evaluator of node rates: changing one allocation row only
// touches the amplitudes of the streams that row carries.
class Evaluator {
 public:
  Evaluator(const OrderedChannel& channel, PowerAllocation alloc)
      : channel_(channel), alloc_(std::move(alloc)), T_(channel.node_count()) {
    const auto dim = static_cast<std::size_t>(T_ + 1);
    root_gain_.assign(dim * dim, 0.0);
    for (int i = 1; i <= T_ - 1; ++i) {
      for (int t = 2; t <= T_; ++t) {
        if (i != t) root_gain_[idx(i, t)] = std::sqrt(channel.gain(i, t));
      }
    }
    amplitude_.assign(dim * dim, 0.0);
    for (int j = 1; j <= T_ - 1; ++j) refresh_stream(j);
    rates_.resize(static_cast<std::size_t>(T_ - 1));
  }

  const PowerAllocation& allocation() const { return alloc_; }

  void set_row(int transmitter, std::span<const double> row) {
    std::copy(row.begin(), row.end(), alloc_.row(transmitter).begin());
    const int last = std::min(T_ - 1, transmitter + alloc_.hops() - 1);
    for (int j = transmitter; j <= last; ++j) refresh_stream(j);
  }

  const std::vector<double>& rates() {
    const int k = alloc_.hops();
    for (int t = 2; t <= T_; ++t) {
      PowerBreakdown p;
      p.noise = channel_.noise(t);
      for (int j = 1; j <= T_ - 1; ++j) {
        const double a = amplitude_[idx(j, t)];
        const double power = a * a;
        if (j >= t - k && j <= t - 1) {
          p.signal += power;
        } else if (j < t - k || j > t + k - 1) {
          p.interference += power;
        }
      }
      rates_[static_cast<std::size_t>(t - 2)] = gaussian_rate(p);
    }
    return rates_;
  }

 private:
  std::size_t idx(int a, int b) const {
    return static_cast<std::size_t>(a) * static_cast<std::size_t>(T_ + 1) +
           static_cast<std::size_t>(b);
  }

  void refresh_stream(int j) {
    const int k = alloc_.hops();
    for (int t = 2; t <= T_; ++t) amplitude_[idx(j, t)] = 0.0;
    for (int i = std::max(1, j - k + 1); i <= j; ++i) {
      const double amp = std::sqrt(alloc_.at(i, j - i) * channel_.power(i));
      if (amp == 0.0) continue;
      for (int t = 2; t <= T_; ++t) {
        if (t != i) amplitude_[idx(j, t)] += root_gain_[idx(i, t)] * amp;
      }
    }
  }

  const OrderedChannel& channel_;
  PowerAllocation alloc_;
  int T_;
  std::vector<double> root_gain_;
  std::vector<double> amplitude_;
  std::vector<double> rates_;
};

double hard_min(const std::vector<double>& rates) {
  return *std::min_element(rates.begin(), rates.end());
}

// Log-sum-exp smoothing of the minimum; beta = infinity gives the minimum.
double soft_min(const std::vector<double>& rates, double beta) {
  const double lo = hard_min(rates);
  if (!std::isfinite(beta)) return lo;
  double acc = 0.0;
  for (double r : rates) acc += std::exp(-beta * (r - lo));
  return lo - std::log(acc) / beta;
}

struct Direction {
  int transmitter;
  int from;
  int to;
};

std::vector<Direction> directions_for(const PowerAllocation& alloc) {
  std::vector<Direction> dirs;
  for (int t = 1; t < alloc.node_count(); ++t) {
    const int w = alloc.row_width(t);
    for (int p = 0; p < w; ++p) {
      for (int q = p + 1; q < w; ++q) dirs.push_back({t, p, q});
    }
  }
  return dirs;
}

void renormalize_row(std::vector<double>& row, int width) {
  double sum = 0.0;
  for (int m = 0; m < static_cast<int>(row.size()); ++m) {
    auto& v = row[static_cast<std::size_t>(m)];
    if (m >= width || !(v > 0.0)) v = 0.0;
    sum += v;
  }
  if (sum <= 0.0) {
    row[0] = 1.0;
    return;
  }
  for (auto& v : row) v /= sum;
}

struct AscentOutcome {
  PowerAllocation best;
  double best_rate = -1.0;
  bool converged = true;
  int sweeps = 0;
};

class Ascent {
 public:
  Ascent(const OrderedChannel& channel, const PowerAllocation& start,
         const OptimizerOptions& options)
      : eval_(channel, start), options_(options), dirs_(directions_for(start)) {
    outcome_.best = start;
    outcome_.best_rate = hard_min(eval_.rates());
  }

  AscentOutcome run() {
    if (dirs_.empty()) return outcome_;
    double scale = 0.0;
    for (double r : eval_.rates()) scale += r;
    scale /= static_cast<double>(eval_.rates().size());
    if (scale > 0.0) {
      for (double c : {30.0, 300.0, 3000.0, 30000.0}) stage(c / scale);
    }
    stage(std::numeric_limits<double>::infinity());
    return outcome_;
  }

 private:
  double evaluate_row(int t, const std::vector<double>& row, double beta) {
    eval_.set_row(t, row);
    const auto& rates = eval_.rates();
    const double h = hard_min(rates);
    if (h > outcome_.best_rate) {
      outcome_.best_rate = h;
      outcome_.best = eval_.allocation();
    }
    return soft_min(rates, beta);
  }

  double current_objective(double beta) { return soft_min(eval_.rates(), beta); }

  void stage(double beta) {
    double value = current_objective(beta);
    for (int sweep = 0;; ++sweep) {
      if (sweep >= options_.max_iterations) {
        outcome_.converged = false;
        return;
      }
      ++outcome_.sweeps;
      const double before = value;
      for (const auto& d : dirs_) value = line_search(d, beta, value);
      if (value - before < options_.tolerance) return;
    }
  }

  // Moves mass delta from entry `from` to entry `to` of one row.
  double line_search(const Direction& d, double beta, double value) {
    const auto base_span = eval_.allocation().row(d.transmitter);
    const std::vector<double> base(base_span.begin(), base_span.end());
    const int width = eval_.allocation().row_width(d.transmitter);
    const double lo = -base[static_cast<std::size_t>(d.to)];
    const double hi = base[static_cast<std::size_t>(d.from)];
    if (hi - lo <= 1e-15) return value;

    std::vector<double> trial = base;
    auto at = [&](double delta) {
      trial = base;
      trial[static_cast<std::size_t>(d.from)] = std::max(0.0, base[static_cast<std::size_t>(d.from)] - delta);
      trial[static_cast<std::size_t>(d.to)] = std::max(0.0, base[static_cast<std::size_t>(d.to)] + delta);
      renormalize_row(trial, width);
      return evaluate_row(d.transmitter, trial, beta);
    };

    const int n = std::max(options_.grid_points, 3);
    const double step = (hi - lo) / (n - 1);
    double best_delta = 0.0;
    double best_value = value;
    for (int g = 0; g < n; ++g) {
      const double delta = (g == n - 1) ? hi : lo + g * step;
      const double v = at(delta);
      if (v > best_value) {
        best_value = v;
        best_delta = delta;
      }
    }

    // Golden-section refinement around the best grid point.
    double a = std::max(lo, best_delta - step);
    double b = std::min(hi, best_delta + step);
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = at(x1);
    double f2 = at(x2);
    for (int it = 0; it < options_.golden_iterations && b - a > 1e-14; ++it) {
      if (f1 < f2) {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + kInvPhi * (b - a);
        f2 = at(x2);
      } else {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - kInvPhi * (b - a);
        f1 = at(x1);
      }
    }
    if (f1 > best_value) {
      best_value = f1;
      best_delta = x1;
    }
    if (f2 > best_value) {
      best_value = f2;
      best_delta = x2;
    }

    if (best_value > value) return at(best_delta);
    eval_.set_row(d.transmitter, base);
    return value;
  }

  Evaluator eval_;
  const OptimizerOptions& options_;
  std::vector<Direction> dirs_;
  AscentOutcome outcome_;
};

PowerAllocation corner(int node_count, int hops, int stream_offset) {
  PowerAllocation alloc(node_count, hops);
  for (int t = 1; t < node_count; ++t) {
    alloc.at(t, std::min(stream_offset, alloc.row_width(t) - 1)) = 1.0;
  }
  return alloc;
}

PowerAllocation random_point(int node_count, int hops, std::mt19937_64& rng) {
  PowerAllocation alloc(node_count, hops);
  std::exponential_distribution<double> expo(1.0);
  for (int t = 1; t < node_count; ++t) {
    for (int m = 0; m < alloc.row_width(t); ++m) alloc.at(t, m) = expo(rng);
  }
  alloc.renormalize();
  return alloc;
}

std::vector<PowerAllocation> starting_points(int node_count, const SchemeSpec& scheme,
                                             const OptimizerOptions& options) {
  const int k = scheme.hops;
  std::vector<PowerAllocation> starts;
  for (int m = 0; m < k; ++m) starts.push_back(corner(node_count, k, m));
  starts.push_back(PowerAllocation::centroid(node_count, k));
  if (options.warm_start) {
    if (options.warm_start->node_count() != node_count || options.warm_start->hops() > k) {
      throw std::invalid_argument("optimize_allocation: warm start shape does not fit scheme");
    }
    auto w = options.warm_start->embedded(k);
    validate(w);
    starts.push_back(std::move(w));
  }
  std::mt19937_64 rng(options.seed);
  for (int s = 0; s < options.random_starts; ++s) {
    starts.push_back(random_point(node_count, k, rng));
  }
  return starts;
}

bool better(double rate, const PowerAllocation& alloc, double best_rate,
            const PowerAllocation& best) {
  if (rate != best_rate) return rate > best_rate;
  return std::lexicographical_compare(alloc.values().begin(), alloc.values().end(),
                                      best.values().begin(), best.values().end());
}

}  // namespace

AllocationResult optimize_allocation(const ChannelConfig& config, const SchemeSpec& scheme,
                                     const OptimizerOptions& options) {
  validate(config);
  validate(scheme, config.node_count);
  const OrderedChannel channel(config, scheme.ordering);
  const int T = config.node_count;

  AllocationResult result;
  double best_rate = -1.0;
  for (const auto& start : starting_points(T, scheme, options)) {
    Ascent ascent(channel, start, options);
    auto outcome = ascent.run();
    result.iterations += outcome.sweeps;
    // Re-evaluate through the reference path so reports never depend on
    // the incremental evaluator's rounding.
    outcome.best.renormalize();
    const auto report = end_to_end_rate(config, outcome.best, scheme);
    if (best_rate < 0.0 || better(report.end_to_end, outcome.best, best_rate, result.allocation)) {
      best_rate = report.end_to_end;
      result.allocation = outcome.best;
      result.report = report;
      result.converged = outcome.converged;
    }
  }
  return result;
}

OrderingResult optimize_ordering(const ChannelConfig& config, const SchemeSpec& scheme,
                                 const OptimizerOptions& options, OrderingMode mode) {
  validate(config);
  const int T = config.node_count;
  SchemeSpec candidate{scheme.hops, identity_ordering(T)};
  validate(candidate, T);

  OrderingResult result{candidate.ordering, optimize_allocation(config, candidate, options)};
  if (mode == OrderingMode::IdentityOnly || T <= 3) return result;
  if (T > options.ordering_enumeration_cap) {
    throw UnsupportedSizeError("optimize_ordering: exhaustive search supports T <= " +
                               std::to_string(options.ordering_enumeration_cap) + ", got " +
                               std::to_string(T));
  }
  auto relays_begin = candidate.ordering.begin() + 1;
  auto relays_end = candidate.ordering.end() - 1;
  while (std::next_permutation(relays_begin, relays_end)) {
    auto found = optimize_allocation(config, candidate, options);
    if (found.report.end_to_end > result.best.report.end_to_end) {
      result.ordering = candidate.ordering;
      result.best = std::move(found);
    }
  }
  return result;
}

std::vector<AllocationResult> optimize_depth_ladder(const ChannelConfig& config, int max_hops,
                                                    const OptimizerOptions& options) {
  validate(config);
  if (max_hops < 1 || max_hops > config.node_count - 1) {
    throw std::invalid_argument("optimize_depth_ladder: max_hops outside 1..T-1");
  }
  std::vector<AllocationResult> ladder;
  OptimizerOptions opts = options;
  for (int k = 1; k <= max_hops; ++k) {
    ladder.push_back(optimize_allocation(config, SchemeSpec::myopic(config.node_count, k), opts));
    opts.warm_start = ladder.back().allocation;
  }
  return ladder;
}

}  // namespace myopic
