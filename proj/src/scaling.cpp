#include "myopic/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "myopic/rates.hpp"

namespace myopic {

namespace {

constexpr std::int64_t kZetaTerms = 1'000'000;

void require_uniform_unit_line(const ChannelConfig& config) {
  validate(config);
  for (int i = 1; i < config.node_count; ++i) {
    const double gap = config.positions[static_cast<std::size_t>(i)] -
                       config.positions[static_cast<std::size_t>(i - 1)];
    if (std::abs(gap - 1.0) > 1e-12) {
      throw std::invalid_argument("scaling: expected unit spacing");
    }
  }
  const double p = config.powers.front();
  if (!(p > 0.0) || std::any_of(config.powers.begin(), config.powers.end(),
                                [p](double q) { return q != p; })) {
    throw std::invalid_argument("scaling: expected equal positive powers");
  }
}

}  // namespace

double zeta_partial(double eta, std::int64_t terms) {
  if (!(eta >= 2.0)) throw std::invalid_argument("zeta_partial: eta must be >= 2");
  if (terms < 1) throw std::invalid_argument("zeta_partial: needs at least one term");
  // Smallest terms first.
  double sum = 0.0;
  for (std::int64_t n = terms; n >= 1; --n) sum += std::pow(static_cast<double>(n), -eta);
  return sum;
}

double zeta(double eta, double* error_bound) {
  const double n = static_cast<double>(kZetaTerms);
  double head = 0.0;
  {
    // The explicit head costs 10^6 pow calls; callers sweep many T at one eta.
    static std::mutex mutex;
    static std::map<double, double> heads;
    std::lock_guard lock(mutex);
    auto it = heads.find(eta);
    if (it == heads.end()) it = heads.emplace(eta, zeta_partial(eta, kZetaTerms)).first;
    head = it->second;
  }
  // sum_{m>n} m^-eta lies between the integrals from n+1 and from n.
  const double upper = std::pow(n, 1.0 - eta) / (eta - 1.0);
  const double lower = std::pow(n + 1.0, 1.0 - eta) / (eta - 1.0);
  if (error_bound) *error_bound = upper - lower;
  const double tail = upper - 0.5 * std::pow(n, -eta) + eta * std::pow(n, -eta - 1.0) / 12.0;
  return head + tail;
}

std::vector<InterferenceBoundRow> interference_bound_check(const ChannelConfig& config,
                                                           const PowerAllocation& alloc) {
  require_uniform_unit_line(config);
  validate(alloc, config.node_count, 2);
  const double p = config.powers.front();
  const double partial = 6.0 * zeta_partial(config.eta, config.node_count);
  const double full = 6.0 * zeta(config.eta);
  std::vector<InterferenceBoundRow> rows;
  const OrderedChannel channel(config);
  const StreamAmplitudes amplitudes(channel, alloc);
  for (int t = 2; t <= config.node_count; ++t) {
    const double ratio = power_breakdown(amplitudes, channel.noise(t), 2, t).interference / p;
    rows.push_back({t, ratio, partial, full, ratio < partial && ratio < full});
  }
  return rows;
}

double max_interference_ratio_on_grid(const ChannelConfig& config, int receiver, double step) {
  require_uniform_unit_line(config);
  const int T = config.node_count;
  if (T < 3) throw std::invalid_argument("max_interference_ratio_on_grid: needs T >= 3");
  if (receiver < 2 || receiver > T) throw std::invalid_argument("receiver out of range");
  const int levels = static_cast<int>(std::lround(1.0 / step)) + 1;
  if (levels < 2 || std::abs((levels - 1) * step - 1.0) > 1e-9) {
    throw std::invalid_argument("max_interference_ratio_on_grid: step must divide 1");
  }
  std::vector<double> grid(static_cast<std::size_t>(levels));
  for (int l = 0; l < levels; ++l) grid[static_cast<std::size_t>(l)] = l * step;
  grid.back() = 1.0;

  std::vector<double> root(static_cast<std::size_t>(T), 0.0);
  for (int i = 1; i <= T - 1; ++i) {
    if (i != receiver) root[static_cast<std::size_t>(i)] = std::sqrt(gain(config, i, receiver));
  }
  auto root_gain = [&](int i) { return root[static_cast<std::size_t>(i)]; };
  auto unknown = [&](int j) { return j < receiver - 2 || j > receiver + 1; };
  // Squared amplitude of U_j given the repetition fraction of node j-1
  // (old copy) and of node j (new copy is the complement). Powers are
  // normalized, so this is already a ratio to P.
  auto term = [&](int j, double older, double own) {
    if (!unknown(j)) return 0.0;
    double amp = root_gain(j) * std::sqrt(1.0 - own);
    if (j >= 2) amp += root_gain(j - 1) * std::sqrt(older);
    return amp * amp;
  };

  // value[l]: best sum over streams 1..j with a_j = grid[l].
  std::vector<double> value(static_cast<std::size_t>(levels));
  for (int l = 0; l < levels; ++l) value[static_cast<std::size_t>(l)] = term(1, 0.0, grid[static_cast<std::size_t>(l)]);
  std::vector<double> next(value.size());
  for (int j = 2; j <= T - 2; ++j) {
    for (int y = 0; y < levels; ++y) {
      double best = -1.0;
      for (int x = 0; x < levels; ++x) {
        best = std::max(best, value[static_cast<std::size_t>(x)] +
                                  term(j, grid[static_cast<std::size_t>(x)],
                                       grid[static_cast<std::size_t>(y)]));
      }
      next[static_cast<std::size_t>(y)] = best;
    }
    value.swap(next);
  }
  // Node T-1 carries only U_{T-1}.
  double best = -1.0;
  for (int x = 0; x < levels; ++x) {
    best = std::max(best, value[static_cast<std::size_t>(x)] +
                              term(T - 1, grid[static_cast<std::size_t>(x)], 0.0));
  }
  return best;
}

PowerAllocation fixed_half_allocation(int node_count) {
  return PowerAllocation::two_hop(node_count,
                                  std::vector<double>(static_cast<std::size_t>(node_count - 2), 0.5));
}

double fixed_half_interior_signal(double eta, double power) {
  const double half = 0.5 * power;
  const double older = std::sqrt(std::pow(3.0, -eta) * half) + std::sqrt(std::pow(2.0, -eta) * half);
  const double newer = std::sqrt(std::pow(2.0, -eta) * half) + std::sqrt(half);
  return older * older + newer * newer;
}

double rate_floor(double eta, double power, double noise) {
  const double signal = fixed_half_interior_signal(eta, power);
  return 0.5 * std::log2(1.0 + signal / (6.0 * zeta(eta) * power + noise));
}

std::vector<ScalingPoint> asymptotic_rate_experiment(const std::vector<int>& node_counts,
                                                     double eta, double power, double noise,
                                                     int hops, AllocationPolicy policy,
                                                     const OptimizerOptions& options) {
  if (policy == AllocationPolicy::FixedHalf && hops != 2) {
    throw std::invalid_argument("asymptotic_rate_experiment: fixed-half policy is two-hop only");
  }
  std::vector<ScalingPoint> series;
  for (int T : node_counts) {
    if (T < hops + 1) {
      throw std::invalid_argument("asymptotic_rate_experiment: T=" + std::to_string(T) +
                                  " too small for k=" + std::to_string(hops));
    }
    const auto config = uniform_line_config(T, 1.0, power, noise, eta);
    const auto scheme = SchemeSpec::myopic(T, hops);
    RateReport report;
    if (policy == AllocationPolicy::FixedHalf) {
      report = end_to_end_rate(config, fixed_half_allocation(T), scheme);
    } else {
      report = optimize_allocation(config, scheme, options).report;
    }
    series.push_back({T, report.end_to_end, report.bottleneck});
  }
  return series;
}

}  // namespace myopic
