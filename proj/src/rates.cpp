#include "myopic/rates.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace myopic {

namespace {

void check_receiver(int node_count, int receiver) {
  if (receiver < 2 || receiver > node_count) {
    throw std::invalid_argument("receiver index " + std::to_string(receiver) +
                                " outside 2.." + std::to_string(node_count));
  }
}

PowerBreakdown breakdown_for(const ChannelConfig& config, const PowerAllocation& alloc, int hops,
                             int receiver) {
  check_receiver(config.node_count, receiver);
  validate(alloc, config.node_count, hops);
  const OrderedChannel channel(config);
  return power_breakdown(StreamAmplitudes(channel, alloc), channel.noise(receiver), hops,
                         receiver);
}

}  // namespace

StreamAmplitudes::StreamAmplitudes(const OrderedChannel& channel, const PowerAllocation& alloc)
    : node_count_(channel.node_count()) {
  const int T = node_count_;
  const auto dim = static_cast<std::size_t>(T + 1);
  values_.assign(dim * dim, 0.0);
  for (int i = 1; i <= T - 1; ++i) {
    const int width = alloc.row_width(i);
    for (int m = 0; m < width; ++m) {
      const double amp = std::sqrt(alloc.at(i, m) * channel.power(i));
      if (amp == 0.0) continue;
      double* row = values_.data() + static_cast<std::size_t>(i + m) * dim;
      for (int t = 2; t <= T; ++t) {
        if (t != i) row[t] += std::sqrt(channel.gain(i, t)) * amp;
      }
    }
  }
}

PowerBreakdown power_breakdown(const StreamAmplitudes& amplitudes, double noise, int hops,
                               int receiver) {
  const int T = amplitudes.node_count();
  PowerBreakdown p;
  p.noise = noise;
  for (int j = 1; j <= T - 1; ++j) {
    const double a = amplitudes(j, receiver);
    const double power = a * a;
    if (j >= receiver - hops && j <= receiver - 1) {
      p.signal += power;
    } else if (j >= receiver && j <= receiver + hops - 1) {
      p.known += power;
    } else {
      p.interference += power;
    }
  }
  return p;
}

double gaussian_rate(const PowerBreakdown& p) {
  return 0.5 * std::log1p(p.signal / (p.interference + p.noise)) / std::numbers::ln2;
}

std::vector<double> node_rates(const OrderedChannel& channel, const PowerAllocation& alloc) {
  const int T = channel.node_count();
  const StreamAmplitudes amplitudes(channel, alloc);
  std::vector<double> rates;
  rates.reserve(static_cast<std::size_t>(T - 1));
  for (int t = 2; t <= T; ++t) {
    rates.push_back(
        gaussian_rate(power_breakdown(amplitudes, channel.noise(t), alloc.hops(), t)));
  }
  return rates;
}

double one_hop_node_rate(const ChannelConfig& config, int receiver) {
  validate(config);
  check_receiver(config.node_count, receiver);
  const int T = config.node_count;
  PowerBreakdown p;
  p.noise = config.noise_at(receiver);
  for (int i = 1; i <= T - 1; ++i) {
    if (i == receiver) continue;
    const double power = gain(config, i, receiver) * config.power(i);
    if (i == receiver - 1) {
      p.signal += power;
    } else {
      p.interference += power;
    }
  }
  return gaussian_rate(p);
}

double myopic_signal_power(const ChannelConfig& config, const PowerAllocation& alloc, int hops,
                           int receiver) {
  return breakdown_for(config, alloc, hops, receiver).signal;
}

double myopic_interference_power(const ChannelConfig& config, const PowerAllocation& alloc,
                                 int hops, int receiver) {
  return breakdown_for(config, alloc, hops, receiver).interference;
}

double known_stream_power(const ChannelConfig& config, const PowerAllocation& alloc, int hops,
                          int receiver) {
  return breakdown_for(config, alloc, hops, receiver).known;
}

double myopic_node_rate(const ChannelConfig& config, const PowerAllocation& alloc, int hops,
                        int receiver) {
  return gaussian_rate(breakdown_for(config, alloc, hops, receiver));
}

double omniscient_node_rate(const ChannelConfig& config, const PowerAllocation& alloc,
                            int receiver) {
  return myopic_node_rate(config, alloc, config.node_count - 1, receiver);
}

RateReport make_report(std::vector<double> rates, SchemeSpec scheme, PowerAllocation alloc) {
  RateReport report;
  report.scheme = std::move(scheme);
  report.allocation = std::move(alloc);
  report.per_node.reserve(rates.size());
  for (std::size_t idx = 0; idx < rates.size(); ++idx) {
    const int node = static_cast<int>(idx) + 2;
    report.per_node.push_back({node, rates[idx]});
    // Strict comparison keeps the smallest index on ties.
    if (idx == 0 || rates[idx] < report.end_to_end) {
      report.end_to_end = rates[idx];
      report.bottleneck = node;
    }
  }
  return report;
}

RateReport end_to_end_rate(const ChannelConfig& config, const PowerAllocation& alloc,
                           const SchemeSpec& scheme) {
  validate(scheme, config.node_count);
  validate(alloc, config.node_count, scheme.hops);
  const OrderedChannel channel(config, scheme.ordering);
  return make_report(node_rates(channel, alloc), scheme, alloc);
}

}  // namespace myopic
