#pragma once

#include <vector>

#include "myopic/channel.hpp"
#include "myopic/scheme.hpp"

namespace myopic {

struct NodeRate {
  int node;
  double bits;
};

struct RateReport {
  std::vector<NodeRate> per_node;
  int bottleneck = 0;
  double end_to_end = 0.0;
  SchemeSpec scheme;
  PowerAllocation allocation;
};

/// Received power at one node split by what the node does with each stream:
/// decoded (signal), conditioned away (known) or treated as noise.
struct PowerBreakdown {
  double signal = 0.0;
  double interference = 0.0;
  double known = 0.0;
  double noise = 0.0;

  double total() const { return signal + interference + known + noise; }
};

/// Coherent amplitude of every stream at every receiver:
/// amplitude(j, t) = sum over carriers i != t of sqrt(g_{it} a_{i,j-i} P_i).
class StreamAmplitudes {
 public:
  StreamAmplitudes(const OrderedChannel& channel, const PowerAllocation& alloc);

  double operator()(int stream, int receiver) const {
    return values_[static_cast<std::size_t>(stream * (node_count_ + 1) + receiver)];
  }
  int node_count() const { return node_count_; }

 private:
  int node_count_;
  std::vector<double> values_;
};

PowerBreakdown power_breakdown(const StreamAmplitudes& amplitudes, double noise, int hops,
                               int receiver);

/// 0.5 * log2(1 + signal / (interference + noise)).
double gaussian_rate(const PowerBreakdown& p);

/// Rates at receivers 2..T (index 0 is receiver 2) for the allocation's hop
/// depth. This is the hot path of the optimizer.
std::vector<double> node_rates(const OrderedChannel& channel, const PowerAllocation& alloc);

double one_hop_node_rate(const ChannelConfig& config, int receiver);

double myopic_signal_power(const ChannelConfig& config, const PowerAllocation& alloc, int hops,
                           int receiver);
double myopic_interference_power(const ChannelConfig& config, const PowerAllocation& alloc,
                                 int hops, int receiver);
/// Received power of the streams the receiver already knows (U_t..U_{t+k-1}).
double known_stream_power(const ChannelConfig& config, const PowerAllocation& alloc, int hops,
                          int receiver);
double myopic_node_rate(const ChannelConfig& config, const PowerAllocation& alloc, int hops,
                        int receiver);
double omniscient_node_rate(const ChannelConfig& config, const PowerAllocation& alloc,
                            int receiver);

RateReport make_report(std::vector<double> rates, SchemeSpec scheme, PowerAllocation alloc);
RateReport end_to_end_rate(const ChannelConfig& config, const PowerAllocation& alloc,
                           const SchemeSpec& scheme);

}  // namespace myopic
