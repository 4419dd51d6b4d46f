#pragma once

#include <span>
#include <vector>

namespace myopic {

/// Line Gaussian multiple relay channel with path-loss gains.
///
/// Node 1 is the source, node T the destination and nodes 2..T-1 relays.
/// `powers[i-1]` is the power constraint of transmitter i (i = 1..T-1) and
/// `noise[t-2]` the noise variance at receiver t (t = 2..T). All quantities
/// are linear; conversion from dB happens at the command-line boundary.
struct ChannelConfig {
  int node_count = 0;
  std::vector<double> positions;
  std::vector<double> powers;
  std::vector<double> noise;
  double kappa = 1.0;
  double eta = 2.0;

  double power(int transmitter) const { return powers[transmitter - 1]; }
  double noise_at(int receiver) const { return noise[receiver - 2]; }
};

/// Throws std::invalid_argument if any invariant of the config is violated.
void validate(const ChannelConfig& config);

/// Builds and validates a config from explicit parameters.
ChannelConfig make_config(std::vector<double> positions, std::vector<double> powers,
                          std::vector<double> noise, double kappa = 1.0, double eta = 2.0);

/// Power gain kappa * d^(-eta) from transmitter i to receiver t.
double gain(const ChannelConfig& config, int transmitter, int receiver);

/// Equally spaced line with identical powers and noises and kappa = 1.
ChannelConfig uniform_line_config(int node_count, double spacing, double power, double noise,
                                  double eta);

double snr_db_to_power(double snr_db, double noise);

/// The channel seen in pipeline order after relabeling relays by a
/// permutation. Pipeline position p is occupied by physical node order[p-1].
/// Gains, powers and noises are indexed by pipeline position.
class OrderedChannel {
 public:
  explicit OrderedChannel(const ChannelConfig& config);
  OrderedChannel(const ChannelConfig& config, std::span<const int> order);

  int node_count() const { return node_count_; }
  double gain(int transmitter, int receiver) const {
    return gains_[static_cast<std::size_t>(transmitter * (node_count_ + 1) + receiver)];
  }
  double power(int transmitter) const { return powers_[static_cast<std::size_t>(transmitter)]; }
  double noise(int receiver) const { return noise_[static_cast<std::size_t>(receiver)]; }

 private:
  int node_count_;
  std::vector<double> gains_;   // (T+1) x (T+1), 1-based
  std::vector<double> powers_;  // 1-based
  std::vector<double> noise_;   // 1-based
};

}  // namespace myopic
