#include "myopic/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "myopic/scheme.hpp"

namespace myopic {

void validate(const ChannelConfig& config) {
  const int T = config.node_count;
  if (T < 2) {
    throw std::invalid_argument("channel: node_count must be >= 2, got " + std::to_string(T));
  }
  const auto n = static_cast<std::size_t>(T);
  if (config.positions.size() != n) {
    throw std::invalid_argument("channel: expected " + std::to_string(T) + " positions, got " +
                                std::to_string(config.positions.size()));
  }
  if (config.powers.size() != n - 1) {
    throw std::invalid_argument("channel: expected " + std::to_string(T - 1) + " powers, got " +
                                std::to_string(config.powers.size()));
  }
  if (config.noise.size() != n - 1) {
    throw std::invalid_argument("channel: expected " + std::to_string(T - 1) +
                                " noise variances, got " + std::to_string(config.noise.size()));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(config.positions[i])) {
      throw std::invalid_argument("channel: non-finite position");
    }
    if (i > 0 && !(config.positions[i] > config.positions[i - 1])) {
      throw std::invalid_argument("channel: positions must be strictly increasing");
    }
  }
  for (double p : config.powers) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw std::invalid_argument("channel: powers must be finite and >= 0");
    }
  }
  for (double z : config.noise) {
    if (!(z > 0.0) || !std::isfinite(z)) {
      throw std::invalid_argument("channel: noise variances must be finite and > 0");
    }
  }
  if (!(config.kappa > 0.0) || !std::isfinite(config.kappa)) {
    throw std::invalid_argument("channel: kappa must be > 0");
  }
  if (!(config.eta >= 2.0) || !std::isfinite(config.eta)) {
    throw std::invalid_argument("channel: path-loss exponent must be >= 2");
  }
}

ChannelConfig make_config(std::vector<double> positions, std::vector<double> powers,
                          std::vector<double> noise, double kappa, double eta) {
  ChannelConfig config;
  config.node_count = static_cast<int>(positions.size());
  config.positions = std::move(positions);
  config.powers = std::move(powers);
  config.noise = std::move(noise);
  config.kappa = kappa;
  config.eta = eta;
  validate(config);
  return config;
}

double gain(const ChannelConfig& config, int transmitter, int receiver) {
  const int T = config.node_count;
  if (transmitter < 1 || transmitter > T - 1) {
    throw std::invalid_argument("gain: transmitter index out of range");
  }
  if (receiver < 2 || receiver > T) {
    throw std::invalid_argument("gain: receiver index out of range");
  }
  if (transmitter == receiver) {
    throw std::invalid_argument("gain: transmitter and receiver coincide");
  }
  const double d = std::abs(config.positions[static_cast<std::size_t>(receiver - 1)] -
                            config.positions[static_cast<std::size_t>(transmitter - 1)]);
  return config.kappa * std::pow(d, -config.eta);
}

ChannelConfig uniform_line_config(int node_count, double spacing, double power, double noise,
                                  double eta) {
  if (node_count < 2) throw std::invalid_argument("uniform_line_config: T must be >= 2");
  if (!(spacing > 0.0)) throw std::invalid_argument("uniform_line_config: spacing must be > 0");
  if (!(power >= 0.0)) throw std::invalid_argument("uniform_line_config: power must be >= 0");
  if (!(noise > 0.0)) throw std::invalid_argument("uniform_line_config: noise must be > 0");
  if (!(eta >= 2.0)) throw std::invalid_argument("uniform_line_config: eta must be >= 2");

  std::vector<double> positions(static_cast<std::size_t>(node_count));
  for (int i = 0; i < node_count; ++i) positions[static_cast<std::size_t>(i)] = i * spacing;
  const auto links = static_cast<std::size_t>(node_count - 1);
  return make_config(std::move(positions), std::vector<double>(links, power),
                     std::vector<double>(links, noise), 1.0, eta);
}

double snr_db_to_power(double snr_db, double noise) {
  return noise * std::pow(10.0, snr_db / 10.0);
}

OrderedChannel::OrderedChannel(const ChannelConfig& config)
    : OrderedChannel(config, identity_ordering(config.node_count)) {}

OrderedChannel::OrderedChannel(const ChannelConfig& config, std::span<const int> order)
    : node_count_(config.node_count) {
  validate(config);
  validate_ordering(order, node_count_);
  const auto dim = static_cast<std::size_t>(node_count_ + 1);
  gains_.assign(dim * dim, 0.0);
  powers_.assign(dim, 0.0);
  noise_.assign(dim, 0.0);
  for (int p = 1; p <= node_count_; ++p) {
    const int node = order[static_cast<std::size_t>(p - 1)];
    if (p <= node_count_ - 1) powers_[static_cast<std::size_t>(p)] = config.power(node);
    if (p >= 2) noise_[static_cast<std::size_t>(p)] = config.noise_at(node);
  }
  // Relays are relabeled, so a relay may occupy a pipeline slot whose
  // physical index differs; the destination stays fixed and never transmits.
  for (int i = 1; i <= node_count_ - 1; ++i) {
    for (int t = 2; t <= node_count_; ++t) {
      if (i == t) continue;
      const int a = order[static_cast<std::size_t>(i - 1)];
      const int b = order[static_cast<std::size_t>(t - 1)];
      const double d = std::abs(config.positions[static_cast<std::size_t>(a - 1)] -
                                config.positions[static_cast<std::size_t>(b - 1)]);
      gains_[static_cast<std::size_t>(i) * dim + static_cast<std::size_t>(t)] =
          config.kappa * std::pow(d, -config.eta);
    }
  }
}

}  // namespace myopic
