#pragma once

#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "myopic/channel.hpp"
#include "myopic/scheme.hpp"

namespace myopic {

/// Parse failure with the 1-based line (0 when not line-bound) and the
/// offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, std::string field, const std::string& message);
  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  std::string field_;
};

struct ParsedConfig {
  ChannelConfig channel;
  std::optional<SchemeSpec> scheme;
};

/// Reads a key = value document with [channel] and optional [scheme]
/// sections. '#' starts a comment.
///
///   [channel]
///   positions = 0, 1, 2, 3, 4
///   powers = 1, 1, 1, 1        # or: power = 1
///   noise = 1, 1, 1, 1         # or a single value
///   kappa = 1
///   eta = 2
///   [scheme]
///   hops = 2                   # or: omniscient
///   ordering = 1, 2, 3, 4, 5
ParsedConfig parse_config(std::istream& in);
ParsedConfig parse_config_file(const std::string& path);

/// Uniform line from tokens such as "T=5", "spacing=1", "power=1",
/// "noise=1", "eta=2". Unspecified values default to 1 (eta to 2).
ChannelConfig parse_uniform(const std::vector<std::string>& tokens);

/// Hop depth from "k=2", "2", "k=omniscient" or "omniscient".
int parse_hops(const std::string& token, int node_count);

/// Decimal text with 12 significant digits.
std::string format_number(double value);

}  // namespace myopic
