#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace myopic {

/// Reference to source letter w^index. Letters outside 1..B are the fixed
/// dummy letter (value 1) and carry no information.
struct MessageRef {
  int index;
  bool dummy;

  friend bool operator==(const MessageRef&, const MessageRef&) = default;
};

/// What one node transmits in one block: the letters carried on streams
/// U_t, U_{t+1}, ... (newest first) and which of the two alternating
/// codebooks is in use.
struct Transmission {
  int block;
  int node;
  int codebook;  // block parity, 0 or 1
  std::vector<MessageRef> letters;
};

/// Node `node` decodes letter `message` at the end of block `block` from
/// the received blocks in `window`.
struct DecodeEvent {
  int node;
  int message;
  int block;
  std::vector<int> window;
};

/// Symbolic block-Markov schedule with sliding-window decoding.
struct ScheduleTrace {
  int messages = 0;  // B
  int node_count = 0;
  int hops = 0;
  int blocks = 0;  // B + T - 2
  std::vector<Transmission> sends;  // block-major, then node
  std::vector<DecodeEvent> decodes;  // node-major, then message

  const Transmission& send(int block, int node) const;
  const DecodeEvent& decode(int node, int message) const;
};

ScheduleTrace build_schedule(int node_count, int hops, int messages);

/// Block in which node t holds letter m for the first time: the end of
/// block m + t - 2. For the source this is the block before emission.
int availability_block(int node, int message);

/// Human-readable dump, one block per line.
std::string format_schedule(const ScheduleTrace& trace);

/// Effective rate fraction B / (B + T - 2) of the pipeline.
struct Fraction {
  std::int64_t numerator;
  std::int64_t denominator;
  double value() const {
    return static_cast<double>(numerator) / static_cast<double>(denominator);
  }
  friend bool operator==(const Fraction&, const Fraction&) = default;
};
Fraction throughput_factor(std::int64_t messages, std::int64_t node_count);

/// Nodes whose codebooks node t must know under k-hop coding:
/// {max(1, t-k), ..., min(T-1, t+k-1)} together with t itself.
std::set<int> view_set(int node, int hops, int node_count);

/// Nodes that must be reconfigured when node j changes.
std::set<int> impact_of_change(int changed, int hops, int node_count);

/// Result of checking the structural properties of a trace.
struct ScheduleCheck {
  bool causal = true;
  bool storage_within_hops = true;
  bool windows_sized = true;
  bool complete = true;
  std::vector<std::string> violations;

  bool ok() const { return causal && storage_within_hops && windows_sized && complete; }
};

ScheduleCheck check_schedule(const ScheduleTrace& trace);

}  // namespace myopic
