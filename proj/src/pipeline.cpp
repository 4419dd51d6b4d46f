#include "myopic/pipeline.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace myopic {

const Transmission& ScheduleTrace::send(int block, int node) const {
  if (block < 1 || block > blocks || node < 1 || node > node_count - 1) {
    throw std::out_of_range("schedule: no transmission for that block/node");
  }
  return sends[static_cast<std::size_t>((block - 1) * (node_count - 1) + (node - 1))];
}

const DecodeEvent& ScheduleTrace::decode(int node, int message) const {
  if (node < 2 || node > node_count || message < 1 || message > messages) {
    throw std::out_of_range("schedule: no decode event for that node/message");
  }
  return decodes[static_cast<std::size_t>((node - 2) * messages + (message - 1))];
}

int availability_block(int node, int message) { return message + node - 2; }

ScheduleTrace build_schedule(int node_count, int hops, int messages) {
  if (node_count < 2) throw std::invalid_argument("build_schedule: T must be >= 2");
  if (hops < 1 || hops > node_count - 1) {
    throw std::invalid_argument("build_schedule: k must lie in 1..T-1");
  }
  if (messages < 1) throw std::invalid_argument("build_schedule: B must be >= 1");

  ScheduleTrace trace;
  trace.messages = messages;
  trace.node_count = node_count;
  trace.hops = hops;
  trace.blocks = messages + node_count - 2;

  for (int b = 1; b <= trace.blocks; ++b) {
    for (int t = 1; t <= node_count - 1; ++t) {
      Transmission tx{b, t, b % 2, {}};
      // Stream U_{t+m} exists only up to U_{T-1}.
      const int width = std::min(hops, node_count - t);
      for (int m = 0; m < width; ++m) {
        const int letter = b - t + 1 - m;
        tx.letters.push_back({letter, letter < 1 || letter > messages});
      }
      trace.sends.push_back(std::move(tx));
    }
  }

  for (int t = 2; t <= node_count; ++t) {
    const int window = std::min(hops, t - 1);
    for (int m = 1; m <= messages; ++m) {
      const int at = availability_block(t, m);
      DecodeEvent ev{t, m, at, {}};
      for (int b = at - window + 1; b <= at; ++b) ev.window.push_back(b);
      trace.decodes.push_back(std::move(ev));
    }
  }
  return trace;
}

std::string format_schedule(const ScheduleTrace& trace) {
  std::ostringstream out;
  out << "# T=" << trace.node_count << " k=" << trace.hops << " B=" << trace.messages
      << " blocks=" << trace.blocks << '\n';
  for (int b = 1; b <= trace.blocks; ++b) {
    out << "block " << b << " codebook " << (b % 2) << ':';
    for (int t = 1; t <= trace.node_count - 1; ++t) {
      out << " x" << t << '(';
      const auto& letters = trace.send(b, t).letters;
      for (std::size_t i = 0; i < letters.size(); ++i) {
        if (i) out << ',';
        if (letters[i].dummy) {
          out << '-';
        } else {
          out << 'w' << letters[i].index;
        }
      }
      out << ')';
    }
    out << " | decoded:";
    bool any = false;
    for (const auto& ev : trace.decodes) {
      if (ev.block != b) continue;
      any = true;
      out << " n" << ev.node << "<-w" << ev.message << "[" << ev.window.front() << ".."
          << ev.window.back() << "]";
    }
    if (!any) out << " none";
    out << '\n';
  }
  return out.str();
}

Fraction throughput_factor(std::int64_t messages, std::int64_t node_count) {
  if (messages < 1 || node_count < 2) {
    throw std::invalid_argument("throughput_factor: needs B >= 1 and T >= 2");
  }
  const std::int64_t den = messages + node_count - 2;
  const std::int64_t g = std::gcd(messages, den);
  return {messages / g, den / g};
}

std::set<int> view_set(int node, int hops, int node_count) {
  if (node < 1 || node > node_count || hops < 1 || hops > node_count - 1) {
    throw std::invalid_argument("view_set: index out of range");
  }
  std::set<int> view{node};
  for (int v = std::max(1, node - hops); v <= std::min(node_count - 1, node + hops - 1); ++v) {
    view.insert(v);
  }
  return view;
}

std::set<int> impact_of_change(int changed, int hops, int node_count) {
  if (changed < 1 || changed > node_count) {
    throw std::invalid_argument("impact_of_change: node out of range");
  }
  std::set<int> impacted;
  for (int t = 1; t <= node_count; ++t) {
    if (view_set(t, hops, node_count).contains(changed)) impacted.insert(t);
  }
  return impacted;
}

ScheduleCheck check_schedule(const ScheduleTrace& trace) {
  ScheduleCheck check;
  const int T = trace.node_count;
  const int k = trace.hops;
  auto fail = [&](bool& flag, std::string why) {
    flag = false;
    check.violations.push_back(std::move(why));
  };

  // First and last block in which each (node, letter) is transmitted.
  std::map<std::pair<int, int>, std::pair<int, int>> usage;
  for (const auto& tx : trace.sends) {
    for (const auto& letter : tx.letters) {
      if (letter.dummy) continue;
      if (availability_block(tx.node, letter.index) >= tx.block) {
        fail(check.causal, "node " + std::to_string(tx.node) + " sends w" +
                               std::to_string(letter.index) + " in block " +
                               std::to_string(tx.block) + " before holding it");
      }
      auto [it, inserted] =
          usage.try_emplace({tx.node, letter.index}, std::pair{tx.block, tx.block});
      if (!inserted) {
        it->second.first = std::min(it->second.first, tx.block);
        it->second.second = std::max(it->second.second, tx.block);
      }
    }
  }
  for (const auto& [key, span] : usage) {
    const auto [node, letter] = key;
    // Held from the end of its availability block through its last use.
    const int held = span.second - availability_block(node, letter);
    if (held > k) {
      fail(check.storage_within_hops, "node " + std::to_string(node) + " holds w" +
                                          std::to_string(letter) + " for " +
                                          std::to_string(held) + " blocks");
    }
  }

  for (const auto& ev : trace.decodes) {
    const auto expected = static_cast<std::size_t>(std::min(k, ev.node - 1));
    if (ev.window.size() != expected || ev.window.back() != ev.block ||
        ev.window.front() < 1) {
      fail(check.windows_sized, "node " + std::to_string(ev.node) + " decodes w" +
                                    std::to_string(ev.message) + " over a malformed window");
    }
  }

  if (trace.blocks != trace.messages + T - 2 ||
      trace.decodes.size() != static_cast<std::size_t>((T - 1) * trace.messages)) {
    fail(check.complete, "trace has the wrong number of blocks or decode events");
  } else {
    for (int m = 1; m <= trace.messages; ++m) {
      if (trace.decode(T, m).block > trace.blocks) {
        fail(check.complete, "destination decodes w" + std::to_string(m) + " after the end");
      }
    }
  }
  return check;
}

}  // namespace myopic
