#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "myopic/optimizer.hpp"

namespace myopic {

/// Entry point of the `myopic` command-line tool. `args` excludes the
/// program name. Returns the process exit code; errors are reported as a
/// single "error: <kind>: <message>" line on `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct SweepRow {
  double snr_db;
  std::string scheme;
  double end_to_end;
  int bottleneck;
  bool converged;
};

/// Rate-vs-SNR sweep. Every transmitter's power is set to
/// 10^(snr/10) times the mean receiver noise of `base`. Each point optimizes
/// the depth ladder up to the deepest requested scheme, so requested depths
/// see warm-started, monotone results. Rows are ordered by SNR, then by the
/// order of `schemes`, independently of `threads`.
std::vector<SweepRow> run_sweep(const ChannelConfig& base, double snr_from, double snr_to,
                                double snr_step, const std::vector<std::string>& schemes,
                                const OptimizerOptions& options, int threads = 1);

std::string sweep_csv(const std::vector<SweepRow>& rows);

/// Number of worker threads from MYOPIC_THREADS (default 1).
int threads_from_env();

}  // namespace myopic
