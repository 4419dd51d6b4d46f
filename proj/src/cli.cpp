#include "myopic/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "myopic/config_file.hpp"
#include "myopic/oracle.hpp"
#include "myopic/pipeline.hpp"
#include "myopic/rates.hpp"
#include "myopic/scaling.hpp"
#include "myopic/verify.hpp"

namespace myopic {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double mean_noise(const ChannelConfig& config) {
  return std::accumulate(config.noise.begin(), config.noise.end(), 0.0) /
         static_cast<double>(config.noise.size());
}

ChannelConfig at_snr(ChannelConfig config, double snr_db) {
  const double p = snr_db_to_power(snr_db, mean_noise(config));
  std::fill(config.powers.begin(), config.powers.end(), p);
  return config;
}

std::string scheme_name(int hops, int node_count) {
  return hops == node_count - 1 && node_count > 2 ? "omniscient" : std::to_string(hops);
}

std::vector<int> parse_int_list(const std::string& text, const std::string& field) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError(0, field, "expected a comma-separated integer list, got '" + text + "'");
    }
  }
  if (out.empty()) throw ConfigError(0, field, "empty list");
  return out;
}

std::vector<std::string> split_commas(const std::vector<std::string>& tokens) {
  std::vector<std::string> out;
  for (const auto& t : tokens) {
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!item.empty()) out.push_back(item);
    }
  }
  return out;
}

struct ChannelArgs {
  std::string config_path;
  std::vector<std::string> uniform;
  double snr_db = std::nan("");
};

void add_channel_options(CLI::App* cmd, ChannelArgs& args) {
  auto* cfg = cmd->add_option("--config", args.config_path, "Channel config file");
  auto* uni = cmd->add_option("--uniform", args.uniform,
                              "Uniform line, e.g. T=5 spacing=1 noise=1 eta=2")
                  ->expected(1, -1);
  cfg->excludes(uni);
  cmd->add_option("--snr-db", args.snr_db, "Transmit SNR P/N in dB (sets every power)");
}

ParsedConfig load_channel(const ChannelArgs& args) {
  ParsedConfig parsed;
  if (!args.config_path.empty()) {
    parsed = parse_config_file(args.config_path);
  } else if (!args.uniform.empty()) {
    parsed.channel = parse_uniform(args.uniform);
  } else {
    throw UsageError("one of --config or --uniform is required");
  }
  if (!std::isnan(args.snr_db)) parsed.channel = at_snr(parsed.channel, args.snr_db);
  return parsed;
}

void print_report(std::ostream& out, const RateReport& report, bool converged) {
  const int T = report.allocation.node_count();
  out << "scheme: k=" << report.scheme.hops
      << (report.scheme.is_omniscient(T) ? " (omniscient)" : " (myopic)") << '\n';
  out << "ordering:";
  for (int v : report.scheme.ordering) out << ' ' << v;
  out << '\n';
  out << "node rate_bits\n";
  for (const auto& [node, bits] : report.per_node) {
    out << node << ' ' << format_number(bits) << '\n';
  }
  out << "bottleneck: " << report.bottleneck << '\n';
  out << "end_to_end_bits: " << format_number(report.end_to_end) << '\n';
  out << "converged: " << (converged ? 1 : 0) << '\n';
  out << "allocation:\n";
  for (int t = 1; t < T; ++t) {
    out << "  node " << t << ':';
    for (double v : report.allocation.row(t)) out << ' ' << format_number(v);
    out << '\n';
  }
}

}  // namespace

int threads_from_env() {
  if (const char* env = std::getenv("MYOPIC_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

std::vector<SweepRow> run_sweep(const ChannelConfig& base, double snr_from, double snr_to,
                                double snr_step, const std::vector<std::string>& schemes,
                                const OptimizerOptions& options, int threads) {
  if (schemes.empty()) throw UsageError("sweep needs at least one scheme");
  if (!(snr_step > 0.0) || !(snr_to >= snr_from)) {
    throw UsageError("sweep needs snr-step > 0 and snr-to >= snr-from");
  }
  validate(base);
  const int T = base.node_count;
  std::vector<int> depths;
  for (const auto& s : schemes) depths.push_back(parse_hops(s, T));
  const int deepest = *std::max_element(depths.begin(), depths.end());
  const auto points = static_cast<int>(std::floor((snr_to - snr_from) / snr_step + 1e-9)) + 1;

  std::vector<std::vector<SweepRow>> per_point(static_cast<std::size_t>(points));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int p = next++; p < points; p = next++) {
      const double snr = snr_from + p * snr_step;
      const auto ladder = optimize_depth_ladder(at_snr(base, snr), deepest, options);
      auto& rows = per_point[static_cast<std::size_t>(p)];
      for (std::size_t s = 0; s < depths.size(); ++s) {
        const auto& r = ladder[static_cast<std::size_t>(depths[s] - 1)];
        rows.push_back({snr, scheme_name(depths[s], T), r.report.end_to_end,
                        r.report.bottleneck, r.converged});
      }
    }
  };
  const int n = std::clamp(threads, 1, points);
  std::vector<std::thread> pool;
  for (int i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::vector<SweepRow> rows;
  for (auto& chunk : per_point) rows.insert(rows.end(), chunk.begin(), chunk.end());
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "snr_db,scheme,end_to_end_bits,bottleneck_node,converged_flag\n";
  for (const auto& r : rows) {
    out << format_number(r.snr_db) << ',' << r.scheme << ',' << format_number(r.end_to_end)
        << ',' << r.bottleneck << ',' << (r.converged ? 1 : 0) << '\n';
  }
  return out.str();
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Achievable rates of Gaussian multiple relay channels under myopic coding",
               "myopic"};
  app.require_subcommand(1);

  OptimizerOptions opt;
  auto add_optimizer_options = [&opt](CLI::App* cmd) {
    cmd->add_option("--seed", opt.seed, "Seed for random optimizer starts");
    cmd->add_option("--random-starts", opt.random_starts, "Random starts per optimization");
    cmd->add_option("--max-iterations", opt.max_iterations, "Coordinate-ascent sweep cap");
    cmd->add_option("--grid", opt.grid_points, "Line-search grid points");
    cmd->add_option("--tolerance", opt.tolerance, "Convergence tolerance in bits");
  };

  // rate
  auto* rate = app.add_subcommand("rate", "Per-node and end-to-end rate of one scheme");
  ChannelArgs rate_channel;
  add_channel_options(rate, rate_channel);
  std::string rate_scheme;
  std::string rate_alloc = "optimize";
  bool rate_search = false;
  bool rate_csv = false;
  rate->add_option("--scheme", rate_scheme, "k=<depth> or k=omniscient (default: config or k=1)");
  rate->add_option("--allocation", rate_alloc, "optimize | fresh | fixed-half")
      ->check(CLI::IsMember({"optimize", "fresh", "fixed-half"}));
  rate->add_flag("--search-ordering", rate_search, "Search all relay orderings (T <= 8)");
  rate->add_flag("--csv", rate_csv, "Append a CSV row");
  add_optimizer_options(rate);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Rate-vs-SNR CSV for several schemes");
  ChannelArgs sweep_channel;
  add_channel_options(sweep, sweep_channel);
  double snr_from = -10.0;
  double snr_to = 20.0;
  double snr_step = 1.0;
  std::vector<std::string> sweep_schemes;
  sweep->add_option("--snr-from", snr_from, "First SNR in dB");
  sweep->add_option("--snr-to", snr_to, "Last SNR in dB");
  sweep->add_option("--snr-step", snr_step, "SNR step in dB");
  sweep->add_option("--schemes", sweep_schemes, "Comma-separated depths, e.g. 1,2,omniscient")
      ->required();
  add_optimizer_options(sweep);

  // schedule
  auto* schedule = app.add_subcommand("schedule", "Dump the block-Markov schedule");
  std::vector<std::string> schedule_args;
  schedule->add_option("params", schedule_args, "T=<nodes> k=<depth> B=<messages>")
      ->expected(1, -1)
      ->required();

  // scaling
  auto* scaling = app.add_subcommand("scaling", "Minimum node rate as the line grows");
  double sc_eta = 2.0;
  double sc_power = 1.0;
  double sc_noise = 1.0;
  int sc_hops = 2;
  std::string sc_list;
  std::string sc_policy = "fixed-half";
  scaling->add_option("--eta", sc_eta, "Path-loss exponent");
  scaling->add_option("--T", sc_list, "Comma-separated node counts")->required();
  scaling->add_option("--power", sc_power, "Transmit power per node");
  scaling->add_option("--noise", sc_noise, "Receiver noise variance");
  scaling->add_option("--k", sc_hops, "Hop depth");
  scaling->add_option("--policy", sc_policy, "fixed-half | optimized")
      ->check(CLI::IsMember({"fixed-half", "optimized"}));
  add_optimizer_options(scaling);

  // verify
  auto* verify = app.add_subcommand("verify", "Randomized closed-form vs oracle check");
  int trials = 100;
  std::uint64_t verify_seed = 7;
  verify->add_option("--trials", trials, "Number of random instances");
  verify->add_option("--seed", verify_seed, "Seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    std::replace(msg.begin(), msg.end(), '\n', ' ');
    err << "error: usage: " << msg << '\n';
    return 2;
  }

  try {
    if (*rate) {
      auto parsed = load_channel(rate_channel);
      const int T = parsed.channel.node_count;
      SchemeSpec scheme = parsed.scheme.value_or(SchemeSpec::myopic(T, 1));
      if (!rate_scheme.empty()) scheme.hops = parse_hops(rate_scheme, T);
      validate(scheme, T);

      RateReport report;
      bool converged = true;
      if (rate_alloc == "optimize") {
        if (rate_search) {
          auto found = optimize_ordering(parsed.channel, scheme, opt);
          report = found.best.report;
          converged = found.best.converged;
        } else {
          // Warm-start from the shallower depths so deeper schemes never
          // report less than shallower ones.
          OptimizerOptions o = opt;
          for (int k = 1; k < scheme.hops; ++k) {
            o.warm_start = optimize_allocation(parsed.channel, SchemeSpec{k, scheme.ordering}, o)
                               .allocation;
          }
          auto found = optimize_allocation(parsed.channel, scheme, o);
          report = found.report;
          converged = found.converged;
        }
      } else if (rate_alloc == "fresh") {
        report = end_to_end_rate(parsed.channel, PowerAllocation::fresh_only(T, scheme.hops),
                                 scheme);
      } else {
        if (scheme.hops != 2) throw UsageError("fixed-half allocation needs k=2");
        report = end_to_end_rate(parsed.channel, fixed_half_allocation(T), scheme);
      }
      print_report(out, report, converged);
      if (rate_csv) {
        out << "hops,end_to_end_bits,bottleneck_node,converged_flag\n"
            << report.scheme.hops << ',' << format_number(report.end_to_end) << ','
            << report.bottleneck << ',' << (converged ? 1 : 0) << '\n';
      }
      return 0;
    }

    if (*sweep) {
      const auto parsed = load_channel(sweep_channel);
      const auto rows = run_sweep(parsed.channel, snr_from, snr_to, snr_step,
                                  split_commas(sweep_schemes), opt, threads_from_env());
      out << sweep_csv(rows);
      return 0;
    }

    if (*schedule) {
      std::map<std::string, int> kv;
      for (const auto& token : schedule_args) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) throw ConfigError(0, token, "expected key=value");
        std::string key = token.substr(0, eq);
        std::transform(key.begin(), key.end(), key.begin(),
                       [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
        if (key != "T" && key != "K" && key != "B") throw ConfigError(0, key, "unknown key");
        kv[key] = parse_int_list(token.substr(eq + 1), key).front();
      }
      if (!kv.contains("T") || !kv.contains("K") || !kv.contains("B")) {
        throw UsageError("schedule needs T=, k= and B=");
      }
      out << format_schedule(build_schedule(kv["T"], kv["K"], kv["B"]));
      return 0;
    }

    if (*scaling) {
      const auto counts = parse_int_list(sc_list, "T");
      const auto policy =
          sc_policy == "optimized" ? AllocationPolicy::Optimized : AllocationPolicy::FixedHalf;
      const auto series =
          asymptotic_rate_experiment(counts, sc_eta, sc_power, sc_noise, sc_hops, policy, opt);
      const double floor = rate_floor(sc_eta, sc_power, sc_noise);
      out << "T,min_rate_bits,bottleneck_node,floor_bits\n";
      for (const auto& p : series) {
        out << p.node_count << ',' << format_number(p.min_rate) << ',' << p.bottleneck << ','
            << format_number(floor) << '\n';
      }
      return 0;
    }

    if (*verify) {
      if (trials < 1) throw UsageError("--trials must be positive");
      const auto summary = run_oracle_trials(verify_seed, trials);
      out << summary.passed << '/' << summary.trials << (summary.ok() ? " OK" : " FAILED")
          << " (node checks " << summary.node_checks << ", max |error| "
          << format_number(summary.max_error) << " bits)\n";
      if (!summary.ok()) {
        err << "error: mismatch: trial " << summary.first_failure
            << " exceeds 1e-9 bits between closed form and oracle\n";
        return 1;
      }
      return 0;
    }
  } catch (const UsageError& e) {
    err << "error: usage: " << e.what() << '\n';
    return 2;
  } catch (const ConfigError& e) {
    err << "error: config: " << e.what() << '\n';
    return 2;
  } catch (const UnsupportedSizeError& e) {
    err << "error: unsupported: " << e.what() << '\n';
    return 1;
  } catch (const NumericalDegeneracyError& e) {
    err << "error: numerical: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    err << "error: invalid-argument: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace myopic
