#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "myopic/cli.hpp"
#include "myopic/config_file.hpp"

using namespace myopic;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path.string();
}

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_CASE("rate on a two-node line") {
  const auto r = run({"rate", "--uniform", "T=2", "--snr-db", "0"});
  CHECK(r.code == 0);
  CHECK(r.err.empty());
  CHECK(r.out.find("end_to_end_bits: 0.5\n") != std::string::npos);
  CHECK(r.out.find("bottleneck: 2\n") != std::string::npos);
}

TEST_CASE("rate with csv and fixed allocations") {
  const auto r = run({"rate", "--uniform", "T=5", "--snr-db", "-5", "--scheme", "k=2", "--csv"});
  CHECK(r.code == 0);
  CHECK(r.out.find("hops,end_to_end_bits,bottleneck_node,converged_flag\n2,0.185394268") !=
        std::string::npos);

  const auto fresh = run({"rate", "--uniform", "T=4", "--allocation", "fresh", "--scheme", "2"});
  CHECK(fresh.code == 0);
  CHECK(fresh.out.find("node 1: 1 0") != std::string::npos);

  const auto half =
      run({"rate", "--uniform", "T=4", "--allocation", "fixed-half", "--scheme", "k=1"});
  CHECK(half.code == 2);
  CHECK(half.err.rfind("error: usage:", 0) == 0);
}

TEST_CASE("rate from a config file") {
  const auto path = write_temp("myopic_cli_ok.ini",
                               "# four nodes\n[channel]\npositions = 0, 1, 2, 3\npower = 2\n"
                               "noise = 1\neta = 2\n[scheme]\nhops = omniscient\n");
  const auto r = run({"rate", "--config", path});
  CHECK(r.code == 0);
  CHECK(r.out.find("scheme: k=3 (omniscient)") != std::string::npos);
  CHECK(r.out.find("ordering: 1 2 3 4") != std::string::npos);
}

TEST_CASE("malformed config reports line and field") {
  const auto path = write_temp("myopic_cli_bad.ini",
                               "[channel]\npositions = 0, 1, 2\npowers = 1, x\nnoise = 1\n");
  const auto r = run({"rate", "--config", path});
  CHECK(r.code == 2);
  CHECK(r.out.empty());
  CHECK(r.err.rfind("error: config: line 3: field 'powers'", 0) == 0);
  CHECK(count_lines(r.err) == 1);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"rate"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  const auto both = run({"rate", "--uniform", "T=3", "--config", "x.ini"});
  CHECK(both.code == 2);
  CHECK(both.err.rfind("error: usage:", 0) == 0);
  const auto tooBig = run({"rate", "--uniform", "T=9", "--scheme", "2", "--search-ordering"});
  CHECK(tooBig.code == 1);
  CHECK(tooBig.err.rfind("error: unsupported:", 0) == 0);
  CHECK(run({"rate", "--uniform", "T=4", "--scheme", "k=4"}).code == 2);
  CHECK(run({"sweep", "--uniform", "T=4", "--schemes", ""}).code == 2);
  CHECK(run({"help"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("sweep over the default range") {
  const auto r = run({"sweep", "--uniform", "T=5", "--schemes", "1,2,omniscient"});
  REQUIRE(r.code == 0);
  CHECK(count_lines(r.out) == 94);
  CHECK(r.out.rfind("snr_db,scheme,end_to_end_bits,bottleneck_node,converged_flag\n", 0) == 0);
  CHECK(r.out.find("\n-10,1,") != std::string::npos);
  CHECK(r.out.find("\n20,omniscient,") != std::string::npos);
}

TEST_CASE("sweep rows are monotone in depth") {
  const auto base = uniform_line_config(5, 1.0, 1.0, 1.0, 2.0);
  const auto rows = run_sweep(base, -4, 4, 2, {"1", "2", "omniscient"}, {}, 1);
  REQUIRE(rows.size() == 15);
  for (std::size_t i = 0; i < rows.size(); i += 3) {
    CHECK(rows[i].scheme == "1");
    CHECK(rows[i + 2].scheme == "omniscient");
    CHECK(rows[i].end_to_end <= rows[i + 1].end_to_end);
    CHECK(rows[i + 1].end_to_end <= rows[i + 2].end_to_end);
  }
  CHECK_THROWS(run_sweep(base, 0, 1, 1, {}, {}, 1));
  CHECK_THROWS(run_sweep(base, 1, 0, 1, {"1"}, {}, 1));
}

TEST_CASE("sweep output does not depend on the thread count") {
  const auto base = uniform_line_config(6, 1.0, 1.0, 1.0, 2.0);
  const auto one = sweep_csv(run_sweep(base, -3, 6, 1, {"2", "1", "omniscient"}, {}, 1));
  const auto four = sweep_csv(run_sweep(base, -3, 6, 1, {"2", "1", "omniscient"}, {}, 4));
  CHECK(one == four);
}

TEST_CASE("schedule dump") {
  const auto r = run({"schedule", "T=5", "k=2", "B=3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("# T=5 k=2 B=3 blocks=6") == 0);
  CHECK(count_lines(r.out) == 7);
  CHECK(run({"schedule", "T=5", "k=2"}).code == 2);
  CHECK(run({"schedule", "T=5", "k=5", "B=2"}).code == 2);
  CHECK(run({"schedule", "T=5", "q=2", "B=2", "k=1"}).code == 2);
}

TEST_CASE("verify") {
  const auto r = run({"verify", "--trials", "100", "--seed", "7"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("100/100 OK", 0) == 0);
}

TEST_CASE("scaling") {
  const auto r = run({"scaling", "--eta", "2", "--T", "5,10,20"});
  CHECK(r.code == 0);
  CHECK(count_lines(r.out) == 4);
  CHECK(r.out.rfind("T,min_rate_bits,bottleneck_node,floor_bits\n5,", 0) == 0);
  CHECK(run({"scaling", "--T", "5,x"}).code == 2);
  CHECK(run({"scaling", "--T", "5", "--k", "3"}).code == 2);
}

TEST_CASE("config parsing") {
  SUBCASE("full document") {
    std::istringstream in(
        "[channel]\npositions = 0, 1.5, 3\npowers = 1, 2\nnoise = 0.5, 0.25\nkappa = 2\n"
        "eta = 3  # steep\n\n[scheme]\nhops = 2\nordering = 1, 2, 3\n");
    const auto parsed = parse_config(in);
    CHECK(parsed.channel.node_count == 3);
    CHECK(parsed.channel.powers == std::vector<double>{1, 2});
    CHECK(parsed.channel.noise == std::vector<double>{0.5, 0.25});
    CHECK(parsed.channel.kappa == 2.0);
    CHECK(parsed.channel.eta == 3.0);
    REQUIRE(parsed.scheme.has_value());
    CHECK(parsed.scheme->hops == 2);
  }
  SUBCASE("scalars broadcast") {
    std::istringstream in("[channel]\npositions = 0, 1, 2, 3\npower = 4\nnoise = 2\n");
    const auto parsed = parse_config(in);
    CHECK(parsed.channel.powers == std::vector<double>(3, 4.0));
    CHECK(parsed.channel.noise == std::vector<double>(3, 2.0));
    CHECK_FALSE(parsed.scheme.has_value());
  }
  SUBCASE("errors name the line and field") {
    const auto fails_at = [](const std::string& text, int line, const std::string& field) {
      std::istringstream in(text);
      try {
        parse_config(in);
      } catch (const ConfigError& e) {
        CHECK(e.line() == line);
        CHECK(e.field() == field);
        return;
      }
      FAIL("expected ConfigError");
    };
    fails_at("[channel]\npositions = 0, 1\nbogus = 1\n", 3, "bogus");
    fails_at("positions = 0, 1\n", 1, "positions");
    fails_at("[channel]\neta = 2\neta = 3\n", 3, "eta");
    fails_at("[channel]\npositions = 0, 1\npower = 1\nnoise = 1\n[scheme]\nhops = two\n", 6,
             "hops");
  }
  SUBCASE("uniform tokens and hop names") {
    const auto c = parse_uniform({"T=4", "spacing=2", "eta=3"});
    CHECK(c.positions == std::vector<double>{0, 2, 4, 6});
    CHECK(c.eta == 3.0);
    CHECK(parse_hops("k=2", 5) == 2);
    CHECK(parse_hops("3", 5) == 3);
    CHECK(parse_hops("omniscient", 5) == 4);
    CHECK(parse_hops("k=omniscient", 5) == 4);
    CHECK_THROWS(parse_hops("k=0", 5));
    CHECK_THROWS(parse_uniform({"T=4", "colour=red"}));
    CHECK(format_number(0.1) == "0.1");
  }
}
