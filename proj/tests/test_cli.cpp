#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "invmet/cli.hpp"

using invmet::cli::dispatch;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("bounds prints the headline quantities") {
  const Run r = run({"bounds", "--profile", "power:2", "--delta", "0.01", "--xn", "1", "--xt", "0"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("# invmet bounds\n", 0) == 0);
  CHECK(r.out.find("# profile = power:2") != std::string::npos);
  CHECK(r.out.find("comparison_quantity: 10\n") != std::string::npos);
  CHECK(r.out.find("normal_lower_explicit: 5.590169944") != std::string::npos);
  CHECK(r.out.find("sibony_lower: 3.535533906") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run({"bounds", "--profile", "power:0"}).code == 2);
  CHECK(run({"bounds", "--frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"bounds", "--delta", "0.9"}).code == 2);
  const Run regime = run({"disc", "--id", "D4", "--profile", "power:2", "--delta", "0.04",
                          "--xn", "1", "--xt", "1"});
  CHECK(regime.code == 3);
  CHECK(regime.err.find("regime error") != std::string::npos);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("disc verify") {
  const Run ok = run({"disc", "verify", "--catalog", "D6", "--profile", "power:0.75", "--delta",
                      "1e-4", "--xt", "0"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("worst_margin: ") != std::string::npos);
  const Run bad = run({"disc", "--id", "D6", "--profile", "power:2", "--delta", "0.01",
                       "--d6-scale", "2.5"});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("witness") != std::string::npos);
}

TEST_CASE("sibony and oracle subcommands") {
  const Run s = run({"sibony", "--profile", "power:2", "--delta", "0.01", "--centers", "100"});
  CHECK(s.code == 0);
  CHECK(s.out.find("C1: 0.07071067812") != std::string::npos);
  CHECK(s.out.find("logpsh_violations: 0") != std::string::npos);
  const Run o = run({"oracle", "--profile", "power:2", "--delta", "0.04", "--xn", "0", "--xt",
                     "1", "--restarts", "2"});
  CHECK(o.code == 0);
  CHECK(o.out.find("value: 1\n") != std::string::npos);
}

TEST_CASE("config file values are overridden by flags") {
  const std::string cfg = "cli_test_config.txt";
  {
    std::ofstream f(cfg);
    f << "# comment line\nprofile = power:2\ndelta=0.04 # trailing\nxn=1\nxt=1\n";
  }
  const Run a = run({"bounds", "--config", cfg});
  CHECK(a.code == 0);
  CHECK(a.out.find("# delta = 0.04") != std::string::npos);
  CHECK(a.out.find("comparison_quantity: 6\n") != std::string::npos);
  const Run b = run({"bounds", "--config", cfg, "--delta", "0.01", "--xt", "0"});
  CHECK(b.out.find("# delta = 0.01") != std::string::npos);
  CHECK(b.out.find("comparison_quantity: 10\n") != std::string::npos);
  {
    std::ofstream f(cfg);
    f << "nonsense=1\n";
  }
  CHECK(run({"bounds", "--config", cfg}).code == 2);
  std::remove(cfg.c_str());
}

TEST_CASE("sweep writes identical CSV for identical arguments and fit reads it") {
  const std::vector<std::string> args{"sweep", "--profile", "power:2", "--deltas", "1e-4:1e-1:8",
                                      "--estimators", "closed_form,schwarz", "--out"};
  auto a = args;
  a.push_back("cli_a.csv");
  auto b = args;
  b.push_back("cli_b.csv");
  REQUIRE(run(a).code == 0);
  REQUIRE(run(b).code == 0);
  CHECK(slurp("cli_a.csv") == slurp("cli_b.csv"));
  CHECK(slurp("cli_a.csv").rfind(
            "profile,beta_or_c0,delta,xn,xt,gamma,estimator,regime,value,error_tag,seconds\n",
            0) == 0);
  const Run f = run({"fit", "--in", "cli_a.csv", "--estimator", "closed_form"});
  CHECK(f.code == 0);
  CHECK(f.out.find("slope: -0.75\n") != std::string::npos);
  CHECK(run({"sweep", "--estimators", "bogus"}).code == 2);
  std::remove("cli_a.csv");
  std::remove("cli_b.csv");
}

TEST_CASE("accept runs a named suite") {
  const Run r = run({"accept", "--suite", "sibony", "--seed", "42"});
  CHECK(r.code == 0);
  CHECK(r.out.find("[PASS] 7 sibony") != std::string::npos);
  CHECK(run({"accept", "--suite", "nonsense"}).code == 2);
}
