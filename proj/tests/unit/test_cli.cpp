#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "landscape/cli.hpp"
#include "landscape/error.hpp"

using namespace landscape;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

// CSV body: everything after the metadata line.
std::string body(const std::string& csv) { return csv.substr(csv.find('\n') + 1); }

}  // namespace

TEST_CASE("subcommand catalogue and defaults") {
  const auto& subs = subcommands();
  for (const char* name :
       {"field", "passage", "geodesic", "profile", "measure", "boxdim", "disjoint-tail", "check",
        "tw"})
    CHECK(std::find(subs.begin(), subs.end(), name) != subs.end());
  const auto profile = default_config("profile");
  CHECK(profile.n == 500);
  CHECK(profile.delta.value_or(0.01) == 0.01);
  CHECK(profile.x1 == -0.5);
  CHECK(profile.x2 == 0.5);
  const auto tw = default_config("tw");
  CHECK(tw.n == 200);
  CHECK(tw.trials == 2000);
  CHECK_THROWS_AS(default_config("nope"), ConstructionError);
}

TEST_CASE("config validation") {
  auto c = default_config("profile");
  CHECK_NOTHROW(validate(c));
  c.n = 0;
  CHECK_THROWS_AS(validate(c), ConstructionError);
  c = default_config("profile");
  c.delta = -0.1;
  CHECK_THROWS_AS(validate(c), ConstructionError);
  c = default_config("profile");
  c.x1 = 1.0;
  CHECK_THROWS_AS(validate(c), ConstructionError);
  c = default_config("boxdim");
  c.eps_min = 0.5;
  CHECK_THROWS_AS(validate(c), ConstructionError);
}

TEST_CASE("config json round-trip is lossless") {
  for (const auto& name : subcommands()) {
    auto c = default_config(name);
    c.delta = 0.1 + 0.2;  // not exactly representable in short decimal
    c.window = std::make_pair(-1.0 / 3.0, 2.0 / 3.0);
    c.seed = 0xffffffffffffffffULL;
    c.out = "some/path";
    REQUIRE(config_from_json(to_json(c)) == c);
    REQUIRE(config_from_json(Json::parse(to_json(c).dump())) == c);
  }
}

TEST_CASE("eps ladder is geometric and exact at dyadic ends") {
  auto c = default_config("boxdim");
  c.eps_max = 0.25;
  c.eps_min = 0.0009765625;
  c.eps_levels = 9;
  const auto ladder = eps_ladder(c);
  REQUIRE(ladder.size() == 9);
  for (std::size_t m = 0; m < ladder.size(); ++m) CHECK(ladder[m] == std::ldexp(1.0, -2 - int(m)));
}

TEST_CASE("trial seeds") {
  CHECK(trial_seed(9, 0) == 9);
  CHECK(trial_seed(9, 1) != trial_seed(9, 2));
}

TEST_CASE("exit codes") {
  CHECK(call({"--help"}).code == 0);
  CHECK(call({}).code == 2);
  CHECK(call({"frobnicate"}).code == 2);
  const auto unknown = call({"field", "--bogus", "1"});
  CHECK(unknown.code == 2);
  CHECK(unknown.err.find("--n") != std::string::npos);  // help text lists the flags
  CHECK(call({"field", "--n", "-3"}).code == 2);
  // Start to the right of the end is a domain error.
  const auto domain = call({"passage", "--n", "10", "--x", "1", "--y", "-1", "--t", "0.05"});
  CHECK(domain.code == 1);
  CHECK_FALSE(domain.err.empty());
}

TEST_CASE("small runs of every data subcommand") {
  const std::vector<std::vector<std::string>> runs{
      {"field", "--n", "4", "--seed", "3"},
      {"passage", "--n", "20"},
      {"geodesic", "--n", "16"},
      {"profile", "--n", "30"},
      {"measure", "--n", "20", "--grid-step", "0.25"},
      {"boxdim", "--n", "40", "--trials", "2", "--eps-max", "0.25", "--eps-min", "0.0078125",
       "--eps-levels", "6"},
      {"disjoint-tail", "--n", "10", "--trials", "20", "--eps-max", "0.5", "--eps-min", "0.125",
       "--eps-levels", "3"},
      {"tw", "--n", "10", "--trials", "5"},
  };
  for (auto args : runs) {
    CAPTURE(args[0]);
    args.insert(args.end(), {"--threads", "1"});
    const auto a = call(args);
    REQUIRE(a.code == 0);
    CHECK_FALSE(a.out.empty());
    args.back() = "2";
    const auto b = call(args);
    REQUIRE(b.code == 0);
    if (args[0] != "tw") CHECK(body(a.out) == body(b.out));
  }
}

TEST_CASE("check subcommand reports every property") {
  const auto r = call({"check", "--threads", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("PASS") != std::string::npos);
}
