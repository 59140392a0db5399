// Scenario configuration parsing

#include <doctest.h>

#include "mhdpol/background.hpp"
#include "mhdpol/errors.hpp"
#include "mhdpol/scenario.hpp"

using namespace mhdpol;

namespace {

const char* kFullConfig = R"json({
  "background": {
    "rho": "1 + 0.1*tanh(x2)",
    "p": 1.0,
    "H": [1.0, "0.2*sin(x1)", 0.0],
    "gamma": 1.4
  },
  "point": {"t": 0.0, "x": [0.0, -0.5, 0.0], "tau": 1.0, "xi": [1.0, 0.3, 0.2]},
  "ray": {"sheet": 1, "span": 2.0, "tol": 1e-10, "samples": 96, "project_tau": true},
  "transport": {"w0": "auto"},
  "output": "out.csv"
})json";

}  // namespace

TEST_CASE("full scenario parses") {
  const Scenario sc = parse_scenario(kFullConfig);
  CHECK(sc.background.gamma == doctest::Approx(1.4));
  CHECK(sc.point.xi[1] == doctest::Approx(0.3));
  CHECK(sc.ray.sheet == 1);
  CHECK(sc.ray.samples == 96);
  CHECK(sc.ray.project_tau);
  CHECK(!sc.transport_w0.has_value());  // "auto"
  CHECK(sc.out_path == "out.csv");
  const BackgroundEval bg = eval_background(sc.background, 0.0, {0.0, -0.5, 0.0});
  CHECK(bg.rho == doctest::Approx(1.0 + 0.1 * std::tanh(-0.5)));
}

TEST_CASE("hash is stable and content sensitive") {
  const Scenario a = parse_scenario(kFullConfig);
  const Scenario b = parse_scenario(kFullConfig);
  CHECK(a.hash == b.hash);
  std::string changed = kFullConfig;
  changed.replace(changed.find("0.3"), 3, "0.4");
  CHECK(parse_scenario(changed).hash != a.hash);
}

TEST_CASE("defaults apply") {
  const Scenario sc = parse_scenario(R"({"background": {"rho": 1, "p": 1, "H": [1,0,0]}})");
  CHECK(sc.background.gamma == doctest::Approx(5.0 / 3.0));
  CHECK(sc.ray.sheet == 1);
  CHECK(sc.ray.tol == doctest::Approx(1e-9));
  CHECK(sc.ray.samples == 64);
}

TEST_CASE("explicit complex polarization") {
  const Scenario sc = parse_scenario(R"json({
    "background": {"rho": 1, "p": 1, "H": [1,0,0]},
    "transport": {"w0": [[0.0, 1.0], 2.0, [0.5, -0.5]]}
  })json");
  REQUIRE(sc.transport_w0.has_value());
  CHECK((*sc.transport_w0)[0] == cplx(0.0, 1.0));
  CHECK((*sc.transport_w0)[1] == cplx(2.0, 0.0));
  CHECK((*sc.transport_w0)[2] == cplx(0.5, -0.5));
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(parse_scenario("not json"), ConfigError);
  CHECK_THROWS_AS(parse_scenario(R"({"point": {}})"), ConfigError);
  CHECK_THROWS_AS(parse_scenario(R"({"background": {"rho": "x9"}})"), ConfigError);
  CHECK_THROWS_AS(
      parse_scenario(R"({"background": {"rho": 1}, "ray": {"sheet": 5}})"),
      ConfigError);
  CHECK_THROWS_AS(
      parse_scenario(R"({"background": {"rho": 1}, "ray": {"span": -1}})"),
      ConfigError);
}
