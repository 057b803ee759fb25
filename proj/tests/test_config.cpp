#include <doctest.h>

#include <cmath>
#include <string>

#include <fmt/format.h>

#include "vccsim/config.hpp"
#include "vccsim/rng.hpp"

using namespace vccsim;

namespace {

ConfigError error_of(const std::string& text) {
  try {
    (void)parse_config(text);
  } catch (const ConfigError& e) {
    return e;
  }
  FAIL("expected a ConfigError for: " << text);
  return ConfigError("", 0, "");
}

}  // namespace

TEST_CASE("omitted keys keep their defaults") {
  const Config c = parse_config("users = 8\n");
  CHECK(c.run == RunConfig{});
  CHECK(c.cost == CostParams{});
  CHECK_FALSE(c.strategy.has_value());
  CHECK_FALSE(c.sweep.has_value());
  CHECK(c.run.n_users == 8);
  CHECK(c.run.request_rate == 5.0);
  CHECK(c.run.duration == 120.0);
  CHECK(c.run.n_vehicles == 40);
  CHECK(c.run.task.workload == 500.0);
  CHECK(c.run.controller.timeout == 0.5);
}

TEST_CASE("strategy is mandatory for a run") {
  const Config c = parse_config("users = 8\n");
  try {
    (void)c.run_config();
    FAIL("missing strategy accepted");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "strategy");
  }
  const ConfigError empty = error_of("strategy =\n");
  CHECK(empty.key() == "strategy");
  CHECK(empty.line() == 1);
  CHECK(parse_config("strategy = VCCFirst").run_config().strategy == Strategy::kVccFirst);
  CHECK(parse_config("strategy = ec_first").run_config().strategy == Strategy::kEcFirst);
}

TEST_CASE("errors name the key and line") {
  const ConfigError unknown = error_of("users = 8\n\nvehicles = 3\n");
  CHECK(unknown.key() == "vehicles");
  CHECK(unknown.line() == 3);
  CHECK(std::string(unknown.what()).find("line 3") != std::string::npos);

  const ConfigError type = error_of("# comment\nusers = eight\n");
  CHECK(type.key() == "users");
  CHECK(type.line() == 2);

  const ConfigError range = error_of("channel.vue_up.p_base = 1.5");
  CHECK(range.key() == "channel.vue_up.p_base");

  const ConfigError dup = error_of("seed = 1\nseed = 2\n");
  CHECK(dup.key() == "seed");
  CHECK(dup.line() == 2);

  CHECK(error_of("no equals sign here").line() == 1);
  CHECK(error_of("strategy = round_robin").key() == "strategy");
  CHECK(error_of("request_rate = 0").key() == "request_rate");
  CHECK(error_of("scenario.preset = highway").key() == "scenario.preset");
}

TEST_CASE("fractions and infinities") {
  const Config c = parse_config("compute.vehicle_capacity_fraction = 1/128\nscenario.coverage_radius = inf\n");
  CHECK(c.run.vehicle_capacity_fraction == 1.0 / 128.0);
  CHECK(std::isinf(c.run.geometry.coverage_radius));
  CHECK(parse_number("3/4") == 0.75);
  CHECK(parse_number("2.5e-3") == 0.0025);
  CHECK_FALSE(parse_number("1/0").has_value());
  CHECK_FALSE(parse_number("abc").has_value());
  CHECK_FALSE(parse_number("").has_value());
}

TEST_CASE("presets apply before explicit keys") {
  const Config c = parse_config("scenario.coverage_radius = 300\nscenario.preset = partial_coverage\n");
  CHECK(c.run.geometry.loop_length_x == 1200.0);
  CHECK(c.run.geometry.coverage_radius == 300.0);

  const Config d = parse_config("channel.vue_up.latency = 0.01\nchannel.preset = lossless\n");
  CHECK(d.run.channel[LinkClass::kVueUp].base_latency == 0.01);
  CHECK(d.run.channel[LinkClass::kVueUp].p_base == 0.0);
}

TEST_CASE("cross-field validation") {
  CHECK_THROWS_AS(parse_config("channel.cn_up.p_base = 0.1"), ConfigError);
  CHECK_THROWS_AS(parse_config("channel.internet_up.rate = 1e6"), ConfigError);
}

TEST_CASE("sweep keys") {
  const Config c = parse_config("sweep.axis = vehicles\nsweep.values = 1, 2, 4, 10\n");
  const SweepSpec s = c.sweep_spec();
  CHECK(s.axis == SweepAxis::kVehicles);
  CHECK(s.values == std::vector<double>{1, 2, 4, 10});
  CHECK(s.seeds == kDefaultSeeds);
  CHECK(s.replications() == 9);

  const Config three = parse_config("sweep.axis = speed\nsweep.values = 13.1\nsweep.replications = 3\n");
  CHECK(three.sweep_spec().seeds == std::vector<std::uint64_t>{0, 1, 2});
  const Config twelve = parse_config("sweep.axis = speed\nsweep.values = 13.1\nsweep.replications = 12\n");
  CHECK(twelve.sweep_spec().seeds.size() == 12);
  CHECK(twelve.sweep_spec().seeds.back() == 12);

  CHECK(error_of("sweep.values = 1, 2").key() == "sweep.axis");
  CHECK(error_of("sweep.axis = users").key() == "sweep.values");
  CHECK(error_of("sweep.axis = users\nsweep.values = 1\nsweep.seeds = 1, 2\nsweep.replications = 3").key() ==
        "sweep.replications");
  CHECK(error_of("sweep.axis = users\nsweep.values = 1,,2").key() == "sweep.values");
  CHECK(error_of("sweep.axis = colour\nsweep.values = 1").key() == "sweep.axis");
}

TEST_CASE("serialize round-trips") {
  CHECK(parse_config(serialize(Config{})) == Config{});

  const std::string text =
      "strategy = ec_first\nusers = 12\nrequest_rate = 7.5\nseed = 99\nscenario.preset = partial_coverage\n"
      "scenario.coverage_radius = 400\nchannel.preset = lossless\nchannel.vue_down.latency = 0.0065\n"
      "channel.sharing = none\ncompute.vehicle_capacity_fraction = 1/3\ncontroller.beacon_on_coverage_entry = true\n"
      "cost.beta = 1e-6\ncost.c_vcc_req = 3e-5\ncost.table_interpretation = yes\nreport.years = 1, 2\n"
      "sweep.axis = vehicle_capacity_fraction\nsweep.values = 1/128, 1/64, 3\nsweep.seeds = 5, 6\n";
  const Config c = parse_config(text);
  const std::string once = serialize(c);
  CHECK(parse_config(once) == c);
  CHECK(serialize(parse_config(once)) == once);
}

TEST_CASE("random configs round-trip") {
  Rng rng(17);
  for (int k = 0; k < 200; ++k) {
    std::string text;
    text += "seed = " + std::to_string(rng.index(1000)) + "\n";
    text += "users = " + std::to_string(1 + rng.index(50)) + "\n";
    text += fmt::format("request_rate = {}\n", rng.uniform(0.1, 100.0));
    text += fmt::format("task.workload = {}\n", rng.uniform(0.0, 1e4));
    text += fmt::format("scenario.speed_kmh = {}\n", rng.uniform(0.0, 150.0));
    text += fmt::format("channel.pue_up.k_speed = {}\n", rng.uniform(0.0, 1e-2));
    text += fmt::format("cost.c_ec_req = {}\n", rng.uniform(0.0, 1e-4));
    if (rng.bernoulli(0.5)) text += "strategy = vcc_first\n";
    const Config c = parse_config(text);
    CHECK(parse_config(serialize(c)) == c);
  }
}

TEST_CASE("strategy and axis names") {
  for (Strategy s : {Strategy::kEcFirst, Strategy::kVccFirst}) CHECK(parse_strategy_name(strategy_name(s)) == s);
  for (SweepAxis a : {SweepAxis::kUsers, SweepAxis::kWorkload, SweepAxis::kVehicles,
                      SweepAxis::kVehicleCapacityFraction, SweepAxis::kSpeed, SweepAxis::kBeta})
    CHECK(parse_axis_name(axis_name(a)) == a);
}
