#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vccsim/costmodel.hpp"
#include "vccsim/engine.hpp"

namespace vccsim {

enum class SweepAxis { kUsers, kWorkload, kVehicles, kVehicleCapacityFraction, kSpeed, kBeta };

std::string_view axis_name(SweepAxis axis);
std::optional<SweepAxis> parse_axis_name(std::string_view name);

// Replication seeds used when none are configured.
inline const std::vector<std::uint64_t> kDefaultSeeds = {0, 1, 2, 3, 4, 6, 7, 8, 9};

struct SweepSpec {
  SweepAxis axis = SweepAxis::kUsers;
  std::vector<double> values;
  std::vector<std::uint64_t> seeds = kDefaultSeeds;

  std::size_t replications() const { return seeds.size(); }
  bool operator==(const SweepSpec&) const = default;
};

struct CostReportSpec {
  std::vector<double> betas = {0.0, 1e-6, 2e-6};
  std::vector<double> years = {1.0, 3.0, 5.0};
  std::vector<double> scales = {1.0, 0.01};
  bool operator==(const CostReportSpec&) const = default;
};

struct Config {
  std::optional<Strategy> strategy;
  RunConfig run;
  CostParams cost;
  std::optional<SweepSpec> sweep;
  CostReportSpec report;

  // The run configuration; throws ConfigError when no strategy was given.
  RunConfig run_config() const;
  // Sweep axis, values and seeds; throws ConfigError when sweep.axis or sweep.values is missing.
  SweepSpec sweep_spec() const;
  bool operator==(const Config&) const = default;
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, std::size_t line, const std::string& message);

  const std::string& key() const { return key_; }
  std::size_t line() const { return line_; }  // 0 when not tied to a line

 private:
  std::string key_;
  std::size_t line_;
};

// Parses the line-oriented `key = value` format (`#` starts a comment). Omitted keys keep
// their defaults; unknown keys, duplicates, malformed and out-of-range values are errors.
Config parse_config(std::string_view text);

// Writes every key explicitly; parse_config(serialize(c)) == c.
std::string serialize(const Config& config);

std::string_view strategy_name(Strategy strategy);
std::optional<Strategy> parse_strategy_name(std::string_view name);

// Accepts decimals, `inf`, and fractions such as `1/128`.
std::optional<double> parse_number(std::string_view text);

}  // namespace vccsim
