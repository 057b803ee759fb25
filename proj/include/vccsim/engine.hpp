#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vccsim/channel.hpp"
#include "vccsim/compute.hpp"
#include "vccsim/controller.hpp"
#include "vccsim/rng.hpp"
#include "vccsim/scenario.hpp"

namespace vccsim {

struct TaskTemplate {
  double workload = 500.0;     // MI
  double size = 4000.0;        // bytes
  double result_size = 4000.0; // bytes
  bool operator==(const TaskTemplate&) const = default;
};

struct RunConfig {
  Strategy strategy = Strategy::kVccFirst;
  std::size_t n_users = 8;
  double request_rate = 5.0;  // per user, Hz
  double duration = 120.0;    // seconds
  TaskTemplate task;

  std::string scenario_preset = "total_coverage";
  ScenarioGeometry geometry;
  std::size_t n_vehicles = 40;
  double vehicle_speed_kmh = 13.1;
  double vehicle_capacity_fraction = 1.0;  // multiplies compute.vehicle_capacity

  std::string channel_preset = "lena_calibrated";
  ChannelConfig channel = vccsim::channel_preset("lena_calibrated");
  ComputeConfig compute;
  ControllerConfig controller;
  std::uint64_t seed = 0;

  double vehicle_speed() const { return kmh_to_mps(vehicle_speed_kmh); }
  double vehicle_capacity() const { return compute.vehicle_capacity * vehicle_capacity_fraction; }
  bool operator==(const RunConfig&) const = default;
};

// Throws std::invalid_argument describing the first violated constraint.
void validate(const RunConfig& cfg);

struct Arrival {
  double t = 0.0;
  std::uint32_t user = 0;
  Task task;
};

// Periodic arrivals: user u emits at phases[u] + k / rate for every k with time < duration.
// Sorted by time, ties broken by user; task ids follow the sorted order.
std::vector<Arrival> generate_arrivals(const RunConfig& cfg, std::span<const double> phases);

// Same, with each user's phase drawn uniformly from [0, 1/rate).
std::vector<Arrival> generate_arrivals(const RunConfig& cfg, Rng& rng);

enum class Outcome { kSuccess, kFailed, kInFlight };

enum class FailureLeg { kUserToGnb, kGnbToVcc, kRejection, kVccToGnb, kGnbToUser };
inline constexpr std::size_t kFailureLegCount = 5;

std::string_view failure_leg_name(FailureLeg leg);
std::string_view tier_name(Tier tier);

struct OffloadRecord {
  std::uint64_t task_id = 0;
  std::uint32_t user = 0;
  double created_at = 0.0;

  std::optional<Tier> destination;  // unset when the task never reached the controller
  VehicleId vehicle;
  double decided_at = 0.0;
  double service_start = 0.0;  // elaboration start at the destination

  double t_up_access = 0.0;
  double t_up_cn = 0.0;
  double t_up_internet = 0.0;
  double t_gnb_to_vue = 0.0;
  double t_queue = 0.0;
  double t_elab = 0.0;
  double t_vue_to_gnb = 0.0;
  double t_down_internet = 0.0;
  double t_down_cn = 0.0;
  double t_down_access = 0.0;
  double total = 0.0;  // end-to-end on success, elapsed until the loss otherwise

  Outcome outcome = Outcome::kInFlight;
  FailureLeg failed_leg = FailureLeg::kUserToGnb;
  std::optional<LossReason> loss_reason;

  // Sum of the legs that apply to the destination.
  double leg_sum() const;
  double uplink() const;
  double downlink() const;
};

// Executes one deterministic run. Tasks unfinished at the horizon are returned with
// Outcome::kInFlight.
std::vector<OffloadRecord> run(const RunConfig& cfg);

struct Aggregates {
  std::size_t tasks = 0;
  std::size_t dispatched = 0;  // reached a strategy decision
  std::size_t successes = 0;
  std::size_t failures = 0;
  std::size_t in_flight = 0;
  std::array<std::size_t, kFailureLegCount> failures_by_leg{};
  std::size_t to_cloud = 0;
  std::size_t to_edge = 0;
  std::size_t to_vehicle = 0;

  // Over successes, seconds. NaN when nothing succeeded.
  double mean = 0.0;
  double p90 = 0.0;
  double p95 = 0.0;
  double p99 = 0.0;
  double max = 0.0;

  double cc_share_pct = 0.0;  // cloud-destined over dispatched
  // Uplink / elaboration / downlink shares of the vehicular successes.
  double uplink_pct = 0.0;
  double elab_pct = 0.0;
  double downlink_pct = 0.0;
  std::array<double, kFailureLegCount> failure_pct{};  // over all requests
  double failure_total_pct = 0.0;
  std::size_t vehicles_used = 0;  // distinct vehicles that were sent a task

  // Share of successes within the 16 / 100 / 500 ms latency classes.
  double ll_pp_pct = 0.0;
  double ll_p_pct = 0.0;
  double ll_pct = 0.0;
};

Aggregates summarize(std::span<const OffloadRecord> records);

}  // namespace vccsim
