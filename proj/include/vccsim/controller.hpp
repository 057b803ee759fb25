#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "vccsim/compute.hpp"
#include "vccsim/rng.hpp"
#include "vccsim/scenario.hpp"

namespace vccsim {

enum class Strategy { kEcFirst, kVccFirst };

enum class Tier { kCloud, kEdge, kVehicle };

struct Dispatch {
  Tier destination = Tier::kCloud;
  VehicleId vehicle;  // meaningful only for Tier::kVehicle
  double decided_at = 0.0;
};

struct ControllerConfig {
  double beacon_period = 0.1;  // seconds, f = 10 Hz
  double timeout = 0.5;        // seconds
  bool beacon_on_coverage_entry = false;
  bool operator==(const ControllerConfig&) const = default;
};

void validate(const ControllerConfig& cfg);

// Beacon-derived list of vehicles the controller believes are available.
class Registry {
 public:
  explicit Registry(double timeout = 0.5) : timeout_(timeout) {}

  // Insert or refresh; periodic and aperiodic beacons are treated alike.
  void on_beacon(VehicleId id, double t) { entries_[id] = t; }

  // Drops every entry whose last beacon is older than t - timeout.
  void expire_stale(double t);

  void remove(VehicleId id) { entries_.erase(id); }
  bool contains(VehicleId id) const { return entries_.count(id) != 0; }
  std::optional<double> last_beacon(VehicleId id) const;

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  double timeout() const { return timeout_; }
  const std::map<VehicleId, double>& entries() const { return entries_; }

 private:
  double timeout_;
  std::map<VehicleId, double> entries_;
};

// Uniform choice among registered vehicles (ascending id order), removing the chosen one.
// Falls back to the cloud when nothing is registered.
Dispatch select_vccfirst(Registry& registry, Rng& rng, double t);

// Edge unless its queue is full at `edge_arrival`, then cloud.
Dispatch select_ecfirst(EdgeServer& edge, double t, double edge_arrival);
inline Dispatch select_ecfirst(EdgeServer& edge, double t) { return select_ecfirst(edge, t, t); }

// Beacon instants of an idle vehicle: `first`, then every `period`, strictly before `until`.
// A vehicle becoming idle at t beacons immediately, so first == t in that case.
std::vector<double> vehicle_beacon_schedule(double first, double period, double until);

}  // namespace vccsim
