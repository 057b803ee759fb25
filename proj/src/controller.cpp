#include "vccsim/controller.hpp"

#include <iterator>
#include <stdexcept>

namespace vccsim {

void validate(const ControllerConfig& cfg) {
  if (!(cfg.beacon_period > 0.0)) throw std::invalid_argument("beacon_period must be positive");
  if (!(cfg.timeout > 0.0)) throw std::invalid_argument("timeout must be positive");
}

void Registry::expire_stale(double t) {
  const double horizon = t - timeout_;
  for (auto it = entries_.begin(); it != entries_.end();) {
    if (it->second < horizon)
      it = entries_.erase(it);
    else
      ++it;
  }
}

std::optional<double> Registry::last_beacon(VehicleId id) const {
  const auto it = entries_.find(id);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

Dispatch select_vccfirst(Registry& registry, Rng& rng, double t) {
  registry.expire_stale(t);
  if (registry.empty()) return {Tier::kCloud, {}, t};
  const auto pick = std::next(registry.entries().begin(), static_cast<std::ptrdiff_t>(rng.index(registry.size())));
  const VehicleId chosen = pick->first;
  registry.remove(chosen);
  return {Tier::kVehicle, chosen, t};
}

Dispatch select_ecfirst(EdgeServer& edge, double t, double edge_arrival) {
  if (edge.would_overflow(edge_arrival)) return {Tier::kCloud, {}, t};
  return {Tier::kEdge, {}, t};
}

std::vector<double> vehicle_beacon_schedule(double first, double period, double until) {
  if (!(period > 0.0)) throw std::invalid_argument("beacon period must be positive");
  std::vector<double> times;
  for (std::size_t k = 0;; ++k) {
    const double t = first + static_cast<double>(k) * period;
    if (t >= until) break;
    times.push_back(t);
  }
  return times;
}

}  // namespace vccsim
