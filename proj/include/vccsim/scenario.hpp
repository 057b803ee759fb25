#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace vccsim {

struct VehicleId {
  std::uint32_t value = 0;
  auto operator<=>(const VehicleId&) const = default;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  bool operator==(const Point3&) const = default;
};

inline constexpr double kUnboundedRadius = std::numeric_limits<double>::infinity();

// Single rectangular road with corners (0,0), (length,0), (length,width), (0,width)
// served by one base station.
struct ScenarioGeometry {
  double loop_length_x = 600.0;
  double loop_width_y = 50.0;
  Point3 bs_position{300.0, 25.0, 30.0};
  double coverage_radius = kUnboundedRadius;
  double ue_height = 1.5;

  double perimeter() const { return 2.0 * (loop_length_x + loop_width_y); }
  bool operator==(const ScenarioGeometry&) const = default;
};

// Throws std::invalid_argument on an unknown name.
ScenarioGeometry geometry_preset(const std::string& name);
void validate(const ScenarioGeometry& geometry);

enum class Direction { kClockwise, kCounterClockwise };

struct VehicleState {
  VehicleId id;
  double loop_offset_at_t0 = 0.0;  // meters along the perimeter
  Direction direction = Direction::kClockwise;
  double speed = 0.0;     // m/s
  double capacity = 0.0;  // MIPS
  std::optional<double> busy_until;

  bool busy_at(double t) const { return busy_until.has_value() && *busy_until > t; }
};

// Places vehicles uniformly at random on the perimeter; directions alternate by index.
// Throws std::invalid_argument for negative speed or non-positive capacity.
std::vector<VehicleState> build_scenario(const ScenarioGeometry& geometry, std::size_t n_vehicles,
                                         double speed, double capacity, std::uint64_t seed);

// Perimeter offset of a vehicle at time t, in [0, perimeter).
double offset_at(const VehicleState& v, double t, const ScenarioGeometry& geometry);
Point2 point_at_offset(double offset, const ScenarioGeometry& geometry);
Point2 position_at(const VehicleState& v, double t, const ScenarioGeometry& geometry);

bool in_coverage(Point2 p, const ScenarioGeometry& geometry);

// Covered stretch of the perimeter, [begin, end] in offset coordinates. An arc may wrap
// past the perimeter origin, in which case end < begin.
struct CoverageArc {
  double begin = 0.0;
  double end = 0.0;
};

// Covered arcs of the loop. Empty when nothing is covered; a single arc with
// begin == 0 and end == perimeter when the whole loop is covered.
std::vector<CoverageArc> coverage_arcs(const ScenarioGeometry& geometry);

// First time strictly after t at which the vehicle crosses into coverage, if any.
std::optional<double> next_coverage_entry(const VehicleState& v, double t, const ScenarioGeometry& geometry);

inline double kmh_to_mps(double kmh) { return kmh / 3.6; }

}  // namespace vccsim
