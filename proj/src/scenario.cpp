#include "vccsim/scenario.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "vccsim/rng.hpp"
#include "vccsim/streams.hpp"

namespace vccsim {

namespace {

constexpr double kArcEps = 1e-9;

struct Edge {
  Point2 start;
  Point2 dir;
  double length;
  double offset;
};

std::array<Edge, 4> edges(const ScenarioGeometry& g) {
  const double l = g.loop_length_x;
  const double w = g.loop_width_y;
  return {{
      {{0.0, 0.0}, {1.0, 0.0}, l, 0.0},
      {{l, 0.0}, {0.0, 1.0}, w, l},
      {{l, w}, {-1.0, 0.0}, l, l + w},
      {{0.0, w}, {0.0, -1.0}, w, 2.0 * l + w},
  }};
}

}  // namespace

ScenarioGeometry geometry_preset(const std::string& name) {
  if (name == "total_coverage") return ScenarioGeometry{};
  if (name == "partial_coverage") {
    ScenarioGeometry g;
    g.loop_length_x = 1200.0;
    g.bs_position = {600.0, 25.0, 30.0};
    g.coverage_radius = 450.0;
    return g;
  }
  throw std::invalid_argument("unknown scenario preset '" + name + "'");
}

void validate(const ScenarioGeometry& g) {
  if (!(g.loop_length_x > 0.0) || !(g.loop_width_y > 0.0))
    throw std::invalid_argument("loop dimensions must be positive");
  if (!(g.bs_position.z > 0.0)) throw std::invalid_argument("base station height must be positive");
  if (!(g.coverage_radius > 0.0)) throw std::invalid_argument("coverage radius must be positive");
  if (g.ue_height < 0.0) throw std::invalid_argument("UE height must be non-negative");
}

std::vector<VehicleState> build_scenario(const ScenarioGeometry& geometry, std::size_t n_vehicles,
                                         double speed, double capacity, std::uint64_t seed) {
  if (speed < 0.0) throw std::invalid_argument("vehicle speed must be non-negative");
  if (n_vehicles > 0 && !(capacity > 0.0)) throw std::invalid_argument("vehicle capacity must be positive");

  Rng rng(seed, streams::kPlacement);
  const double perimeter = geometry.perimeter();
  std::vector<VehicleState> fleet;
  fleet.reserve(n_vehicles);
  for (std::size_t i = 0; i < n_vehicles; ++i) {
    VehicleState v;
    v.id = VehicleId{static_cast<std::uint32_t>(i)};
    v.loop_offset_at_t0 = rng.uniform() * perimeter;
    v.direction = (i % 2 == 0) ? Direction::kClockwise : Direction::kCounterClockwise;
    v.speed = speed;
    v.capacity = capacity;
    fleet.push_back(v);
  }
  return fleet;
}

double offset_at(const VehicleState& v, double t, const ScenarioGeometry& geometry) {
  const double perimeter = geometry.perimeter();
  const double sign = v.direction == Direction::kClockwise ? 1.0 : -1.0;
  double s = std::fmod(v.loop_offset_at_t0 + sign * v.speed * t, perimeter);
  if (s < 0.0) s += perimeter;
  if (s >= perimeter) s -= perimeter;
  return s;
}

Point2 point_at_offset(double s, const ScenarioGeometry& g) {
  const double l = g.loop_length_x;
  const double w = g.loop_width_y;
  if (s <= l) return {s, 0.0};
  if (s <= l + w) return {l, s - l};
  if (s <= 2.0 * l + w) return {l - (s - l - w), w};
  return {0.0, w - (s - 2.0 * l - w)};
}

Point2 position_at(const VehicleState& v, double t, const ScenarioGeometry& geometry) {
  return point_at_offset(offset_at(v, t, geometry), geometry);
}

bool in_coverage(Point2 p, const ScenarioGeometry& g) {
  if (std::isinf(g.coverage_radius)) return true;
  const double dx = p.x - g.bs_position.x;
  const double dy = p.y - g.bs_position.y;
  const double dz = g.ue_height - g.bs_position.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz) <= g.coverage_radius;
}

std::vector<CoverageArc> coverage_arcs(const ScenarioGeometry& g) {
  const double perimeter = g.perimeter();
  if (std::isinf(g.coverage_radius)) return {{0.0, perimeter}};

  const double dz = g.bs_position.z - g.ue_height;
  const double horizontal_sq = g.coverage_radius * g.coverage_radius - dz * dz;
  if (horizontal_sq < 0.0) return {};

  std::vector<CoverageArc> arcs;
  for (const Edge& e : edges(g)) {
    // |start - bs + u*dir|^2 <= horizontal_sq, solved for u along the edge.
    const double px = e.start.x - g.bs_position.x;
    const double py = e.start.y - g.bs_position.y;
    const double b = e.dir.x * px + e.dir.y * py;
    const double c = px * px + py * py - horizontal_sq;
    const double disc = b * b - c;
    if (disc < 0.0) continue;
    const double root = std::sqrt(disc);
    const double lo = std::max(-b - root, 0.0);
    const double hi = std::min(-b + root, e.length);
    if (lo > hi) continue;
    arcs.push_back({e.offset + lo, e.offset + hi});
  }
  if (arcs.empty()) return arcs;

  std::sort(arcs.begin(), arcs.end(), [](const CoverageArc& a, const CoverageArc& b) { return a.begin < b.begin; });
  std::vector<CoverageArc> merged{arcs.front()};
  for (std::size_t i = 1; i < arcs.size(); ++i) {
    if (arcs[i].begin <= merged.back().end + kArcEps)
      merged.back().end = std::max(merged.back().end, arcs[i].end);
    else
      merged.push_back(arcs[i]);
  }
  const bool touches_origin = merged.front().begin <= kArcEps;
  const bool touches_end = merged.back().end >= perimeter - kArcEps;
  if (merged.size() == 1 && touches_origin && touches_end) return {{0.0, perimeter}};
  if (merged.size() > 1 && touches_origin && touches_end) {
    merged.front().begin = merged.back().begin;
    merged.pop_back();
  }
  return merged;
}

std::optional<double> next_coverage_entry(const VehicleState& v, double t, const ScenarioGeometry& geometry) {
  if (!(v.speed > 0.0)) return std::nullopt;
  const auto arcs = coverage_arcs(geometry);
  const double perimeter = geometry.perimeter();
  if (arcs.empty()) return std::nullopt;
  if (arcs.size() == 1 && arcs.front().begin == 0.0 && arcs.front().end == perimeter) return std::nullopt;

  const double s = offset_at(v, t, geometry);
  double best = std::numeric_limits<double>::infinity();
  for (const CoverageArc& arc : arcs) {
    double d = v.direction == Direction::kClockwise ? arc.begin - s : s - arc.end;
    d = std::fmod(d, perimeter);
    if (d < 0.0) d += perimeter;
    if (d <= kArcEps) d += perimeter;
    best = std::min(best, d);
  }
  return t + best / v.speed;
}

}  // namespace vccsim
