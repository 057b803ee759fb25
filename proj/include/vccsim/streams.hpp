#pragma once

#include <cstdint>

// Stream tags for the per-run random substreams. Keeping purposes on separate
// streams means, for example, that adding vehicles does not shift user arrival phases.
namespace vccsim::streams {

inline constexpr std::uint64_t kPlacement = 1;
inline constexpr std::uint64_t kArrivals = 2;
inline constexpr std::uint64_t kBeaconPhase = 3;
inline constexpr std::uint64_t kSelection = 4;
inline constexpr std::uint64_t kChannel = 5;

}  // namespace vccsim::streams
