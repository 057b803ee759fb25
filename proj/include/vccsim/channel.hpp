#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "vccsim/rng.hpp"

namespace vccsim {

enum class LinkClass : std::size_t {
  kPueUp,
  kPueDown,
  kVueUp,
  kVueDown,
  kCnUp,
  kCnDown,
  kInternetUp,
  kInternetDown,
};

inline constexpr std::size_t kLinkClassCount = 8;
inline constexpr std::array<LinkClass, kLinkClassCount> kAllLinkClasses = {
    LinkClass::kPueUp, LinkClass::kPueDown,    LinkClass::kVueUp,      LinkClass::kVueDown,
    LinkClass::kCnUp,  LinkClass::kCnDown,     LinkClass::kInternetUp, LinkClass::kInternetDown,
};

std::string_view link_name(LinkClass link);
std::optional<LinkClass> parse_link_name(std::string_view name);
bool is_radio(LinkClass link);

enum class Sharing { kProcessorSharing, kNone };

struct LinkParams {
  double base_latency = 0.0;                                 // seconds
  double rate = std::numeric_limits<double>::infinity();     // bits/second
  double p_base = 0.0;
  double k_speed = 0.0;  // loss probability per m/s
  bool operator==(const LinkParams&) const = default;
};

struct ChannelConfig {
  std::array<LinkParams, kLinkClassCount> links{};
  Sharing sharing = Sharing::kProcessorSharing;
  double beacon_bytes = 0.0;

  LinkParams& operator[](LinkClass link) { return links[static_cast<std::size_t>(link)]; }
  const LinkParams& operator[](LinkClass link) const { return links[static_cast<std::size_t>(link)]; }
  bool operator==(const ChannelConfig&) const = default;
};

// Presets: "lena_calibrated" (default) and "lossless" (same latencies, no loss).
ChannelConfig channel_preset(const std::string& name);
void validate(const ChannelConfig& cfg);

// Time the payload occupies the link: size*8 / (rate/concurrent), or size*8/rate without sharing.
double payload_time(double size_bytes, LinkClass link, std::size_t concurrent, const ChannelConfig& cfg);

// base_latency + payload_time.
double transfer_time(double size_bytes, LinkClass link, std::size_t concurrent, const ChannelConfig& cfg);

double loss_probability(LinkClass link, double speed, const ChannelConfig& cfg);

enum class LossReason { kOutOfCoverage, kChannelError };

struct Delivered {
  double latency = 0.0;
};

struct Lost {
  LossReason reason = LossReason::kChannelError;
};

using LegOutcome = std::variant<Delivered, Lost>;

// Wired legs are always delivered. Radio legs are lost when either endpoint is out of
// coverage, otherwise with the speed-dependent loss probability.
LegOutcome leg_outcome(Rng& rng, LinkClass link, double speed, bool src_covered, bool dst_covered,
                       double size_bytes, std::size_t concurrent, const ChannelConfig& cfg);

// Tracks transfers whose payload currently occupies each link, for the concurrency
// count under processor sharing.
class SharedCell {
 public:
  // Number of concurrent transfers on the link at `now`, including a new one.
  std::size_t concurrent(LinkClass link, double now);
  void occupy(LinkClass link, double until);

 private:
  using EndTimes = std::priority_queue<double, std::vector<double>, std::greater<>>;
  std::array<EndTimes, kLinkClassCount> active_;
};

}  // namespace vccsim
