#include "vccsim/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vccsim {

namespace {

constexpr std::array<std::string_view, kLinkClassCount> kLinkNames = {
    "pue_up", "pue_down", "vue_up", "vue_down", "cn_up", "cn_down", "internet_up", "internet_down",
};

}  // namespace

std::string_view link_name(LinkClass link) { return kLinkNames[static_cast<std::size_t>(link)]; }

std::optional<LinkClass> parse_link_name(std::string_view name) {
  for (LinkClass link : kAllLinkClasses)
    if (link_name(link) == name) return link;
  return std::nullopt;
}

bool is_radio(LinkClass link) {
  switch (link) {
    case LinkClass::kPueUp:
    case LinkClass::kPueDown:
    case LinkClass::kVueUp:
    case LinkClass::kVueDown:
      return true;
    default:
      return false;
  }
}

ChannelConfig channel_preset(const std::string& name) {
  if (name != "lena_calibrated" && name != "lossless")
    throw std::invalid_argument("unknown channel preset '" + name + "'");

  // Leg split calibrated against the aggregate edge (~10 ms) and vehicular (~30 ms)
  // round trips at the default task size.
  const bool lossy = name == "lena_calibrated";
  ChannelConfig cfg;
  for (LinkClass link : {LinkClass::kPueUp, LinkClass::kPueDown})
    cfg[link] = {0.0027, 100e6, lossy ? 0.001 : 0.0, lossy ? 5e-4 : 0.0};
  for (LinkClass link : {LinkClass::kVueUp, LinkClass::kVueDown})
    cfg[link] = {0.0082, 100e6, lossy ? 0.001 : 0.0, lossy ? 5e-4 : 0.0};
  cfg[LinkClass::kCnUp].base_latency = 0.002;
  cfg[LinkClass::kCnDown].base_latency = 0.002;
  cfg[LinkClass::kInternetUp].base_latency = 0.035;
  cfg[LinkClass::kInternetDown].base_latency = 0.035;
  return cfg;
}

void validate(const ChannelConfig& cfg) {
  for (LinkClass link : kAllLinkClasses) {
    const LinkParams& p = cfg[link];
    const std::string name(link_name(link));
    if (!(p.base_latency >= 0.0)) throw std::invalid_argument(name + ": latency must be non-negative");
    if (!(p.rate > 0.0)) throw std::invalid_argument(name + ": rate must be positive");
    if (!(p.p_base >= 0.0 && p.p_base <= 1.0)) throw std::invalid_argument(name + ": p_base must be in [0, 1]");
    if (!(p.k_speed >= 0.0)) throw std::invalid_argument(name + ": k_speed must be non-negative");
    if (!is_radio(link) && (p.p_base != 0.0 || p.k_speed != 0.0))
      throw std::invalid_argument(name + ": wired legs are lossless");
    if (!is_radio(link) && !std::isinf(p.rate))
      throw std::invalid_argument(name + ": wired legs have a fixed latency and unbounded rate");
  }
  if (!(cfg.beacon_bytes >= 0.0)) throw std::invalid_argument("beacon_bytes must be non-negative");
}

double payload_time(double size_bytes, LinkClass link, std::size_t concurrent, const ChannelConfig& cfg) {
  const double rate = cfg[link].rate;
  if (std::isinf(rate)) return 0.0;
  const double share = cfg.sharing == Sharing::kProcessorSharing ? static_cast<double>(std::max<std::size_t>(concurrent, 1)) : 1.0;
  return size_bytes * 8.0 / (rate / share);
}

double transfer_time(double size_bytes, LinkClass link, std::size_t concurrent, const ChannelConfig& cfg) {
  return cfg[link].base_latency + payload_time(size_bytes, link, concurrent, cfg);
}

double loss_probability(LinkClass link, double speed, const ChannelConfig& cfg) {
  if (!is_radio(link)) return 0.0;
  const LinkParams& p = cfg[link];
  return std::clamp(p.p_base + p.k_speed * speed, 0.0, 1.0);
}

LegOutcome leg_outcome(Rng& rng, LinkClass link, double speed, bool src_covered, bool dst_covered,
                       double size_bytes, std::size_t concurrent, const ChannelConfig& cfg) {
  if (is_radio(link)) {
    if (!src_covered || !dst_covered) return Lost{LossReason::kOutOfCoverage};
    if (rng.bernoulli(loss_probability(link, speed, cfg))) return Lost{LossReason::kChannelError};
  }
  return Delivered{transfer_time(size_bytes, link, concurrent, cfg)};
}

std::size_t SharedCell::concurrent(LinkClass link, double now) {
  EndTimes& ends = active_[static_cast<std::size_t>(link)];
  while (!ends.empty() && ends.top() <= now) ends.pop();
  return ends.size() + 1;
}

void SharedCell::occupy(LinkClass link, double until) { active_[static_cast<std::size_t>(link)].push(until); }

}  // namespace vccsim
