#include "vccsim/compute.hpp"

#include <algorithm>
#include <stdexcept>

namespace vccsim {

void validate(const ComputeConfig& cfg) {
  if (!(cfg.cloud_capacity > 0.0)) throw std::invalid_argument("cloud capacity must be positive");
  if (!(cfg.edge_capacity > 0.0)) throw std::invalid_argument("edge capacity must be positive");
  if (!(cfg.vehicle_capacity > 0.0)) throw std::invalid_argument("vehicle capacity must be positive");
}

double elaboration_time(double workload, double capacity) {
  if (!(capacity > 0.0)) throw std::invalid_argument("capacity must be positive");
  if (workload < 0.0) throw std::invalid_argument("workload must be non-negative");
  return workload / capacity;
}

double cloud_fixed_roundtrip(const ChannelConfig& cfg) {
  return cfg[LinkClass::kCnUp].base_latency + cfg[LinkClass::kInternetUp].base_latency +
         cfg[LinkClass::kInternetDown].base_latency + cfg[LinkClass::kCnDown].base_latency;
}

EdgeServer::EdgeServer(double capacity, std::size_t max_queue) : capacity_(capacity), max_queue_(max_queue) {
  if (!(capacity > 0.0)) throw std::invalid_argument("edge capacity must be positive");
}

void EdgeServer::advance(double now) {
  if (now < clock_) throw std::logic_error("edge offers must arrive in nondecreasing time");
  clock_ = now;
  while (!jobs_.empty() && jobs_.front().finish <= now) {
    jobs_.pop_front();
    ++completed_;
  }
}

std::size_t EdgeServer::in_service(double now) {
  advance(now);
  return (!jobs_.empty() && jobs_.front().start <= now) ? 1 : 0;
}

std::size_t EdgeServer::queue_length(double now) {
  const std::size_t serving = in_service(now);
  return jobs_.size() - serving;
}

std::size_t EdgeServer::completed(double now) {
  advance(now);
  return completed_;
}

bool EdgeServer::would_overflow(double now) { return queue_length(now) >= max_queue_; }

EdgeOffer EdgeServer::offer(const Task& task, double now) {
  if (would_overflow(now)) return Overflow{};
  const double start = jobs_.empty() ? now : std::max(now, jobs_.back().finish);
  const double finish = start + elaboration_time(task.workload, capacity_);
  jobs_.push_back({start, finish});
  ++accepted_;
  return EdgeAdmission{now, start, finish};
}

VehicleOffer vehicle_offer(VehicleState& v, const Task& task, double now) {
  if (v.busy_at(now)) return Rejected{};
  const double done_at = now + elaboration_time(task.workload, v.capacity);
  v.busy_until = done_at;
  return VehicleAccepted{done_at};
}

}  // namespace vccsim
