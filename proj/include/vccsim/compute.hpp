#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <variant>

#include "vccsim/channel.hpp"
#include "vccsim/scenario.hpp"

namespace vccsim {

struct Task {
  std::uint64_t id = 0;
  double workload = 500.0;       // MI
  double size = 4000.0;          // bytes
  double result_size = 4000.0;   // bytes
  double created_at = 0.0;
  std::uint32_t origin_user = 0;
};

struct ComputeConfig {
  double cloud_capacity = 2356230.0;   // MIPS
  double edge_capacity = 749070.0;     // MIPS
  std::size_t edge_max_queue = 100;
  double vehicle_capacity = 71120.0;   // MIPS
  bool operator==(const ComputeConfig&) const = default;
};

void validate(const ComputeConfig& cfg);

// W / C seconds. Throws std::invalid_argument for C <= 0 or W < 0.
double elaboration_time(double workload, double capacity);

// Wired round trip to the cloud: CN and Internet legs in both directions.
double cloud_fixed_roundtrip(const ChannelConfig& cfg);

struct EdgeAdmission {
  double arrival = 0.0;
  double start = 0.0;
  double finish = 0.0;
  double queue_time() const { return start - arrival; }
};

struct Overflow {};

using EdgeOffer = std::variant<EdgeAdmission, Overflow>;

// Single-processor FIFO edge node. The queue bound counts waiting tasks only; the
// task in service is not part of the queue. Offers must arrive in nondecreasing time.
class EdgeServer {
 public:
  EdgeServer(double capacity, std::size_t max_queue);

  EdgeOffer offer(const Task& task, double now);
  bool would_overflow(double now);

  std::size_t queue_length(double now);
  std::size_t in_service(double now);
  std::size_t completed(double now);
  std::size_t accepted() const { return accepted_; }
  std::size_t max_queue() const { return max_queue_; }

 private:
  struct Job {
    double start;
    double finish;
  };

  void advance(double now);

  double capacity_;
  std::size_t max_queue_;
  std::deque<Job> jobs_;
  std::size_t accepted_ = 0;
  std::size_t completed_ = 0;
  double clock_ = 0.0;
};

struct VehicleAccepted {
  double done_at = 0.0;
};

struct Rejected {};

using VehicleOffer = std::variant<VehicleAccepted, Rejected>;

// One task at a time: rejects while busy, otherwise marks the vehicle busy until done.
VehicleOffer vehicle_offer(VehicleState& v, const Task& task, double now);

}  // namespace vccsim
