#include <doctest.h>

#include <stdexcept>
#include <variant>

#include "vccsim/compute.hpp"
#include "vccsim/rng.hpp"

using namespace vccsim;

TEST_CASE("elaboration time is W / C") {
  CHECK(elaboration_time(500.0, 2356230.0) == doctest::Approx(2.122e-4).epsilon(1e-3));
  CHECK(elaboration_time(500.0, 71120.0) == doctest::Approx(7.031e-3).epsilon(1e-3));
  CHECK(elaboration_time(500.0, 71120.0) == 500.0 / 71120.0);
  CHECK(elaboration_time(0.0, 5.0) == 0.0);
  CHECK_THROWS_AS(elaboration_time(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(elaboration_time(1.0, -3.0), std::invalid_argument);
}

TEST_CASE("cloud wired round trip") {
  ChannelConfig cfg = channel_preset("lena_calibrated");
  CHECK(cloud_fixed_roundtrip(cfg) == doctest::Approx(0.074).epsilon(1e-12));
  cfg[LinkClass::kInternetUp].base_latency = 0.070;
  cfg[LinkClass::kInternetDown].base_latency = 0.070;
  CHECK(cloud_fixed_roundtrip(cfg) == doctest::Approx(0.144).epsilon(1e-12));
  for (LinkClass link : {LinkClass::kCnUp, LinkClass::kCnDown, LinkClass::kInternetUp, LinkClass::kInternetDown})
    cfg[link].base_latency = 0.0;
  CHECK(cloud_fixed_roundtrip(cfg) == 0.0);
}

TEST_CASE("idle edge starts service at once") {
  EdgeServer edge(749070.0, 100);
  const auto offer = edge.offer(Task{}, 1.0);
  REQUIRE(std::holds_alternative<EdgeAdmission>(offer));
  const auto& a = std::get<EdgeAdmission>(offer);
  CHECK(a.queue_time() == 0.0);
  CHECK(a.finish == 1.0 + 500.0 / 749070.0);
}

TEST_CASE("FIFO recurrence for simultaneous arrivals") {
  EdgeServer edge(749070.0, 100);
  const double e = elaboration_time(500.0, 749070.0);
  double expected_start = 2.0;
  for (int k = 0; k < 3; ++k) {
    const auto a = std::get<EdgeAdmission>(edge.offer(Task{}, 2.0));
    CHECK(a.start == doctest::Approx(expected_start).epsilon(1e-15));
    expected_start = a.finish;
    if (k == 2) CHECK(a.queue_time() == doctest::Approx(2.0 * e).epsilon(1e-12));
  }
}

TEST_CASE("FIFO recurrence against an independent oracle") {
  // start_k = max(arrival_k, finish_{k-1}), finish_k = start_k + W_k / C.
  Rng rng(4);
  EdgeServer edge(1000.0, 1000000);
  double t = 0.0;
  double finish_prev = 0.0;
  for (int k = 0; k < 5000; ++k) {
    t += rng.uniform(0.0, 0.02);
    Task task;
    task.workload = rng.uniform(0.0, 20.0);
    const auto a = std::get<EdgeAdmission>(edge.offer(task, t));
    const double start = std::max(t, finish_prev);
    CHECK(a.start == start);
    CHECK(a.finish == start + task.workload / 1000.0);
    finish_prev = a.finish;
  }
}

TEST_CASE("edge overflow at the queue bound") {
  EdgeServer edge(1.0, 100);  // one task takes 500 s; nothing completes
  CHECK(std::holds_alternative<EdgeAdmission>(edge.offer(Task{}, 0.0)));  // in service
  for (int k = 0; k < 99; ++k) CHECK(std::holds_alternative<EdgeAdmission>(edge.offer(Task{}, 0.0)));
  CHECK(edge.queue_length(0.0) == 99);
  CHECK_FALSE(edge.would_overflow(0.0));
  CHECK(std::holds_alternative<EdgeAdmission>(edge.offer(Task{}, 0.0)));
  CHECK(edge.queue_length(0.0) == 100);
  CHECK(edge.would_overflow(0.0));
  CHECK(std::holds_alternative<Overflow>(edge.offer(Task{}, 0.0)));
  // Once the first task finishes the head of the queue enters service and a slot frees up.
  CHECK(edge.queue_length(500.0) == 99);
  CHECK(std::holds_alternative<EdgeAdmission>(edge.offer(Task{}, 500.0)));
}

TEST_CASE("edge conserves tasks") {
  Rng rng(8);
  EdgeServer edge(749070.0 / 50.0, 10);
  double t = 0.0;
  for (int k = 0; k < 20000; ++k) {
    t += rng.uniform(0.0, 0.005);
    (void)edge.offer(Task{}, t);
    const std::size_t queued = edge.queue_length(t);
    CHECK(queued <= 10);
    CHECK(edge.accepted() == edge.completed(t) + edge.in_service(t) + queued);
  }
}

TEST_CASE("edge rejects time going backwards") {
  EdgeServer edge(10.0, 5);
  (void)edge.offer(Task{}, 3.0);
  CHECK_THROWS_AS(edge.offer(Task{}, 2.0), std::logic_error);
}

TEST_CASE("vehicle runs one task at a time") {
  VehicleState v;
  v.capacity = 71120.0;
  const auto first = vehicle_offer(v, Task{}, 10.0);
  REQUIRE(std::holds_alternative<VehicleAccepted>(first));
  const double done = std::get<VehicleAccepted>(first).done_at;
  CHECK(done == doctest::Approx(10.0 + 7.031e-3).epsilon(1e-4));
  CHECK(std::holds_alternative<Rejected>(vehicle_offer(v, Task{}, 10.001)));
  CHECK(std::holds_alternative<VehicleAccepted>(vehicle_offer(v, Task{}, done)));

  VehicleState w;
  w.capacity = 1.0;
  Task empty;
  empty.workload = 0.0;
  const auto zero = vehicle_offer(w, empty, 4.0);
  CHECK(std::get<VehicleAccepted>(zero).done_at == 4.0);
}
