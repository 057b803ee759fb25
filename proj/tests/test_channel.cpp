#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "vccsim/channel.hpp"
#include "vccsim/rng.hpp"

using namespace vccsim;

TEST_CASE("wired legs return their fixed latency") {
  const ChannelConfig cfg = channel_preset("lena_calibrated");
  for (double size : {0.0, 4000.0, 1e9}) {
    CHECK(transfer_time(size, LinkClass::kCnUp, 1, cfg) == 0.002);
    CHECK(transfer_time(size, LinkClass::kCnDown, 7, cfg) == 0.002);
    CHECK(transfer_time(size, LinkClass::kInternetUp, 3, cfg) == 0.035);
    CHECK(transfer_time(size, LinkClass::kInternetDown, 1, cfg) == 0.035);
  }
}

TEST_CASE("radio transfer under processor sharing") {
  ChannelConfig cfg = channel_preset("lena_calibrated");
  cfg[LinkClass::kPueUp].base_latency = 0.004;
  CHECK(transfer_time(0.0, LinkClass::kPueUp, 1, cfg) == 0.004);
  CHECK(transfer_time(4000.0, LinkClass::kPueUp, 2, cfg) == doctest::Approx(0.00464).epsilon(1e-12));
  CHECK(transfer_time(4000.0, LinkClass::kPueUp, 1, cfg) == doctest::Approx(0.00432).epsilon(1e-12));

  cfg.sharing = Sharing::kNone;
  CHECK(transfer_time(4000.0, LinkClass::kPueUp, 2, cfg) == doctest::Approx(0.00432).epsilon(1e-12));
}

TEST_CASE("transfer time is monotone and positive") {
  const ChannelConfig cfg = channel_preset("lena_calibrated");
  for (LinkClass link : kAllLinkClasses) {
    double prev = 0.0;
    for (double size = 0.0; size <= 1e5; size += 5000.0) {
      const double t = transfer_time(size, link, 1, cfg);
      CHECK(t >= prev);
      CHECK(t > 0.0);
      prev = t;
    }
    prev = 0.0;
    for (std::size_t n = 1; n <= 20; ++n) {
      const double t = transfer_time(4000.0, link, n, cfg);
      CHECK(t >= prev);
      prev = t;
    }
  }
}

TEST_CASE("coverage loss on radio legs only") {
  const ChannelConfig cfg = channel_preset("lossless");
  Rng rng(1);
  const auto out = leg_outcome(rng, LinkClass::kVueDown, 3.6, true, false, 4000.0, 1, cfg);
  REQUIRE(std::holds_alternative<Lost>(out));
  CHECK(std::get<Lost>(out).reason == LossReason::kOutOfCoverage);
  const auto src = leg_outcome(rng, LinkClass::kVueUp, 3.6, false, true, 4000.0, 1, cfg);
  CHECK(std::holds_alternative<Lost>(src));
  const auto wired = leg_outcome(rng, LinkClass::kCnUp, 0.0, false, false, 4000.0, 1, cfg);
  CHECK(std::holds_alternative<Delivered>(wired));
}

TEST_CASE("zero-loss configuration always delivers") {
  const ChannelConfig cfg = channel_preset("lossless");
  Rng rng(2);
  for (int k = 0; k < 20000; ++k) {
    const LinkClass link = kAllLinkClasses[static_cast<std::size_t>(k) % kLinkClassCount];
    const auto out = leg_outcome(rng, link, rng.uniform(0.0, 50.0), true, true, 4000.0, 1, cfg);
    REQUIRE(std::holds_alternative<Delivered>(out));
    CHECK(std::get<Delivered>(out).latency == transfer_time(4000.0, link, 1, cfg));
  }
}

TEST_CASE("speed-dependent loss probability") {
  const ChannelConfig cfg = channel_preset("lena_calibrated");
  const double v = 100.0 / 3.6;
  CHECK(loss_probability(LinkClass::kVueUp, v, cfg) == doctest::Approx(0.001 + 5e-4 * v));
  CHECK(loss_probability(LinkClass::kVueUp, 27.78, cfg) == doctest::Approx(0.01489));
  CHECK(loss_probability(LinkClass::kCnUp, v, cfg) == 0.0);

  ChannelConfig hot = cfg;
  hot[LinkClass::kVueUp].k_speed = 1.0;
  CHECK(loss_probability(LinkClass::kVueUp, 5.0, hot) == 1.0);

  double prev = 0.0;
  for (double s = 0.0; s < 60.0; s += 0.5) {
    const double p = loss_probability(LinkClass::kVueDown, s, cfg);
    CHECK(p >= prev);
    prev = p;
  }
}

TEST_CASE("Monte-Carlo loss rate at 100 km/h") {
  const ChannelConfig cfg = channel_preset("lena_calibrated");
  Rng rng(2024, 9);
  const int trials = 100000;
  int lost = 0;
  for (int k = 0; k < trials; ++k) {
    const auto out = leg_outcome(rng, LinkClass::kVueUp, 27.78, true, true, 4000.0, 1, cfg);
    if (std::holds_alternative<Lost>(out)) {
      CHECK(std::get<Lost>(out).reason == LossReason::kChannelError);
      ++lost;
    }
  }
  CHECK(std::abs(lost / double(trials) - 0.01489) < 0.002);
}

TEST_CASE("outcome sequence is reproducible from the stream") {
  const ChannelConfig cfg = channel_preset("lena_calibrated");
  Rng a(77, 5);
  Rng b(77, 5);
  for (int k = 0; k < 5000; ++k) {
    const auto x = leg_outcome(a, LinkClass::kVueUp, 27.0, true, true, 4000.0, 1, cfg);
    const auto y = leg_outcome(b, LinkClass::kVueUp, 27.0, true, true, 4000.0, 1, cfg);
    CHECK(x.index() == y.index());
  }
}

TEST_CASE("link names round-trip") {
  for (LinkClass link : kAllLinkClasses) CHECK(parse_link_name(link_name(link)) == link);
  CHECK_FALSE(parse_link_name("wifi").has_value());
}

TEST_CASE("channel validation") {
  CHECK_NOTHROW(validate(channel_preset("lena_calibrated")));
  CHECK_THROWS_AS(channel_preset("nr"), std::invalid_argument);

  ChannelConfig lossy_wire = channel_preset("lossless");
  lossy_wire[LinkClass::kCnUp].p_base = 0.1;
  CHECK_THROWS_AS(validate(lossy_wire), std::invalid_argument);

  ChannelConfig bad_p = channel_preset("lossless");
  bad_p[LinkClass::kPueUp].p_base = 1.5;
  CHECK_THROWS_AS(validate(bad_p), std::invalid_argument);

  ChannelConfig bad_rate = channel_preset("lossless");
  bad_rate[LinkClass::kVueUp].rate = 0.0;
  CHECK_THROWS_AS(validate(bad_rate), std::invalid_argument);
}

TEST_CASE("shared cell counts overlapping payloads") {
  SharedCell cell;
  CHECK(cell.concurrent(LinkClass::kPueUp, 0.0) == 1);
  cell.occupy(LinkClass::kPueUp, 1.0);
  cell.occupy(LinkClass::kPueUp, 2.0);
  CHECK(cell.concurrent(LinkClass::kPueUp, 0.5) == 3);
  CHECK(cell.concurrent(LinkClass::kPueDown, 0.5) == 1);
  CHECK(cell.concurrent(LinkClass::kPueUp, 1.0) == 2);
  CHECK(cell.concurrent(LinkClass::kPueUp, 2.5) == 1);
}
