#include "vccsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <set>
#include <stdexcept>
#include <tuple>

#include "vccsim/stats.hpp"
#include "vccsim/streams.hpp"

namespace vccsim {

void validate(const RunConfig& cfg) {
  if (!(cfg.duration >= 0.0)) throw std::invalid_argument("duration must be non-negative");
  if (!(cfg.request_rate > 0.0)) throw std::invalid_argument("request_rate must be positive");
  if (cfg.task.workload < 0.0 || cfg.task.size < 0.0 || cfg.task.result_size < 0.0)
    throw std::invalid_argument("task workload and sizes must be non-negative");
  if (cfg.vehicle_speed_kmh < 0.0) throw std::invalid_argument("vehicle speed must be non-negative");
  if (!(cfg.vehicle_capacity_fraction > 0.0)) throw std::invalid_argument("vehicle_capacity_fraction must be positive");
  validate(cfg.geometry);
  validate(cfg.channel);
  validate(cfg.compute);
  validate(cfg.controller);
}

std::string_view failure_leg_name(FailureLeg leg) {
  switch (leg) {
    case FailureLeg::kUserToGnb: return "user_to_gnb";
    case FailureLeg::kGnbToVcc: return "gnb_to_vcc";
    case FailureLeg::kRejection: return "rejection";
    case FailureLeg::kVccToGnb: return "vcc_to_gnb";
    case FailureLeg::kGnbToUser: return "gnb_to_user";
  }
  return "unknown";
}

std::string_view tier_name(Tier tier) {
  switch (tier) {
    case Tier::kCloud: return "cloud";
    case Tier::kEdge: return "edge";
    case Tier::kVehicle: return "vehicle";
  }
  return "unknown";
}

std::vector<Arrival> generate_arrivals(const RunConfig& cfg, std::span<const double> phases) {
  if (phases.size() != cfg.n_users) throw std::invalid_argument("one phase per user required");
  std::vector<Arrival> arrivals;
  for (std::uint32_t user = 0; user < cfg.n_users; ++user) {
    for (std::size_t k = 0;; ++k) {
      const double t = phases[user] + static_cast<double>(k) / cfg.request_rate;
      if (t >= cfg.duration) break;
      Arrival a;
      a.t = t;
      a.user = user;
      arrivals.push_back(a);
    }
  }
  std::sort(arrivals.begin(), arrivals.end(),
            [](const Arrival& a, const Arrival& b) { return std::tie(a.t, a.user) < std::tie(b.t, b.user); });
  for (std::size_t i = 0; i < arrivals.size(); ++i) {
    Task& task = arrivals[i].task;
    task.id = i;
    task.workload = cfg.task.workload;
    task.size = cfg.task.size;
    task.result_size = cfg.task.result_size;
    task.created_at = arrivals[i].t;
    task.origin_user = arrivals[i].user;
  }
  return arrivals;
}

std::vector<Arrival> generate_arrivals(const RunConfig& cfg, Rng& rng) {
  std::vector<double> phases(cfg.n_users);
  for (double& phase : phases) phase = rng.uniform() / cfg.request_rate;
  return generate_arrivals(cfg, phases);
}

double OffloadRecord::uplink() const { return t_up_access + t_up_cn + t_up_internet + t_gnb_to_vue; }

double OffloadRecord::downlink() const { return t_vue_to_gnb + t_down_internet + t_down_cn + t_down_access; }

double OffloadRecord::leg_sum() const {
  if (!destination) return t_up_access;
  switch (*destination) {
    case Tier::kCloud:
      return t_up_access + t_up_cn + t_up_internet + t_elab + t_down_internet + t_down_cn + t_down_access;
    case Tier::kEdge:
      return t_up_access + t_up_cn + t_queue + t_elab + t_down_cn + t_down_access;
    case Tier::kVehicle:
      return t_up_access + t_gnb_to_vue + t_elab + t_vue_to_gnb + t_down_access;
  }
  return 0.0;
}

namespace {

class Simulation {
 public:
  explicit Simulation(const RunConfig& cfg)
      : cfg_(cfg),
        fleet_(build_scenario(cfg.geometry, cfg.n_vehicles, cfg.vehicle_speed(), cfg.vehicle_capacity(), cfg.seed)),
        registry_(cfg.controller.timeout),
        edge_(cfg.compute.edge_capacity, cfg.compute.edge_max_queue),
        selection_rng_(cfg.seed, streams::kSelection),
        channel_rng_(cfg.seed, streams::kChannel) {
    Rng arrival_rng(cfg.seed, streams::kArrivals);
    arrivals_ = generate_arrivals(cfg, arrival_rng);
    records_.resize(arrivals_.size());
    for (std::size_t i = 0; i < arrivals_.size(); ++i) {
      records_[i].task_id = arrivals_[i].task.id;
      records_[i].user = arrivals_[i].user;
      records_[i].created_at = arrivals_[i].t;
    }
    timers_.resize(fleet_.size());
  }

  std::vector<OffloadRecord> run() {
    for (std::size_t i = 0; i < arrivals_.size(); ++i)
      schedule(arrivals_[i].t, [this, i] { on_arrival(i); });

    Rng phase_rng(cfg_.seed, streams::kBeaconPhase);
    for (std::size_t v = 0; v < fleet_.size(); ++v) {
      const double phase = phase_rng.uniform() * cfg_.controller.beacon_period;
      start_beacon_timer(v, phase, /*immediate=*/false);
      if (cfg_.controller.beacon_on_coverage_entry) schedule_coverage_entry(v, 0.0);
    }

    while (!events_.empty() && events_.top().time <= cfg_.duration) {
      Event ev = events_.top();
      events_.pop();
      now_ = ev.time;
      ev.action();
    }
    return std::move(records_);
  }

 private:
  struct Event {
    double time;
    std::uint64_t seq;
    std::function<void()> action;
  };
  struct Later {
    bool operator()(const Event& a, const Event& b) const { return std::tie(a.time, a.seq) > std::tie(b.time, b.seq); }
  };

  // Periodic beacon timer of one vehicle; bumping the epoch cancels pending ticks.
  struct BeaconTimer {
    std::uint64_t epoch = 0;
    double first = 0.0;
  };

  void schedule(double t, std::function<void()> action) { events_.push({t, next_seq_++, std::move(action)}); }

  bool vehicle_covered(std::size_t v, double t) const {
    return in_coverage(position_at(fleet_[v], t, cfg_.geometry), cfg_.geometry);
  }

  // --- beacons ---

  void start_beacon_timer(std::size_t v, double first, bool immediate) {
    BeaconTimer& timer = timers_[v];
    ++timer.epoch;
    timer.first = first;
    const std::uint64_t epoch = timer.epoch;
    if (immediate) {
      beacon(v);
      schedule(first + cfg_.controller.beacon_period, [this, v, epoch] { on_beacon_tick(v, epoch, 1); });
    } else {
      schedule(first, [this, v, epoch] { on_beacon_tick(v, epoch, 0); });
    }
  }

  void stop_beacon_timer(std::size_t v) { ++timers_[v].epoch; }

  void on_beacon_tick(std::size_t v, std::uint64_t epoch, std::size_t k) {
    if (timers_[v].epoch != epoch) return;
    beacon(v);
    const double next = timers_[v].first + static_cast<double>(k + 1) * cfg_.controller.beacon_period;
    schedule(next, [this, v, epoch, k] { on_beacon_tick(v, epoch, k + 1); });
  }

  // Idle vehicles announce themselves; beacons sent out of coverage are not received.
  void beacon(std::size_t v) {
    if (fleet_[v].busy_at(now_)) return;
    if (!vehicle_covered(v, now_)) return;
    if (cfg_.channel.beacon_bytes > 0.0) {
      const std::size_t n = cell_.concurrent(LinkClass::kVueUp, now_);
      cell_.occupy(LinkClass::kVueUp, now_ + payload_time(cfg_.channel.beacon_bytes, LinkClass::kVueUp, n, cfg_.channel));
    }
    registry_.on_beacon(fleet_[v].id, now_);
  }

  void schedule_coverage_entry(std::size_t v, double after) {
    const auto entry = next_coverage_entry(fleet_[v], after, cfg_.geometry);
    if (!entry) return;
    const double t = *entry;
    schedule(t, [this, v, t] {
      if (!fleet_[v].busy_at(now_)) registry_.on_beacon(fleet_[v].id, now_);
      schedule_coverage_entry(v, t);
    });
  }

  // --- task lifecycle ---

  void fail(std::size_t i, FailureLeg leg, std::optional<LossReason> reason) {
    OffloadRecord& r = records_[i];
    r.outcome = Outcome::kFailed;
    r.failed_leg = leg;
    r.loss_reason = reason;
    r.total = now_ - r.created_at;
  }

  // Starts a transfer at now_; on delivery `delivered(latency)` runs at arrival time.
  template <typename OnDelivered>
  void send(std::size_t i, LinkClass link, double size, double speed, bool src_covered, bool dst_covered,
            FailureLeg leg_on_loss, OnDelivered delivered) {
    const std::size_t concurrent = cell_.concurrent(link, now_);
    const LegOutcome outcome =
        leg_outcome(channel_rng_, link, speed, src_covered, dst_covered, size, concurrent, cfg_.channel);
    if (const auto* lost = std::get_if<Lost>(&outcome)) {
      fail(i, leg_on_loss, lost->reason);
      return;
    }
    const double latency = std::get<Delivered>(outcome).latency;
    cell_.occupy(link, now_ + payload_time(size, link, concurrent, cfg_.channel));
    schedule(now_ + latency, [delivered, latency] { delivered(latency); });
  }

  // Wired legs never lose; returns the latency for a transfer starting now.
  double wired(LinkClass link, double size) {
    const std::size_t concurrent = cell_.concurrent(link, now_);
    cell_.occupy(link, now_ + payload_time(size, link, concurrent, cfg_.channel));
    return transfer_time(size, link, concurrent, cfg_.channel);
  }

  void on_arrival(std::size_t i) {
    const Task& task = arrivals_[i].task;
    send(i, LinkClass::kPueUp, task.size, 0.0, true, true, FailureLeg::kUserToGnb, [this, i](double latency) {
      records_[i].t_up_access = latency;
      decide(i);
    });
  }

  void decide(std::size_t i) {
    OffloadRecord& r = records_[i];
    const Task& task = arrivals_[i].task;
    r.decided_at = now_;

    Dispatch d;
    double edge_arrival = 0.0;
    double cn_up = 0.0;
    if (cfg_.strategy == Strategy::kEcFirst) {
      cn_up = transfer_time(task.size, LinkClass::kCnUp, cell_.concurrent(LinkClass::kCnUp, now_), cfg_.channel);
      edge_arrival = now_ + cn_up;
      d = select_ecfirst(edge_, now_, edge_arrival);
    } else {
      d = select_vccfirst(registry_, selection_rng_, now_);
    }
    r.destination = d.destination;
    r.vehicle = d.vehicle;

    switch (d.destination) {
      case Tier::kEdge: {
        wired(LinkClass::kCnUp, task.size);
        r.t_up_cn = cn_up;
        const auto admission = std::get<EdgeAdmission>(edge_.offer(task, edge_arrival));
        r.service_start = admission.start;
        r.t_queue = admission.queue_time();
        r.t_elab = elaboration_time(task.workload, cfg_.compute.edge_capacity);
        schedule(admission.start + r.t_elab, [this, i] { edge_done(i); });
        break;
      }
      case Tier::kCloud:
        to_cloud(i);
        break;
      case Tier::kVehicle:
        to_vehicle(i, d.vehicle.value);
        break;
    }
  }

  void edge_done(std::size_t i) {
    const double cn = wired(LinkClass::kCnDown, arrivals_[i].task.result_size);
    records_[i].t_down_cn = cn;
    schedule(now_ + cn, [this, i] { to_user(i); });
  }

  void to_cloud(std::size_t i) {
    const Task& task = arrivals_[i].task;
    const double cn = wired(LinkClass::kCnUp, task.size);
    records_[i].t_up_cn = cn;
    schedule(now_ + cn, [this, i] {
      const double internet = wired(LinkClass::kInternetUp, arrivals_[i].task.size);
      records_[i].t_up_internet = internet;
      schedule(now_ + internet, [this, i] { cloud_elaborate(i); });
    });
  }

  void cloud_elaborate(std::size_t i) {
    OffloadRecord& r = records_[i];
    r.service_start = now_;
    r.t_elab = elaboration_time(arrivals_[i].task.workload, cfg_.compute.cloud_capacity);
    schedule(now_ + r.t_elab, [this, i] {
      const double internet = wired(LinkClass::kInternetDown, arrivals_[i].task.result_size);
      records_[i].t_down_internet = internet;
      schedule(now_ + internet, [this, i] {
        const double cn = wired(LinkClass::kCnDown, arrivals_[i].task.result_size);
        records_[i].t_down_cn = cn;
        schedule(now_ + cn, [this, i] { to_user(i); });
      });
    });
  }

  void to_vehicle(std::size_t i, std::size_t v) {
    const Task& task = arrivals_[i].task;
    send(i, LinkClass::kVueDown, task.size, fleet_[v].speed, true, vehicle_covered(v, now_), FailureLeg::kGnbToVcc,
         [this, i, v](double latency) {
           records_[i].t_gnb_to_vue = latency;
           vehicle_receive(i, v);
         });
  }

  void vehicle_receive(std::size_t i, std::size_t v) {
    const VehicleOffer offer = vehicle_offer(fleet_[v], arrivals_[i].task, now_);
    if (std::holds_alternative<Rejected>(offer)) {
      fail(i, FailureLeg::kRejection, std::nullopt);
      return;
    }
    stop_beacon_timer(v);
    OffloadRecord& r = records_[i];
    r.service_start = now_;
    r.t_elab = elaboration_time(arrivals_[i].task.workload, fleet_[v].capacity);
    schedule(std::get<VehicleAccepted>(offer).done_at, [this, i, v] { vehicle_done(i, v); });
  }

  void vehicle_done(std::size_t i, std::size_t v) {
    // Idle again: aperiodic beacon now, periodic ones from here on.
    start_beacon_timer(v, now_, /*immediate=*/true);
    const bool covered = vehicle_covered(v, now_);
    send(i, LinkClass::kVueUp, arrivals_[i].task.result_size, fleet_[v].speed, covered, true, FailureLeg::kVccToGnb,
         [this, i](double latency) {
           records_[i].t_vue_to_gnb = latency;
           to_user(i);
         });
  }

  void to_user(std::size_t i) {
    send(i, LinkClass::kPueDown, arrivals_[i].task.result_size, 0.0, true, true, FailureLeg::kGnbToUser,
         [this, i](double latency) {
           OffloadRecord& r = records_[i];
           r.t_down_access = latency;
           r.total = now_ - r.created_at;
           r.outcome = Outcome::kSuccess;
         });
  }

  const RunConfig& cfg_;
  std::vector<VehicleState> fleet_;
  std::vector<BeaconTimer> timers_;
  Registry registry_;
  EdgeServer edge_;
  SharedCell cell_;
  Rng selection_rng_;
  Rng channel_rng_;
  std::vector<Arrival> arrivals_;
  std::vector<OffloadRecord> records_;
  std::priority_queue<Event, std::vector<Event>, Later> events_;
  std::uint64_t next_seq_ = 0;
  double now_ = 0.0;
};

}  // namespace

std::vector<OffloadRecord> run(const RunConfig& cfg) {
  validate(cfg);
  Simulation sim(cfg);
  return sim.run();
}

Aggregates summarize(std::span<const OffloadRecord> records) {
  Aggregates a;
  a.tasks = records.size();
  std::vector<double> totals;
  std::set<VehicleId> used;
  double vcc_total = 0.0;
  double vcc_up = 0.0;
  double vcc_elab = 0.0;
  double vcc_down = 0.0;
  std::size_t within_16 = 0;
  std::size_t within_100 = 0;
  std::size_t within_500 = 0;

  for (const OffloadRecord& r : records) {
    if (r.destination) {
      ++a.dispatched;
      switch (*r.destination) {
        case Tier::kCloud: ++a.to_cloud; break;
        case Tier::kEdge: ++a.to_edge; break;
        case Tier::kVehicle:
          ++a.to_vehicle;
          used.insert(r.vehicle);
          break;
      }
    }
    switch (r.outcome) {
      case Outcome::kInFlight: ++a.in_flight; break;
      case Outcome::kFailed:
        ++a.failures;
        ++a.failures_by_leg[static_cast<std::size_t>(r.failed_leg)];
        break;
      case Outcome::kSuccess:
        ++a.successes;
        totals.push_back(r.total);
        if (r.total <= 0.016) ++within_16;
        if (r.total <= 0.100) ++within_100;
        if (r.total <= 0.500) ++within_500;
        if (r.destination == Tier::kVehicle) {
          vcc_total += r.total;
          vcc_up += r.t_up_access + r.t_gnb_to_vue;
          vcc_elab += r.t_elab;
          vcc_down += r.t_vue_to_gnb + r.t_down_access;
        }
        break;
    }
  }

  const double nan = std::numeric_limits<double>::quiet_NaN();
  if (totals.empty()) {
    a.mean = a.p90 = a.p95 = a.p99 = a.max = nan;
  } else {
    a.mean = mean(totals);
    a.p90 = percentile(totals, 90.0);
    a.p95 = percentile(totals, 95.0);
    a.p99 = percentile(totals, 99.0);
    a.max = *std::max_element(totals.begin(), totals.end());
    const double n = static_cast<double>(totals.size());
    a.ll_pp_pct = 100.0 * static_cast<double>(within_16) / n;
    a.ll_p_pct = 100.0 * static_cast<double>(within_100) / n;
    a.ll_pct = 100.0 * static_cast<double>(within_500) / n;
  }
  a.cc_share_pct = a.dispatched == 0 ? 0.0 : 100.0 * static_cast<double>(a.to_cloud) / static_cast<double>(a.dispatched);
  if (vcc_total > 0.0) {
    // Normalize by the component sum so the three shares partition exactly.
    const double parts = vcc_up + vcc_elab + vcc_down;
    a.uplink_pct = 100.0 * vcc_up / parts;
    a.elab_pct = 100.0 * vcc_elab / parts;
    a.downlink_pct = 100.0 * vcc_down / parts;
  } else {
    a.uplink_pct = a.elab_pct = a.downlink_pct = nan;
  }
  if (a.tasks > 0) {
    for (std::size_t k = 0; k < kFailureLegCount; ++k)
      a.failure_pct[k] = 100.0 * static_cast<double>(a.failures_by_leg[k]) / static_cast<double>(a.tasks);
    a.failure_total_pct = 100.0 * static_cast<double>(a.failures) / static_cast<double>(a.tasks);
  }
  a.vehicles_used = used.size();
  return a;
}

}  // namespace vccsim
