#include "vccsim/sweep.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace vccsim {

Metrics metrics_of(const Aggregates& a) {
  Metrics m = {
      {"tasks", static_cast<double>(a.tasks)},
      {"successes", static_cast<double>(a.successes)},
      {"failures", static_cast<double>(a.failures)},
      {"in_flight", static_cast<double>(a.in_flight)},
      {"mean_ms", a.mean * 1e3},
      {"p90_ms", a.p90 * 1e3},
      {"p95_ms", a.p95 * 1e3},
      {"p99_ms", a.p99 * 1e3},
      {"cc_share_pct", a.cc_share_pct},
      {"uplink_pct", a.uplink_pct},
      {"elab_pct", a.elab_pct},
      {"downlink_pct", a.downlink_pct},
  };
  for (std::size_t k = 0; k < kFailureLegCount; ++k) {
    static constexpr std::string_view kNames[] = {"fail_user_to_gnb_pct", "fail_gnb_to_vcc_pct", "fail_rejection_pct",
                                                  "fail_vcc_to_gnb_pct", "fail_gnb_to_user_pct"};
    m.emplace_back(kNames[k], a.failure_pct[k]);
  }
  m.emplace_back("fail_total_pct", a.failure_total_pct);
  m.emplace_back("vehicles_used", static_cast<double>(a.vehicles_used));
  m.emplace_back("ll_pp_pct", a.ll_pp_pct);
  m.emplace_back("ll_p_pct", a.ll_p_pct);
  m.emplace_back("ll_pct", a.ll_pct);
  return m;
}

RunConfig apply_axis(RunConfig cfg, SweepAxis axis, double value, std::uint64_t seed) {
  auto as_count = [value](const char* what) {
    if (!(value >= 0.0) || std::floor(value) != value) throw std::invalid_argument(std::string(what) + " must be a whole number");
    return static_cast<std::size_t>(value);
  };
  cfg.seed = seed;
  switch (axis) {
    case SweepAxis::kUsers: cfg.n_users = as_count("users"); break;
    case SweepAxis::kWorkload: cfg.task.workload = value; break;
    case SweepAxis::kVehicles: cfg.n_vehicles = as_count("vehicles"); break;
    case SweepAxis::kVehicleCapacityFraction: cfg.vehicle_capacity_fraction = value; break;
    case SweepAxis::kSpeed: cfg.vehicle_speed_kmh = value; break;
    case SweepAxis::kBeta: throw std::invalid_argument("beta is a cost axis, not a simulation axis");
  }
  validate(cfg);
  return cfg;
}

SweepResult run_sweep(const SweepSpec& spec, const RunConfig& base, unsigned threads) {
  if (spec.values.empty()) throw std::invalid_argument("sweep needs at least one value");
  if (spec.seeds.empty()) throw std::invalid_argument("sweep needs at least one seed");

  // Build every config up front so validation errors surface before any work starts.
  std::vector<RunConfig> points;
  for (double value : spec.values)
    for (std::uint64_t seed : spec.seeds) points.push_back(apply_axis(base, spec.axis, value, seed));

  std::vector<Metrics> results(points.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        const auto records = run(points[i]);
        results[i] = metrics_of(summarize(records));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, points.size()));
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  if (failure) std::rethrow_exception(failure);

  SweepResult out;
  out.axis = spec.axis;
  const std::size_t n_seeds = spec.seeds.size();
  for (std::size_t v = 0; v < spec.values.size(); ++v) {
    SweepRow mean_row;
    mean_row.value = spec.values[v];
    mean_row.metrics = results[v * n_seeds];
    for (std::size_t c = 0; c < mean_row.metrics.size(); ++c) {
      double sum = 0.0;
      std::size_t finite = 0;
      for (std::size_t s = 0; s < n_seeds; ++s) {
        const double x = results[v * n_seeds + s][c].second;
        if (std::isfinite(x)) {
          sum += x;
          ++finite;
        }
      }
      mean_row.metrics[c].second = finite ? sum / static_cast<double>(finite) : std::nan("");
    }
    for (std::size_t s = 0; s < n_seeds; ++s)
      out.runs.push_back({spec.values[v], spec.seeds[s], std::move(results[v * n_seeds + s])});
    out.means.push_back(std::move(mean_row));
  }
  return out;
}

std::vector<CostSweepRow> run_cost_sweep(const SweepSpec& spec, const CostParams& base) {
  if (spec.axis != SweepAxis::kBeta) throw std::invalid_argument("cost sweeps run over the beta axis");
  std::vector<CostSweepRow> rows;
  for (double beta : spec.values) {
    CostParams p = base;
    p.beta = beta;
    p.c_vcc_req.reset();
    validate(p);
    rows.push_back({beta, capex_ec(p), opex_ec(p), opex_vcc(p), total_ec(p), total_vcc(p), savings(p), vcc_bonus(p)});
  }
  return rows;
}

}  // namespace vccsim
