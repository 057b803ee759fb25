#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "vccsim/config.hpp"
#include "vccsim/costmodel.hpp"
#include "vccsim/engine.hpp"

namespace vccsim {

// Flat, ordered view of a run's aggregates as sweep columns.
using Metrics = std::vector<std::pair<std::string_view, double>>;

Metrics metrics_of(const Aggregates& agg);

// Base config with one axis set to `value` and the given seed.
RunConfig apply_axis(RunConfig base, SweepAxis axis, double value, std::uint64_t seed);

struct SweepRow {
  double value = 0.0;
  std::optional<std::uint64_t> seed;  // unset on the per-value mean rows
  Metrics metrics;
};

struct SweepResult {
  SweepAxis axis = SweepAxis::kUsers;
  std::vector<SweepRow> runs;   // ordered by (value position, seed position)
  std::vector<SweepRow> means;  // one per value, averaged over seeds
};

// Runs every (value, seed) point, up to `threads` at a time (0 = hardware concurrency).
// Output order does not depend on scheduling.
SweepResult run_sweep(const SweepSpec& spec, const RunConfig& base, unsigned threads = 0);

struct CostSweepRow {
  double beta = 0.0;
  double capex_ec = 0.0;
  double opex_ec = 0.0;
  double opex_vcc = 0.0;
  double total_ec = 0.0;
  double total_vcc = 0.0;
  double savings = 0.0;
  double vcc_bonus = 0.0;
};

// Beta axis: cost figures for each beta with c_vcc_req = c_ec_req + beta.
std::vector<CostSweepRow> run_cost_sweep(const SweepSpec& spec, const CostParams& base);

}  // namespace vccsim
