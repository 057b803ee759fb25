#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vccsim/costmodel.hpp"
#include "vccsim/engine.hpp"
#include "vccsim/stats.hpp"
#include "vccsim/sweep.hpp"

namespace vccsim {

// RFC 4180 field quoting: fields containing comma, quote, CR or LF are quoted and
// embedded quotes doubled.
std::string csv_field(std::string_view field);
std::string csv_line(const std::vector<std::string>& fields);

// Parses RFC 4180 text into rows of fields. Throws std::invalid_argument on an
// unterminated quoted field.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

std::string records_csv(std::span<const OffloadRecord> records);
std::string summary_csv(const Aggregates& agg);
std::string summary_text(const Aggregates& agg, const RunConfig& cfg);

std::string sweep_csv(const SweepResult& result);
std::string cost_sweep_csv(std::span<const CostSweepRow> rows);

struct CostReport {
  std::string breakdown_csv;  // one row per (scale, beta, years)
  std::string totals_csv;     // EC vs VCC totals per (scale, beta, years)
  std::string text;           // aligned tables
};

CostReport cost_report(const CostParams& params, std::span<const double> betas, std::span<const double> years,
                       std::span<const double> scales);

// Groups from a `group,value` CSV (header row required), in first-appearance order.
std::vector<std::vector<double>> read_groups_csv(std::string_view text, std::vector<std::string>* names = nullptr);

// Factor and residual rows in the sum_sq, df, F, PR(>F) column order.
std::string anova_csv(const AnovaResult& result, std::string_view factor = "C(group)");

}  // namespace vccsim
