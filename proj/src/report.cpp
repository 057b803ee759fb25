#include "vccsim/report.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include <fmt/format.h>

#include "vccsim/config.hpp"

namespace vccsim {

namespace {

std::string num(double v, int decimals) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.{}f}", v, decimals);
}

std::string sci(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.6g}", v);
}

}  // namespace

std::string csv_field(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_line(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_field(fields[i]);
  }
  out += '\n';
  return out;
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool row_has_content = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      row_has_content = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      row_has_content = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (row_has_content || !field.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
      }
      field.clear();
      row.clear();
      row_has_content = false;
    } else {
      field += c;
      row_has_content = true;
    }
  }
  if (quoted) throw std::invalid_argument("unterminated quoted CSV field");
  if (row_has_content || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string records_csv(std::span<const OffloadRecord> records) {
  std::string out = csv_line({"task_id", "user", "created_at", "destination", "vehicle", "outcome", "failed_leg",
                              "loss_reason", "t_up_access", "t_up_cn", "t_up_internet", "t_gnb_to_vue", "t_queue",
                              "t_elab", "t_vue_to_gnb", "t_down_internet", "t_down_cn", "t_down_access", "total"});
  for (const OffloadRecord& r : records) {
    std::string outcome = r.outcome == Outcome::kSuccess ? "success" : r.outcome == Outcome::kFailed ? "failed" : "in_flight";
    std::string leg = r.outcome == Outcome::kFailed ? std::string(failure_leg_name(r.failed_leg)) : "";
    std::string reason;
    if (r.loss_reason) reason = *r.loss_reason == LossReason::kOutOfCoverage ? "out_of_coverage" : "channel_error";
    const bool to_vehicle = r.destination == Tier::kVehicle;
    out += csv_line({fmt::format("{}", r.task_id), fmt::format("{}", r.user), num(r.created_at, 9),
                     r.destination ? std::string(tier_name(*r.destination)) : "",
                     to_vehicle ? fmt::format("{}", r.vehicle.value) : "", outcome, leg, reason, num(r.t_up_access, 9),
                     num(r.t_up_cn, 9), num(r.t_up_internet, 9), num(r.t_gnb_to_vue, 9), num(r.t_queue, 9),
                     num(r.t_elab, 9), num(r.t_vue_to_gnb, 9), num(r.t_down_internet, 9), num(r.t_down_cn, 9),
                     num(r.t_down_access, 9), num(r.total, 9)});
  }
  return out;
}

std::string summary_csv(const Aggregates& agg) {
  const Metrics m = metrics_of(agg);
  std::vector<std::string> header;
  std::vector<std::string> values;
  for (const auto& [name, value] : m) {
    header.emplace_back(name);
    values.push_back(num(value, 6));
  }
  return csv_line(header) + csv_line(values);
}

std::string summary_text(const Aggregates& a, const RunConfig& cfg) {
  std::string out;
  out += fmt::format("strategy        {}\n", strategy_name(cfg.strategy));
  out += fmt::format("tasks           {} (success {}, failed {}, in flight at horizon {})\n", a.tasks, a.successes,
                     a.failures, a.in_flight);
  out += fmt::format("destinations    cloud {}, edge {}, vehicle {} (cloud share {}%)\n", a.to_cloud, a.to_edge,
                     a.to_vehicle, num(a.cc_share_pct, 2));
  out += fmt::format("offloading time mean {} ms, p90 {} ms, p95 {} ms, p99 {} ms, max {} ms\n", num(a.mean * 1e3, 3),
                     num(a.p90 * 1e3, 3), num(a.p95 * 1e3, 3), num(a.p99 * 1e3, 3), num(a.max * 1e3, 3));
  out += fmt::format("latency classes <=16 ms {}%, <=100 ms {}%, <=500 ms {}%\n", num(a.ll_pp_pct, 2),
                     num(a.ll_p_pct, 2), num(a.ll_pct, 2));
  if (a.to_vehicle > 0) {
    out += fmt::format("vehicular split uplink {}%, elaboration {}%, downlink {}% ({} vehicles used)\n",
                       num(a.uplink_pct, 2), num(a.elab_pct, 2), num(a.downlink_pct, 2), a.vehicles_used);
  }
  out += fmt::format("failures        {}% total:", num(a.failure_total_pct, 3));
  for (std::size_t k = 0; k < kFailureLegCount; ++k)
    out += fmt::format(" {} {}%", failure_leg_name(static_cast<FailureLeg>(k)), num(a.failure_pct[k], 3));
  out += "\n";
  out += "(latency statistics exclude tasks still in flight at the horizon)\n";
  return out;
}

std::string sweep_csv(const SweepResult& result) {
  std::vector<std::string> header = {"row", "axis", "value", "seed"};
  const Metrics& first = result.runs.empty() ? result.means.front().metrics : result.runs.front().metrics;
  for (const auto& [name, value] : first) header.emplace_back(name);
  std::string out = csv_line(header);

  auto emit = [&](const SweepRow& row, const char* kind) {
    std::vector<std::string> fields = {kind, std::string(axis_name(result.axis)), sci(row.value),
                                       row.seed ? fmt::format("{}", *row.seed) : ""};
    for (const auto& [name, value] : row.metrics) fields.push_back(num(value, 6));
    out += csv_line(fields);
  };
  for (const SweepRow& row : result.runs) emit(row, "run");
  for (const SweepRow& row : result.means) emit(row, "mean");
  return out;
}

std::string cost_sweep_csv(std::span<const CostSweepRow> rows) {
  std::string out = csv_line({"beta", "capex_ec", "opex_ec", "opex_vcc", "total_ec", "total_vcc", "savings", "vcc_bonus"});
  for (const CostSweepRow& r : rows) {
    out += csv_line({sci(r.beta), num(r.capex_ec, 2), num(r.opex_ec, 2), num(r.opex_vcc, 2), num(r.total_ec, 2),
                     num(r.total_vcc, 2), num(r.savings, 2), fmt::format("{:.6e}", r.vcc_bonus)});
  }
  return out;
}

CostReport cost_report(const CostParams& params, std::span<const double> betas, std::span<const double> years,
                       std::span<const double> scales) {
  CostReport report;
  report.breakdown_csv = csv_line({"request_scale", "years", "beta", "c_CAPEX-EC (%)", "c_EC-main (%)",
                                   "c_OPEX-EC,req (%)", "c_OPEX-VCC,req (%)"});
  report.totals_csv = csv_line({"request_scale", "years", "beta", "total_ec", "total_vcc", "savings"});

  for (double scale : scales) {
    const auto rows = cost_breakdown(params, betas, years, scale);
    report.text += fmt::format("Cost distribution, request scale {} ({} requests/s in the cell)\n", sci(scale),
                               sci(params.rate * params.users * scale));
    report.text += fmt::format("  {:>5}  {:>8}  {:>14}  {:>13}  {:>17}  {:>18}\n", "years", "beta", "c_CAPEX-EC (%)",
                               "c_EC-main (%)", "c_OPEX-EC,req (%)", "c_OPEX-VCC,req (%)");
    for (const CostBreakdownRow& r : rows) {
      report.breakdown_csv += csv_line({sci(scale), sci(r.years), fmt::format("{:.0e}", r.beta), num(r.capex_pct, 2),
                                        num(r.main_pct, 2), num(r.requests_pct, 2), num(r.vcc_requests_pct, 2)});
      report.text += fmt::format("  {:>5}  {:>8}  {:>14}  {:>13}  {:>17}  {:>18}\n", sci(r.years),
                                 fmt::format("{:.0e}", r.beta), num(r.capex_pct, 2), num(r.main_pct, 2),
                                 num(r.requests_pct, 2), num(r.vcc_requests_pct, 2));
    }
    report.text += fmt::format("Total cost EC vs VCC [$]\n  {:>5}  {:>8}  {:>14}  {:>14}  {:>12}\n", "years", "beta",
                               "EC", "VCC", "savings");
    for (const CostBreakdownRow& r : rows) {
      report.totals_csv += csv_line({sci(scale), sci(r.years), fmt::format("{:.0e}", r.beta), num(r.ec_total, 2),
                                     num(r.vcc_total, 2), num(r.ec_total - r.vcc_total, 2)});
      report.text += fmt::format("  {:>5}  {:>8}  {:>14}  {:>14}  {:>12}\n", sci(r.years), fmt::format("{:.0e}", r.beta),
                                 num(r.ec_total, 2), num(r.vcc_total, 2), num(r.ec_total - r.vcc_total, 2));
    }
    report.text += "\n";
  }
  return report;
}

std::vector<std::vector<double>> read_groups_csv(std::string_view text, std::vector<std::string>* names) {
  const auto rows = parse_csv(text);
  if (rows.empty()) throw std::invalid_argument("empty CSV");
  std::vector<std::vector<double>> groups;
  std::map<std::string, std::size_t> index;
  std::vector<std::string> order;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.size() != 2) throw std::invalid_argument(fmt::format("CSV row {}: expected group,value", i + 1));
    const auto value = parse_number(row[1]);
    if (!value) throw std::invalid_argument(fmt::format("CSV row {}: '{}' is not a number", i + 1, row[1]));
    auto [it, inserted] = index.emplace(row[0], groups.size());
    if (inserted) {
      groups.emplace_back();
      order.push_back(row[0]);
    }
    groups[it->second].push_back(*value);
  }
  if (names) *names = std::move(order);
  return groups;
}

std::string anova_csv(const AnovaResult& r, std::string_view factor) {
  std::string out = csv_line({"", "sum_sq", "df", "F", "PR(>F)"});
  out += csv_line({std::string(factor), fmt::format("{:.6f}", r.sum_sq_factor), num(r.df_factor, 1),
                   std::isinf(r.F) ? "inf" : fmt::format("{:.6f}", r.F), fmt::format("{:.6f}", r.p)});
  out += csv_line({"Residual", fmt::format("{:.6f}", r.sum_sq_resid), num(r.df_resid, 1), "", ""});
  return out;
}

}  // namespace vccsim
