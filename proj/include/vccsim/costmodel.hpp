#pragma once

#include <optional>
#include <span>
#include <vector>

namespace vccsim {

// Network-operator cost inputs for one cell. Money in dollars, time in years
// unless noted.
struct CostParams {
  double c_ec_cpu = 700.0;       // $ per edge CPU
  double lifespan = 3.0;         // edge CPU lifespan, years
  double years = 1.0;            // investment duration Y
  double c_ec_main = 1368.46;    // $ per year (68423 / 50)
  double c_ec_req = 2e-5;        // $ per request at the edge
  std::optional<double> c_vcc_req;  // $ per request in the VCC; c_ec_req + beta when unset
  double rate = 5.0;             // requests / s / user
  double users = 100.0;
  double alpha = 15.0 * 3600.0 * 365.0;  // active seconds per year
  double beta = 0.0;             // $ per request premium paid to vehicles
  // Adds beta to the edge per-request cost as well (the convention of the published
  // cost-distribution tables). Off for the plain savings formula.
  bool table_interpretation = false;
  double capex_overhead = 1.0;   // >= 1, non-CPU equipment markup

  double vcc_request_cost() const { return c_vcc_req.value_or(c_ec_req + beta); }
  bool operator==(const CostParams&) const = default;
};

void validate(const CostParams& p);

// ceil(Y / L): how many times the edge CPU is bought over the investment.
double cpu_purchases(const CostParams& p);

double requests(const CostParams& p);  // R * U * Y * alpha

double capex_ec(const CostParams& p);
double opex_ec(const CostParams& p);
double opex_vcc(const CostParams& p);
double total_ec(const CostParams& p);
double total_vcc(const CostParams& p);

// Largest per-request premium over c_ec_req at which the VCC still costs no more than the edge.
double vcc_bonus(const CostParams& p);

// capex_ec + opex_ec - opex_vcc.
double savings(const CostParams& p);

struct CostBreakdownRow {
  double beta = 0.0;
  double years = 0.0;
  double request_scale = 1.0;
  double capex_pct = 0.0;
  double main_pct = 0.0;
  double requests_pct = 0.0;
  double vcc_requests_pct = 0.0;
  double ec_total = 0.0;
  double vcc_total = 0.0;
};

// Share of each edge cost component for every (beta, years) pair, with the VCC paying
// c_ec_req + beta per request and R*U scaled by request_scale.
std::vector<CostBreakdownRow> cost_breakdown(const CostParams& p, std::span<const double> betas,
                                             std::span<const double> years, double request_scale,
                                             bool table_interpretation = true);

}  // namespace vccsim
