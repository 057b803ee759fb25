#include "vccsim/costmodel.hpp"

#include <cmath>
#include <stdexcept>

namespace vccsim {

void validate(const CostParams& p) {
  if (!(p.lifespan > 0.0)) throw std::invalid_argument("lifespan must be positive");
  if (!(p.years > 0.0)) throw std::invalid_argument("years must be positive");
  if (p.c_ec_cpu < 0.0 || p.c_ec_main < 0.0 || p.c_ec_req < 0.0 || p.rate < 0.0 || p.users < 0.0 ||
      p.alpha < 0.0 || p.beta < 0.0)
    throw std::invalid_argument("cost parameters must be non-negative");
  if (p.c_vcc_req && *p.c_vcc_req < 0.0) throw std::invalid_argument("c_vcc_req must be non-negative");
  if (!(p.capex_overhead >= 1.0)) throw std::invalid_argument("capex_overhead must be at least 1");
}

double cpu_purchases(const CostParams& p) {
  // Relative slack absorbs quotients like 0.9 / 0.3 = 3.0000000000000004.
  return std::ceil(p.years / p.lifespan * (1.0 - 1e-12));
}

double requests(const CostParams& p) { return p.rate * p.users * p.years * p.alpha; }

double capex_ec(const CostParams& p) { return p.c_ec_cpu * cpu_purchases(p) * p.capex_overhead; }

double opex_ec(const CostParams& p) {
  const double per_request = p.c_ec_req + (p.table_interpretation ? p.beta : 0.0);
  return per_request * requests(p) + p.c_ec_main * p.years;
}

double opex_vcc(const CostParams& p) { return p.vcc_request_cost() * requests(p); }

double total_ec(const CostParams& p) { return capex_ec(p) + opex_ec(p); }

double total_vcc(const CostParams& p) { return opex_vcc(p); }

double vcc_bonus(const CostParams& p) {
  const double per_second = p.rate * p.users * p.alpha;
  if (!(per_second > 0.0)) throw std::invalid_argument("VCC bonus needs a positive request volume");
  return (capex_ec(p) / p.years + p.c_ec_main) / per_second;
}

double savings(const CostParams& p) { return capex_ec(p) + opex_ec(p) - opex_vcc(p); }

std::vector<CostBreakdownRow> cost_breakdown(const CostParams& p, std::span<const double> betas,
                                             std::span<const double> years, double request_scale,
                                             bool table_interpretation) {
  std::vector<CostBreakdownRow> rows;
  for (double beta : betas) {
    for (double y : years) {
      CostParams q = p;
      q.beta = beta;
      q.years = y;
      q.c_vcc_req.reset();
      q.users = p.users * request_scale;
      q.table_interpretation = table_interpretation;
      validate(q);

      const double capex = capex_ec(q);
      const double main = q.c_ec_main * q.years;
      const double req = opex_ec(q) - main;
      const double ec = capex + main + req;

      CostBreakdownRow row;
      row.beta = beta;
      row.years = y;
      row.request_scale = request_scale;
      row.capex_pct = 100.0 * capex / ec;
      row.main_pct = 100.0 * main / ec;
      row.requests_pct = 100.0 * req / ec;
      row.vcc_requests_pct = 100.0;
      row.ec_total = ec;
      row.vcc_total = total_vcc(q);
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace vccsim
