#pragma once

#include <span>
#include <vector>

namespace vccsim {

// Nearest-rank percentile: the ceil(q/100 * n)-th smallest value.
// Throws std::invalid_argument on empty input or q outside (0, 100].
double percentile(std::span<const double> values, double q);

double mean(std::span<const double> values);

struct AnovaResult {
  double sum_sq_factor = 0.0;
  double df_factor = 0.0;
  double sum_sq_resid = 0.0;
  double df_resid = 0.0;
  double F = 0.0;  // +infinity when within-group variation is zero
  double p = 1.0;
};

// One-way ANOVA across groups. Requires at least two non-empty groups and more
// observations than groups; rejects data with no variation at all.
AnovaResult anova_oneway(const std::vector<std::vector<double>>& groups);

// Regularized incomplete beta I_x(a, b).
double reg_inc_beta(double a, double b, double x);

// Upper tail of the F distribution, P(F' > f) for F' ~ F(d1, d2).
double f_survival(double f, double d1, double d2);

}  // namespace vccsim
