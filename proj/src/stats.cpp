#include "vccsim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace vccsim {

namespace {

// Modified Lentz evaluation of the continued fraction for I_x(a, b).
double beta_continued_fraction(double a, double b, double x) {
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-16;
  constexpr int kMaxTerms = 10000;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxTerms; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double percentile(std::span<const double> values, double q) {
  if (values.empty()) throw std::invalid_argument("percentile of an empty sample");
  if (!(q > 0.0 && q <= 100.0)) throw std::invalid_argument("percentile rank must be in (0, 100]");
  std::vector<double> sorted(values.begin(), values.end());
  const double n = static_cast<double>(sorted.size());
  // q*n/100 rather than q/100*n keeps integral ranks exact (99/100*100 rounds up).
  auto rank = static_cast<std::size_t>(std::ceil(q * n / 100.0 - 1e-9));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(rank - 1), sorted.end());
  return sorted[rank - 1];
}

double mean(std::span<const double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double reg_inc_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("incomplete beta requires a, b > 0");
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("incomplete beta requires x in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front =
      std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double f_survival(double f, double d1, double d2) {
  if (!(d1 > 0.0) || !(d2 > 0.0)) throw std::invalid_argument("F distribution requires positive df");
  if (std::isinf(f)) return 0.0;
  if (!(f > 0.0)) return 1.0;
  // P(F > f) = I_{d2/(d2 + d1 f)}(d2/2, d1/2)
  const double x = d2 / (d2 + d1 * f);
  return std::clamp(reg_inc_beta(d2 / 2.0, d1 / 2.0, x), 0.0, 1.0);
}

AnovaResult anova_oneway(const std::vector<std::vector<double>>& groups) {
  if (groups.size() < 2) throw std::invalid_argument("ANOVA needs at least two groups");
  std::size_t n = 0;
  double grand_sum = 0.0;
  for (const auto& g : groups) {
    if (g.empty()) throw std::invalid_argument("ANOVA groups must be non-empty");
    n += g.size();
    grand_sum += std::accumulate(g.begin(), g.end(), 0.0);
  }
  if (n <= groups.size()) throw std::invalid_argument("ANOVA needs more observations than groups");

  const double grand_mean = grand_sum / static_cast<double>(n);
  AnovaResult r;
  for (const auto& g : groups) {
    const double group_mean = std::accumulate(g.begin(), g.end(), 0.0) / static_cast<double>(g.size());
    r.sum_sq_factor += static_cast<double>(g.size()) * (group_mean - grand_mean) * (group_mean - grand_mean);
    for (double v : g) r.sum_sq_resid += (v - group_mean) * (v - group_mean);
  }
  r.df_factor = static_cast<double>(groups.size() - 1);
  r.df_resid = static_cast<double>(n - groups.size());

  // Relative threshold so that pure rounding noise counts as zero variation.
  double scale = 0.0;
  for (const auto& g : groups)
    for (double v : g) scale = std::max(scale, std::fabs(v));
  const double zero = 1e-24 * std::max(scale * scale, 1e-300) * static_cast<double>(n);
  const bool no_between = r.sum_sq_factor <= zero;
  const bool no_within = r.sum_sq_resid <= zero;
  if (no_within && no_between) throw std::invalid_argument("ANOVA undefined: no variation in the data");
  if (no_within) {
    r.F = std::numeric_limits<double>::infinity();
    r.p = 0.0;
    return r;
  }
  if (no_between) {
    r.sum_sq_factor = 0.0;
    r.F = 0.0;
    r.p = 1.0;
    return r;
  }
  r.F = (r.sum_sq_factor / r.df_factor) / (r.sum_sq_resid / r.df_resid);
  r.p = f_survival(r.F, r.df_factor, r.df_resid);
  return r;
}

}  // namespace vccsim
