#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "vccsim/rng.hpp"
#include "vccsim/stats.hpp"

using namespace vccsim;

namespace {

// I_x(a, b) for integer a, b as a binomial tail: sum_{j=a}^{a+b-1} C(a+b-1, j) x^j (1-x)^(a+b-1-j).
double binomial_tail(int a, int b, double x) {
  const int n = a + b - 1;
  double sum = 0.0;
  for (int j = a; j <= n; ++j) {
    const double log_c = std::lgamma(n + 1.0) - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0);
    sum += std::exp(log_c + j * std::log(x) + (n - j) * std::log1p(-x));
  }
  return sum;
}

double normal(Rng& rng) {
  // Box-Muller; uniform() is in [0, 1) so shift away from zero.
  const double u1 = 1.0 - rng.uniform();
  const double u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

TEST_CASE("nearest-rank percentile") {
  const std::vector<double> one{5.0};
  for (double q : {1.0, 50.0, 100.0}) CHECK(percentile(one, q) == 5.0);

  std::vector<double> hundred(100);
  for (int i = 0; i < 100; ++i) hundred[i] = i + 1.0;
  CHECK(percentile(hundred, 99.0) == 99.0);
  CHECK(percentile(hundred, 90.0) == 90.0);
  CHECK(percentile(hundred, 100.0) == 100.0);

  CHECK(percentile(std::vector<double>{3.0, 1.0, 2.0}, 50.0) == 2.0);
  CHECK_THROWS_AS(percentile(std::vector<double>{}, 50.0), std::invalid_argument);
  CHECK_THROWS_AS(percentile(one, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(percentile(one, 101.0), std::invalid_argument);
}

TEST_CASE("percentile is a permuted member of the sample") {
  Rng rng(31);
  for (int k = 0; k < 300; ++k) {
    std::vector<double> xs(1 + rng.index(60));
    for (double& x : xs) x = std::floor(rng.uniform(0.0, 20.0));
    const double q = rng.uniform(0.5, 100.0);
    const double p = percentile(xs, q);
    CHECK(std::find(xs.begin(), xs.end(), p) != xs.end());
    std::vector<double> shuffled = xs;
    std::reverse(shuffled.begin(), shuffled.end());
    CHECK(percentile(shuffled, q) == p);
  }
}

TEST_CASE("ANOVA hand example") {
  const AnovaResult r = anova_oneway({{1, 2, 3}, {4, 5, 6}});
  CHECK(r.sum_sq_factor == doctest::Approx(13.5));
  CHECK(r.df_factor == 1.0);
  CHECK(r.sum_sq_resid == doctest::Approx(4.0));
  CHECK(r.df_resid == 4.0);
  CHECK(r.F == doctest::Approx(13.5));
  // F(1, 4) survival at 13.5 is the two-sided t(4) tail at sqrt(13.5).
  CHECK(r.p == doctest::Approx(0.021312).epsilon(1e-4));
}

TEST_CASE("ANOVA degenerate cases") {
  const AnovaResult same = anova_oneway({{1, 2, 3}, {1, 2, 3}});
  CHECK(same.sum_sq_factor == 0.0);
  CHECK(same.F == 0.0);
  CHECK(same.p == 1.0);

  const AnovaResult split = anova_oneway({{1, 1, 1}, {2, 2, 2}});
  CHECK(std::isinf(split.F));
  CHECK(split.p == 0.0);

  CHECK_THROWS_AS(anova_oneway({{4, 4}, {4, 4}}), std::invalid_argument);
  CHECK_THROWS_AS(anova_oneway({{1, 2, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(anova_oneway({{1}, {2}}), std::invalid_argument);
  CHECK_THROWS_AS(anova_oneway({{1, 2}, {}}), std::invalid_argument);
}

TEST_CASE("ANOVA invariance under shift and scale") {
  Rng rng(12);
  for (int k = 0; k < 100; ++k) {
    std::vector<std::vector<double>> groups(2 + rng.index(4));
    for (auto& g : groups) {
      g.resize(2 + rng.index(6));
      for (double& v : g) v = normal(rng) + static_cast<double>(&g - groups.data()) * 0.3;
    }
    const AnovaResult base = anova_oneway(groups);
    auto shifted = groups;
    auto scaled = groups;
    for (auto& g : shifted)
      for (double& v : g) v += 17.25;
    for (auto& g : scaled)
      for (double& v : g) v *= 3.5;
    CHECK(anova_oneway(shifted).F == doctest::Approx(base.F).epsilon(1e-8));
    CHECK(anova_oneway(scaled).F == doctest::Approx(base.F).epsilon(1e-10));
    CHECK(base.p >= 0.0);
    CHECK(base.p <= 1.0);
  }
}

TEST_CASE("ANOVA p-values are uniform under the null") {
  Rng rng(2023, 7);
  std::vector<double> ps;
  for (int rep = 0; rep < 1000; ++rep) {
    std::vector<std::vector<double>> groups(4, std::vector<double>(6));
    for (auto& g : groups)
      for (double& v : g) v = normal(rng);
    ps.push_back(anova_oneway(groups).p);
  }
  std::sort(ps.begin(), ps.end());
  double d = 0.0;
  const double n = static_cast<double>(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i)
    d = std::max({d, (i + 1) / n - ps[i], ps[i] - i / n});
  CHECK(d < 1.628 / std::sqrt(n));  // Kolmogorov-Smirnov, 1% level
}

TEST_CASE("incomplete beta") {
  CHECK(reg_inc_beta(2.0, 3.0, 0.0) == 0.0);
  CHECK(reg_inc_beta(2.0, 3.0, 1.0) == 1.0);
  for (double x : {0.1, 0.37, 0.5, 0.93}) CHECK(reg_inc_beta(1.0, 1.0, x) == doctest::Approx(x).epsilon(1e-14));
  CHECK(std::abs(reg_inc_beta(2.0, 3.0, 0.5) - 0.6875) < 1e-12);

  for (int a = 1; a <= 30; a += 3)
    for (int b = 1; b <= 30; b += 4)
      for (double x = 0.01; x < 1.0; x += 0.049) CHECK(std::abs(reg_inc_beta(a, b, x) - binomial_tail(a, b, x)) < 1e-10);

  CHECK_THROWS(reg_inc_beta(0.0, 1.0, 0.5));
  CHECK_THROWS(reg_inc_beta(1.0, 1.0, 1.5));
}

TEST_CASE("incomplete beta symmetry and monotonicity") {
  Rng rng(6);
  for (int k = 0; k < 2000; ++k) {
    const double a = rng.uniform(0.1, 40.0);
    const double b = rng.uniform(0.1, 40.0);
    const double x = rng.uniform();
    CHECK(std::abs(reg_inc_beta(a, b, x) + reg_inc_beta(b, a, 1.0 - x) - 1.0) < 1e-10);
  }
  for (double a : {0.5, 2.0, 12.0}) {
    double prev = 0.0;
    for (double x = 0.0; x <= 1.0; x += 0.01) {
      const double v = reg_inc_beta(a, 3.5, std::min(x, 1.0));
      CHECK(v >= prev - 1e-15);
      prev = v;
    }
  }
}

TEST_CASE("F survival edge values") {
  CHECK(f_survival(0.0, 2.0, 10.0) == 1.0);
  CHECK(f_survival(std::numeric_limits<double>::infinity(), 2.0, 10.0) == 0.0);
  // F(2, d2) has a closed-form tail: (1 + 2f/d2)^(-d2/2).
  CHECK(f_survival(3.0, 2.0, 10.0) == doctest::Approx(std::pow(1.0 + 0.6, -5.0)).epsilon(1e-12));
}
