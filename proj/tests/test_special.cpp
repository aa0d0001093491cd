#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "optmed/rng.hpp"
#include "optmed/special.hpp"

using optmed::special::beta_cdf;
using optmed::special::f_cdf;
using optmed::special::ks_pvalue;
using optmed::special::ks_statistic;
using optmed::special::noncentral_t_cdf;
using optmed::special::t_cdf;
using optmed::special::t_quantile;

namespace {

// adaptive Simpson quadrature, the oracle integrator for every CDF here
double simpson(const std::function<double(double)>& f, double a, double b,
               double fa, double fb, double fm, double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * eps)
    return left + right + (left + right - whole) / 15.0;
  return simpson(f, a, m, fa, fm, flm, eps / 2.0, depth - 1) +
         simpson(f, m, b, fm, fb, frm, eps / 2.0, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double eps = 1e-12) {
  const double m = 0.5 * (a + b);
  return simpson(f, a, b, f(a), f(b), f(m), eps, 48);
}

double t_pdf(double x, double nu) {
  const double lc = std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) -
                    0.5 * std::log(nu * M_PI);
  return std::exp(lc - 0.5 * (nu + 1.0) * std::log1p(x * x / nu));
}

double t_cdf_oracle(double x, double nu) {
  if (x < 0.0) return 1.0 - t_cdf_oracle(-x, nu);
  return 0.5 + integrate([&](double u) { return t_pdf(u, nu); }, 0.0, x);
}

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// P(T <= x) for T = (Z + delta)/sqrt(W/nu): E[Phi(x sqrt(U) - delta)] with
// U = W/nu, integrated against the scaled chi-square density.
double nct_cdf_oracle(double x, double nu, double delta) {
  const double logNorm =
      0.5 * nu * std::log(0.5 * nu) - std::lgamma(0.5 * nu);
  auto dens = [&](double u) {
    return std::exp(logNorm + (0.5 * nu - 1.0) * std::log(u) - 0.5 * nu * u);
  };
  const double sd = std::sqrt(2.0 / nu);
  const double lo = std::max(1e-12, 1.0 - 12.0 * sd);
  const double hi = 1.0 + 12.0 * sd + 5.0 / nu;
  return integrate(
      [&](double u) {
        return std_normal_cdf(x * std::sqrt(u) - delta) * dens(u);
      },
      lo, hi, 1e-10);
}

double beta_pdf(double x, double a, double b) {
  const double lb =
      std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b);
  return std::exp(lb + (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x));
}

}  // namespace

TEST_CASE("t_cdf is exactly one half at zero") {
  for (double nu : {1.0, 3.0, 10.0, 99.0, 2915.0})
    CHECK(t_cdf(0.0, nu) == 0.5);
}

TEST_CASE("t_cdf matches the quadrature oracle") {
  for (double nu : {2.0, 5.0, 30.0, 99.0, 1000.0})
    for (double x : {-3.0, -1.0, -0.2, 0.5, 1.0, 2.5, 4.0})
      CHECK(t_cdf(x, nu) == doctest::Approx(t_cdf_oracle(x, nu)).epsilon(1e-10));
}

TEST_CASE("t_cdf is monotone and symmetric") {
  const double nu = 7.0;
  double prev = 0.0;
  for (double x = -6.0; x <= 6.0; x += 0.25) {
    const double c = t_cdf(x, nu);
    CHECK(c >= prev);
    prev = c;
    CHECK(c + t_cdf(-x, nu) == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("t_quantile inverts t_cdf") {
  for (double nu : {3.0, 38.0, 99.0})
    for (double prob : {0.01, 0.2, 0.5, 0.8, 0.975, 0.999}) {
      const double q = t_quantile(prob, nu);
      CHECK(t_cdf(q, nu) == doctest::Approx(prob).epsilon(1e-10));
    }
}

TEST_CASE("noncentral t matches the quadrature oracle") {
  for (double nu : {5.0, 38.0, 99.0, 5000.0})
    for (double delta : {-2.0, 0.0, 1.0, 3.56, 10.0})
      for (double x : {-2.0, 0.0, 2.02, 5.0}) {
        const double diff =
            noncentral_t_cdf(x, nu, delta) - nct_cdf_oracle(x, nu, delta);
        CHECK(std::abs(diff) <= 1e-6);
      }
}

TEST_CASE("noncentral t with delta 0 is the central t") {
  for (double nu : {4.0, 50.0})
    for (double x : {-1.5, 0.0, 2.0})
      CHECK(noncentral_t_cdf(x, nu, 0.0) ==
            doctest::Approx(t_cdf(x, nu)).epsilon(1e-12));
}

TEST_CASE("beta_cdf matches the quadrature oracle") {
  for (auto [a, b] : std::vector<std::pair<double, double>>{
           {0.5, 9.5}, {0.5, 49.5}, {2.0, 3.0}}) {
    for (double x : {0.02, 0.1, 0.3, 0.7, 0.95}) {
      // substitute u = t^2 to tame the u^{a-1} endpoint singularity
      const double oracle = integrate(
          [&](double t) {
            return 2.0 * std::pow(t, 2.0 * a - 1.0) *
                   std::pow(1.0 - t * t, b - 1.0) / std::beta(a, b);
          },
          0.0, std::sqrt(x));
      CHECK(beta_cdf(x, a, b) == doctest::Approx(oracle).epsilon(1e-9));
    }
  }
  CHECK(beta_cdf(0.0, 0.5, 2.0) == 0.0);
  CHECK(beta_cdf(1.0, 0.5, 2.0) == 1.0);
}

TEST_CASE("f_cdf against the beta identity") {
  // F(d1, d2) <= x iff Beta(d1/2, d2/2) <= d1 x / (d1 x + d2)
  for (auto [d1, d2] : std::vector<std::pair<double, double>>{
           {20.0, 179.0}, {5.0, 10.0}}) {
    for (double x : {0.5, 1.0, 1.7, 3.0}) {
      const double y = d1 * x / (d1 * x + d2);
      CHECK(f_cdf(x, d1, d2) ==
            doctest::Approx(beta_cdf(y, d1 / 2.0, d2 / 2.0)).epsilon(1e-10));
    }
  }
}

TEST_CASE("ks statistic by definition") {
  // uniform cdf, samples {0.1, 0.5, 0.9}: sup gap at 0.5 is |1/3 - 0.5|...
  // max over steps: i/n - F(x_i) and F(x_i) - (i-1)/n
  std::vector<double> s{0.1, 0.5, 0.9};
  const double d = ks_statistic(s, [](double x) { return x; });
  CHECK(d == doctest::Approx(7.0 / 30.0));  // at x=0.9: 0.9 - 2/3
  // single sample
  std::vector<double> one{0.3};
  CHECK(ks_statistic(one, [](double x) { return x; }) ==
        doctest::Approx(0.7));
}

TEST_CASE("ks p-value calibration on uniform samples") {
  // under the null the KS p-value is itself roughly uniform; check the
  // rejection rate at 0.1 over 200 seeded runs
  int rejections = 0;
  for (int r = 0; r < 200; ++r) {
    optmed::RngStream rng(600, static_cast<std::uint64_t>(r));
    std::vector<double> s(100);
    for (auto& x : s) x = rng.uniform();
    const double d = ks_statistic(s, [](double x) { return x; });
    if (ks_pvalue(d, s.size()) < 0.1) ++rejections;
  }
  CHECK(rejections >= 6);
  CHECK(rejections <= 40);
}
