#include "optmed/special.hpp"

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/non_central_t.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <algorithm>
#include <cmath>

namespace optmed::special {

double t_cdf(double x, double nu) {
  if (x == 0.0) return 0.5;
  return boost::math::cdf(boost::math::students_t(nu), x);
}

double t_quantile(double prob, double nu) {
  return boost::math::quantile(boost::math::students_t(nu), prob);
}

double noncentral_t_cdf(double x, double nu, double delta) {
  if (delta == 0.0) return t_cdf(x, nu);
  return boost::math::cdf(boost::math::non_central_t(nu, delta), x);
}

double beta_cdf(double x, double a, double b) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return boost::math::cdf(boost::math::beta_distribution<double>(a, b), x);
}

double f_cdf(double x, double df1, double df2) {
  if (x <= 0.0) return 0.0;
  return boost::math::cdf(boost::math::fisher_f(df1, df2), x);
}

double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double F = cdf(samples[i]);
    d = std::max(d, std::abs(F - static_cast<double>(i) / n));
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - F));
  }
  return d;
}

double ks_pvalue(double stat, std::size_t n) {
  // Kolmogorov limiting distribution with the usual finite-n adjustment
  const double sn = std::sqrt(static_cast<double>(n));
  const double lambda = (sn + 0.12 + 0.11 / sn) * stat;
  if (lambda < 1e-8) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term =
        2.0 * ((k % 2 == 1) ? 1.0 : -1.0) *
        std::exp(-2.0 * static_cast<double>(k) * k * lambda * lambda);
    sum += term;
    if (std::abs(term) < 1e-12) break;
  }
  return std::clamp(sum, 0.0, 1.0);
}

}  // namespace optmed::special
