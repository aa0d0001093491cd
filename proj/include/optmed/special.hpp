#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace optmed::special {

// Central Student t. t_cdf(0, nu) == 0.5 exactly.
double t_cdf(double x, double nu);
double t_quantile(double prob, double nu);

// Noncentral t CDF, good to well under 1e-6 for |delta| <= 10, nu <= 5000.
double noncentral_t_cdf(double x, double nu, double delta);

double beta_cdf(double x, double a, double b);

double f_cdf(double x, double df1, double df2);

// One-sample Kolmogorov-Smirnov statistic against an arbitrary CDF.
double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf);

// Asymptotic p-value for the KS statistic at sample size n.
double ks_pvalue(double stat, std::size_t n);

}  // namespace optmed::special
