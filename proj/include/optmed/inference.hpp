#pragma once

#include <vector>

#include "optmed/core_stats.hpp"
#include "optmed/solver_primal.hpp"

namespace optmed {

struct CosineTest {
  double cosPhi = 0.0;
  double T = 0.0;
  Eigen::Index df = 0;  // p-1 primal, n-2 dual
  double pTwoSided = 1.0;
  double pConcordant = 0.5;   // P(t >= T), upper tail
  double pSuppression = 0.5;  // P(t <= T)
  Regime regime = Regime::primal;
};

struct PowerResult {
  double phi0 = 0.0;  // radians; NaN when power is requested from delta directly
  Eigen::Index df = 0;
  double delta = 0.0;
  double alphaLevel = 0.05;
  double power = 0.0;
  bool detectable = false;  // |delta| exceeds the t critical value
};

struct BetaFitCheck {
  double ks = 0.0;
  double pValue = 1.0;
  double sampleMean = 0.0;
  double theoreticalMean = 0.0;  // 1/p
};

struct IutResult {
  double pAlpha = 1.0;  // omnibus F of A ~ X
  double pBeta = 1.0;   // incremental F of Y ~ X after A
  double p = 1.0;       // max of the two
};

CosineTest cosine_test(double cosPhi, Eigen::Index df,
                       Regime regime = Regime::primal);
inline CosineTest cosine_test_primal(double cosPhi, Eigen::Index p) {
  return cosine_test(cosPhi, p - 1, Regime::primal);
}
inline CosineTest cosine_test_dual(double cosPhi, Eigen::Index n) {
  return cosine_test(cosPhi, n - 2, Regime::dual);
}

// Goodness of fit of cos^2(phi) null samples against Beta(1/2, (p-1)/2).
BetaFitCheck null_beta_check(const std::vector<double>& cos2Samples,
                             Eigen::Index p);

IutResult iut_test(const Dataset& d);

// delta = cot(phi0) * sqrt(p - 1)
double noncentrality_primal(double phi0Metric, Eigen::Index p);
// delta = cot(phi0) * sqrt(n - 2)
double noncentrality_dual(double phi0, Eigen::Index n);

PowerResult power_noncentral_t(double delta, Eigen::Index df,
                               double alphaLevel);

// Angle between alpha0 and beta0 in the SigmaZ^-1 metric, in radians.
double population_angle(const VectorXd& alpha0, const VectorXd& beta0,
                        const MatrixXd& SigmaZ);

}  // namespace optmed
