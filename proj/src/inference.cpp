#include "optmed/inference.hpp"

#include <Eigen/Cholesky>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <limits>

#include "optmed/special.hpp"

namespace optmed {

CosineTest cosine_test(double cosPhi, Eigen::Index df, Regime regime) {
  if (std::abs(cosPhi) > 1.0 + 1e-9)
    throw InvalidCosine("|cos phi| exceeds 1");
  if (df < 1) throw InsufficientDf("cosine test needs df >= 1");
  cosPhi = std::clamp(cosPhi, -1.0, 1.0);

  CosineTest out;
  out.cosPhi = cosPhi;
  out.df = df;
  out.regime = regime;
  if (std::abs(cosPhi) == 1.0) {
    out.T = std::copysign(std::numeric_limits<double>::infinity(), cosPhi);
    out.pConcordant = cosPhi > 0.0 ? 0.0 : 1.0;
    out.pSuppression = 1.0 - out.pConcordant;
    out.pTwoSided = 0.0;
    return out;
  }
  out.T = cosPhi * std::sqrt(static_cast<double>(df) /
                             (1.0 - cosPhi * cosPhi));
  out.pSuppression = special::t_cdf(out.T, static_cast<double>(df));
  out.pConcordant = special::t_cdf(-out.T, static_cast<double>(df));
  out.pTwoSided = 2.0 * std::min(out.pConcordant, out.pSuppression);
  return out;
}

BetaFitCheck null_beta_check(const std::vector<double>& cos2Samples,
                             Eigen::Index p) {
  BetaFitCheck out;
  out.theoreticalMean = 1.0 / static_cast<double>(p);
  double sum = 0.0;
  for (double x : cos2Samples) sum += x;
  out.sampleMean = cos2Samples.empty() ? 0.0 : sum / cos2Samples.size();
  const double a = 0.5, b = 0.5 * static_cast<double>(p - 1);
  out.ks = special::ks_statistic(
      cos2Samples, [&](double x) { return special::beta_cdf(x, a, b); });
  out.pValue = special::ks_pvalue(out.ks, cos2Samples.size());
  return out;
}

IutResult iut_test(const Dataset& d) {
  if (!d.centred) throw DegenerateData("iut_test needs a centred dataset");
  const Eigen::Index n = d.n(), p = d.p();
  if (n <= p + 2) throw InsufficientDf("IUT needs n > p + 2");

  IutResult out;
  const Eigen::ColPivHouseholderQR<MatrixXd> qrX(d.X);

  // omnibus F of A ~ X, df (p, n-p-1); the intercept df is already spent
  // by centring
  {
    const double rssFull = (d.A - d.X * qrX.solve(d.A)).squaredNorm();
    const double rssNull = d.A.squaredNorm();
    const double dfRes = static_cast<double>(n - p - 1);
    const double F =
        ((rssNull - rssFull) / static_cast<double>(p)) / (rssFull / dfRes);
    out.pAlpha = 1.0 - special::f_cdf(F, static_cast<double>(p), dfRes);
  }

  // F of Y ~ Z with Z = Q_A X, df (p, n-p-2): A's df is spent building Z,
  // and the tau A component of Y deliberately stays in the residual
  {
    MatrixXd Z = d.X;
    const VectorXd Ahat = d.A / d.A.norm();
    Z -= Ahat * (Ahat.transpose() * Z);
    const double rssFull =
        (d.Y - Z * Z.colPivHouseholderQr().solve(d.Y)).squaredNorm();
    const double rssNull = d.Y.squaredNorm();
    const double dfRes = static_cast<double>(n - p - 2);
    const double F =
        ((rssNull - rssFull) / static_cast<double>(p)) / (rssFull / dfRes);
    out.pBeta = 1.0 - special::f_cdf(F, static_cast<double>(p), dfRes);
  }

  out.p = std::max(out.pAlpha, out.pBeta);
  return out;
}

double noncentrality_primal(double phi0Metric, Eigen::Index p) {
  return (std::cos(phi0Metric) / std::sin(phi0Metric)) *
         std::sqrt(static_cast<double>(p - 1));
}

double noncentrality_dual(double phi0, Eigen::Index n) {
  return (std::cos(phi0) / std::sin(phi0)) *
         std::sqrt(static_cast<double>(n - 2));
}

PowerResult power_noncentral_t(double delta, Eigen::Index df,
                               double alphaLevel) {
  PowerResult out;
  out.phi0 = std::numeric_limits<double>::quiet_NaN();
  out.df = df;
  out.delta = delta;
  out.alphaLevel = alphaLevel;
  const double nu = static_cast<double>(df);
  const double tcrit = special::t_quantile(1.0 - alphaLevel / 2.0, nu);
  out.power = 1.0 - special::noncentral_t_cdf(tcrit, nu, delta) +
              special::noncentral_t_cdf(-tcrit, nu, delta);
  out.detectable = std::abs(delta) > tcrit;
  return out;
}

double population_angle(const VectorXd& alpha0, const VectorXd& beta0,
                        const MatrixXd& SigmaZ) {
  if (alpha0.norm() == 0.0 || beta0.norm() == 0.0)
    throw ZeroPathVector("population path vector is zero");
  Eigen::LLT<MatrixXd> llt(SigmaZ);
  if (llt.info() != Eigen::Success)
    throw SingularMetric("SigmaZ is not positive definite");
  const VectorXd ia = llt.solve(alpha0);
  const VectorXd ib = llt.solve(beta0);
  const double num = alpha0.dot(ib);
  const double den = std::sqrt(alpha0.dot(ia) * beta0.dot(ib));
  if (den <= 0.0) throw SingularMetric("degenerate metric norms");
  return std::acos(std::clamp(num / den, -1.0, 1.0));
}

}  // namespace optmed
