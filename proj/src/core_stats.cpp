#include "optmed/core_stats.hpp"

#include <cmath>

namespace optmed {

namespace {

void require_finite(const Dataset& d) {
  if (!d.X.allFinite() || !d.A.allFinite() || !d.Y.allFinite())
    throw NonFiniteInput("dataset contains non-finite entries");
}

std::string column_name(const Dataset& d, Eigen::Index j) {
  if (j < static_cast<Eigen::Index>(d.names.size())) return d.names[j];
  return "X" + std::to_string(j + 1);
}

}  // namespace

Dataset center_and_standardise(const Dataset& raw, bool standardise) {
  require_finite(raw);
  const Eigen::Index n = raw.n(), p = raw.p();
  if (n < 3) throw DegenerateData("need n >= 3 observations");
  if (p < 1) throw DegenerateData("need at least one mediator column");

  Dataset d = raw;
  // centre first; the order relative to scaling is fixed here
  d.A.array() -= d.A.mean();
  d.Y.array() -= d.Y.mean();
  for (Eigen::Index j = 0; j < p; ++j) d.X.col(j).array() -= d.X.col(j).mean();

  if (d.A.squaredNorm() == 0.0) throw ZeroVarianceColumn("A");
  if (d.Y.squaredNorm() == 0.0) throw ZeroVarianceColumn("Y");
  for (Eigen::Index j = 0; j < p; ++j) {
    const double ss = d.X.col(j).squaredNorm();
    if (ss == 0.0) throw ZeroVarianceColumn(column_name(d, j));
    if (standardise) {
      const double sd = std::sqrt(ss / static_cast<double>(n - 1));
      d.X.col(j) /= sd;
    }
  }
  d.centred = true;
  d.standardised = standardise;
  return d;
}

SufficientStats compute_sufficient_stats(const Dataset& d) {
  if (!d.centred) throw DegenerateData("compute_sufficient_stats needs a centred dataset");
  SufficientStats s;
  s.n = d.n();
  s.p = d.p();
  s.normA2 = d.A.squaredNorm();
  if (s.normA2 <= 0.0) throw DegenerateTreatment("treatment vector has zero norm");
  s.AtY = d.A.dot(d.Y);
  s.normY2 = d.Y.squaredNorm();
  s.a = d.X.transpose() * d.A;
  s.z = d.X.transpose() * d.Y - (s.AtY / s.normA2) * s.a;
  s.V = MatrixXd(s.p, s.p);
  s.V.setZero();
  s.V.selfadjointView<Eigen::Lower>().rankUpdate(d.X.transpose());
  s.V = s.V.selfadjointView<Eigen::Lower>();
  s.V.noalias() -= (s.a * s.a.transpose()) / s.normA2;
  s.V = 0.5 * (s.V + s.V.transpose().eval());
  return s;
}

PathCoefficients path_coefficients(const VectorXd& w, const SufficientStats& s) {
  const double wVw = w.dot(s.V * w);
  const double scale =
      (s.V.trace() / static_cast<double>(s.p)) * w.squaredNorm();
  if (wVw <= detail::kDegenerateRel * scale)
    throw DegenerateComposite("composite lies in the span of the treatment");

  PathCoefficients c;
  c.alpha = w.dot(s.a) / s.normA2;
  c.beta = w.dot(s.z) / wVw;
  c.h = c.alpha * c.beta;
  c.tau = s.AtY / s.normA2;
  const double tauTol = 1e-12 * std::sqrt(s.normY2 / s.normA2);
  c.propMediatedDefined = std::abs(c.tau) >= tauTol;
  c.propMediated = c.propMediatedDefined ? c.h / c.tau : 0.0;
  return c;
}

MediationSummary evaluate_composite(const VectorXd& w, const Dataset& d) {
  if (!d.centred) throw DegenerateData("evaluate_composite needs a centred dataset");
  const double normA2 = d.A.squaredNorm();
  if (normA2 <= 0.0) throw DegenerateTreatment("treatment vector has zero norm");

  const VectorXd m = d.X * w;
  const double mNorm = m.norm();
  if (mNorm == 0.0) throw DegenerateComposite("Xw is identically zero");

  const VectorXd mPerp = m - (d.A.dot(m) / normA2) * d.A;
  const double mPerpNorm = mPerp.norm();
  const double scale = (d.X.squaredNorm() / static_cast<double>(d.p())) *
                       w.squaredNorm();
  if (mPerpNorm * mPerpNorm <= detail::kDegenerateRel * scale)
    throw DegenerateComposite("composite lies in the span of the treatment");

  MediationSummary out;
  out.r_MA = d.A.dot(m) / (mNorm * d.A.norm());
  out.r_MperpY = mPerp.dot(d.Y) / (mPerpNorm * d.Y.norm());
  out.fstar = out.r_MA * out.r_MperpY;
  out.tau = d.A.dot(d.Y) / normA2;
  const double alpha = d.A.dot(m) / normA2;
  const double beta = mPerp.dot(d.Y) / mPerp.squaredNorm();
  out.h = alpha * beta;
  const double sdA = d.A.norm() / std::sqrt(static_cast<double>(d.n() - 1));
  const double sdY = d.Y.norm() / std::sqrt(static_cast<double>(d.n() - 1));
  const double tauTol = 1e-12 * sdY * sdA;
  out.propMediatedDefined = std::abs(out.tau) >= tauTol;
  out.propMediated = out.propMediatedDefined ? out.h / out.tau : 0.0;
  return out;
}

}  // namespace optmed
