#include "optmed/solver_primal.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>

namespace optmed {

PathGeometry path_vectors(const SufficientStats& s, double ridgeScale) {
  if (s.p >= s.n)
    throw RegimeUnsupported("path_vectors requires p < n; use the dual solver");

  PathGeometry g;
  g.ridge = ridgeScale * s.V.trace() / static_cast<double>(s.p);
  MatrixXd Vr = s.V;
  Vr.diagonal().array() += g.ridge;
  Eigen::LLT<MatrixXd> llt(Vr);
  if (llt.info() != Eigen::Success)
    throw FactorisationFailure("V + eps I is not positive definite");

  g.pvec = llt.solve(s.a);
  g.qvec = llt.solve(s.z);
  g.normP = std::sqrt(std::max(0.0, s.a.dot(g.pvec)));
  g.normQ = std::sqrt(std::max(0.0, s.z.dot(g.qvec)));
  if (g.normP > 0.0 && g.normQ > 0.0) {
    g.cosPhi = s.a.dot(g.qvec) / (g.normP * g.normQ);
    g.cosPhi = std::clamp(g.cosPhi, -1.0, 1.0);
  }
  return g;
}

namespace detail {

void orient_and_classify(VectorXd& w, PathCoefficients& c, EffectType& type,
                         double betaSignal, double normY2) {
  const double nw = w.norm();
  if (nw > 0.0) w /= nw;
  if (c.alpha < 0.0 || (c.alpha == 0.0 && c.beta < 0.0)) {
    w = -w;
    c.alpha = -c.alpha;
    c.beta = -c.beta;
  }
  if (betaSignal <= 1e-10 * std::sqrt(normY2))
    type = EffectType::degenerate;
  else if (c.beta > 0.0)
    type = EffectType::concordant;
  else if (c.beta < 0.0)
    type = EffectType::suppression;
  else
    type = EffectType::degenerate;
}

}  // namespace detail

MediatorFit maxie_fit_primal(const SufficientStats& s, double ridgeScale) {
  const PathGeometry g = path_vectors(s, ridgeScale);
  if (g.normP <= 1e-10 * std::sqrt(s.normA2) ||
      g.normQ <= 1e-10 * std::sqrt(s.normY2))
    throw DegeneratePath("one structural path is empty; the cosine test is "
                         "the appropriate tool here");

  MediatorFit fit;
  fit.regime = Regime::primal;
  fit.cosPhi = g.cosPhi;
  fit.pathStrength = g.normP * g.normQ / s.normA2;

  const VectorXd pu = g.pvec / g.normP;
  const VectorXd qu = g.qvec / g.normQ;
  const double tol = 1e-12;

  // concordant bisector vanishes as cosPhi -> -1, suppression as cosPhi -> 1
  if (1.0 + g.cosPhi > tol) {
    fit.wPlus = pu + qu;
    fit.coefPlus = path_coefficients(fit.wPlus, s);
    const double sig = std::abs(fit.wPlus.dot(s.z)) /
                       std::sqrt(fit.wPlus.dot(s.V * fit.wPlus));
    detail::orient_and_classify(fit.wPlus, fit.coefPlus, fit.effectTypePlus,
                                sig, s.normY2);
  } else {
    fit.wPlus = VectorXd::Zero(s.p);
    fit.effectTypePlus = EffectType::degenerate;
  }
  if (1.0 - g.cosPhi > tol) {
    fit.wMinus = pu - qu;
    fit.coefMinus = path_coefficients(fit.wMinus, s);
    const double sig = std::abs(fit.wMinus.dot(s.z)) /
                       std::sqrt(fit.wMinus.dot(s.V * fit.wMinus));
    detail::orient_and_classify(fit.wMinus, fit.coefMinus, fit.effectTypeMinus,
                                sig, s.normY2);
  } else {
    fit.wMinus = VectorXd::Zero(s.p);
    fit.effectTypeMinus = EffectType::degenerate;
  }
  return fit;
}

double alignment(const VectorXd& w, const PathGeometry& g,
                 const SufficientStats& s) {
  const double wVw = w.dot(s.V * w);
  const double scale =
      (s.V.trace() / static_cast<double>(s.p)) * w.squaredNorm();
  if (wVw <= detail::kDegenerateRel * scale)
    throw DegenerateComposite("w'Vw is numerically zero");
  return (w.dot(s.a) / (std::sqrt(wVw) * g.normP)) *
         (w.dot(s.z) / (std::sqrt(wVw) * g.normQ));
}

}  // namespace optmed
