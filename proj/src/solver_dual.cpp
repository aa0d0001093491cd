#include "optmed/solver_dual.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace optmed {

VectorXd DualGeometry::pinv_apply(const VectorXd& v) const {
  const VectorXd coeff = eigenvectors.transpose() * v;
  return eigenvectors * (coeff.array() / eigenvalues.array()).matrix();
}

DualPrecursor dual_statistics(const Dataset& d) {
  if (!d.centred) throw DegenerateData("dual_statistics needs a centred dataset");
  DualPrecursor pre;
  pre.n = d.n();
  pre.p = d.p();
  pre.normA2 = d.A.squaredNorm();
  if (pre.normA2 <= 0.0) throw DegenerateTreatment("treatment vector has zero norm");
  pre.AtY = d.A.dot(d.Y);
  pre.normY2 = d.Y.squaredNorm();

  MatrixXd K(pre.n, pre.n);
  K.setZero();
  K.selfadjointView<Eigen::Lower>().rankUpdate(d.X);
  K = K.selfadjointView<Eigen::Lower>();

  const VectorXd QAY = d.Y - (pre.AtY / pre.normA2) * d.A;
  pre.aTilde = K * d.A;
  pre.zTilde = K * QAY;

  // KZ = Q_A K Q_A via two rank-1 corrections
  const VectorXd m = pre.aTilde / pre.normA2;  // K A / |A|^2
  pre.KZ = K;
  pre.KZ.noalias() -= m * d.A.transpose();
  pre.KZ.noalias() -= d.A * m.transpose();
  pre.KZ.noalias() += (d.A.dot(m) / pre.normA2) * (d.A * d.A.transpose());
  pre.KZ = 0.5 * (pre.KZ + pre.KZ.transpose().eval());
  return pre;
}

DualGeometry dual_path_vectors(const DualPrecursor& pre, double eigCutoff) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(pre.KZ);
  if (eig.info() != Eigen::Success)
    throw FactorisationFailure("eigendecomposition of K_Z failed");

  const VectorXd& lam = eig.eigenvalues();
  const double lamMax = lam.maxCoeff();
  const double cut = eigCutoff * std::max(lamMax, 0.0);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    if (lam(i) > cut && lam(i) > 0.0) ++rank;
  if (rank == 0) throw ZeroKernel("all eigenvalues of K_Z are below the cutoff");

  DualGeometry g;
  g.eigCutoff = eigCutoff;
  g.rankKZ = rank;
  g.eigenvalues = lam.tail(rank);  // eigenvalues are sorted ascending
  g.eigenvectors = eig.eigenvectors().rightCols(rank);
  g.aTilde = pre.aTilde;
  g.zTilde = pre.zTilde;
  g.pTilde = g.pinv_apply(pre.aTilde);
  g.qTilde = g.pinv_apply(pre.zTilde);

  const double np = g.pTilde.norm(), nq = g.qTilde.norm();
  if (np > 0.0 && nq > 0.0)
    g.cosPhi = std::clamp(g.pTilde.dot(g.qTilde) / (np * nq), -1.0, 1.0);
  return g;
}

MediatorFit maxie_fit_dual(const Dataset& d, double eigCutoff) {
  const DualPrecursor pre = dual_statistics(d);
  const DualGeometry g = dual_path_vectors(pre, eigCutoff);

  const double normPt = g.pTilde.norm();  // == |p|_V
  const double normQt = g.qTilde.norm();
  if (normPt <= 1e-10 * std::sqrt(pre.normA2) ||
      normQt <= 1e-10 * std::sqrt(pre.normY2))
    throw DegeneratePath("one structural path is empty in the dual geometry");

  MediatorFit fit;
  fit.regime = Regime::dual;
  fit.cosPhi = g.cosPhi;
  fit.pathStrength = normPt * normQt / pre.normA2;

  // Z materialised only for the O(np) recovery products
  const MatrixXd Z = d.X - (d.A / pre.normA2) * (d.A.transpose() * d.X);
  const VectorXd QAY = d.Y - (pre.AtY / pre.normA2) * d.A;

  auto recover = [&](double sign) -> VectorXd {
    const VectorXd dir = g.pTilde / normPt + sign * (g.qTilde / normQt);
    return Z.transpose() * g.pinv_apply(dir);
  };
  auto coefficients = [&](const VectorXd& w, PathCoefficients& c,
                          double& betaSignal) {
    const VectorXd zw = Z * w;
    const double wVw = zw.squaredNorm();
    const double scale =
        (Z.squaredNorm() / static_cast<double>(pre.p)) * w.squaredNorm();
    if (wVw <= detail::kDegenerateRel * scale)
      throw DegenerateComposite("recovered composite lies in span of A");
    c.alpha = d.A.dot(d.X * w) / pre.normA2;
    c.beta = zw.dot(QAY) / wVw;
    c.h = c.alpha * c.beta;
    c.tau = pre.AtY / pre.normA2;
    const double tauTol = 1e-12 * std::sqrt(pre.normY2 / pre.normA2);
    c.propMediatedDefined = std::abs(c.tau) >= tauTol;
    c.propMediated = c.propMediatedDefined ? c.h / c.tau : 0.0;
    betaSignal = std::abs(zw.dot(QAY)) / std::sqrt(wVw);
  };

  const double tol = 1e-12;
  if (1.0 + g.cosPhi > tol) {
    fit.wPlus = recover(+1.0);
    double sig = 0.0;
    coefficients(fit.wPlus, fit.coefPlus, sig);
    detail::orient_and_classify(fit.wPlus, fit.coefPlus, fit.effectTypePlus,
                                sig, pre.normY2);
  } else {
    fit.wPlus = VectorXd::Zero(pre.p);
    fit.effectTypePlus = EffectType::degenerate;
  }
  if (1.0 - g.cosPhi > tol) {
    fit.wMinus = recover(-1.0);
    double sig = 0.0;
    coefficients(fit.wMinus, fit.coefMinus, sig);
    detail::orient_and_classify(fit.wMinus, fit.coefMinus, fit.effectTypeMinus,
                                sig, pre.normY2);
  } else {
    fit.wMinus = VectorXd::Zero(pre.p);
    fit.effectTypeMinus = EffectType::degenerate;
  }
  return fit;
}

Regime select_regime(Eigen::Index n, Eigen::Index p) {
  if (n < 3 || p < 1) throw DegenerateData("need n >= 3 and p >= 1");
  return p < n ? Regime::primal : Regime::dual;
}

}  // namespace optmed
