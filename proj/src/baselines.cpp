#include "optmed/baselines.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <limits>

#include "optmed/rng.hpp"

namespace optmed {

namespace {

MatrixXd gram_with_ridge(const Dataset& d, double ridgeScale) {
  const Eigen::Index p = d.p();
  MatrixXd G(p, p);
  G.setZero();
  G.selfadjointView<Eigen::Lower>().rankUpdate(d.X.transpose());
  G = G.selfadjointView<Eigen::Lower>();
  G.diagonal().array() += ridgeScale * G.trace() / static_cast<double>(p);
  return G;
}

VectorXd gram_solve(const Dataset& d, const VectorXd& rhs, double ridgeScale) {
  Eigen::LLT<MatrixXd> llt(gram_with_ridge(d, ridgeScale));
  if (llt.info() != Eigen::Success)
    throw FactorisationFailure("X'X is not positive definite");
  return llt.solve(rhs);
}

}  // namespace

VectorXd reg_y_on_x(const Dataset& d, double ridgeScale) {
  if (d.n() <= d.p()) throw RegimeUnsupported("reg_y_on_x requires n > p");
  return gram_solve(d, d.X.transpose() * d.Y, ridgeScale);
}

VectorXd reg_a_on_x(const Dataset& d, double ridgeScale) {
  if (d.n() <= d.p()) throw RegimeUnsupported("reg_a_on_x requires n > p");
  return gram_solve(d, d.X.transpose() * d.A, ridgeScale);
}

double objective_value(OracleObjective obj, const VectorXd& w,
                       const SufficientStats& s) {
  const double u = w.dot(s.a);
  const double v = w.dot(s.z);
  const double t = w.dot(s.V * w);
  if (t <= 0.0) return 0.0;
  if (obj == OracleObjective::h) return u * v / (s.normA2 * t);
  const double g = t + u * u / s.normA2;
  return (u * v) / std::sqrt(g * t * s.normA2 * s.normY2);
}

VectorXd objective_gradient(OracleObjective obj, const VectorXd& w,
                            const SufficientStats& s) {
  const double u = w.dot(s.a);
  const double v = w.dot(s.z);
  const VectorXd Vw = s.V * w;
  const double t = w.dot(Vw);
  if (obj == OracleObjective::h) {
    const double hval = u * v / (s.normA2 * t);
    return (v * s.a + u * s.z) / (s.normA2 * t) - (2.0 * hval / t) * Vw;
  }
  const VectorXd Gw = Vw + (u / s.normA2) * s.a;
  const double g = t + u * u / s.normA2;
  const double c = 1.0 / std::sqrt(s.normA2 * s.normY2);
  const double r = 1.0 / std::sqrt(g * t);
  return c * (r * (v * s.a + u * s.z) -
              (u * v * r) * (Gw / g + Vw / t));
}

OracleResult numerical_oracle(const SufficientStats& s, OracleObjective obj,
                              const OracleConfig& cfg) {
  if (s.p >= s.n)
    throw RegimeUnsupported("numerical oracle requires p < n");

  OracleResult best;
  best.value = -std::numeric_limits<double>::infinity();
  bool allConverged = true;
  double gradErr = 0.0;

  for (int r = 0; r < cfg.restarts; ++r) {
    RngStream rng(cfg.seed, 0x9e1ac1e5ULL, static_cast<std::uint64_t>(r));
    VectorXd w(s.p);
    for (Eigen::Index j = 0; j < s.p; ++j) w(j) = rng.normal();
    w.normalize();

    // gradient sanity at a random point of this restart
    {
      const VectorXd g = objective_gradient(obj, w, s);
      const double step = 1e-6;
      double maxRel = 0.0;
      for (int k = 0; k < 5; ++k) {
        VectorXd dir(s.p);
        for (Eigen::Index j = 0; j < s.p; ++j) dir(j) = rng.normal();
        dir.normalize();
        const double fd = (objective_value(obj, w + step * dir, s) -
                           objective_value(obj, w - step * dir, s)) /
                          (2.0 * step);
        const double an = g.dot(dir);
        const double denom = std::max({std::abs(fd), std::abs(an), 1e-8});
        maxRel = std::max(maxRel, std::abs(fd - an) / denom);
      }
      gradErr = std::max(gradErr, maxRel);
    }

    double fw = objective_value(obj, w, s);
    double step = 1.0;
    bool converged = false;
    for (int it = 0; it < cfg.maxIter; ++it) {
      VectorXd grad = objective_gradient(obj, w, s);
      grad -= grad.dot(w) * w;  // tangent to the sphere
      const double gn = grad.norm();
      if (gn <= cfg.gradTol * std::max(1.0, std::abs(fw))) {
        converged = true;
        break;
      }
      // backtracking line search with a slowly growing trial step
      step = std::min(step * 2.0, 1e6 / std::max(gn, 1e-300));
      bool moved = false;
      for (int ls = 0; ls < 60; ++ls) {
        const VectorXd cand = (w + step * grad).normalized();
        const double fc = objective_value(obj, cand, s);
        if (fc > fw + 1e-14 * std::abs(fw)) {
          w = cand;
          fw = fc;
          moved = true;
          break;
        }
        step *= 0.5;
      }
      if (!moved) {
        converged = true;  // no ascent direction left at this resolution
        break;
      }
    }
    allConverged = allConverged && converged;
    if (fw > best.value) {
      best.value = fw;
      best.w = w;
    }
  }

  best.converged = allConverged;
  best.gradCheckMaxRelErr = gradErr;
  return best;
}

}  // namespace optmed
