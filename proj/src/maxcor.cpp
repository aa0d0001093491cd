#include "optmed/maxcor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace optmed {

namespace {

// f* in terms of the scalars u = w'a, v = w'z, t = w'Vw.
// cor(Xw,A) = u / (sqrt(w'Gw) |A|) with G = V + aa'/|A|^2, so
// w'Gw = t + u^2/|A|^2; cor(Zw,Y) = v / (sqrt(t) |Y|).
double fstar_scalar(double u, double v, double t, const SufficientStats& s) {
  const double g = t + u * u / s.normA2;
  if (g <= 0.0 || t <= 0.0) return 0.0;
  return (u / std::sqrt(g * s.normA2)) * (v / std::sqrt(t * s.normY2));
}

}  // namespace

double mediation_index(const VectorXd& w, const SufficientStats& s) {
  const double t = w.dot(s.V * w);
  const double scale =
      (s.V.trace() / static_cast<double>(s.p)) * w.squaredNorm();
  if (t <= detail::kDegenerateRel * scale)
    throw DegenerateComposite("w'Vw is numerically zero");
  return fstar_scalar(w.dot(s.a), w.dot(s.z), t, s);
}

MaxCorFit maxcor_fit(const SufficientStats& s, double ridgeScale) {
  if (s.p >= s.n)
    throw RegimeUnsupported("maxcor has no dual implementation for p >= n");

  const PathGeometry geo = path_vectors(s, ridgeScale);
  if (geo.normP <= 1e-10 * std::sqrt(s.normA2) ||
      geo.normQ <= 1e-10 * std::sqrt(s.normY2))
    throw DegeneratePath("one structural path is empty");

  // V-orthonormal basis of span{p, q}: e1 along p, e2 the V-orthogonal rest
  // of q. Then w(theta) = cos(theta) e1 + sin(theta) e2 has |w(theta)|_V = 1,
  // w'a = normP cos(theta), w'z = normQ (cosPhi cos(theta) + s_phi sin(theta)).
  const double cphi = geo.cosPhi;
  const double sphi = std::sqrt(std::max(0.0, 1.0 - cphi * cphi));
  const VectorXd e1 = geo.pvec / geo.normP;
  VectorXd e2;
  const bool collinear = sphi < 1e-9;
  if (!collinear) e2 = (geo.qvec / geo.normQ - cphi * e1) / sphi;

  auto value = [&](double theta) {
    const double c = std::cos(theta), sn = std::sin(theta);
    const double u = geo.normP * c;
    const double v = geo.normQ * (cphi * c + sphi * sn);
    return fstar_scalar(u, v, 1.0, s);
  };

  MaxCorFit fit;
  if (collinear || s.p == 1) {
    // single effective direction
    fit.theta = 0.0;
    fit.w = e1;
  } else {
    // coarse scan over [0, pi) (f* has period pi up to sign symmetry),
    // then a golden-section refinement of the best bracket
    constexpr int kGrid = 180;
    const double pi = std::numbers::pi;
    int best = 0;
    double bestVal = -2.0;
    for (int i = 0; i < kGrid; ++i) {
      const double th = pi * i / kGrid;
      const double f = value(th);
      if (f > bestVal) {
        bestVal = f;
        best = i;
      }
    }
    double lo = pi * (best - 1) / kGrid;
    double hi = pi * (best + 1) / kGrid;
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - invphi * (hi - lo);
    double x2 = lo + invphi * (hi - lo);
    double f1 = value(x1), f2 = value(x2);
    for (int it = 0; it < 200 && hi - lo > 1e-10; ++it) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + invphi * (hi - lo);
        f2 = value(x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - invphi * (hi - lo);
        f1 = value(x1);
      }
    }
    fit.theta = 0.5 * (lo + hi);
    fit.w = std::cos(fit.theta) * e1 + std::sin(fit.theta) * e2;
  }

  // sanity polish: a short projected-gradient ascent on the full sphere
  // must not find anything meaningfully better than the span solution
  VectorXd w = fit.w.normalized();
  double fw = mediation_index(w, s);
  const MatrixXd G = s.V + (s.a * s.a.transpose()) / s.normA2;
  for (int it = 0; it < 50; ++it) {
    const double u = w.dot(s.a), v = w.dot(s.z);
    const VectorXd Gw = G * w, Vw = s.V * w;
    const double g = w.dot(Gw), t = w.dot(Vw);
    const double c0 = 1.0 / std::sqrt(s.normA2 * s.normY2);
    VectorXd grad = c0 * ((v * s.a + u * s.z) / std::sqrt(g * t) -
                          u * v * (Gw / (g * std::sqrt(g * t)) +
                                   Vw / (t * std::sqrt(g * t))));
    grad -= grad.dot(w) * w;
    if (grad.norm() < 1e-12) break;
    double step = 1.0;
    bool moved = false;
    for (int ls = 0; ls < 30; ++ls) {
      const VectorXd cand = (w + step * grad).normalized();
      const double fc = mediation_index(cand, s);
      if (fc > fw) {
        w = cand;
        fw = fc;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }

  const double spanVal = mediation_index(fit.w.normalized(), s);
  if (fw > spanVal + 1e-4) {
    fit.w = w;
    fit.converged = false;
  }
  fit.w.normalize();
  if (fit.w.dot(s.a) < 0.0) fit.w = -fit.w;  // orientation: alpha >= 0
  fit.fstar = mediation_index(fit.w, s);
  return fit;
}

}  // namespace optmed
