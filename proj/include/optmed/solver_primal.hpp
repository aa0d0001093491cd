#pragma once

#include "optmed/core_stats.hpp"

namespace optmed {

enum class Regime { primal, dual };

// Path vectors p = V^-1 a and q = V^-1 z (with a small ridge on V) and the
// angle between them in the V-metric.
struct PathGeometry {
  VectorXd pvec;
  VectorXd qvec;
  double normP = 0.0;   // |p|_V = sqrt(a'p)
  double normQ = 0.0;   // |q|_V = sqrt(z'q)
  double cosPhi = 0.0;  // a'q / (normP * normQ)
  double ridge = 0.0;   // epsilon actually added to V
};

struct MediatorFit {
  VectorXd wPlus;   // concordant bisector, unit Euclidean norm
  VectorXd wMinus;  // suppression bisector
  PathCoefficients coefPlus;
  PathCoefficients coefMinus;
  double cosPhi = 0.0;
  double pathStrength = 0.0;  // |p|_V |q|_V / |A|^2
  Regime regime = Regime::primal;
  EffectType effectTypePlus = EffectType::degenerate;
  EffectType effectTypeMinus = EffectType::degenerate;
};

inline constexpr double kDefaultRidgeScale = 1e-10;

// Solves (V + eps I) x = a and = z with one Cholesky factorisation,
// eps = ridgeScale * trace(V)/p.
PathGeometry path_vectors(const SufficientStats& s,
                          double ridgeScale = kDefaultRidgeScale);

// Closed-form bisector optimum for n > p. Returns both the concordant and
// the suppression solution, each oriented so alpha >= 0.
MediatorFit maxie_fit_primal(const SufficientStats& s,
                             double ridgeScale = kDefaultRidgeScale);

// cos angle_V(w,p) * cos angle_V(w,q); h(w) = pathStrength * alignment.
double alignment(const VectorXd& w, const PathGeometry& g,
                 const SufficientStats& s);

namespace detail {
// Orient w so alpha >= 0 (beta >= 0 breaks an exact alpha = 0 tie),
// normalise to unit Euclidean norm, classify the effect by the sign of beta.
// betaSignal = |w'z| / sqrt(w'Vw), compared against sqrt(normY2).
void orient_and_classify(VectorXd& w, PathCoefficients& c, EffectType& type,
                         double betaSignal, double normY2);
}  // namespace detail

}  // namespace optmed
