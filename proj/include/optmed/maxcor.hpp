#pragma once

#include "optmed/solver_primal.hpp"

namespace optmed {

// Maximiser of the bounded mediation index
//   f*(w) = cor(Xw, A) * cor(Zw, Y).
struct MaxCorFit {
  VectorXd w;          // unit Euclidean norm, oriented so cor(Xw,A) >= 0
  double fstar = 0.0;  // in [-1, 1]
  double theta = 0.0;  // angle parameter inside span{p, q}
  bool converged = true;
};

// f* from sufficient statistics alone.
double mediation_index(const VectorXd& w, const SufficientStats& s);

// The maximiser lives in span{p, q}: any component V-orthogonal to both
// path vectors inflates |w|_V and |w|_{V_X} without touching w'a or w'z.
// A bounded scalar search over the span angle finds it.
MaxCorFit maxcor_fit(const SufficientStats& s,
                     double ridgeScale = kDefaultRidgeScale);

}  // namespace optmed
