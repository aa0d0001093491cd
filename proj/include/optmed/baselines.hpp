#pragma once

#include "optmed/core_stats.hpp"

namespace optmed {

enum class OracleObjective { h, fstar };

struct OracleConfig {
  int restarts = 10;
  int maxIter = 2000;
  double gradTol = 1e-12;
  std::uint64_t seed = 1;
};

struct OracleResult {
  VectorXd w;  // unit Euclidean norm
  double value = 0.0;
  bool converged = true;
  double gradCheckMaxRelErr = 0.0;  // analytic vs central finite differences
};

// Single-path OLS directions, w = (X'X)^-1 X'y and (X'X)^-1 a.
VectorXd reg_y_on_x(const Dataset& d, double ridgeScale = 1e-10);
VectorXd reg_a_on_x(const Dataset& d, double ridgeScale = 1e-10);

// Objectives and analytic gradients on raw (unnormalised) w, used by the
// oracle and by the gradient checks.
double objective_value(OracleObjective obj, const VectorXd& w,
                       const SufficientStats& s);
VectorXd objective_gradient(OracleObjective obj, const VectorXd& w,
                            const SufficientStats& s);

// Multi-restart projected-gradient ascent on the unit sphere. Independent
// seeded stream per restart, so concurrent and sequential runs agree.
OracleResult numerical_oracle(const SufficientStats& s, OracleObjective obj,
                              const OracleConfig& cfg);

}  // namespace optmed
