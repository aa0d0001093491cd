#pragma once

#include "optmed/solver_primal.hpp"

namespace optmed {

// Kernel-side sufficient statistics: everything n x n, V never formed.
struct DualPrecursor {
  VectorXd aTilde;  // K A
  VectorXd zTilde;  // K Q_A Y
  MatrixXd KZ;      // Q_A K Q_A, symmetric PSD
  double normA2 = 0.0;
  double AtY = 0.0;
  double normY2 = 0.0;
  Eigen::Index n = 0;
  Eigen::Index p = 0;
};

struct DualGeometry {
  VectorXd aTilde;
  VectorXd zTilde;
  VectorXd pTilde;  // KZ^+ aTilde
  VectorXd qTilde;  // KZ^+ zTilde
  double cosPhi = 0.0;
  Eigen::Index rankKZ = 0;
  double eigCutoff = 0.0;  // relative to the largest eigenvalue
  // retained eigenpairs, kept for pseudoinverse products downstream
  VectorXd eigenvalues;
  MatrixXd eigenvectors;

  VectorXd pinv_apply(const VectorXd& v) const;
};

inline constexpr double kDefaultEigCutoff = 1e-10;

DualPrecursor dual_statistics(const Dataset& d);

DualGeometry dual_path_vectors(const DualPrecursor& pre,
                               double eigCutoff = kDefaultEigCutoff);

// Closed-form bisector optimum for p >= n, weights recovered in the row
// space of X.
MediatorFit maxie_fit_dual(const Dataset& d,
                           double eigCutoff = kDefaultEigCutoff);

Regime select_regime(Eigen::Index n, Eigen::Index p);

}  // namespace optmed
