#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "optmed/errors.hpp"

namespace optmed {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Treatment / mediators / outcome triple. Immutable by convention: the
// operations below return fresh objects.
struct Dataset {
  MatrixXd X;  // n x p mediators
  VectorXd A;  // treatment
  VectorXd Y;  // outcome
  bool centred = false;
  bool standardised = false;
  std::vector<std::string> names;  // mediator column names, may be empty

  Eigen::Index n() const { return X.rows(); }
  Eigen::Index p() const { return X.cols(); }
};

// Cross-product summaries that fully determine estimation and testing.
struct SufficientStats {
  VectorXd a;      // X'A
  VectorXd z;      // X'Y - (A'Y/|A|^2) a
  MatrixXd V;      // X'X - a a'/|A|^2  (== Z'Z, never materialising Z)
  double normA2 = 0.0;
  double AtY = 0.0;
  double normY2 = 0.0;
  Eigen::Index n = 0;
  Eigen::Index p = 0;
};

enum class EffectType { concordant, suppression, degenerate };

struct PathCoefficients {
  double alpha = 0.0;  // treatment -> mediator
  double beta = 0.0;   // mediator -> outcome
  double h = 0.0;      // alpha * beta
  double tau = 0.0;    // total effect A'Y/|A|^2
  double propMediated = 0.0;
  bool propMediatedDefined = false;
};

struct MediationSummary {
  double r_MA = 0.0;      // cor(Xw, A)
  double r_MperpY = 0.0;  // cor(Q_A Xw, Y)
  double tau = 0.0;
  double h = 0.0;
  double fstar = 0.0;  // r_MA * r_MperpY
  double propMediated = 0.0;
  bool propMediatedDefined = false;
};

// Centre A, Y and the columns of X; optionally scale X columns to unit
// sample standard deviation (divisor n-1). Constant columns are rejected.
Dataset center_and_standardise(const Dataset& raw, bool standardise);

SufficientStats compute_sufficient_stats(const Dataset& d);

PathCoefficients path_coefficients(const VectorXd& w, const SufficientStats& s);

MediationSummary evaluate_composite(const VectorXd& w, const Dataset& d);

namespace detail {
// Degeneracy tolerance for w'Vw, relative to trace(V)/p * |w|^2.
inline constexpr double kDegenerateRel = 1e-12;
}  // namespace detail

}  // namespace optmed
