#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <vector>

#include "optmed/solver_dual.hpp"
#include "test_util.hpp"

using namespace optmed;

namespace {

// iid-column dual instance (p >= n), centred
Dataset dual_instance(Eigen::Index n, Eigen::Index p, std::uint64_t seed,
                      bool withSignal = true) {
  RngStream rng(seed, 555);
  Dataset raw;
  raw.X.resize(n, p);
  raw.A.resize(n);
  raw.Y.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) raw.A(i) = rng.normal();
  // a latent direction shared by X and Y so both paths exist
  VectorXd u(n);
  for (Eigen::Index i = 0; i < n; ++i) u(i) = rng.normal();
  for (Eigen::Index j = 0; j < p; ++j) {
    const double b = withSignal ? 0.3 * rng.normal() : 0.0;
    const double c = withSignal ? 0.3 * rng.normal() : 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      raw.X(i, j) = b * raw.A(i) + c * u(i) + rng.normal();
  }
  for (Eigen::Index i = 0; i < n; ++i)
    raw.Y(i) = (withSignal ? 0.5 * u(i) : 0.0) + rng.normal();
  return center_and_standardise(raw, false);
}

}  // namespace

TEST_CASE("identity kernel returns the projected responses") {
  // orthonormal rows: X = [I 0] gives K = I
  const Eigen::Index n = 6, p = 12;
  Dataset d;
  d.X = MatrixXd::Zero(n, p);
  for (Eigen::Index i = 0; i < n; ++i) d.X(i, i) = 1.0;
  d.A.resize(n);
  d.A << 1, -1, 2, -2, 1, -1;
  d.Y.resize(n);
  d.Y << 1, 1, -1, 0, 0, -1;
  d.centred = true;
  const DualPrecursor pre = dual_statistics(d);
  CHECK((pre.aTilde - d.A).norm() <= 1e-12);
  const VectorXd QAY = d.Y - (d.A.dot(d.Y) / d.A.squaredNorm()) * d.A;
  CHECK((pre.zTilde - QAY).norm() <= 1e-12);
  // Q_A annihilates A
  CHECK((pre.KZ * d.A).norm() <= 1e-12 * d.A.norm());
}

TEST_CASE("K_Z equals the explicit-projection kernel") {
  const Dataset d = dual_instance(30, 100, 51);
  const DualPrecursor pre = dual_statistics(d);
  const MatrixXd Z =
      d.X - d.A * (d.A.transpose() * d.X) / d.A.squaredNorm();
  const MatrixXd KZo = Z * Z.transpose();
  CHECK((pre.KZ - KZo).cwiseAbs().maxCoeff() <=
        1e-9 * KZo.cwiseAbs().maxCoeff());
}

TEST_CASE("diagonal pseudoinverse on a rank-1 kernel") {
  DualPrecursor pre;
  pre.n = 2;
  pre.p = 4;
  pre.normA2 = 1.0;
  pre.normY2 = 1.0;
  pre.KZ = MatrixXd::Zero(2, 2);
  pre.KZ(0, 0) = 2.0;
  pre.aTilde.resize(2);
  pre.aTilde << 4, 0;
  pre.zTilde.resize(2);
  pre.zTilde << 2, 0;
  const DualGeometry g = dual_path_vectors(pre);
  CHECK(g.rankKZ == 1);
  CHECK(g.pTilde(0) == doctest::Approx(2.0));
  CHECK(g.pTilde(1) == doctest::Approx(0.0));
}

TEST_CASE("path vectors live in the column space of K_Z") {
  const Dataset d = dual_instance(25, 80, 52);
  const DualPrecursor pre = dual_statistics(d);
  const DualGeometry g = dual_path_vectors(pre);
  // K_Z K_Z^+ pTilde = pTilde within the retained spectrum
  const VectorXd residual = g.pTilde - g.pinv_apply(pre.KZ * g.pTilde);
  CHECK(residual.norm() <= 1e-8 * g.pTilde.norm());
  // null-space components of the input are annihilated
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(pre.KZ);
  const VectorXd nullDir = eig.eigenvectors().col(0);  // smallest eigenvalue
  const VectorXd qShift = g.pinv_apply(pre.zTilde + 5.0 * nullDir);
  CHECK((qShift - g.qTilde).norm() <= 1e-7 * g.qTilde.norm());
}

TEST_CASE("primal and dual agree on cosPhi for p < n") {
  for (int r = 0; r < 20; ++r) {
    const Dataset d = testutil::random_instance(60, 10, 53 + r);
    const SufficientStats s = compute_sufficient_stats(d);
    const PathGeometry prim = path_vectors(s, 0.0);
    const DualGeometry dual = dual_path_vectors(dual_statistics(d));
    CHECK(std::abs(prim.cosPhi - dual.cosPhi) <= 1e-9);
    // the dual norms reproduce the V-metric norms
    CHECK(dual.pTilde.norm() == doctest::Approx(prim.normP).epsilon(1e-8));
    CHECK(dual.qTilde.norm() == doctest::Approx(prim.normQ).epsilon(1e-8));
  }
}

TEST_CASE("recovered dual weights reproduce the closed-form objective") {
  for (int r = 0; r < 5; ++r) {
    const Dataset d = dual_instance(40, 200, 60 + r);
    const MediatorFit fit = maxie_fit_dual(d);
    CHECK(fit.regime == Regime::dual);
    CHECK(fit.coefPlus.alpha >= 0.0);
    CHECK(fit.coefPlus.h ==
          doctest::Approx(fit.pathStrength * (1.0 + fit.cosPhi) / 2.0)
              .epsilon(1e-6));
    CHECK(fit.coefMinus.h ==
          doctest::Approx(-fit.pathStrength * (1.0 - fit.cosPhi) / 2.0)
              .epsilon(1e-6));
  }
}

TEST_CASE("dual suppression symmetry under Y negation") {
  const Dataset d = dual_instance(35, 120, 61);
  Dataset dn = d;
  dn.Y = -d.Y;
  const MediatorFit fit = maxie_fit_dual(d);
  const MediatorFit fitNeg = maxie_fit_dual(dn);
  CHECK(fitNeg.coefPlus.h == doctest::Approx(-fit.coefMinus.h).epsilon(1e-8));
  CHECK(fitNeg.coefMinus.h == doctest::Approx(-fit.coefPlus.h).epsilon(1e-8));
}

TEST_CASE("rank sanity for generic doubly-centred data") {
  const Dataset d = dual_instance(30, 90, 62);
  const DualGeometry g = dual_path_vectors(dual_statistics(d));
  CHECK(g.rankKZ >= 28);
  CHECK(g.rankKZ <= 29);
}

TEST_CASE("regime selection") {
  CHECK(select_regime(200, 20) == Regime::primal);
  CHECK(select_regime(40, 200) == Regime::dual);
  CHECK(select_regime(100, 100) == Regime::dual);
  CHECK_THROWS_AS(select_regime(2, 5), DegenerateData);
}

TEST_CASE("zero kernel is reported") {
  DualPrecursor pre;
  pre.n = 3;
  pre.p = 5;
  pre.normA2 = 1.0;
  pre.normY2 = 1.0;
  pre.KZ = MatrixXd::Zero(3, 3);
  pre.aTilde = VectorXd::Zero(3);
  pre.zTilde = VectorXd::Zero(3);
  CHECK_THROWS_AS(dual_path_vectors(pre), ZeroKernel);
}

TEST_CASE("dual consistency: normalised pTilde stabilises with p") {
  // fixed (A, u, Y) of length n; mediator columns drawn iid around the
  // latent direction; the normalised pTilde at 8p approaches the one at 64p
  const Eigen::Index n = 40;
  std::vector<double> smallAngle, largeAngle;
  for (int r = 0; r < 20; ++r) {
    RngStream fixedRng(70, static_cast<std::uint64_t>(r));
    VectorXd A(n), u(n), noiseY(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      A(i) = fixedRng.normal();
      u(i) = fixedRng.normal();
      noiseY(i) = fixedRng.normal();
    }
    auto ptilde_at = [&](Eigen::Index p, std::uint64_t key) {
      RngStream rng(71, key, static_cast<std::uint64_t>(r));
      Dataset raw;
      raw.X.resize(n, p);
      for (Eigen::Index j = 0; j < p; ++j) {
        const double b = 0.3 * rng.normal(), c = 0.3 * rng.normal();
        for (Eigen::Index i = 0; i < n; ++i)
          raw.X(i, j) = b * A(i) + c * u(i) + rng.normal();
      }
      raw.A = A;
      raw.Y = 0.5 * u + noiseY;
      const Dataset d = center_and_standardise(raw, false);
      const DualGeometry g = dual_path_vectors(dual_statistics(d));
      return VectorXd(g.pTilde.normalized());
    };
    const VectorXd ref = ptilde_at(6400, 1);
    const VectorXd atSmall = ptilde_at(100, 2);
    const VectorXd atLarge = ptilde_at(800, 3);
    smallAngle.push_back(
        std::acos(std::clamp(std::abs(atSmall.dot(ref)), 0.0, 1.0)));
    largeAngle.push_back(
        std::acos(std::clamp(std::abs(atLarge.dot(ref)), 0.0, 1.0)));
  }
  std::sort(smallAngle.begin(), smallAngle.end());
  std::sort(largeAngle.begin(), largeAngle.end());
  CHECK(largeAngle[10] < smallAngle[10]);
}
