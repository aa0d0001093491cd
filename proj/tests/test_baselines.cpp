#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "optmed/baselines.hpp"
#include "optmed/solver_primal.hpp"
#include "test_util.hpp"

using namespace optmed;

TEST_CASE("scalar OLS for p = 1") {
  const Dataset d = testutil::random_instance(50, 1, 201, Scenario::S4, 0.0);
  const VectorXd wy = reg_y_on_x(d, 0.0);
  const VectorXd wa = reg_a_on_x(d, 0.0);
  const double x2 = d.X.col(0).squaredNorm();
  CHECK(wy(0) == doctest::Approx(d.X.col(0).dot(d.Y) / x2).epsilon(1e-10));
  CHECK(wa(0) == doctest::Approx(d.X.col(0).dot(d.A) / x2).epsilon(1e-10));
}

TEST_CASE("orthogonal response gives the zero vector") {
  Dataset d = testutil::random_instance(100, 5, 202);
  // project Y out of the column space of X
  const MatrixXd Pi =
      d.X * (d.X.transpose() * d.X).ldlt().solve(d.X.transpose());
  d.Y -= Pi * d.Y;
  CHECK(reg_y_on_x(d, 0.0).norm() <= 1e-9);
}

TEST_CASE("reg_y_on_x satisfies the sufficient-statistic identity") {
  const Dataset d = testutil::random_instance(150, 12, 203);
  const SufficientStats s = compute_sufficient_stats(d);
  const VectorXd w = reg_y_on_x(d, 0.0);
  // w = V_X^-1 (z + (A'Y/|A|^2) a) with V_X = X'X
  const MatrixXd VX = d.X.transpose() * d.X;
  const VectorXd rhs = s.z + (s.AtY / s.normA2) * s.a;
  CHECK((VX * w - rhs).norm() <= 1e-9 * rhs.norm());
}

TEST_CASE("baselines refuse p >= n") {
  const Dataset d = testutil::random_instance(50, 5, 204);
  Dataset shrunk = d;
  shrunk.X = d.X.topRows(4).eval();
  shrunk.A = d.A.head(4).eval();
  shrunk.Y = d.Y.head(4).eval();
  CHECK_THROWS_AS(reg_y_on_x(shrunk), RegimeUnsupported);
}

TEST_CASE("objective values agree with the coefficient route") {
  const Dataset d = testutil::random_instance(120, 10, 205);
  const SufficientStats s = compute_sufficient_stats(d);
  RngStream rng(205, 1);
  for (int k = 0; k < 10; ++k) {
    const VectorXd w = testutil::random_unit(10, rng);
    CHECK(objective_value(OracleObjective::h, w, s) ==
          doctest::Approx(path_coefficients(w, s).h).epsilon(1e-10));
    CHECK(objective_value(OracleObjective::fstar, w, s) ==
          doctest::Approx(evaluate_composite(w, d).fstar).epsilon(1e-8));
  }
}

TEST_CASE("analytic gradients match central finite differences") {
  RngStream rng(206, 2);
  for (int inst = 0; inst < 20; ++inst) {
    const Dataset d =
        testutil::random_instance(150, 10, 210 + inst);
    const SufficientStats s = compute_sufficient_stats(d);
    for (auto obj : {OracleObjective::h, OracleObjective::fstar}) {
      for (int k = 0; k < 5; ++k) {
        const VectorXd w = testutil::random_unit(10, rng);
        const VectorXd g = objective_gradient(obj, w, s);
        const double step = 1e-6;
        for (int dir = 0; dir < 3; ++dir) {
          const VectorXd u = testutil::random_unit(10, rng);
          const double fd = (objective_value(obj, w + step * u, s) -
                             objective_value(obj, w - step * u, s)) /
                            (2.0 * step);
          const double an = g.dot(u);
          const double denom = std::max({std::abs(fd), std::abs(an), 1e-8});
          CHECK(std::abs(fd - an) / denom <= 1e-5);
        }
      }
    }
  }
}

TEST_CASE("oracle recovers the known optimum for collinear paths") {
  const Dataset d = testutil::random_instance(100, 6, 230);
  SufficientStats s = compute_sufficient_stats(d);
  s.z = 3.0 * s.a;
  OracleConfig cfg;
  cfg.seed = 230;
  const OracleResult r = numerical_oracle(s, OracleObjective::h, cfg);
  const MediatorFit fit = maxie_fit_primal(s);
  CHECK(r.value == doctest::Approx(fit.pathStrength).epsilon(1e-8));
  CHECK(r.gradCheckMaxRelErr <= 1e-5);
}

TEST_CASE("oracle matches the closed form on S3") {
  const Dataset d = testutil::random_instance(500, 20, 231, Scenario::S3);
  const SufficientStats s = compute_sufficient_stats(d);
  OracleConfig cfg;
  cfg.seed = 231;
  const OracleResult r = numerical_oracle(s, OracleObjective::h, cfg);
  const MediatorFit fit = maxie_fit_primal(s);
  CHECK(std::abs(r.value - fit.coefPlus.h) <=
        1e-6 * std::abs(fit.coefPlus.h));
  CHECK(r.converged);
}

TEST_CASE("oracle is deterministic in its seed") {
  const Dataset d = testutil::random_instance(100, 8, 232);
  const SufficientStats s = compute_sufficient_stats(d);
  OracleConfig cfg;
  cfg.seed = 99;
  const OracleResult r1 = numerical_oracle(s, OracleObjective::fstar, cfg);
  const OracleResult r2 = numerical_oracle(s, OracleObjective::fstar, cfg);
  CHECK(r1.value == r2.value);
  CHECK((r1.w - r2.w).norm() == 0.0);
}

TEST_CASE("oracle refuses the dual shape") {
  SufficientStats s;
  s.n = 10;
  s.p = 20;
  OracleConfig cfg;
  CHECK_THROWS_AS(numerical_oracle(s, OracleObjective::h, cfg),
                  RegimeUnsupported);
}
