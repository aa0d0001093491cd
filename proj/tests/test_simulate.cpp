#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "optmed/simulate.hpp"
#include "test_util.hpp"

using namespace optmed;

TEST_CASE("scenario paths have the prescribed overlap structure") {
  RngStream rng(301);
  const Eigen::Index p = 32;
  const PopulationModel s1 = make_scenario_paths(Scenario::S1, p, rng);
  const PopulationModel s4 = make_scenario_paths(Scenario::S4, p, rng);
  CHECK(s1.alpha0.norm() == doctest::Approx(1.0));
  CHECK(s1.beta0.norm() == doctest::Approx(1.0));
  // S1: disjoint supports
  for (Eigen::Index j = 0; j < p; ++j)
    CHECK(s1.alpha0(j) * s1.beta0(j) == 0.0);
  // S4: identical paths
  CHECK((s4.alpha0 - s4.beta0).norm() == 0.0);
  // support size p/4
  const auto nnz = [](const VectorXd& v) {
    int c = 0;
    for (Eigen::Index j = 0; j < v.size(); ++j)
      if (v(j) != 0.0) ++c;
    return c;
  };
  CHECK(nnz(s1.alpha0) == 8);
  CHECK(nnz(s4.alpha0) == 8);
}

TEST_CASE("S3 overlap gives the published mean cosine") {
  double sum = 0.0;
  for (int r = 0; r < 200; ++r) {
    RngStream rng(302, static_cast<std::uint64_t>(r));
    const PopulationModel m = make_scenario_paths(Scenario::S3, 32, rng);
    sum += m.alpha0.dot(m.beta0);
  }
  CHECK(std::abs(sum / 200.0 - 0.47) <= 0.1);
}

TEST_CASE("structured paths") {
  SimConfig cfg;
  cfg.p = 20;
  cfg.scenario = Scenario::nullBeta;
  cfg.signal = 0.3;
  const PopulationModel m = make_structured_paths(cfg);
  CHECK(m.alpha0(0) == 0.3);
  CHECK(m.beta0.norm() == 0.0);
  cfg.scenario = Scenario::twoEntry;
  cfg.angleDeg = 90.0;
  const PopulationModel t = make_structured_paths(cfg);
  CHECK(t.alpha0(0) == doctest::Approx(0.3));
  CHECK(std::abs(t.beta0(0)) <= 1e-16);
  CHECK(t.beta0(1) == doctest::Approx(0.3));
}

TEST_CASE("generated datasets are centred and finite") {
  RngStream rng(303);
  SimConfig cfg;
  cfg.n = 150;
  cfg.p = 16;
  cfg.scenario = Scenario::S2;
  PopulationModel m = make_scenario_paths(cfg.scenario, cfg.p, rng);
  m.rho = cfg.rho;
  const Dataset d = generate_dataset(cfg, m, rng);
  CHECK(d.centred);
  CHECK(d.X.allFinite());
  CHECK(std::abs(d.A.mean()) <= 1e-12);
  CHECK(std::abs(d.Y.mean()) <= 1e-12);
  for (Eigen::Index j = 0; j < cfg.p; ++j)
    CHECK(std::abs(d.X.col(j).mean()) <= 1e-12);
}

TEST_CASE("noiseless generation is exact") {
  RngStream rng(304);
  SimConfig cfg;
  cfg.n = 60;
  cfg.p = 8;
  cfg.sigmaEps = 0.0;
  cfg.tau = 0.0;
  cfg.scenario = Scenario::S3;
  PopulationModel m = make_scenario_paths(cfg.scenario, cfg.p, rng);
  m.rho = 0.0;
  const Dataset d = generate_dataset(cfg, m, rng);
  CHECK((d.Y - d.X * m.beta0).norm() <= 1e-12);
  CHECK((d.A - d.X * m.alpha0).norm() <= 1e-12);
}

TEST_CASE("iid columns have near-identity covariance") {
  RngStream rng(305);
  SimConfig cfg;
  cfg.n = 2000;
  cfg.p = 10;
  cfg.scenario = Scenario::S1;
  PopulationModel m = make_scenario_paths(cfg.scenario, cfg.p, rng);
  m.rho = 0.0;
  const Dataset d = generate_dataset(cfg, m, rng);
  const MatrixXd C = d.X.transpose() * d.X / (cfg.n - 1.0);
  int largeOff = 0;
  for (Eigen::Index i = 0; i < cfg.p; ++i) {
    CHECK(std::abs(C(i, i) - 1.0) <= 0.15);
    for (Eigen::Index j = 0; j < i; ++j)
      if (std::abs(C(i, j)) > 3.0 / std::sqrt(static_cast<double>(cfg.n)))
        ++largeOff;
  }
  CHECK(largeOff <= 2);
}

TEST_CASE("ar1 rows have the prescribed lag-one correlation") {
  RngStream rng(306);
  SimConfig cfg;
  cfg.n = 4000;
  cfg.p = 12;
  cfg.scenario = Scenario::S1;
  PopulationModel m = make_scenario_paths(cfg.scenario, cfg.p, rng);
  m.rho = 0.75;
  const Dataset d = generate_dataset(cfg, m, rng);
  double acc = 0.0;
  for (Eigen::Index j = 1; j < cfg.p; ++j)
    acc += d.X.col(j).dot(d.X.col(j - 1)) /
           (d.X.col(j).norm() * d.X.col(j - 1).norm());
  CHECK(acc / (cfg.p - 1) == doctest::Approx(0.75).epsilon(0.05));
}

TEST_CASE("dense dual DGP has the advertised shape") {
  RngStream rng(307);
  SimConfig cfg;
  cfg.n = 40;
  cfg.p = 300;
  cfg.signal = 0.5;
  cfg.angleDeg = 60.0;
  const Dataset d = generate_dense_dual(cfg, rng);
  CHECK(d.n() == 40);
  CHECK(d.p() == 300);
  CHECK(d.centred);
}

TEST_CASE("replicate tables are identical for any worker count") {
  const auto serial = run_table1(42, false, 1);
  const auto parallel = run_table1(42, false, 4);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].cell == parallel[i].cell);
    CHECK(serial[i].method == parallel[i].method);
    CHECK(serial[i].metric == parallel[i].metric);
    CHECK(serial[i].value == parallel[i].value);
  }
}

TEST_CASE("table1 aggregates carry the expected cells and ordering") {
  const auto rows = run_table1(7, false, 0);
  std::set<std::string> cells, methods;
  for (const auto& r : rows) {
    CHECK(r.experiment == "table1");
    cells.insert(r.cell);
    methods.insert(r.method);
  }
  CHECK(cells.count("S1_n500_p20") == 1);
  CHECK(cells.count("S4_n1000_p100") == 1);
  CHECK(methods.count("maxie") == 1);
  CHECK(methods.count("maxcor") == 1);
  CHECK(methods.count("regYonX") == 1);
  CHECK(methods.count("regAonX") == 1);

  // MaxIE leads MaxCor on mean h in every cell (Table 1 bold diagonal)
  for (const auto& cell : cells) {
    double maxie = 0.0, maxcor = 0.0;
    int nMaxie = 0, nMaxcor = 0;
    for (const auto& r : rows)
      if (r.cell == cell && r.metric == "h") {
        if (r.method == "maxie") {
          maxie += r.value;
          ++nMaxie;
        }
        if (r.method == "maxcor") {
          maxcor += r.value;
          ++nMaxcor;
        }
      }
    REQUIRE(nMaxie == 20);
    REQUIRE(nMaxcor == 20);
    CHECK(maxie / nMaxie >= maxcor / nMaxcor - 1e-9);
  }
}

TEST_CASE("two-entry delta recipe is increasing in the angle cotangent") {
  const double d55 = two_entry_delta(55.0, 40, 0.5, 0.5);
  const double d70 = two_entry_delta(70.0, 40, 0.5, 0.5);
  const double d84 = two_entry_delta(84.0, 40, 0.5, 0.5);
  CHECK(d55 > d70);
  CHECK(d70 > d84);
  CHECK(d84 > 0.0);
}

TEST_CASE("timing rows report the closed-form advantage") {
  const auto rows = run_timing(5);
  bool sawRatio = false;
  for (const auto& r : rows)
    if (r.metric == "oracleOverClosed") {
      sawRatio = true;
      CHECK(r.value > 1.0);
    }
  CHECK(sawRatio);
}
