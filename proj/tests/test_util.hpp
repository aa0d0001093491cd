#pragma once

#include "optmed/core_stats.hpp"
#include "optmed/rng.hpp"
#include "optmed/simulate.hpp"

namespace optmed::testutil {

// A random centred mediation instance from the AR(1) mediation DGP.
inline Dataset random_instance(Eigen::Index n, Eigen::Index p,
                               std::uint64_t seed,
                               Scenario scen = Scenario::S2,
                               double rho = 0.75) {
  RngStream rng(seed, 777);
  SimConfig cfg;
  cfg.n = n;
  cfg.p = p;
  cfg.rho = rho;
  cfg.scenario = scen;
  PopulationModel model = make_scenario_paths(scen, p, rng);
  model.rho = rho;
  return generate_dataset(cfg, model, rng);
}

inline VectorXd random_unit(Eigen::Index p, RngStream& rng) {
  VectorXd w(p);
  for (Eigen::Index j = 0; j < p; ++j) w(j) = rng.normal();
  w.normalize();
  return w;
}

}  // namespace optmed::testutil
