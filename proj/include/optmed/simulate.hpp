#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "optmed/core_stats.hpp"
#include "optmed/rng.hpp"

namespace optmed {

enum class Scenario {
  S1,        // disjoint supports, cos ~ 0
  S2,        // 25% overlap
  S3,        // 50% overlap
  S4,        // beta = alpha
  nullBoth,
  nullBeta,
  nullAlpha,
  twoEntry,  // alpha = s e1, beta = s (cos e1 + sin e2), Sigma = I
  denseDual  // dense signal with the sqrt(p) rescaling, n fixed
};

std::string to_string(Scenario s);

struct SimConfig {
  Eigen::Index n = 200;
  Eigen::Index p = 20;
  double rho = 0.75;      // AR(1) parameter; 0 means identity covariance
  double tau = 0.25;      // direct effect
  double sigmaEps = 0.5;  // sd of eps_A and eps_Y
  Scenario scenario = Scenario::S1;
  double signal = 1.0;    // gamma (null/power scenarios) or s / SNR
  double angleDeg = 90.0; // twoEntry / denseDual construction angle
  std::uint64_t seed = 1;
  int replicates = 20;
};

struct PopulationModel {
  VectorXd alpha0;
  VectorXd beta0;
  double rho = 0.0;  // SigmaX is AR(1) with this rho (0 -> identity)
};

// Sparse unit path vectors with scenario-controlled support overlap
// (support size p/4, shared part 0, p/16, p/8 or p/4, rounded).
PopulationModel make_scenario_paths(Scenario scenario, Eigen::Index p,
                                    RngStream& rng);
// Population paths for the null / power / two-entry scenarios.
PopulationModel make_structured_paths(const SimConfig& cfg);

// X ~ N(0, Sigma) rows iid (AR(1) sampled by its recursion), columns
// centred, then A = X alpha + eps, Y = X beta + tau A + eps; the returned
// dataset is fully centred.
Dataset generate_dataset(const SimConfig& cfg, const PopulationModel& model,
                         RngStream& rng);

// The dense dual DGP: X_ij = SNR sqrt(p) alpha_j A_i + eps_ij.
Dataset generate_dense_dual(const SimConfig& cfg, RngStream& rng);

// cos(phi) for a dataset, primal or dual by shape.
double cos_phi_of(const Dataset& d);

// Tidy long-form output row.
struct SimRow {
  std::string experiment;
  std::string cell;
  std::string scenario;
  Eigen::Index n = 0;
  Eigen::Index p = 0;
  int replicate = -1;  // -1 for aggregated rows
  std::string method;
  std::string metric;
  double value = 0.0;
};

// Analytic noncentrality for the two-entry design, from the population V.
double two_entry_delta(double angleDeg, Eigen::Index p, double s,
                       double sigmaEps);

std::vector<SimRow> run_table1(std::uint64_t seed, bool fullScale, int threads);
std::vector<SimRow> run_table3(std::uint64_t seed, bool fullScale, int threads);
std::vector<SimRow> run_fig1(std::uint64_t seed, bool fullScale, int threads);
std::vector<SimRow> run_fig2(std::uint64_t seed, bool fullScale, int threads);
std::vector<SimRow> run_fig3(std::uint64_t seed, bool fullScale, int threads);
std::vector<SimRow> run_timing(std::uint64_t seed);

// Deterministic replicate loop: identical output for any thread count.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

}  // namespace optmed
