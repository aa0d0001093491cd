// Two benchmarks:
//   1. replicate loop, serial reference vs OpenMP workers (same output)
//   2. closed-form solver vs numerical oracle on one instance
// Wall clock is hardware-dependent; only the ratios are interesting.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <vector>

#include "optmed/baselines.hpp"
#include "optmed/simulate.hpp"
#include "optmed/solver_primal.hpp"

using namespace optmed;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

double time_replicates(int threads, int reps, std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<double> h(reps);
  parallel_for(reps, threads, [&](int r) {
    RngStream rng(seed, 900, static_cast<std::uint64_t>(r));
    SimConfig cfg;
    cfg.n = 500;
    cfg.p = 50;
    cfg.scenario = Scenario::S3;
    const PopulationModel model = make_scenario_paths(cfg.scenario, cfg.p, rng);
    PopulationModel m = model;
    m.rho = cfg.rho;
    const Dataset d = generate_dataset(cfg, m, rng);
    const SufficientStats s = compute_sufficient_stats(d);
    h[r] = maxie_fit_primal(s).coefPlus.h;
  });
  const double elapsed = ms_since(t0);
  double acc = 0.0;
  for (double v : h) acc += v;  // keep the work observable
  std::printf("  (mean h %.4f)\n", acc / reps);
  return elapsed;
}

}  // namespace

int main() {
  const std::uint64_t seed = 1;
  const int reps = 200;

  std::printf("replicate loop, %d replicates (n=500, p=50, S3)\n", reps);
  const double serial = time_replicates(1, reps, seed);
  std::printf("serial reference: %.1f ms\n", serial);
  const double parallel = time_replicates(0, reps, seed);
  std::printf("openmp workers:   %.1f ms  (speedup %.2fx)\n", parallel,
              serial / parallel);

  std::printf("\nclosed form vs numerical oracle (n=1000, p=100, S2)\n");
  RngStream rng(seed, 901);
  SimConfig cfg;
  cfg.n = 1000;
  cfg.p = 100;
  cfg.scenario = Scenario::S2;
  PopulationModel model = make_scenario_paths(cfg.scenario, cfg.p, rng);
  model.rho = cfg.rho;
  const Dataset d = generate_dataset(cfg, model, rng);
  const SufficientStats s = compute_sufficient_stats(d);

  // warm-up, then medians of 5
  maxie_fit_primal(s);
  std::vector<double> closedMs, oracleMs;
  for (int r = 0; r < 5; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    const MediatorFit fit = maxie_fit_primal(s);
    closedMs.push_back(ms_since(t0));
    OracleConfig ocfg;
    ocfg.seed = seed + r;
    t0 = std::chrono::steady_clock::now();
    const OracleResult orc = numerical_oracle(s, OracleObjective::h, ocfg);
    oracleMs.push_back(ms_since(t0));
    if (r == 0)
      std::printf("  h closed %.6f vs oracle %.6f\n", fit.coefPlus.h,
                  orc.value);
  }
  const double c = median_of(closedMs), o = median_of(oracleMs);
  std::printf("closed form: %.2f ms  oracle: %.1f ms  ratio %.0fx\n", c, o,
              o / c);
  return 0;
}
