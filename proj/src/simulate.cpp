#include "optmed/simulate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "optmed/baselines.hpp"
#include "optmed/inference.hpp"
#include "optmed/special.hpp"
#include "optmed/maxcor.hpp"
#include "optmed/solver_dual.hpp"
#include "optmed/solver_primal.hpp"

namespace optmed {

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::S1: return "S1";
    case Scenario::S2: return "S2";
    case Scenario::S3: return "S3";
    case Scenario::S4: return "S4";
    case Scenario::nullBoth: return "nullBoth";
    case Scenario::nullBeta: return "nullBeta";
    case Scenario::nullAlpha: return "nullAlpha";
    case Scenario::twoEntry: return "twoEntry";
    case Scenario::denseDual: return "denseDual";
  }
  return "?";
}

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
#ifdef _OPENMP
  if (threads != 1) {
    if (threads > 1) omp_set_num_threads(threads);
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
#endif
  // serial reference path
  for (int i = 0; i < count; ++i) fn(i);
}

PopulationModel make_scenario_paths(Scenario scenario, Eigen::Index p,
                                    RngStream& rng) {
  const Eigen::Index support = std::max<Eigen::Index>(1, (p + 2) / 4);
  Eigen::Index shared = 0;
  switch (scenario) {
    case Scenario::S1: shared = 0; break;
    case Scenario::S2:
      shared = static_cast<Eigen::Index>(std::lround(p / 16.0));
      break;
    case Scenario::S3:
      shared = static_cast<Eigen::Index>(std::lround(p / 8.0));
      break;
    case Scenario::S4: shared = support; break;
    default:
      throw DegenerateData("make_scenario_paths handles S1-S4 only");
  }
  shared = std::min(shared, support);
  const Eigen::Index unique = support - shared;

  // random permutation of indices
  std::vector<Eigen::Index> idx(p);
  std::iota(idx.begin(), idx.end(), 0);
  for (Eigen::Index i = p - 1; i > 0; --i)
    std::swap(idx[i], idx[rng.below(static_cast<std::uint64_t>(i + 1))]);

  PopulationModel m;
  m.alpha0 = VectorXd::Zero(p);
  m.beta0 = VectorXd::Zero(p);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < shared; ++i, ++k) {
    const double v = rng.normal();
    m.alpha0(idx[k]) = v;
    m.beta0(idx[k]) = v;
  }
  for (Eigen::Index i = 0; i < unique; ++i, ++k) m.alpha0(idx[k]) = rng.normal();
  for (Eigen::Index i = 0; i < unique; ++i, ++k) m.beta0(idx[k]) = rng.normal();
  m.alpha0.normalize();
  m.beta0.normalize();
  return m;
}

PopulationModel make_structured_paths(const SimConfig& cfg) {
  PopulationModel m;
  m.rho = cfg.rho;
  m.alpha0 = VectorXd::Zero(cfg.p);
  m.beta0 = VectorXd::Zero(cfg.p);
  const double g = cfg.signal;
  switch (cfg.scenario) {
    case Scenario::nullBoth:
      break;
    case Scenario::nullBeta:
      m.alpha0(0) = g;
      break;
    case Scenario::nullAlpha:
      m.beta0(0) = g;
      break;
    case Scenario::twoEntry: {
      const double phi = cfg.angleDeg * std::numbers::pi / 180.0;
      m.alpha0(0) = g;
      m.beta0(0) = g * std::cos(phi);
      m.beta0(1) = g * std::sin(phi);
      break;
    }
    default:
      throw DegenerateData("make_structured_paths: unsupported scenario");
  }
  return m;
}

Dataset generate_dataset(const SimConfig& cfg, const PopulationModel& model,
                         RngStream& rng) {
  const Eigen::Index n = cfg.n, p = cfg.p;
  Dataset d;
  d.X.resize(n, p);
  const double rho = model.rho;
  if (rho == 0.0) {
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < p; ++j) d.X(i, j) = rng.normal();
  } else {
    // AR(1) rows by the stationary recursion; same law as a Cholesky factor
    const double c = std::sqrt(1.0 - rho * rho);
    for (Eigen::Index i = 0; i < n; ++i) {
      d.X(i, 0) = rng.normal();
      for (Eigen::Index j = 1; j < p; ++j)
        d.X(i, j) = rho * d.X(i, j - 1) + c * rng.normal();
    }
  }
  for (Eigen::Index j = 0; j < p; ++j) d.X.col(j).array() -= d.X.col(j).mean();

  d.A = d.X * model.alpha0;
  d.Y = d.X * model.beta0;
  for (Eigen::Index i = 0; i < n; ++i) d.A(i) += cfg.sigmaEps * rng.normal();
  d.Y += cfg.tau * d.A;
  for (Eigen::Index i = 0; i < n; ++i) d.Y(i) += cfg.sigmaEps * rng.normal();
  return center_and_standardise(d, false);
}

Dataset generate_dense_dual(const SimConfig& cfg, RngStream& rng) {
  const Eigen::Index n = cfg.n, p = cfg.p;
  const double snr = cfg.signal;
  const double phi = cfg.angleDeg * std::numbers::pi / 180.0;

  VectorXd alpha(p), vperp(p);
  for (Eigen::Index j = 0; j < p; ++j) alpha(j) = rng.normal();
  alpha.normalize();
  for (Eigen::Index j = 0; j < p; ++j) vperp(j) = rng.normal();
  vperp -= vperp.dot(alpha) * alpha;
  vperp.normalize();
  const VectorXd beta = std::cos(phi) * alpha + std::sin(phi) * vperp;

  Dataset d;
  d.A.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) d.A(i) = rng.normal();
  d.X.resize(n, p);
  const double amp = snr * std::sqrt(static_cast<double>(p));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < p; ++j)
      d.X(i, j) = amp * alpha(j) * d.A(i) + rng.normal();
  d.Y = amp * (d.X * beta);
  for (Eigen::Index i = 0; i < n; ++i) d.Y(i) += rng.normal();
  return center_and_standardise(d, false);
}

double cos_phi_of(const Dataset& d) {
  if (select_regime(d.n(), d.p()) == Regime::primal) {
    const SufficientStats s = compute_sufficient_stats(d);
    return path_vectors(s).cosPhi;
  }
  return dual_path_vectors(dual_statistics(d)).cosPhi;
}

double two_entry_delta(double angleDeg, Eigen::Index p, double s,
                       double sigmaEps) {
  // Population quantities for Sigma_X = I, alpha = s e1:
  //   Sigma_Z = I - (s^2/(s^2+sig^2)) e1 e1',
  //   alpha0 = s e1, beta0 = beta - (s^2 cos/ (s^2+sig^2)) s e1.
  const double phi = angleDeg * std::numbers::pi / 180.0;
  const double denom = s * s + sigmaEps * sigmaEps;
  VectorXd alpha0 = VectorXd::Zero(p), beta0 = VectorXd::Zero(p);
  alpha0(0) = s;
  beta0(0) = s * std::cos(phi) - (s * s * std::cos(phi) / denom) * s;
  beta0(1) = s * std::sin(phi);
  MatrixXd SigmaZ = MatrixXd::Identity(p, p);
  SigmaZ(0, 0) -= s * s / denom;
  const double metricAngle = population_angle(alpha0, beta0, SigmaZ);
  return noncentrality_primal(metricAngle, p);
}

namespace {

std::string cell_name(const std::string& scen, Eigen::Index n, Eigen::Index p) {
  return scen + "_n" + std::to_string(n) + "_p" + std::to_string(p);
}

double safe_h(const VectorXd& w, const SufficientStats& s) {
  try {
    return path_coefficients(w, s).h;
  } catch (const DegenerateComposite&) {
    return 0.0;
  }
}

}  // namespace

std::vector<SimRow> run_table1(std::uint64_t seed, bool fullScale,
                               int threads) {
  struct Cell {
    Scenario scen;
    Eigen::Index n, p;
  };
  std::vector<Cell> cells;
  const std::vector<Scenario> scens = {Scenario::S1, Scenario::S2,
                                       Scenario::S3, Scenario::S4};
  for (Scenario sc : scens) {
    cells.push_back({sc, 500, 20});
    cells.push_back({sc, 1000, 100});
    if (fullScale) {
      cells.push_back({sc, 1000, 500});
      cells.push_back({sc, 500, 1000});  // dual cell
    }
  }
  const int reps = 20;

  std::vector<SimRow> rows;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const Cell& cell = cells[c];
    const bool dual = cell.p >= cell.n;
    std::vector<std::vector<SimRow>> out(reps);
    parallel_for(reps, threads, [&](int r) {
      RngStream rng(seed, 101, c, static_cast<std::uint64_t>(r));
      SimConfig cfg;
      cfg.n = cell.n;
      cfg.p = cell.p;
      cfg.scenario = cell.scen;
      const PopulationModel model = make_scenario_paths(cell.scen, cell.p, rng);
      PopulationModel m = model;
      m.rho = 0.75;
      const Dataset d = generate_dataset(cfg, m, rng);
      const std::string cn = cell_name(to_string(cell.scen), cell.n, cell.p);
      auto push = [&](const std::string& method, const std::string& metric,
                      double v) {
        out[r].push_back({"table1", cn, to_string(cell.scen), cell.n, cell.p,
                          r, method, metric, v});
      };
      if (dual) {
        const MediatorFit fit = maxie_fit_dual(d);
        push("maxie", "h", fit.coefPlus.h);
        push("maxie", "cosPhi", fit.cosPhi);
      } else {
        const SufficientStats s = compute_sufficient_stats(d);
        const MediatorFit fit = maxie_fit_primal(s);
        push("maxie", "h", fit.coefPlus.h);
        push("maxie", "cosPhi", fit.cosPhi);
        const MaxCorFit mc = maxcor_fit(s);
        push("maxcor", "h", safe_h(mc.w, s));
        push("maxcor", "fstar", mc.fstar);
        push("regYonX", "h", safe_h(reg_y_on_x(d), s));
        push("regAonX", "h", safe_h(reg_a_on_x(d), s));
      }
    });
    for (auto& v : out) rows.insert(rows.end(), v.begin(), v.end());
  }
  return rows;
}

std::vector<SimRow> run_table3(std::uint64_t seed, bool fullScale,
                               int threads) {
  const int reps = 1000;
  std::vector<SimRow> rows;

  struct Row {
    Scenario scen;
    double signal;
    const char* label;
  };
  const std::vector<Row> primalRows = {
      {Scenario::nullBoth, 1.0, "bothNull"},
      {Scenario::nullBeta, 1.0, "betaNull"},
      {Scenario::nullAlpha, 1.0, "alphaNull"},
      {Scenario::twoEntry, 0.10, "signal0.10"},
      {Scenario::twoEntry, 0.20, "signal0.20"},
  };

  const std::vector<Eigen::Index> primalP =
      fullScale ? std::vector<Eigen::Index>{20, 40, 80}
                : std::vector<Eigen::Index>{20};
  std::size_t cellIdx = 0;
  for (Eigen::Index p : primalP) {
    for (const Row& row : primalRows) {
      std::vector<int> rejCos(reps, 0), rejIut(reps, 0);
      parallel_for(reps, threads, [&, cellIdx](int r) {
        RngStream rng(seed, 301, cellIdx, static_cast<std::uint64_t>(r));
        SimConfig cfg;
        cfg.n = 200;
        cfg.p = p;
        cfg.rho = 0.75;
        cfg.tau = 0.25;
        cfg.scenario = row.scen;
        cfg.signal = row.signal;
        cfg.angleDeg = 0.0;  // power rows share a single entry: beta = alpha
        const PopulationModel model = make_structured_paths(cfg);
        const Dataset d = generate_dataset(cfg, model, rng);
        const SufficientStats s = compute_sufficient_stats(d);
        const CosineTest t = cosine_test_primal(path_vectors(s).cosPhi, p);
        rejCos[r] = t.pTwoSided < 0.05 ? 1 : 0;
        rejIut[r] = iut_test(d).p < 0.05 ? 1 : 0;
      });
      const std::string cn = cell_name(row.label, 200, p);
      const double rc = std::accumulate(rejCos.begin(), rejCos.end(), 0) /
                        static_cast<double>(reps);
      const double ri = std::accumulate(rejIut.begin(), rejIut.end(), 0) /
                        static_cast<double>(reps);
      rows.push_back({"table3", cn, row.label, 200, p, -1, "cosine",
                      "rejectionRate", rc});
      rows.push_back(
          {"table3", cn, row.label, 200, p, -1, "iut", "rejectionRate", ri});
      ++cellIdx;
    }
  }

  // dual panel: p = 200, X iid N(0, I), tau = 0
  const std::vector<Row> dualRows = {
      {Scenario::nullBoth, 1.0, "bothNull"},
      {Scenario::nullBeta, 1.0, "betaNull"},
      {Scenario::nullAlpha, 1.0, "alphaNull"},
      {Scenario::twoEntry, 0.30, "signal0.30"},
      {Scenario::twoEntry, 0.50, "signal0.50"},
  };
  const std::vector<Eigen::Index> dualN =
      fullScale ? std::vector<Eigen::Index>{40, 60, 80, 100, 120, 140}
                : std::vector<Eigen::Index>{40, 140};
  for (Eigen::Index n : dualN) {
    for (const Row& row : dualRows) {
      std::vector<int> rej(reps, 0);
      parallel_for(reps, threads, [&, cellIdx](int r) {
        RngStream rng(seed, 302, cellIdx, static_cast<std::uint64_t>(r));
        SimConfig cfg;
        cfg.n = n;
        cfg.p = 200;
        cfg.rho = 0.0;
        cfg.tau = 0.0;
        cfg.scenario = row.scen;
        cfg.signal = row.signal;
        cfg.angleDeg = 0.0;
        const PopulationModel model = make_structured_paths(cfg);
        const Dataset d = generate_dataset(cfg, model, rng);
        const double c = dual_path_vectors(dual_statistics(d)).cosPhi;
        rej[r] = cosine_test_dual(c, n).pTwoSided < 0.05 ? 1 : 0;
      });
      const std::string cn = cell_name(row.label, n, 200);
      const double rc = std::accumulate(rej.begin(), rej.end(), 0) /
                        static_cast<double>(reps);
      rows.push_back(
          {"table3", cn, row.label, n, 200, -1, "cosine", "rejectionRate", rc});
      ++cellIdx;
    }
  }
  return rows;
}

std::vector<SimRow> run_fig1(std::uint64_t seed, bool fullScale, int threads) {
  (void)fullScale;  // the figure is specified at 1,000 replicates
  const int reps = 1000;
  const std::vector<Scenario> nulls = {Scenario::nullBoth, Scenario::nullBeta,
                                       Scenario::nullAlpha};
  std::vector<SimRow> rows;
  std::size_t cellIdx = 0;
  for (int panel = 0; panel < 2; ++panel) {
    const bool dual = panel == 1;
    const Eigen::Index n = dual ? 100 : 1000;
    const Eigen::Index p = dual ? 1000 : 100;
    const Eigen::Index df = dual ? n - 2 : p - 1;
    for (Scenario scen : nulls) {
      std::vector<double> T(reps, 0.0);
      parallel_for(reps, threads, [&, cellIdx](int r) {
        RngStream rng(seed, 401, cellIdx, static_cast<std::uint64_t>(r));
        SimConfig cfg;
        cfg.n = n;
        cfg.p = p;
        cfg.rho = 0.75;
        cfg.tau = 0.0;
        cfg.scenario = scen;
        const PopulationModel model = make_structured_paths(cfg);
        const Dataset d = generate_dataset(cfg, model, rng);
        T[r] = cosine_test(cos_phi_of(d), df).T;
      });
      std::sort(T.begin(), T.end());
      const std::string cn =
          cell_name(to_string(scen) + (dual ? "_dual" : "_primal"), n, p);
      for (int i = 0; i < reps; ++i) {
        const double q = (i + 0.5) / reps;
        rows.push_back({"fig1", cn, to_string(scen), n, p, i, "cosine",
                        "theoreticalQuantile",
                        special::t_quantile(q, static_cast<double>(df))});
        rows.push_back({"fig1", cn, to_string(scen), n, p, i, "cosine",
                        "empiricalQuantile", T[i]});
      }
      ++cellIdx;
    }
  }
  return rows;
}

std::vector<SimRow> run_fig2(std::uint64_t seed, bool fullScale, int threads) {
  const int reps = fullScale ? 1000 : 300;
  const Eigen::Index p = 40;
  std::vector<SimRow> rows;
  std::size_t cellIdx = 0;

  auto simulate_T = [&](double angleDeg, Eigen::Index n, std::size_t key,
                        std::vector<double>& T) {
    T.assign(reps, 0.0);
    parallel_for(reps, threads, [&](int r) {
      RngStream rng(seed, 402, key, static_cast<std::uint64_t>(r));
      SimConfig cfg;
      cfg.n = n;
      cfg.p = p;
      cfg.rho = 0.0;
      cfg.tau = 0.0;
      cfg.scenario = Scenario::twoEntry;
      cfg.signal = 0.5;
      cfg.angleDeg = angleDeg;
      const PopulationModel model = make_structured_paths(cfg);
      const Dataset d = generate_dataset(cfg, model, rng);
      const SufficientStats s = compute_sufficient_stats(d);
      T[r] = cosine_test_primal(path_vectors(s).cosPhi, p).T;
    });
  };

  // left: mean(T) vs n for three angles, against the analytic delta
  for (double angle : {55.0, 70.0, 84.0}) {
    const double delta = two_entry_delta(angle, p, 0.5, 0.5);
    for (Eigen::Index n : {50, 100, 200, 400, 800}) {
      std::vector<double> T;
      simulate_T(angle, n, cellIdx++, T);
      const double mean =
          std::accumulate(T.begin(), T.end(), 0.0) / T.size();
      double sd = 0.0;
      for (double t : T) sd += (t - mean) * (t - mean);
      sd = std::sqrt(sd / (T.size() - 1));
      const std::string cn = cell_name("angle" + std::to_string((int)angle), n, p);
      rows.push_back({"fig2left", cn, "twoEntry", n, p, -1, "cosine", "meanT", mean});
      rows.push_back({"fig2left", cn, "twoEntry", n, p, -1, "cosine", "sdT", sd});
      rows.push_back({"fig2left", cn, "twoEntry", n, p, -1, "analytic", "delta", delta});
    }
  }

  // centre: power vs construction angle
  for (Eigen::Index n : {100, 200, 1000}) {
    for (int a = 15; a <= 165; a += 15) {
      std::vector<double> T;
      simulate_T(a, n, cellIdx++, T);
      int rej = 0;
      const double tcrit =
          special::t_quantile(0.975, static_cast<double>(p - 1));
      for (double t : T) rej += std::abs(t) > tcrit ? 1 : 0;
      const double delta = two_entry_delta(a, p, 0.5, 0.5);
      const double analytic =
          power_noncentral_t(delta, p - 1, 0.05).power;
      const std::string cn = cell_name("angle" + std::to_string(a), n, p);
      rows.push_back({"fig2centre", cn, "twoEntry", n, p, -1, "cosine",
                      "empiricalPower", rej / static_cast<double>(reps)});
      rows.push_back({"fig2centre", cn, "twoEntry", n, p, -1, "analytic",
                      "asymptoticPower", analytic});
      rows.push_back({"fig2centre", cn, "twoEntry", n, p, -1, "analytic",
                      "delta", delta});
    }
  }

  // right: power vs n for one angle above and one below threshold, plus null
  for (double angle : {55.0, 84.0, 90.0}) {
    for (Eigen::Index n : {50, 100, 200, 400, 800, 1600}) {
      std::vector<double> T;
      simulate_T(angle, n, cellIdx++, T);
      int rej = 0;
      const double tcrit =
          special::t_quantile(0.975, static_cast<double>(p - 1));
      for (double t : T) rej += std::abs(t) > tcrit ? 1 : 0;
      const std::string cn = cell_name("angle" + std::to_string((int)angle), n, p);
      rows.push_back({"fig2right", cn, "twoEntry", n, p, -1, "cosine",
                      "empiricalPower", rej / static_cast<double>(reps)});
    }
  }
  return rows;
}

std::vector<SimRow> run_fig3(std::uint64_t seed, bool fullScale, int threads) {
  const int reps = fullScale ? 1000 : 300;
  const Eigen::Index n = 40;
  std::vector<SimRow> rows;
  std::size_t cellIdx = 0;

  auto simulate_T = [&](double angleDeg, Eigen::Index p, std::size_t key,
                        std::vector<double>& T) {
    T.assign(reps, 0.0);
    parallel_for(reps, threads, [&](int r) {
      RngStream rng(seed, 403, key, static_cast<std::uint64_t>(r));
      SimConfig cfg;
      cfg.n = n;
      cfg.p = p;
      cfg.scenario = Scenario::denseDual;
      cfg.signal = 0.5;
      cfg.angleDeg = angleDeg;
      const Dataset d = generate_dense_dual(cfg, rng);
      T[r] = cosine_test_dual(dual_path_vectors(dual_statistics(d)).cosPhi, n).T;
    });
  };

  const double tcrit = special::t_quantile(0.975, static_cast<double>(n - 2));

  // left: T samples at 60 degrees across p, against t(38, delta)
  for (Eigen::Index p : {40, 80, 160, fullScale ? 1000 : 320}) {
    std::vector<double> T;
    simulate_T(60.0, p, cellIdx++, T);
    const std::string cn = cell_name("angle60", n, p);
    for (int i = 0; i < reps; ++i)
      rows.push_back({"fig3left", cn, "denseDual", n, p, i, "cosine", "T", T[i]});
  }

  // centre + right: empirical power with the pi_infinity reference
  for (double angle : {60.0, 70.0, 80.0, 90.0}) {
    const double delta = noncentrality_dual(angle * std::numbers::pi / 180.0, n);
    const double piInf = power_noncentral_t(delta, n - 2, 0.05).power;
    for (Eigen::Index p : {40, 80, 160, 320}) {
      std::vector<double> T;
      simulate_T(angle, p, cellIdx++, T);
      int rej = 0;
      for (double t : T) rej += std::abs(t) > tcrit ? 1 : 0;
      const std::string cn = cell_name("angle" + std::to_string((int)angle), n, p);
      rows.push_back({"fig3power", cn, "denseDual", n, p, -1, "cosine",
                      "empiricalPower", rej / static_cast<double>(reps)});
      rows.push_back({"fig3power", cn, "denseDual", n, p, -1, "analytic",
                      "piInfinity", piInf});
    }
  }
  return rows;
}

std::vector<SimRow> run_timing(std::uint64_t seed) {
  std::vector<SimRow> rows;
  struct Cfg {
    Eigen::Index n, p;
  };
  for (const Cfg& c : {Cfg{500, 20}, Cfg{1000, 100}}) {
    RngStream rng(seed, 501, static_cast<std::uint64_t>(c.p));
    SimConfig cfg;
    cfg.n = c.n;
    cfg.p = c.p;
    cfg.scenario = Scenario::S3;
    PopulationModel model = make_scenario_paths(Scenario::S3, c.p, rng);
    model.rho = 0.75;
    const Dataset d = generate_dataset(cfg, model, rng);
    const SufficientStats s = compute_sufficient_stats(d);

    auto median_ms = [](const std::function<void()>& fn) {
      fn();  // warm-up
      std::vector<double> t;
      for (int i = 0; i < 5; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        t.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
      }
      std::sort(t.begin(), t.end());
      return t[t.size() / 2];
    };

    const double msClosed = median_ms([&] { maxie_fit_primal(s); });
    OracleConfig oc;
    oc.seed = seed;
    const double msOracle =
        median_ms([&] { numerical_oracle(s, OracleObjective::h, oc); });
    const std::string cn = cell_name("timing", c.n, c.p);
    rows.push_back({"timing", cn, "S3", c.n, c.p, -1, "maxie", "ms", msClosed});
    rows.push_back({"timing", cn, "S3", c.n, c.p, -1, "oracle", "ms", msOracle});
    rows.push_back({"timing", cn, "S3", c.n, c.p, -1, "ratio", "oracleOverClosed",
                    msOracle / msClosed});
  }
  return rows;
}

}  // namespace optmed
