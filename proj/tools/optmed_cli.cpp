// optmed: composite-mediator fitting, testing, power, simulation and
// federated pooling over a shared CSV/JSON file contract.

#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "optmed/baselines.hpp"
#include "optmed/csv.hpp"
#include "optmed/federate.hpp"
#include "optmed/inference.hpp"
#include "optmed/maxcor.hpp"
#include "optmed/simulate.hpp"
#include "optmed/solver_dual.hpp"
#include "optmed/special.hpp"

using nlohmann::json;
using namespace optmed;

namespace {

constexpr const char* kVersion = "0.1.0";

std::uint64_t fnv1a_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::uint64_t h = 14695981039346656037ULL;
  char buf[4096];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ULL;
    }
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, v);
  return buf;
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - t0)
        .count();
  }
};

json manifest(const std::string& command, const std::vector<std::string>& inputs,
              const Timer& timer, const json& config,
              std::uint64_t seed = 0) {
  json m;
  m["command"] = command;
  m["version"] = kVersion;
  m["seed"] = seed;
  json digests = json::object();
  for (const auto& path : inputs) digests[path] = hex64(fnv1a_file(path));
  m["inputDigests"] = digests;
  m["elapsedMs"] = timer.ms();
  m["config"] = config;
  return m;
}

json to_array(const VectorXd& v) {
  return json(std::vector<double>(v.data(), v.data() + v.size()));
}

const char* effect_name(EffectType t) {
  switch (t) {
    case EffectType::concordant: return "concordant";
    case EffectType::suppression: return "suppression";
    default: return "degenerate";
  }
}

json coef_json(const PathCoefficients& c) {
  json j;
  j["alpha"] = c.alpha;
  j["beta"] = c.beta;
  j["h"] = c.h;
  j["tau"] = c.tau;
  j["propMediatedDefined"] = c.propMediatedDefined;
  if (c.propMediatedDefined) j["propMediated"] = c.propMediated;
  return j;
}

json test_json(const CosineTest& t) {
  json j;
  j["cosPhi"] = t.cosPhi;
  j["T"] = t.T;
  j["df"] = t.df;
  j["pTwoSided"] = t.pTwoSided;
  j["pConcordant"] = t.pConcordant;
  j["pSuppression"] = t.pSuppression;
  j["regime"] = t.regime == Regime::primal ? "primal" : "dual";
  return j;
}

void emit(const json& doc, const std::string& outPath) {
  if (outPath.empty() || outPath == "-") {
    std::cout << doc.dump(2) << "\n";
    return;
  }
  std::ofstream out(outPath);
  if (!out) throw ParseError("cannot write " + outPath);
  out << doc.dump(2) << "\n";
}

struct FitOptions {
  std::string csvPath;
  std::string treatment;
  std::string outcome;
  std::string regime = "auto";
  std::string out;
  bool standardise = false;
  double ridge = kDefaultRidgeScale;
};

void add_fit_options(CLI::App* cmd, FitOptions& opt) {
  cmd->add_option("csv", opt.csvPath, "input CSV (header required)")
      ->required();
  cmd->add_option("--treatment", opt.treatment, "treatment column name")
      ->required();
  cmd->add_option("--outcome", opt.outcome, "outcome column name")->required();
  cmd->add_flag("--standardise", opt.standardise,
                "scale mediators to unit sd");
  cmd->add_option("--regime", opt.regime, "auto, primal or dual")
      ->check(CLI::IsMember({"auto", "primal", "dual"}));
  cmd->add_option("--ridge", opt.ridge, "ridge scale for V (primal)");
  cmd->add_option("--out", opt.out, "output path (default stdout)");
}

Regime resolve_regime(const std::string& flag, Eigen::Index n,
                      Eigen::Index p) {
  if (flag == "primal") {
    if (p >= n)
      throw RegimeUnsupported(
          "p >= n: the primal solver needs n > p, use --regime dual");
    return Regime::primal;
  }
  if (flag == "dual") return Regime::dual;
  return select_regime(n, p);
}

// A one-mediator input has df = p - 1 = 0; the test degenerates to "no
// evidence" rather than an error.
json safe_test_json(double cosPhi, Eigen::Index df, Regime regime) {
  if (df >= 1) return test_json(cosine_test(cosPhi, df, regime));
  CosineTest t;
  t.cosPhi = cosPhi;
  t.df = df;
  t.regime = regime;
  json j = test_json(t);
  j["dfInsufficient"] = true;
  return j;
}

json fit_document(const FitOptions& opt, Dataset& centred, Regime& regime) {
  const Dataset raw =
      dataset_from_table(read_csv(opt.csvPath), opt.treatment, opt.outcome);
  centred = center_and_standardise(raw, opt.standardise);
  regime = resolve_regime(opt.regime, centred.n(), centred.p());

  json doc;
  doc["schemaVersion"] = "optmed-fit/1";
  doc["n"] = centred.n();
  doc["p"] = centred.p();
  doc["regime"] = regime == Regime::primal ? "primal" : "dual";

  double cosPhi = 0.0;
  bool haveFit = false;
  MediatorFit fit;
  if (regime == Regime::primal) {
    const SufficientStats s = compute_sufficient_stats(centred);
    const PathGeometry g = path_vectors(s, opt.ridge);
    cosPhi = g.cosPhi;
    doc["pathStrength"] = g.normP * g.normQ / s.normA2;
    try {
      fit = maxie_fit_primal(s, opt.ridge);
      haveFit = true;
      const MaxCorFit mc = maxcor_fit(s, opt.ridge);
      json m;
      m["w"] = to_array(mc.w);
      m["fstar"] = mc.fstar;
      m["theta"] = mc.theta;
      m["converged"] = mc.converged;
      doc["maxcor"] = m;
    } catch (const DegeneratePath& e) {
      doc["degenerateReason"] = e.what();
    }
    doc["test"] = safe_test_json(cosPhi, centred.p() - 1, Regime::primal);
  } else {
    const DualGeometry g = dual_path_vectors(dual_statistics(centred));
    cosPhi = g.cosPhi;
    try {
      fit = maxie_fit_dual(centred);
      haveFit = true;
    } catch (const DegeneratePath& e) {
      doc["degenerateReason"] = e.what();
    }
    doc["test"] = safe_test_json(cosPhi, centred.n() - 2, Regime::dual);
  }

  doc["cosPhi"] = cosPhi;
  doc["degenerate"] = !haveFit;
  if (haveFit) {
    doc["pathStrength"] = fit.pathStrength;
    doc["wPlus"] = to_array(fit.wPlus);
    doc["wMinus"] = to_array(fit.wMinus);
    doc["coefPlus"] = coef_json(fit.coefPlus);
    doc["coefMinus"] = coef_json(fit.coefMinus);
    doc["effectTypePlus"] = effect_name(fit.effectTypePlus);
    doc["effectTypeMinus"] = effect_name(fit.effectTypeMinus);
    if (fit.wPlus.norm() > 0.0) {
      const MediationSummary ev = evaluate_composite(fit.wPlus, centred);
      json e;
      e["r_MA"] = ev.r_MA;
      e["r_MperpY"] = ev.r_MperpY;
      e["fstar"] = ev.fstar;
      e["h"] = ev.h;
      doc["compositePlus"] = e;
    }
  }
  return doc;
}

int cmd_fit(const FitOptions& opt) {
  Timer timer;
  Dataset centred;
  Regime regime;
  json doc = fit_document(opt, centred, regime);
  json cfg;
  cfg["treatment"] = opt.treatment;
  cfg["outcome"] = opt.outcome;
  cfg["standardise"] = opt.standardise;
  cfg["regime"] = opt.regime;
  cfg["ridge"] = opt.ridge;
  doc["manifest"] = manifest("fit", {opt.csvPath}, timer, cfg);
  emit(doc, opt.out);
  return 0;
}

int cmd_test(FitOptions opt, bool iut, double cosPhiOverride,
             Eigen::Index dfOverride) {
  Timer timer;
  json doc;
  doc["schemaVersion"] = "optmed-test/1";
  std::vector<std::string> inputs;

  if (!std::isnan(cosPhiOverride)) {
    if (dfOverride <= 0)
      throw SchemaMismatch("--cos-phi requires --df-override");
    doc["test"] = test_json(cosine_test(cosPhiOverride, dfOverride));
    doc["iutAvailable"] = false;
  } else {
    Dataset centred;
    Regime regime;
    const json fitDoc = fit_document(opt, centred, regime);
    inputs.push_back(opt.csvPath);
    double cosPhi = fitDoc.at("cosPhi").get<double>();
    Eigen::Index df = dfOverride > 0 ? dfOverride
                      : regime == Regime::primal ? centred.p() - 1
                                                 : centred.n() - 2;
    doc["test"] = safe_test_json(cosPhi, df, regime);
    doc["n"] = centred.n();
    doc["p"] = centred.p();
    const bool iutOk = iut && centred.n() > centred.p() + 2;
    doc["iutAvailable"] = iutOk;
    if (iutOk) {
      const IutResult r = iut_test(centred);
      json j;
      j["pAlpha"] = r.pAlpha;
      j["pBeta"] = r.pBeta;
      j["p"] = r.p;
      doc["iut"] = j;
    }
  }

  json cfg;
  cfg["iut"] = iut;
  if (!std::isnan(cosPhiOverride)) cfg["cosPhi"] = cosPhiOverride;
  if (dfOverride > 0) cfg["dfOverride"] = dfOverride;
  doc["manifest"] = manifest("test", inputs, timer, cfg);
  emit(doc, opt.out);
  return 0;
}

int cmd_power(const std::string& mode, double angleDeg, Eigen::Index dim,
              double alpha, const std::string& out) {
  Timer timer;
  const double phi0 = angleDeg * M_PI / 180.0;
  double delta;
  Eigen::Index df;
  if (mode == "primal") {
    delta = noncentrality_primal(phi0, dim);
    df = dim - 1;
  } else {
    delta = noncentrality_dual(phi0, dim);
    df = dim - 2;
  }
  const PowerResult r = power_noncentral_t(delta, df, alpha);

  json doc;
  doc["schemaVersion"] = "optmed-power/1";
  doc["mode"] = mode;
  doc["angleDeg"] = angleDeg;
  doc["dim"] = dim;
  doc["alpha"] = alpha;
  doc["delta"] = delta;
  doc["df"] = df;
  doc["power"] = r.power;
  doc["detectable"] = r.detectable;
  json cfg;
  cfg["mode"] = mode;
  cfg["angleDeg"] = angleDeg;
  cfg["dim"] = dim;
  cfg["alpha"] = alpha;
  doc["manifest"] = manifest("power", {}, timer, cfg);
  emit(doc, out);
  return 0;
}

int cmd_simulate(const std::string& experiment, std::uint64_t seed,
                 const std::string& scale, int threads,
                 const std::string& outPrefix) {
  Timer timer;
  const bool full = scale == "full";
  std::vector<SimRow> rows;
  if (experiment == "table1")
    rows = run_table1(seed, full, threads);
  else if (experiment == "table3")
    rows = run_table3(seed, full, threads);
  else if (experiment == "fig1")
    rows = run_fig1(seed, full, threads);
  else if (experiment == "fig2")
    rows = run_fig2(seed, full, threads);
  else if (experiment == "fig3")
    rows = run_fig3(seed, full, threads);
  else
    rows = run_timing(seed);

  const std::string csvPath = outPrefix + ".csv";
  std::ofstream out(csvPath);
  if (!out) throw ParseError("cannot write " + csvPath);
  out << "experiment,cell,scenario,n,p,replicate,method,metric,value\n";
  char num[40];
  for (const auto& r : rows) {
    std::snprintf(num, sizeof(num), "%.17g", r.value);
    out << r.experiment << ',' << r.cell << ',' << r.scenario << ',' << r.n
        << ',' << r.p << ',' << r.replicate << ',' << r.method << ','
        << r.metric << ',' << num << '\n';
  }
  out.close();

  json cfg;
  cfg["experiment"] = experiment;
  cfg["scale"] = scale;
  cfg["threads"] = threads;
  cfg["rows"] = rows.size();
  // AR(1) mediator covariance is sampled by its lag-one recursion, which has
  // the same law as a Cholesky draw.
  cfg["covarianceSampling"] = "ar1-recursion";
  cfg["sharedSupportRounding"] = "round(p/16)";
  json m = manifest("simulate", {}, timer, cfg, seed);
  std::ofstream mout(outPrefix + ".manifest.json");
  if (!mout) throw ParseError("cannot write " + outPrefix + ".manifest.json");
  mout << m.dump(2) << "\n";
  std::cerr << "wrote " << csvPath << " (" << rows.size() << " rows)\n";
  return 0;
}

int cmd_extract_summary(const FitOptions& opt, const std::string& siteId) {
  Timer timer;
  const Dataset raw =
      dataset_from_table(read_csv(opt.csvPath), opt.treatment, opt.outcome);
  const SiteSummary s = site_extract(raw, siteId);
  json doc = json::parse(to_json(s));
  json cfg;
  cfg["treatment"] = opt.treatment;
  cfg["outcome"] = opt.outcome;
  cfg["siteId"] = siteId;
  doc["manifest"] = manifest("extract-summary", {opt.csvPath}, timer, cfg);
  emit(doc, opt.out);
  return 0;
}

int cmd_combine(const std::vector<std::string>& paths, bool standardise,
                double ridge, const std::string& out) {
  Timer timer;
  std::vector<SiteSummary> summaries;
  for (const auto& path : paths) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    summaries.push_back(summary_from_json(text));
  }
  const SufficientStats s = combine(summaries, standardise);
  if (s.p >= s.n)
    throw RegimeUnsupported(
        "pooled p >= n: the dual solver needs row-level data");
  const MediatorFit fit = maxie_fit_primal(s, ridge);

  json doc;
  doc["schemaVersion"] = "optmed-fit/1";
  doc["n"] = s.n;
  doc["p"] = s.p;
  doc["regime"] = "primal";
  doc["sites"] = summaries.size();
  doc["cosPhi"] = fit.cosPhi;
  doc["pathStrength"] = fit.pathStrength;
  doc["wPlus"] = to_array(fit.wPlus);
  doc["wMinus"] = to_array(fit.wMinus);
  doc["coefPlus"] = coef_json(fit.coefPlus);
  doc["coefMinus"] = coef_json(fit.coefMinus);
  doc["effectTypePlus"] = effect_name(fit.effectTypePlus);
  doc["effectTypeMinus"] = effect_name(fit.effectTypeMinus);
  doc["test"] = test_json(cosine_test_primal(fit.cosPhi, s.p));
  json cfg;
  cfg["standardise"] = standardise;
  cfg["ridge"] = ridge;
  doc["manifest"] = manifest("combine", paths, timer, cfg);
  emit(doc, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"optimal composite mediator toolkit"};
  app.require_subcommand(1);

  FitOptions fitOpt;
  auto* fit = app.add_subcommand("fit", "fit the composite mediator");
  add_fit_options(fit, fitOpt);

  FitOptions testOpt;
  bool iut = false;
  double cosPhiOverride = std::numeric_limits<double>::quiet_NaN();
  Eigen::Index dfOverride = 0;
  auto* test = app.add_subcommand("test", "cosine (and IUT) significance test");
  test->add_option("csv", testOpt.csvPath, "input CSV (header required)");
  test->add_option("--treatment", testOpt.treatment, "treatment column name");
  test->add_option("--outcome", testOpt.outcome, "outcome column name");
  test->add_flag("--standardise", testOpt.standardise,
                 "scale mediators to unit sd");
  test->add_option("--regime", testOpt.regime, "auto, primal or dual")
      ->check(CLI::IsMember({"auto", "primal", "dual"}));
  test->add_option("--ridge", testOpt.ridge, "ridge scale for V (primal)");
  test->add_option("--out", testOpt.out, "output path (default stdout)");
  test->add_flag("--iut", iut, "also run the intersection-union test");
  test->add_option("--cos-phi", cosPhiOverride,
                   "test a given cos(phi) directly (no CSV)");
  test->add_option("--df-override", dfOverride, "override the test df");

  std::string powerMode = "primal";
  double angleDeg = 90.0, alphaLevel = 0.05;
  Eigen::Index dim = 0;
  std::string powerOut;
  auto* power = app.add_subcommand("power", "analytic power of the cosine test");
  power->add_option("--mode", powerMode, "primal or dual")
      ->check(CLI::IsMember({"primal", "dual"}));
  power->add_option("--angle-deg", angleDeg, "population angle phi0 in degrees")
      ->required();
  power->add_option("--dim", dim, "p (primal) or n (dual)")->required();
  power->add_option("--alpha", alphaLevel, "test level");
  power->add_option("--out", powerOut, "output path (default stdout)");

  std::string experiment, scale = "desk", outPrefix = "optmed_sim";
  std::uint64_t seed = 1;
  int threads = 0;
  auto* sim = app.add_subcommand("simulate", "run a simulation experiment");
  sim->add_option("--experiment", experiment, "which experiment")
      ->check(CLI::IsMember(
          {"table1", "table3", "fig1", "fig2", "fig3", "timing"}))
      ->required();
  sim->add_option("--seed", seed, "master seed");
  sim->add_option("--scale", scale, "desk or full")
      ->check(CLI::IsMember({"desk", "full"}));
  sim->add_option("--threads", threads, "worker count (0 = all, 1 = serial)");
  sim->add_option("--out", outPrefix, "output prefix (.csv, .manifest.json)");

  FitOptions extOpt;
  std::string siteId;
  auto* ext = app.add_subcommand("extract-summary",
                                 "site-local cross-product summary");
  add_fit_options(ext, extOpt);
  ext->add_option("--site-id", siteId, "site identifier");

  std::vector<std::string> summaryPaths;
  bool combStandardise = false;
  double combRidge = kDefaultRidgeScale;
  std::string combOut;
  auto* comb = app.add_subcommand("combine", "pool site summaries and fit");
  comb->add_option("summaries", summaryPaths, "summary JSON files")
      ->required();
  comb->add_flag("--standardise", combStandardise,
                 "standardise with pooled variances");
  comb->add_option("--ridge", combRidge, "ridge scale for V");
  comb->add_option("--out", combOut, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (fit->parsed()) return cmd_fit(fitOpt);
    if (test->parsed()) {
      if (std::isnan(cosPhiOverride) &&
          (testOpt.csvPath.empty() || testOpt.treatment.empty() ||
           testOpt.outcome.empty()))
        throw SchemaMismatch(
            "test needs a CSV with --treatment/--outcome, or --cos-phi");
      return cmd_test(testOpt, iut, cosPhiOverride, dfOverride);
    }
    if (power->parsed())
      return cmd_power(powerMode, angleDeg, dim, alphaLevel, powerOut);
    if (sim->parsed())
      return cmd_simulate(experiment, seed, scale, threads, outPrefix);
    if (ext->parsed()) return cmd_extract_summary(extOpt, siteId);
    if (comb->parsed())
      return cmd_combine(summaryPaths, combStandardise, combRidge, combOut);
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DegenerateData& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
