#include "optmed/federate.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

namespace optmed {

SiteSummary site_extract(const Dataset& raw, const std::string& siteId) {
  if (!raw.X.allFinite() || !raw.A.allFinite() || !raw.Y.allFinite())
    throw NonFiniteInput("site data contains non-finite entries");
  if (raw.n() < 1) throw DegenerateData("site has no rows");

  SiteSummary s;
  s.siteId = siteId;
  s.n_s = raw.n();
  s.sumX = raw.X.colwise().sum();
  s.sumA = raw.A.sum();
  s.sumY = raw.Y.sum();
  s.XtX = raw.X.transpose() * raw.X;
  s.XtA = raw.X.transpose() * raw.A;
  s.XtY = raw.X.transpose() * raw.Y;
  s.AtA = raw.A.squaredNorm();
  s.AtY = raw.A.dot(raw.Y);
  s.YtY = raw.Y.squaredNorm();
  s.featureNames = raw.names;
  if (s.featureNames.empty())
    for (Eigen::Index j = 0; j < raw.p(); ++j)
      s.featureNames.push_back("X" + std::to_string(j + 1));
  return s;
}

namespace {

void accumulate(SiteSummary& into, const SiteSummary& from) {
  into.n_s += from.n_s;
  into.sumX += from.sumX;
  into.sumA += from.sumA;
  into.sumY += from.sumY;
  into.XtX += from.XtX;
  into.XtA += from.XtA;
  into.XtY += from.XtY;
  into.AtA += from.AtA;
  into.AtY += from.AtY;
  into.YtY += from.YtY;
}

// pairwise tree sum over the sorted list, bit-stable across runs
SiteSummary tree_sum(std::vector<SiteSummary>& s, std::size_t lo,
                     std::size_t hi) {
  if (hi - lo == 1) return std::move(s[lo]);
  const std::size_t mid = lo + (hi - lo) / 2;
  SiteSummary left = tree_sum(s, lo, mid);
  const SiteSummary right = tree_sum(s, mid, hi);
  accumulate(left, right);
  return left;
}

}  // namespace

SufficientStats combine(std::vector<SiteSummary> summaries, bool standardise) {
  if (summaries.empty()) throw SchemaMismatch("no site summaries given");
  const auto& ref = summaries.front();
  for (const auto& s : summaries) {
    if (s.schemaVersion != ref.schemaVersion)
      throw SchemaMismatch("schema version mismatch: " + s.schemaVersion);
    if (s.featureNames.size() != ref.featureNames.size())
      throw SchemaMismatch("sites disagree on the number of features");
    if (s.featureNames != ref.featureNames)
      throw FeatureOrderMismatch("sites disagree on feature names or order");
  }
  std::stable_sort(summaries.begin(), summaries.end(),
                   [](const SiteSummary& a, const SiteSummary& b) {
                     return a.siteId < b.siteId;
                   });
  SiteSummary tot = tree_sum(summaries, 0, summaries.size());

  const double N = static_cast<double>(tot.n_s);
  const Eigen::Index p = tot.sumX.size();
  if (tot.n_s < 3) throw DegenerateData("pooled sample needs n >= 3");

  // centred cross-products: C(U, W) = sum U'W - (sum U)(sum W)'/N
  SufficientStats out;
  out.n = tot.n_s;
  out.p = p;
  out.normA2 = tot.AtA - tot.sumA * tot.sumA / N;
  if (out.normA2 <= 0.0) throw DegenerateTreatment("pooled treatment is constant");
  out.AtY = tot.AtY - tot.sumA * tot.sumY / N;
  out.normY2 = tot.YtY - tot.sumY * tot.sumY / N;
  out.a = tot.XtA - tot.sumX * (tot.sumA / N);
  VectorXd xy = tot.XtY - tot.sumX * (tot.sumY / N);
  MatrixXd xx = tot.XtX - (tot.sumX * tot.sumX.transpose()) / N;

  if (standardise) {
    VectorXd invSd(p);
    for (Eigen::Index j = 0; j < p; ++j) {
      const double var = xx(j, j) / (N - 1.0);
      if (var <= 0.0) throw ZeroVarianceColumn(tot.featureNames[j]);
      invSd(j) = 1.0 / std::sqrt(var);
    }
    out.a = out.a.cwiseProduct(invSd);
    xy = xy.cwiseProduct(invSd);
    xx = invSd.asDiagonal() * xx * invSd.asDiagonal();
  }

  out.z = xy - (out.AtY / out.normA2) * out.a;
  out.V = xx - (out.a * out.a.transpose()) / out.normA2;
  out.V = 0.5 * (out.V + out.V.transpose().eval());
  return out;
}

std::string to_json(const SiteSummary& s) {
  nlohmann::json j;
  j["schemaVersion"] = s.schemaVersion;
  j["siteId"] = s.siteId;
  j["n"] = s.n_s;
  j["p"] = s.sumX.size();
  j["featureNames"] = s.featureNames;
  j["sumX"] = std::vector<double>(s.sumX.data(), s.sumX.data() + s.sumX.size());
  j["sumA"] = s.sumA;
  j["sumY"] = s.sumY;
  std::vector<double> xtx;
  xtx.reserve(s.XtX.size());
  for (Eigen::Index r = 0; r < s.XtX.rows(); ++r)
    for (Eigen::Index c = 0; c < s.XtX.cols(); ++c) xtx.push_back(s.XtX(r, c));
  j["XtX"] = xtx;  // row-major, dims (p, p)
  j["XtA"] = std::vector<double>(s.XtA.data(), s.XtA.data() + s.XtA.size());
  j["XtY"] = std::vector<double>(s.XtY.data(), s.XtY.data() + s.XtY.size());
  j["AtA"] = s.AtA;
  j["AtY"] = s.AtY;
  j["YtY"] = s.YtY;
  return j.dump(2);
}

SiteSummary summary_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("summary JSON: ") + e.what());
  }
  try {
    SiteSummary s;
    s.schemaVersion = j.at("schemaVersion").get<std::string>();
    if (s.schemaVersion != "optmed-summary/1")
      throw SchemaMismatch("unknown schemaVersion: " + s.schemaVersion);
    s.siteId = j.value("siteId", std::string{});
    s.n_s = j.at("n").get<Eigen::Index>();
    const Eigen::Index p = j.at("p").get<Eigen::Index>();
    s.featureNames = j.at("featureNames").get<std::vector<std::string>>();
    if (static_cast<Eigen::Index>(s.featureNames.size()) != p)
      throw SchemaMismatch("featureNames length does not match p");
    auto vec = [&](const char* key, Eigen::Index len) {
      const auto v = j.at(key).get<std::vector<double>>();
      if (static_cast<Eigen::Index>(v.size()) != len)
        throw SchemaMismatch(std::string(key) + " has wrong length");
      return Eigen::Map<const VectorXd>(v.data(), len).eval();
    };
    s.sumX = vec("sumX", p);
    s.XtA = vec("XtA", p);
    s.XtY = vec("XtY", p);
    const auto xtx = j.at("XtX").get<std::vector<double>>();
    if (static_cast<Eigen::Index>(xtx.size()) != p * p)
      throw SchemaMismatch("XtX has wrong length");
    s.XtX.resize(p, p);
    for (Eigen::Index r = 0; r < p; ++r)
      for (Eigen::Index c = 0; c < p; ++c) s.XtX(r, c) = xtx[r * p + c];
    const double scale = s.XtX.cwiseAbs().maxCoeff();
    if ((s.XtX - s.XtX.transpose()).cwiseAbs().maxCoeff() >
        1e-8 * std::max(scale, 1e-300))
      throw SchemaMismatch("XtX is not symmetric");
    s.XtX = 0.5 * (s.XtX + s.XtX.transpose().eval());
    s.sumA = j.at("sumA").get<double>();
    s.sumY = j.at("sumY").get<double>();
    s.AtA = j.at("AtA").get<double>();
    s.AtY = j.at("AtY").get<double>();
    s.YtY = j.at("YtY").get<double>();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("summary JSON: ") + e.what());
  }
}

}  // namespace optmed
