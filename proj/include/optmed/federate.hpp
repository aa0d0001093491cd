#pragma once

#include <string>
#include <vector>

#include "optmed/core_stats.hpp"

namespace optmed {

// Raw (uncentred) per-site sums and cross-products. Sites never centre;
// global centring happens once at combine time, which keeps the pooled
// statistics exactly equal to the centralised ones.
struct SiteSummary {
  std::string siteId;
  Eigen::Index n_s = 0;
  VectorXd sumX;
  double sumA = 0.0;
  double sumY = 0.0;
  MatrixXd XtX;
  VectorXd XtA;
  VectorXd XtY;
  double AtA = 0.0;
  double AtY = 0.0;
  double YtY = 0.0;
  std::vector<std::string> featureNames;
  std::string schemaVersion = "optmed-summary/1";
};

SiteSummary site_extract(const Dataset& raw, const std::string& siteId = "");

// Pool summaries (sorted by site id, pairwise tree accumulation) and
// assemble the centred sufficient statistics.
SufficientStats combine(std::vector<SiteSummary> summaries,
                        bool standardise = false);

std::string to_json(const SiteSummary& s);
SiteSummary summary_from_json(const std::string& text);

}  // namespace optmed
