#include "lords/rtm.hpp"

#include <cmath>
#include <map>

#include <nlohmann/json.hpp>

#include "lords/errors.hpp"
#include "lords/estimators.hpp"
#include "lords/stats.hpp"

namespace lords {

double endogenous_slope(const Dataset& ds, const std::optional<std::string>& within_strata_of) {
  const auto& y0 = ds.col("Y0");
  const auto& y1 = ds.col("Y1");

  std::map<double, std::vector<std::size_t>> strata;
  if (within_strata_of) {
    const auto& s = ds.col(*within_strata_of);
    for (std::size_t i = 0; i < s.size(); ++i) strata[s[i]].push_back(i);
  } else {
    auto& all = strata[0.0];
    all.resize(y0.size());
    for (std::size_t i = 0; i < y0.size(); ++i) all[i] = i;
  }

  double sxy = 0.0, sxx = 0.0;
  for (const auto& [value, rows] : strata) {
    if (rows.size() < 2) continue;
    double m0 = 0.0, m1 = 0.0;
    for (auto i : rows) {
      m0 += y0[i];
      m1 += y1[i];
    }
    m0 /= static_cast<double>(rows.size());
    m1 /= static_cast<double>(rows.size());
    for (auto i : rows) {
      sxy += (y0[i] - m0) * (y1[i] - m1);
      sxx += (y0[i] - m0) * (y0[i] - m0);
    }
  }
  if (sxx == 0.0) throw EstimationError("endogenous slope undefined: Y0 has no spread");
  return sxy / sxx;
}

ChangeDecomposition decompose_change(const Dataset& ds, double beta1) {
  if (!std::isfinite(beta1)) throw EstimationError("beta1 must be finite");
  const auto& y0 = ds.col("Y0");
  const auto& y1 = ds.col("Y1");
  const double y0_mean = stats::mean(y0);
  const double beta2 = 1.0 - beta1;

  ChangeDecomposition dec;
  dec.beta1 = beta1;
  dec.beta2 = beta2;
  dec.residual_change.resize(y0.size());
  dec.bias_term.resize(y0.size());
  for (std::size_t i = 0; i < y0.size(); ++i) {
    dec.bias_term[i] = -beta2 * (y0[i] - y0_mean);
    dec.residual_change[i] = y1[i] - beta1 * y0[i] - beta2 * y0_mean;
  }
  return dec;
}

BiasingTermReport biasing_term_report(const Dataset& ds) {
  const double beta1 = endogenous_slope(ds, std::string("X"));
  const auto dec = decompose_change(ds, beta1);

  Dataset parts(ds.size(), ds.units());
  parts.add_column("X", ds.col("X"));
  parts.add_column("bias", dec.bias_term);
  parts.add_column("residual", dec.residual_change);

  BiasingTermReport report;
  report.corr_x_y0 = stats::correlation(ds.col("X"), ds.col("Y0"));
  report.beta1 = beta1;
  report.beta2 = dec.beta2;
  report.bias_contrast_kg = group_contrast(parts, "bias");
  report.residual_contrast_kg = group_contrast(parts, "residual");
  report.change_score_contrast_kg = report.bias_contrast_kg + report.residual_contrast_kg;

  const double change = report.change_score_contrast_kg;
  const double residual = report.residual_contrast_kg;
  if (std::abs(report.corr_x_y0) < 0.05)
    report.diagnosis = "no_bias_contribution";
  else if (std::abs(change) <= 0.1 * std::abs(residual))
    report.diagnosis = "exact_cancellation";
  else if (change * residual < 0.0)
    report.diagnosis = "sign_reversal";
  else
    report.diagnosis = "attenuation";
  return report;
}

nlohmann::ordered_json to_json(const BiasingTermReport& report) {
  nlohmann::ordered_json j;
  j["corr_x_y0"] = report.corr_x_y0;
  j["beta1"] = report.beta1;
  j["beta2"] = report.beta2;
  j["bias_contrast_kg"] = report.bias_contrast_kg;
  j["residual_contrast_kg"] = report.residual_contrast_kg;
  j["change_score_contrast_kg"] = report.change_score_contrast_kg;
  j["diagnosis"] = report.diagnosis;
  return j;
}

}  // namespace lords
