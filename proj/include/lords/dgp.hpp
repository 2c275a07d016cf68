#pragma once

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "lords/scm.hpp"

namespace lords {

// Path coefficients of the weight-gain data-generating process on the
// standardized scale. Defaults are the canonical values; tests construct
// variants to probe feasibility and sign behaviour.
struct PathCoefficients {
  double x_to_m0 = 0.5;
  double x_to_y0 = 0.7;
  double m0_to_y0 = -0.4;
  double x_to_y1 = 0.2;
  double m0_to_y1 = -0.2;
  double y0_to_y1 = 0.5;
  double diet_to_y1 = 0.15;
};

// Population covariance implied by a linear model spec; exogenous roots are
// mutually independent. Noise enters each node's own variance only.
class Covariance {
public:
  Covariance(std::vector<std::string> names, std::vector<double> dense);
  double operator()(const std::string& a, const std::string& b) const;
  const std::vector<std::string>& names() const { return names_; }

private:
  std::vector<std::string> names_;
  std::map<std::string, std::size_t> index_;
  std::vector<double> dense_;
};

Covariance population_covariance(const ScmSpec& spec);

// Noise sd for every linear_gaussian node such that each ends up with unit
// marginal variance. Throws ScmError when a node's parents already contribute
// more than unit variance.
std::map<std::string, double> standardizing_noise_sds(const ScmSpec& proto);

// Standardizing noise sds for the three stochastic nodes of the weight-gain
// process: M0, Y0, Y1.
std::map<std::string, double> derive_noise_sds(const PathCoefficients& coeffs);

// The observational weight-gain model: sex-determined dining hall and diet,
// baseline activity and weight both downstream of sex, follow-up weight
// downstream of everything. Standardized internally; rescale lands weights on
// mean 80 kg (sd 10) and activity on mean 30 min (sd 10).
ScmSpec build_lords_scm(const PathCoefficients& coeffs = {});

// Same outcome equation, but sex is assigned independently of baseline:
// the sex-to-activity and sex-to-baseline-weight paths are removed and the
// freed variance is returned to the node noise so marginals stay standardized.
ScmSpec build_randomized_scm(const PathCoefficients& coeffs = {});

// Interventional contrasts of X = +1 vs -1 by path tracing, in natural units.
struct GroundTruth {
  double tce_kg = 0.0;          // total causal effect on Y1
  double cde_kg = 0.0;          // controlled direct effect on Y1 with Y0 held fixed
  double y0_contrast_kg = 0.0;  // total effect of X on Y0
};

GroundTruth ground_truth(const ScmSpec& spec);
nlohmann::ordered_json ground_truth_json(const GroundTruth& gt, const std::string& model_name);

}  // namespace lords
