#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "lords/dataset.hpp"

namespace lords {

// Slope of Y1 on Y0, optionally pooled within strata of another column
// (sum of within-stratum cross products over sum of within-stratum squares).
// Pooled within X it equals the ANCOVA baseline coefficient.
double endogenous_slope(const Dataset& ds,
                        const std::optional<std::string>& within_strata_of = std::nullopt);

// Split of the change score implied by Y1 = beta1*Y0 + beta2*(C + R) with
// beta2 = 1 - beta1:
//   bias_term       = -(1 - beta1) * (Y0 - mean(Y0))
//   residual_change = Y1 - beta1*Y0 - (1 - beta1)*mean(Y0)
// Row by row the two parts sum to Y1 - Y0 exactly, for any beta1.
struct ChangeDecomposition {
  double beta1 = 0.0;
  double beta2 = 0.0;
  std::vector<double> residual_change;
  std::vector<double> bias_term;
};

ChangeDecomposition decompose_change(const Dataset& ds, double beta1);

struct BiasingTermReport {
  double corr_x_y0 = 0.0;
  double beta1 = 0.0;
  double beta2 = 0.0;
  double bias_contrast_kg = 0.0;
  double residual_contrast_kg = 0.0;
  double change_score_contrast_kg = 0.0;
  std::string diagnosis;
};

// Runs the decomposition at the within-sex endogenous slope and reports the
// boy-minus-girl contrast of each part. diagnosis is one of
// "no_bias_contribution", "exact_cancellation", "sign_reversal",
// "attenuation".
BiasingTermReport biasing_term_report(const Dataset& ds);

nlohmann::ordered_json to_json(const BiasingTermReport& report);

}  // namespace lords
