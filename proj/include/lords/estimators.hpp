#pragma once

#include "lords/dataset.hpp"
#include "lords/ols.hpp"

namespace lords {

// All six analyses take a natural-units dataset with the exposure coded
// +1/-1 in column X and recode it to 0 = girl, 1 = boy internally, so every
// reported contrast is boy minus girl in kg.

// Approach 1: change score on exposure.
double approach1_change_score(const Dataset& ds);

// Approach 2: follow-up on exposure adjusting for baseline (ANCOVA). The
// exposure coefficient is the contrast; with_interaction adds an X:Y0 term.
FitResult approach2_ancova(const Dataset& ds, bool with_interaction = false);

// Approach 4: change score on exposure adjusting for baseline. Identical
// exposure coefficient to approach 2; baseline coefficient shifted by -1.
FitResult approach4_change_adjusted(const Dataset& ds);

// Approach 5: follow-up on exposure alone.
double approach5_follow_up(const Dataset& ds);

// Controlled direct effect by the parametric g-formula: fit Y1 on
// {X, Y0, M0}, predict per arm with the baseline pinned at y0_fixed and the
// activity value taken from each arm's own empirical distribution, difference
// the arm means.
double gcomp_cde(const Dataset& ds, double y0_fixed, bool with_interaction = false);

// Total causal effect by the parametric g-formula: same outcome model,
// standardizing over the joint within-arm empirical distribution of
// (Y0, M0).
double gcomp_tce(const Dataset& ds, bool with_interaction = false);

// Summary-level difference in differences of group means; algebraically the
// same number as approach 1 for a binary exposure.
double did_means(const Dataset& ds);

// Mean of a column among X = +1 rows minus mean among X = -1 rows.
double group_contrast(const Dataset& ds, const std::string& column);

struct EstimateSet {
  double approach1_kg = 0.0;
  double approach2_kg = 0.0;
  double gcomp_cde_kg = 0.0;
  double approach4_kg = 0.0;
  double approach5_kg = 0.0;
  double gcomp_tce_kg = 0.0;
};

EstimateSet estimate_all(const Dataset& ds, double y0_fixed_kg);

}  // namespace lords
