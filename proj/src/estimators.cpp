#include "lords/estimators.hpp"

#include <cmath>

#include "lords/errors.hpp"
#include "lords/stats.hpp"

namespace lords {

namespace {

void require_natural(const Dataset& ds) {
  if (ds.units() != Units::natural)
    throw EstimationError("analyses expect a natural-units dataset");
}

// 0 = girl, 1 = boy.
std::vector<double> recode01(const std::vector<double>& x) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != 1.0 && x[i] != -1.0)
      throw EstimationError("exposure column X must be +1 or -1");
    out[i] = x[i] == 1.0 ? 1.0 : 0.0;
  }
  return out;
}

std::vector<double> change_score(const Dataset& ds) {
  const auto& y0 = ds.col("Y0");
  const auto& y1 = ds.col("Y1");
  std::vector<double> dy(y0.size());
  for (std::size_t i = 0; i < dy.size(); ++i) dy[i] = y1[i] - y0[i];
  return dy;
}

std::pair<double, double> arm_means(const std::vector<double>& v,
                                    const std::vector<double>& x01) {
  double s0 = 0.0, c0 = 0.0, s1 = 0.0, c1 = 0.0;
  std::size_t n0 = 0, n1 = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    double& s = x01[i] == 1.0 ? s1 : s0;
    double& c = x01[i] == 1.0 ? c1 : c0;
    double y = v[i] - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
    (x01[i] == 1.0 ? n1 : n0)++;
  }
  if (n0 == 0 || n1 == 0) throw EstimationError("an exposure arm has no rows");
  return {s0 / static_cast<double>(n0), s1 / static_cast<double>(n1)};
}

std::vector<double> product(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

}  // namespace

double approach1_change_score(const Dataset& ds) {
  require_natural(ds);
  const auto x01 = recode01(ds.col("X"));
  const auto dy = change_score(ds);
  const auto fit = ols(dy, {{"X", x01}});
  return fit.coef("X");
}

FitResult approach2_ancova(const Dataset& ds, bool with_interaction) {
  require_natural(ds);
  const auto x01 = recode01(ds.col("X"));
  const auto& y0 = ds.col("Y0");
  const auto& y1 = ds.col("Y1");
  if (!with_interaction) return ols(y1, {{"X", x01}, {"Y0", y0}});
  const auto xy0 = product(x01, y0);
  return ols(y1, {{"X", x01}, {"Y0", y0}, {"X:Y0", xy0}});
}

FitResult approach4_change_adjusted(const Dataset& ds) {
  require_natural(ds);
  const auto x01 = recode01(ds.col("X"));
  const auto& y0 = ds.col("Y0");
  const auto dy = change_score(ds);
  return ols(dy, {{"X", x01}, {"Y0", y0}});
}

double approach5_follow_up(const Dataset& ds) {
  require_natural(ds);
  const auto x01 = recode01(ds.col("X"));
  const auto fit = ols(ds.col("Y1"), {{"X", x01}});
  return fit.coef("X");
}

namespace {

double gcomp_contrast(const Dataset& ds, bool pin_baseline, double y0_fixed,
                      bool with_interaction) {
  const auto x01 = recode01(ds.col("X"));
  const auto& y0 = ds.col("Y0");
  const auto& m0 = ds.col("M0");
  const auto& y1 = ds.col("Y1");

  FitResult fit;
  if (with_interaction) {
    const auto xy0 = product(x01, y0);
    fit = ols(y1, {{"X", x01}, {"Y0", y0}, {"M0", m0}, {"X:Y0", xy0}});
  } else {
    fit = ols(y1, {{"X", x01}, {"Y0", y0}, {"M0", m0}});
  }
  const double b0 = fit.coef("intercept");
  const double bx = fit.coef("X");
  const double by0 = fit.coef("Y0");
  const double bm0 = fit.coef("M0");
  const double bxy0 = with_interaction ? fit.coef("X:Y0") : 0.0;

  // Standardize each arm over its own empirical covariate rows, with X set to
  // the arm value and the baseline optionally pinned.
  double s[2] = {0.0, 0.0};
  double comp[2] = {0.0, 0.0};
  std::size_t cnt[2] = {0, 0};
  for (std::size_t i = 0; i < x01.size(); ++i) {
    const int arm = x01[i] == 1.0 ? 1 : 0;
    const double b = pin_baseline ? y0_fixed : y0[i];
    const double pred =
        b0 + bx * arm + by0 * b + bm0 * m0[i] + bxy0 * (arm ? b : 0.0);
    double y = pred - comp[arm];
    double t = s[arm] + y;
    comp[arm] = (t - s[arm]) - y;
    s[arm] = t;
    cnt[arm]++;
  }
  if (cnt[0] == 0 || cnt[1] == 0) throw EstimationError("an exposure arm has no rows");
  return s[1] / static_cast<double>(cnt[1]) - s[0] / static_cast<double>(cnt[0]);
}

}  // namespace

double gcomp_cde(const Dataset& ds, double y0_fixed, bool with_interaction) {
  require_natural(ds);
  if (!std::isfinite(y0_fixed)) throw EstimationError("y0_fixed must be finite");
  return gcomp_contrast(ds, true, y0_fixed, with_interaction);
}

double gcomp_tce(const Dataset& ds, bool with_interaction) {
  require_natural(ds);
  return gcomp_contrast(ds, false, 0.0, with_interaction);
}

double did_means(const Dataset& ds) {
  require_natural(ds);
  const auto x01 = recode01(ds.col("X"));
  const auto [y0_girl, y0_boy] = arm_means(ds.col("Y0"), x01);
  const auto [y1_girl, y1_boy] = arm_means(ds.col("Y1"), x01);
  return (y1_boy - y0_boy) - (y1_girl - y0_girl);
}

double group_contrast(const Dataset& ds, const std::string& column) {
  const auto x01 = recode01(ds.col("X"));
  const auto [girl, boy] = arm_means(ds.col(column), x01);
  return boy - girl;
}

EstimateSet estimate_all(const Dataset& ds, double y0_fixed_kg) {
  EstimateSet es;
  es.approach1_kg = approach1_change_score(ds);
  es.approach2_kg = approach2_ancova(ds).coef("X");
  es.gcomp_cde_kg = gcomp_cde(ds, y0_fixed_kg);
  es.approach4_kg = approach4_change_adjusted(ds).coef("X");
  es.approach5_kg = approach5_follow_up(ds);
  es.gcomp_tce_kg = gcomp_tce(ds);
  return es;
}

}  // namespace lords
