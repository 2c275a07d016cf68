#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "lords/dgp.hpp"
#include "lords/errors.hpp"
#include "lords/estimators.hpp"
#include "lords/ols.hpp"
#include "lords/stats.hpp"

#include "support.hpp"

using namespace lords;
using namespace lords::stats;

namespace {

const Dataset& canonical_dataset() {
  static const Dataset ds = testsupport::lords_dataset(200000, 99);
  return ds;
}

Dataset tiny_dataset() {
  Dataset ds(6, Units::natural);
  ds.add_column("x", {1, 2, 3, 4, 5, 6});
  ds.add_column("y", {2.1, 3.9, 6.2, 7.8, 10.1, 11.9});
  return ds;
}

}  // namespace

TEST_CASE("ols recovers an exact line with zero residual variance") {
  std::vector<double> x{1, 2, 3, 4, 5};
  std::vector<double> y{5, 7, 9, 11, 13};  // y = 3 + 2x
  const auto fit = ols(y, {{"x", x}});
  CHECK(fit.coef("intercept") == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(fit.coef("x") == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(fit.residual_variance == doctest::Approx(0.0).scale(1).epsilon(1e-10));
  CHECK(fit.n == 5);
}

TEST_CASE("ols standard errors match the closed form") {
  const auto ds = tiny_dataset();
  const auto& x = ds.col("x");
  const auto& y = ds.col("y");
  const auto fit = ols(y, {{"x", x}});

  const double xbar = mean(x);
  double sxx = 0;
  for (double v : x) sxx += (v - xbar) * (v - xbar);
  const double b = covariance(x, y) * (x.size() - 1) / sxx;
  double rss = 0;
  const double a = mean(y) - b * xbar;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - a - b * x[i];
    rss += r * r;
  }
  const double s2 = rss / (x.size() - 2);
  CHECK(fit.coef("x") == doctest::Approx(b).epsilon(1e-10));
  CHECK(fit.se("x") == doctest::Approx(std::sqrt(s2 / sxx)).epsilon(1e-8));
  CHECK(fit.se("intercept") ==
        doctest::Approx(std::sqrt(s2 * (1.0 / x.size() + xbar * xbar / sxx))).epsilon(1e-8));
  CHECK(fit.residual_variance == doctest::Approx(s2).epsilon(1e-10));
}

TEST_CASE("ols rejects degenerate designs") {
  std::vector<double> y{1, 2, 3};
  std::vector<double> x{1, 2, 3};
  CHECK_THROWS_AS(ols(y, {{"a", x}, {"b", x}, {"c", x}}), EstimationError);  // n <= p

  std::vector<double> y2{1, 2, 3, 4, 5};
  std::vector<double> c1{1, 1, 1, 1, 1};
  try {
    ols(y2, {{"flat", c1}});
    FAIL("expected a singular design error");
  } catch (const SingularDesignError& e) {
    CHECK(std::string(e.what()).find("flat") != std::string::npos);
  }

  std::vector<double> shorty{1, 2};
  CHECK_THROWS_AS(ols(y2, {{"x", shorty}}), EstimationError);
}

TEST_CASE("six approaches land on the theory values at large n") {
  const auto& ds = canonical_dataset();
  const auto es = estimate_all(ds, 80.0);
  CHECK(std::abs(es.approach1_kg - 0.0) < 0.15);
  CHECK(std::abs(es.approach2_kg - 4.2) < 0.15);
  CHECK(std::abs(es.gcomp_cde_kg - 5.0) < 0.20);
  CHECK(std::abs(es.approach4_kg - 4.2) < 0.15);
  CHECK(std::abs(es.approach5_kg - 10.0) < 0.25);
  CHECK(std::abs(es.gcomp_tce_kg - 10.0) < 0.25);
}

TEST_CASE("adjusted change score equals the baseline-adjusted follow-up fit") {
  const auto& ds = canonical_dataset();
  const auto a2 = approach2_ancova(ds);
  const auto a4 = approach4_change_adjusted(ds);
  CHECK(std::abs(a4.coef("X") - a2.coef("X")) < 1e-8);
  CHECK(std::abs(a4.coef("Y0") - (a2.coef("Y0") - 1.0)) < 1e-8);
}

TEST_CASE("difference in differences equals the change-score regression") {
  const auto& ds = canonical_dataset();
  CHECK(std::abs(did_means(ds) - approach1_change_score(ds)) < 1e-8);
}

TEST_CASE("g-formula total effect equals the unadjusted follow-up contrast") {
  const auto& ds = canonical_dataset();
  CHECK(std::abs(gcomp_tce(ds) - approach5_follow_up(ds)) < 1e-8);
}

TEST_CASE("g-formula direct effect does not depend on the pinned baseline") {
  const auto& ds = canonical_dataset();
  const double at70 = gcomp_cde(ds, 70.0);
  const double at80 = gcomp_cde(ds, 80.0);
  const double at90 = gcomp_cde(ds, 90.0);
  CHECK(std::abs(at70 - at80) < 1e-8);
  CHECK(std::abs(at90 - at80) < 1e-8);
}

TEST_CASE("without an activity-to-outcome path, adjustment and g-formula agree") {
  PathCoefficients c;
  c.m0_to_y1 = 0.0;
  const auto spec = build_lords_scm(c);
  const auto ds = to_natural_units(simulate(spec, 200000, 55), spec);
  const double g = gcomp_cde(ds, 80.0);
  const auto a2 = approach2_ancova(ds);
  CHECK(std::abs(g - a2.coef("X")) < 0.15);
  CHECK(std::abs(g - 7.0) < 0.2);  // direct + diet pathway only
}

TEST_CASE("interaction terms are accepted and near zero for this process") {
  const auto& ds = canonical_dataset();
  const auto fit = approach2_ancova(ds, true);
  CHECK(fit.coefficients.count("X:Y0") == 1);
  CHECK(std::abs(fit.coef("X:Y0")) < 0.05);
  const double g = gcomp_cde(ds, 80.0, true);
  CHECK(std::abs(g - 5.0) < 0.25);
}

TEST_CASE("identical waves produce a zero change contrast") {
  const auto& src = canonical_dataset();
  Dataset ds(src.size(), Units::natural);
  ds.add_column("X", src.col("X"));
  ds.add_column("M0", src.col("M0"));
  ds.add_column("Y0", src.col("Y0"));
  ds.add_column("Y1", src.col("Y0"));
  CHECK(approach1_change_score(ds) == doctest::Approx(0.0).scale(1).epsilon(1e-10));
  CHECK(did_means(ds) == doctest::Approx(0.0).scale(1).epsilon(1e-10));
}

TEST_CASE("estimators demand natural units and a +1/-1 exposure") {
  const auto spec = build_lords_scm();
  const auto std_ds = simulate(spec, 1000, 5);
  CHECK_THROWS_AS(estimate_all(std_ds, 80.0), EstimationError);

  auto nat = to_natural_units(std_ds, spec);
  nat.mutable_col("X")[0] = 0.5;
  CHECK_THROWS_AS(approach1_change_score(nat), EstimationError);
}

TEST_CASE("missing columns are reported by name") {
  Dataset ds(4, Units::natural);
  ds.add_column("X", {1, -1, 1, -1});
  ds.add_column("Y0", {80, 75, 85, 70});
  ds.add_column("Y1", {85, 80, 90, 75});
  try {
    gcomp_tce(ds);
    FAIL("expected a missing-column error");
  } catch (const EstimationError& e) {
    CHECK(std::string(e.what()).find("M0") != std::string::npos);
  }
}

TEST_CASE("a single-sex sample cannot identify the contrast") {
  Dataset ds(6, Units::natural);
  ds.add_column("X", {1, 1, 1, 1, 1, 1});
  ds.add_column("M0", {30, 31, 29, 30, 32, 28});
  ds.add_column("Y0", {80, 81, 79, 78, 82, 80});
  ds.add_column("Y1", {85, 86, 84, 83, 87, 85});
  CHECK_THROWS_AS(approach1_change_score(ds), EstimationError);
  CHECK_THROWS_AS(gcomp_tce(ds), EstimationError);
  CHECK_THROWS_AS(did_means(ds), EstimationError);
}

TEST_CASE("group contrast averages by exposure arm") {
  Dataset ds(4, Units::natural);
  ds.add_column("X", {1, -1, 1, -1});
  ds.add_column("v", {10, 2, 14, 4});
  CHECK(group_contrast(ds, "v") == doctest::Approx(9.0).epsilon(1e-12));
}
