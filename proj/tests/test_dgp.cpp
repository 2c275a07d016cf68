#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <nlohmann/json.hpp>

#include "lords/dgp.hpp"
#include "lords/errors.hpp"
#include "lords/stats.hpp"

#include "support.hpp"

using namespace lords;
using namespace lords::stats;

TEST_CASE("canonical path coefficients") {
  const PathCoefficients c;
  CHECK(c.x_to_m0 == 0.5);
  CHECK(c.x_to_y0 == 0.7);
  CHECK(c.m0_to_y0 == -0.4);
  CHECK(c.x_to_y1 == 0.2);
  CHECK(c.m0_to_y1 == -0.2);
  CHECK(c.y0_to_y1 == 0.5);
  CHECK(c.diet_to_y1 == 0.15);
}

TEST_CASE("standardizing noise makes every node unit variance") {
  const auto sds = derive_noise_sds(PathCoefficients{});
  CHECK(sds.at("M0") == doctest::Approx(std::sqrt(0.75)).epsilon(1e-12));
  CHECK(sds.at("Y0") == doctest::Approx(std::sqrt(0.63)).epsilon(1e-12));
  CHECK(sds.at("Y1") == doctest::Approx(std::sqrt(0.4725)).epsilon(1e-12));

  const auto cov = population_covariance(build_lords_scm());
  for (const char* name : {"X", "M0", "Y0", "Y1", "Hall", "Diet"})
    CHECK(cov(name, name) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("weight-gain model shape") {
  const auto spec = build_lords_scm();
  REQUIRE(spec.nodes.size() == 7);
  CHECK(spec.nodes[0].name == "X");
  CHECK(spec.nodes[0].kind == NodeKind::symmetric_binary);
  CHECK(spec.nodes[1].name == "M0");
  CHECK(spec.nodes[1].parents == std::vector<std::string>{"X"});
  CHECK(spec.nodes[2].name == "Y0");
  CHECK(spec.nodes[2].parents == std::vector<std::string>{"X", "M0"});
  CHECK(spec.nodes[3].name == "Hall");
  CHECK(spec.nodes[3].kind == NodeKind::copy_of_parent);
  CHECK(spec.nodes[4].name == "Diet");
  CHECK(spec.nodes[4].kind == NodeKind::copy_of_parent);
  CHECK(spec.nodes[5].name == "Y1");
  CHECK(spec.nodes[5].parents == std::vector<std::string>{"X", "M0", "Y0", "Diet"});
  CHECK(spec.nodes[6].name == "dY");
  CHECK(spec.nodes[6].kind == NodeKind::difference);
  CHECK(spec.rescale.at("M0").mean == 30.0);
  CHECK(spec.rescale.at("M0").sd == 10.0);
  CHECK(spec.rescale.at("Y0").mean == 80.0);
  CHECK(spec.rescale.at("Y1").sd == 10.0);
}

TEST_CASE("randomized variant cuts exposure-to-baseline arrows") {
  const auto spec = build_randomized_scm();
  REQUIRE(spec.nodes.size() == 7);
  CHECK(spec.nodes[1].name == "M0");
  CHECK(spec.nodes[1].parents.empty());
  CHECK(spec.nodes[1].noise_sd == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(spec.nodes[2].name == "Y0");
  CHECK(spec.nodes[2].parents == std::vector<std::string>{"M0"});
  CHECK(spec.nodes[2].noise_sd == doctest::Approx(std::sqrt(0.84)).epsilon(1e-12));
  CHECK(spec.nodes[5].noise_sd == doctest::Approx(std::sqrt(0.5075)).epsilon(1e-12));

  const auto cov = population_covariance(spec);
  CHECK(cov("X", "Y0") == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(cov("X", "M0") == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("population covariance matches the closed-form values") {
  const auto cov = population_covariance(build_lords_scm());
  CHECK(cov("X", "M0") == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(cov("X", "Y0") == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(cov("X", "Y1") == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(cov("M0", "Y0") == doctest::Approx(-0.05).epsilon(1e-9));
  CHECK(cov("Y0", "Y1") == doctest::Approx(0.685).epsilon(1e-12));
  CHECK(cov("X", "dY") == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(cov("dY", "dY") == doctest::Approx(0.63).epsilon(1e-12));
  CHECK(cov("X", "Hall") == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sampled moments agree with the population covariance") {
  const auto spec = build_lords_scm();
  const auto ds = simulate(spec, 200000, 77);
  CHECK(sd(ds.col("M0")) == doctest::Approx(1.0).epsilon(0.02));
  CHECK(sd(ds.col("Y0")) == doctest::Approx(1.0).epsilon(0.02));
  CHECK(sd(ds.col("Y1")) == doctest::Approx(1.0).epsilon(0.02));
  CHECK(correlation(ds.col("X"), ds.col("Y0")) == doctest::Approx(0.5).epsilon(0.03));
  CHECK(std::abs(correlation(ds.col("M0"), ds.col("Y0")) - (-0.05)) < 0.01);
  CHECK(correlation(ds.col("Y0"), ds.col("Y1")) == doctest::Approx(0.685).epsilon(0.02));
}

TEST_CASE("infeasible standardization names the node") {
  PathCoefficients c;
  c.x_to_y0 = 1.2;  // explained variance exceeds 1
  try {
    build_lords_scm(c);
    FAIL("expected a standardization error");
  } catch (const ScmError& e) {
    CHECK(std::string(e.what()).find("Y0") != std::string::npos);
  }
}

TEST_CASE("ground truth by path tracing") {
  const auto gt = ground_truth(build_lords_scm());
  CHECK(gt.tce_kg == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(gt.cde_kg == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(gt.y0_contrast_kg == doctest::Approx(10.0).epsilon(1e-12));

  const auto rt = ground_truth(build_randomized_scm());
  CHECK(rt.tce_kg == doctest::Approx(7.0).epsilon(1e-12));
  CHECK(rt.cde_kg == doctest::Approx(7.0).epsilon(1e-12));
  CHECK(rt.y0_contrast_kg == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("ground truth requires the weight-gain node names") {
  ScmSpec s;
  s.nodes = {{"A", NodeKind::symmetric_binary, {}, {}, 0.0},
             {"B", NodeKind::linear_gaussian, {"A"}, {1.0}, 1.0}};
  CHECK_THROWS_AS(ground_truth(s), ScmError);
}

TEST_CASE("ground truth json carries the model name and values") {
  const auto j = ground_truth_json(ground_truth(build_lords_scm()), "lords_paradox");
  CHECK(j.at("model") == "lords_paradox");
  CHECK(j.at("tce_kg").get<double>() == doctest::Approx(10.0));
  CHECK(j.at("cde_kg").get<double>() == doctest::Approx(5.0));
  CHECK(j.at("y0_contrast_kg").get<double>() == doctest::Approx(10.0));
}

TEST_CASE("committed model files equal the builders") {
  CHECK(load_scm(testsupport::models_dir() / "lords_paradox.json") == build_lords_scm());
  CHECK(load_scm(testsupport::models_dir() / "randomized_assignment.json") ==
        build_randomized_scm());
}

TEST_CASE("covariance lookup rejects unknown names") {
  const auto cov = population_covariance(build_lords_scm());
  CHECK_THROWS(cov("X", "nope"));
}
