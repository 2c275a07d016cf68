#include "lords/dgp.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "lords/errors.hpp"

namespace lords {

Covariance::Covariance(std::vector<std::string> names, std::vector<double> dense)
    : names_(std::move(names)), dense_(std::move(dense)) {
  for (std::size_t i = 0; i < names_.size(); ++i) index_[names_[i]] = i;
}

double Covariance::operator()(const std::string& a, const std::string& b) const {
  auto ia = index_.find(a), ib = index_.find(b);
  if (ia == index_.end() || ib == index_.end())
    throw ScmError("covariance query for unknown node");
  return dense_[ia->second * names_.size() + ib->second];
}

namespace {

// Shared propagation: walks nodes in topological order maintaining the full
// covariance matrix. When standardize is set, every linear_gaussian node's
// noise variance is chosen as 1 - var(linear part) and reported.
struct Propagation {
  std::vector<std::string> names;
  std::vector<double> dense;  // row-major square
  std::map<std::string, double> chosen_noise;
};

Propagation propagate(const ScmSpec& ordered, bool standardize) {
  const std::size_t m = ordered.nodes.size();
  Propagation prop;
  prop.dense.assign(m * m, 0.0);
  std::map<std::string, std::size_t> index;

  auto cov = [&](std::size_t a, std::size_t b) -> double& { return prop.dense[a * m + b]; };

  for (std::size_t v = 0; v < m; ++v) {
    const auto& node = ordered.nodes[v];
    index[node.name] = v;
    prop.names.push_back(node.name);

    if (node.kind == NodeKind::symmetric_binary) {
      cov(v, v) = 1.0;  // +1/-1 with equal probability
      continue;
    }

    std::vector<std::size_t> pidx;
    std::vector<double> pc;
    if (node.kind == NodeKind::linear_gaussian) {
      for (std::size_t k = 0; k < node.parents.size(); ++k) {
        pidx.push_back(index.at(node.parents[k]));
        pc.push_back(node.coefficients[k]);
      }
    } else if (node.kind == NodeKind::copy_of_parent) {
      pidx.push_back(index.at(node.parents[0]));
      pc.push_back(1.0);
    } else {
      pidx.push_back(index.at(node.parents[0]));
      pc.push_back(1.0);
      pidx.push_back(index.at(node.parents[1]));
      pc.push_back(-1.0);
    }

    for (std::size_t u = 0; u < v; ++u) {
      double s = 0.0;
      for (std::size_t k = 0; k < pidx.size(); ++k) s += pc[k] * cov(pidx[k], u);
      cov(v, u) = cov(u, v) = s;
    }
    double linear_var = 0.0;
    for (std::size_t k = 0; k < pidx.size(); ++k)
      for (std::size_t l = 0; l < pidx.size(); ++l)
        linear_var += pc[k] * pc[l] * cov(pidx[k], pidx[l]);

    double noise_var = node.noise_sd * node.noise_sd;
    if (standardize && node.kind == NodeKind::linear_gaussian) {
      noise_var = 1.0 - linear_var;
      if (noise_var < -1e-12)
        throw ScmError("standardization infeasible for '" + node.name +
                       "': parents contribute variance " + std::to_string(linear_var));
      noise_var = std::max(noise_var, 0.0);
      prop.chosen_noise[node.name] = std::sqrt(noise_var);
    }
    cov(v, v) = linear_var + noise_var;
  }
  return prop;
}

}  // namespace

Covariance population_covariance(const ScmSpec& spec) {
  const ScmSpec ordered = validate_scm(spec);
  Propagation prop = propagate(ordered, false);
  return Covariance(std::move(prop.names), std::move(prop.dense));
}

std::map<std::string, double> standardizing_noise_sds(const ScmSpec& proto) {
  const ScmSpec ordered = validate_scm(proto);
  return propagate(ordered, true).chosen_noise;
}

namespace {

ScmSpec lords_proto(const PathCoefficients& c, bool randomized) {
  ScmSpec spec;
  spec.nodes.push_back({"X", NodeKind::symmetric_binary, {}, {}, 0.0});
  if (randomized)
    spec.nodes.push_back({"M0", NodeKind::linear_gaussian, {}, {}, 0.0});
  else
    spec.nodes.push_back({"M0", NodeKind::linear_gaussian, {"X"}, {c.x_to_m0}, 0.0});
  if (randomized)
    spec.nodes.push_back({"Y0", NodeKind::linear_gaussian, {"M0"}, {c.m0_to_y0}, 0.0});
  else
    spec.nodes.push_back(
        {"Y0", NodeKind::linear_gaussian, {"X", "M0"}, {c.x_to_y0, c.m0_to_y0}, 0.0});
  spec.nodes.push_back({"Hall", NodeKind::copy_of_parent, {"X"}, {1.0}, 0.0});
  spec.nodes.push_back({"Diet", NodeKind::copy_of_parent, {"X"}, {1.0}, 0.0});
  spec.nodes.push_back({"Y1",
                        NodeKind::linear_gaussian,
                        {"X", "M0", "Y0", "Diet"},
                        {c.x_to_y1, c.m0_to_y1, c.y0_to_y1, c.diet_to_y1},
                        0.0});
  spec.nodes.push_back({"dY", NodeKind::difference, {"Y1", "Y0"}, {1.0, -1.0}, 0.0});
  spec.rescale["M0"] = Rescale{30.0, 10.0};
  spec.rescale["Y0"] = Rescale{80.0, 10.0};
  spec.rescale["Y1"] = Rescale{80.0, 10.0};
  return spec;
}

ScmSpec with_standardizing_noise(ScmSpec proto) {
  const auto noise = standardizing_noise_sds(proto);
  for (auto& node : proto.nodes) {
    auto it = noise.find(node.name);
    if (it != noise.end()) node.noise_sd = it->second;
  }
  return validate_scm(proto);
}

}  // namespace

std::map<std::string, double> derive_noise_sds(const PathCoefficients& coeffs) {
  return standardizing_noise_sds(lords_proto(coeffs, false));
}

ScmSpec build_lords_scm(const PathCoefficients& coeffs) {
  return with_standardizing_noise(lords_proto(coeffs, false));
}

ScmSpec build_randomized_scm(const PathCoefficients& coeffs) {
  return with_standardizing_noise(lords_proto(coeffs, true));
}

GroundTruth ground_truth(const ScmSpec& spec) {
  const ScmSpec ordered = validate_scm(spec);

  bool has_x = false, has_y0 = false, has_y1 = false;
  for (const auto& node : ordered.nodes) {
    has_x |= node.name == "X";
    has_y0 |= node.name == "Y0";
    has_y1 |= node.name == "Y1";
  }
  if (!has_x || !has_y0 || !has_y1)
    throw ScmError("ground truth needs nodes X, Y0 and Y1");

  // d(node)/dX by forward accumulation over the DAG; every kind is linear in
  // its parents. The clamped pass zeroes Y0's sensitivity, which removes all
  // baseline-mediated paths and leaves the controlled direct effect.
  auto trace = [&](bool clamp_y0) {
    std::map<std::string, double> d;
    for (const auto& node : ordered.nodes) {
      if (node.name == "X") {
        d[node.name] = 1.0;
        continue;
      }
      double s = 0.0;
      if (node.kind == NodeKind::linear_gaussian) {
        for (std::size_t k = 0; k < node.parents.size(); ++k)
          s += node.coefficients[k] * d.at(node.parents[k]);
      } else if (node.kind == NodeKind::copy_of_parent) {
        s = d.at(node.parents[0]);
      } else if (node.kind == NodeKind::difference) {
        s = d.at(node.parents[0]) - d.at(node.parents[1]);
      }
      if (clamp_y0 && node.name == "Y0") s = 0.0;
      d[node.name] = s;
    }
    return d;
  };

  auto out_sd = [&](const std::string& name) {
    auto it = ordered.rescale.find(name);
    return it == ordered.rescale.end() ? 1.0 : it->second.sd;
  };

  const auto observational = trace(false);
  const auto clamped = trace(true);
  constexpr double contrast = 2.0;  // X = +1 vs -1

  GroundTruth gt;
  gt.tce_kg = observational.at("Y1") * contrast * out_sd("Y1");
  gt.cde_kg = clamped.at("Y1") * contrast * out_sd("Y1");
  gt.y0_contrast_kg = observational.at("Y0") * contrast * out_sd("Y0");
  return gt;
}

nlohmann::ordered_json ground_truth_json(const GroundTruth& gt, const std::string& model_name) {
  nlohmann::ordered_json j;
  j["model"] = model_name;
  j["tce_kg"] = gt.tce_kg;
  j["cde_kg"] = gt.cde_kg;
  j["y0_contrast_kg"] = gt.y0_contrast_kg;
  return j;
}

}  // namespace lords
