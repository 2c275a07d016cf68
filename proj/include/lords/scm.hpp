#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "lords/dataset.hpp"

namespace lords {

enum class NodeKind { symmetric_binary, linear_gaussian, copy_of_parent, difference };

std::string to_string(NodeKind kind);
NodeKind node_kind_from_string(const std::string& s);

// One structural equation. symmetric_binary draws +1/-1 with equal
// probability and takes no parents. linear_gaussian is sum(coef * parent) plus
// centered Gaussian noise. copy_of_parent has one parent, coefficient 1, no
// noise. difference has two parents with coefficients (+1, -1), no noise.
struct NodeSpec {
  std::string name;
  NodeKind kind = NodeKind::linear_gaussian;
  std::vector<std::string> parents;
  std::vector<double> coefficients;
  double noise_sd = 0.0;
};

struct Rescale {
  double mean = 0.0;
  double sd = 1.0;
};

struct ScmSpec {
  std::vector<NodeSpec> nodes;
  std::map<std::string, Rescale> rescale;
};

bool operator==(const NodeSpec& a, const NodeSpec& b);
bool operator==(const ScmSpec& a, const ScmSpec& b);

// Checks names, arities, coefficients, rescale targets, and acyclicity.
// Returns the spec with nodes in a valid topological order; the order is
// stable, so an already-ordered spec comes back unchanged.
ScmSpec validate_scm(const ScmSpec& spec);

// Draws n rows in topological order. Each node consumes an independent noise
// stream derived from (seed, node position), so identical (spec, n, seed)
// yields identical output.
Dataset simulate(const ScmSpec& spec, std::size_t n, std::uint64_t seed);

// Same as simulate, but forced nodes take their forced value on every row and
// consume no randomness. Non-descendants of the forced nodes are bit-identical
// to the same-seed observational run.
Dataset simulate_intervention(const ScmSpec& spec, std::size_t n, std::uint64_t seed,
                              const std::map<std::string, double>& forced);

// Applies the spec's affine rescale map (value * sd + mean), then recomputes
// difference columns from their rescaled parents so the change score stays
// exact in the new units.
Dataset to_natural_units(const Dataset& ds, const ScmSpec& spec);

nlohmann::ordered_json scm_to_json(const ScmSpec& spec);
ScmSpec scm_from_json(const nlohmann::json& j);
ScmSpec load_scm(const std::filesystem::path& path);
void save_scm(const ScmSpec& spec, const std::filesystem::path& path);

}  // namespace lords
