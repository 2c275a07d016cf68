#include "lords/scm.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "lords/errors.hpp"
#include "lords/rng.hpp"

namespace lords {

std::string to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::symmetric_binary: return "symmetric_binary";
    case NodeKind::linear_gaussian: return "linear_gaussian";
    case NodeKind::copy_of_parent: return "copy_of_parent";
    case NodeKind::difference: return "difference";
  }
  throw ScmError("unknown node kind");
}

NodeKind node_kind_from_string(const std::string& s) {
  if (s == "symmetric_binary") return NodeKind::symmetric_binary;
  if (s == "linear_gaussian") return NodeKind::linear_gaussian;
  if (s == "copy_of_parent") return NodeKind::copy_of_parent;
  if (s == "difference") return NodeKind::difference;
  throw ScmError("unknown node kind '" + s + "'");
}

bool operator==(const NodeSpec& a, const NodeSpec& b) {
  return a.name == b.name && a.kind == b.kind && a.parents == b.parents &&
         a.coefficients == b.coefficients && a.noise_sd == b.noise_sd;
}

bool operator==(const ScmSpec& a, const ScmSpec& b) {
  if (!(a.nodes == b.nodes)) return false;
  if (a.rescale.size() != b.rescale.size()) return false;
  for (auto ia = a.rescale.begin(), ib = b.rescale.begin(); ia != a.rescale.end(); ++ia, ++ib) {
    if (ia->first != ib->first || ia->second.mean != ib->second.mean ||
        ia->second.sd != ib->second.sd)
      return false;
  }
  return true;
}

namespace {

void validate_node_shape(const NodeSpec& node) {
  const std::string& name = node.name;
  if (name.empty()) throw ScmError("node with empty name");
  for (double c : node.coefficients)
    if (!std::isfinite(c)) throw ScmError("non-finite coefficient on node '" + name + "'");
  if (!std::isfinite(node.noise_sd) || node.noise_sd < 0.0)
    throw ScmError("node '" + name + "' needs a finite, non-negative noise_sd");

  switch (node.kind) {
    case NodeKind::symmetric_binary:
      if (!node.parents.empty())
        throw ScmError("symmetric_binary node '" + name + "' must have no parents");
      if (!node.coefficients.empty())
        throw ScmError("symmetric_binary node '" + name + "' must have no coefficients");
      if (node.noise_sd != 0.0)
        throw ScmError("symmetric_binary node '" + name + "' must have noise_sd 0");
      break;
    case NodeKind::linear_gaussian:
      if (node.parents.size() != node.coefficients.size())
        throw ScmError("node '" + name + "' has " + std::to_string(node.parents.size()) +
                       " parents but " + std::to_string(node.coefficients.size()) +
                       " coefficients");
      break;
    case NodeKind::copy_of_parent:
      if (node.parents.size() != 1 || node.coefficients != std::vector<double>{1.0})
        throw ScmError("copy_of_parent node '" + name +
                       "' must have one parent with coefficient 1");
      if (node.noise_sd != 0.0)
        throw ScmError("copy_of_parent node '" + name + "' must have noise_sd 0");
      break;
    case NodeKind::difference:
      if (node.parents.size() != 2 || node.coefficients != std::vector<double>{1.0, -1.0})
        throw ScmError("difference node '" + name +
                       "' must have two parents with coefficients (1, -1)");
      if (node.noise_sd != 0.0)
        throw ScmError("difference node '" + name + "' must have noise_sd 0");
      break;
  }
}

}  // namespace

ScmSpec validate_scm(const ScmSpec& spec) {
  if (spec.nodes.empty()) throw ScmError("model has no nodes");

  std::unordered_map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < spec.nodes.size(); ++i) {
    const auto& node = spec.nodes[i];
    validate_node_shape(node);
    if (!pos.emplace(node.name, i).second)
      throw ScmError("duplicate node name '" + node.name + "'");
  }
  for (const auto& node : spec.nodes) {
    std::set<std::string> seen;
    for (const auto& parent : node.parents) {
      if (!pos.count(parent))
        throw ScmError("unknown parent '" + parent + "' of node '" + node.name + "'");
      if (parent == node.name) throw ScmError("node '" + node.name + "' lists itself as parent");
      if (!seen.insert(parent).second)
        throw ScmError("node '" + node.name + "' lists parent '" + parent + "' twice");
    }
  }
  for (const auto& [name, rs] : spec.rescale) {
    if (!pos.count(name)) throw ScmError("rescale target '" + name + "' is not a node");
    if (!std::isfinite(rs.mean) || !std::isfinite(rs.sd) || rs.sd <= 0.0)
      throw ScmError("rescale for '" + name + "' needs a finite mean and positive sd");
  }

  // Stable Kahn: among ready nodes always take the lowest original index, so a
  // spec already in topological order is returned as-is.
  ScmSpec out;
  out.rescale = spec.rescale;
  std::vector<bool> placed(spec.nodes.size(), false);
  for (std::size_t step = 0; step < spec.nodes.size(); ++step) {
    bool progressed = false;
    for (std::size_t i = 0; i < spec.nodes.size(); ++i) {
      if (placed[i]) continue;
      bool ready = true;
      for (const auto& parent : spec.nodes[i].parents) {
        const std::size_t pi = pos.at(parent);
        if (!placed[pi]) {
          ready = false;
          break;
        }
      }
      if (ready) {
        placed[i] = true;
        out.nodes.push_back(spec.nodes[i]);
        progressed = true;
        break;
      }
    }
    if (!progressed) {
      std::string stuck;
      for (std::size_t i = 0; i < spec.nodes.size(); ++i)
        if (!placed[i]) stuck += (stuck.empty() ? "" : ", ") + spec.nodes[i].name;
      throw ScmError("cycle detected among nodes: " + stuck);
    }
  }
  return out;
}

namespace {

Dataset simulate_impl(const ScmSpec& spec, std::size_t n, std::uint64_t seed,
                      const std::map<std::string, double>& forced) {
  if (n == 0) throw ScmError("n must be at least 1");
  const ScmSpec ordered = validate_scm(spec);

  std::set<std::string> known;
  for (const auto& node : ordered.nodes) known.insert(node.name);
  for (const auto& [name, value] : forced) {
    if (!known.count(name)) throw ScmError("unknown forced node '" + name + "'");
    if (!std::isfinite(value)) throw ScmError("non-finite forced value for '" + name + "'");
  }

  Dataset ds(n, Units::standardized);
  for (std::size_t idx = 0; idx < ordered.nodes.size(); ++idx) {
    const auto& node = ordered.nodes[idx];
    std::vector<double> v(n);

    if (auto it = forced.find(node.name); it != forced.end()) {
      std::fill(v.begin(), v.end(), it->second);
      ds.add_column(node.name, std::move(v));
      continue;
    }

    switch (node.kind) {
      case NodeKind::symmetric_binary: {
        std::mt19937_64 eng(rng::child_seed(seed, idx));
        for (std::size_t i = 0; i < n; ++i) v[i] = (eng() >> 63) ? 1.0 : -1.0;
        break;
      }
      case NodeKind::linear_gaussian: {
        std::fill(v.begin(), v.end(), 0.0);
        for (std::size_t k = 0; k < node.parents.size(); ++k) {
          const auto& parent = ds.col(node.parents[k]);
          const double c = node.coefficients[k];
          for (std::size_t i = 0; i < n; ++i) v[i] += c * parent[i];
        }
        if (node.noise_sd > 0.0) {
          std::mt19937_64 eng(rng::child_seed(seed, idx));
          std::normal_distribution<double> gauss(0.0, 1.0);
          for (std::size_t i = 0; i < n; ++i) v[i] += node.noise_sd * gauss(eng);
        }
        break;
      }
      case NodeKind::copy_of_parent: {
        v = ds.col(node.parents[0]);
        break;
      }
      case NodeKind::difference: {
        const auto& p0 = ds.col(node.parents[0]);
        const auto& p1 = ds.col(node.parents[1]);
        for (std::size_t i = 0; i < n; ++i) v[i] = p0[i] - p1[i];
        break;
      }
    }
    for (double x : v)
      if (!std::isfinite(x)) throw ScmError("non-finite value simulated for '" + node.name + "'");
    ds.add_column(node.name, std::move(v));
  }
  return ds;
}

}  // namespace

Dataset simulate(const ScmSpec& spec, std::size_t n, std::uint64_t seed) {
  return simulate_impl(spec, n, seed, {});
}

Dataset simulate_intervention(const ScmSpec& spec, std::size_t n, std::uint64_t seed,
                              const std::map<std::string, double>& forced) {
  return simulate_impl(spec, n, seed, forced);
}

Dataset to_natural_units(const Dataset& ds, const ScmSpec& spec) {
  if (ds.units() == Units::natural) throw ScmError("dataset is already in natural units");
  const ScmSpec ordered = validate_scm(spec);

  Dataset out = ds;
  out.set_units(Units::natural);
  for (const auto& [name, rs] : ordered.rescale) {
    if (!out.has(name)) throw ScmError("rescale target '" + name + "' missing from dataset");
    for (double& x : out.mutable_col(name)) x = rs.mean + rs.sd * x;
  }
  for (const auto& node : ordered.nodes) {
    if (node.kind != NodeKind::difference) continue;
    if (!out.has(node.name)) continue;
    const auto& p0 = out.col(node.parents[0]);
    const auto& p1 = out.col(node.parents[1]);
    auto& v = out.mutable_col(node.name);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = p0[i] - p1[i];
  }
  return out;
}

nlohmann::ordered_json scm_to_json(const ScmSpec& spec) {
  nlohmann::ordered_json j;
  j["nodes"] = nlohmann::ordered_json::array();
  for (const auto& node : spec.nodes) {
    nlohmann::ordered_json nj;
    nj["name"] = node.name;
    nj["kind"] = to_string(node.kind);
    nj["parents"] = node.parents;
    nj["coefficients"] = node.coefficients;
    nj["noise_sd"] = node.noise_sd;
    j["nodes"].push_back(std::move(nj));
  }
  j["rescale"] = nlohmann::ordered_json::object();
  for (const auto& [name, rs] : spec.rescale) j["rescale"][name] = {rs.mean, rs.sd};
  return j;
}

ScmSpec scm_from_json(const nlohmann::json& j) {
  try {
    ScmSpec spec;
    if (!j.is_object() || !j.contains("nodes") || !j.at("nodes").is_array())
      throw ScmError("model json needs a 'nodes' array");
    for (const auto& nj : j.at("nodes")) {
      NodeSpec node;
      node.name = nj.at("name").get<std::string>();
      node.kind = node_kind_from_string(nj.at("kind").get<std::string>());
      node.parents = nj.value("parents", std::vector<std::string>{});
      node.coefficients = nj.value("coefficients", std::vector<double>{});
      node.noise_sd = nj.value("noise_sd", 0.0);
      spec.nodes.push_back(std::move(node));
    }
    if (j.contains("rescale")) {
      for (const auto& [name, arr] : j.at("rescale").items()) {
        if (!arr.is_array() || arr.size() != 2)
          throw ScmError("rescale entry '" + name + "' must be [mean, sd]");
        spec.rescale[name] = Rescale{arr[0].get<double>(), arr[1].get<double>()};
      }
    }
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw ScmError(std::string("bad model json: ") + e.what());
  }
}

ScmSpec load_scm(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open model file '" + path.string() + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("cannot parse '" + path.string() + "': " + e.what());
  }
  return scm_from_json(j);
}

void save_scm(const ScmSpec& spec, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open '" + path.string() + "' for writing");
  out << scm_to_json(spec).dump(2) << "\n";
}

}  // namespace lords
