#include <cinttypes>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "lords/artifacts.hpp"
#include "lords/dgp.hpp"
#include "lords/errors.hpp"
#include "lords/estimators.hpp"
#include "lords/mc.hpp"
#include "lords/rtm.hpp"

namespace {

namespace fs = std::filesystem;

constexpr std::uint64_t kDefaultSeed = 1967;

struct ModelChoice {
  lords::ScmSpec spec;
  std::string name;
};

ModelChoice pick_model(const std::string& model_path) {
  if (model_path.empty()) return {lords::build_lords_scm(), "lords_paradox"};
  return {lords::load_scm(model_path), fs::path(model_path).stem().string()};
}

std::uint64_t apply_seed_env(std::uint64_t seed) {
  const char* env = std::getenv("LORDS_LAB_SEED");
  if (!env || !*env) return seed;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0')
    throw lords::ValidationError(std::string("LORDS_LAB_SEED is not an integer: '") + env + "'");
  return static_cast<std::uint64_t>(v);
}

lords::Dataset simulate_natural(const lords::ScmSpec& spec, std::size_t n, std::uint64_t seed) {
  return lords::to_natural_units(lords::simulate(spec, n, seed), spec);
}

void print_estimates(const lords::EstimateSet& e) {
  auto line = [](const char* label, double v) {
    std::printf("%-32s %9.4f kg\n", label, v);
  };
  line("approach1 (change score)", e.approach1_kg);
  line("approach2 (ancova)", e.approach2_kg);
  line("gcomp_cde (g-formula, cde)", e.gcomp_cde_kg);
  line("approach4 (adjusted change)", e.approach4_kg);
  line("approach5 (follow-up only)", e.approach5_kg);
  line("gcomp_tce (g-formula, tce)", e.gcomp_tce_kg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulation lab for Lord's paradox: one structural model, six analyses"};
  app.require_subcommand(1);

  std::size_t n = 10000;
  std::size_t reps = 1000;
  std::uint64_t seed = kDefaultSeed;
  std::string model_path;
  std::string out_dir = ".";
  std::string format = "markdown";
  std::string data_path;
  double y0_fixed = 80.0;
  unsigned workers = 0;
  bool paper_scale = false;

  auto add_common = [&](CLI::App* sub, bool with_n) {
    if (with_n) sub->add_option("--n", n, "observations per dataset");
    sub->add_option("--seed", seed, "master seed (env LORDS_LAB_SEED overrides)");
    sub->add_option("--model", model_path, "model json file (default: built-in weight-gain model)");
    sub->add_option("--out", out_dir, "output directory");
  };

  auto* cmd_simulate = app.add_subcommand("simulate", "simulate one dataset and write dataset.csv");
  add_common(cmd_simulate, true);

  auto* cmd_estimate =
      app.add_subcommand("estimate", "run the six analyses on an existing dataset csv");
  cmd_estimate->add_option("data", data_path, "dataset csv (natural units)")->required();
  cmd_estimate->add_option("--y0-fixed", y0_fixed, "baseline weight pinned by the g-formula cde");
  cmd_estimate->add_option("--out", out_dir, "output directory (writes estimates.csv)");

  auto* cmd_table =
      app.add_subcommand("reproduce-table1", "replicate all six analyses and emit the results table");
  add_common(cmd_table, true);
  cmd_table->add_option("--reps", reps, "number of replications");
  cmd_table->add_flag("--paper-scale", paper_scale, "use 10000 replications");
  cmd_table->add_option("--format", format, "table format: markdown, csv, json");
  cmd_table->add_option("--y0-fixed", y0_fixed, "baseline weight pinned by the g-formula cde");
  cmd_table->add_option("--workers", workers, "worker threads (0 = auto)");

  auto* cmd_figure = app.add_subcommand("figure3", "emit scatter/ellipse/density data and svg");
  add_common(cmd_figure, true);

  auto* cmd_rtm = app.add_subcommand("rtm-report", "change-score decomposition report");
  add_common(cmd_rtm, true);

  auto* cmd_did = app.add_subcommand("did-demo", "difference-in-differences equivalence demo");
  add_common(cmd_did, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    seed = apply_seed_env(seed);

    if (app.got_subcommand(cmd_simulate)) {
      const auto model = pick_model(model_path);
      const auto ds = simulate_natural(model.spec, n, seed);
      fs::create_directories(out_dir);
      const auto path = fs::path(out_dir) / "dataset.csv";
      lords::write_dataset_csv(ds, path);
      std::cout << "wrote " << path.string() << " (" << ds.size() << " rows, model "
                << model.name << ", seed " << seed << ")\n";
    } else if (app.got_subcommand(cmd_estimate)) {
      const auto ds = lords::read_csv(data_path, lords::Units::natural);
      const auto es = lords::estimate_all(ds, y0_fixed);
      print_estimates(es);
      if (!cmd_estimate->get_option("--out")->empty()) {
        fs::create_directories(out_dir);
        lords::write_estimates_csv({es}, fs::path(out_dir) / "estimates.csv");
        std::cout << "wrote " << (fs::path(out_dir) / "estimates.csv").string() << "\n";
      }
    } else if (app.got_subcommand(cmd_table)) {
      const auto model = pick_model(model_path);
      lords::McConfig cfg;
      cfg.spec = model.spec;
      cfg.model_name = model.name;
      cfg.replications = paper_scale ? 10000 : reps;
      cfg.n_per_replication = n;
      cfg.master_seed = seed;
      cfg.y0_fixed_kg = y0_fixed;
      cfg.workers = workers;
      const auto summary =
          lords::reproduce_table1(cfg, out_dir, lords::table1_format_from_string(format));
      std::cout << lords::emit_table1(summary, lords::ground_truth(model.spec),
                                      lords::Table1Format::markdown);
      std::printf("%zu replications x %zu observations, seed %" PRIu64 ", %.1f s\n",
                  summary.replications, summary.n_per_replication, summary.master_seed,
                  summary.elapsed_seconds);
      std::cout << "artifacts in " << out_dir << "\n";
    } else if (app.got_subcommand(cmd_figure)) {
      const auto model = pick_model(model_path);
      const auto ds = simulate_natural(model.spec, n, seed);
      const auto bundle = lords::figure3_data(ds);
      fs::create_directories(out_dir);
      lords::write_figure3_csvs(bundle, out_dir);
      lords::write_figure3_svg(bundle, fs::path(out_dir) / "figure3.svg");
      std::cout << "wrote figure3_{points,ellipses,density_x,density_y}.csv and figure3.svg in "
                << out_dir << "\n";
    } else if (app.got_subcommand(cmd_rtm)) {
      const auto model = pick_model(model_path);
      const auto ds = simulate_natural(model.spec, n, seed);
      const auto report = lords::biasing_term_report(ds);
      std::cout << lords::to_json(report).dump(2) << "\n";
      if (!cmd_rtm->get_option("--out")->empty()) {
        fs::create_directories(out_dir);
        lords::write_rtm_report_json(report, fs::path(out_dir) / "rtm_report.json");
        std::cout << "wrote " << (fs::path(out_dir) / "rtm_report.json").string() << "\n";
      }
    } else if (app.got_subcommand(cmd_did)) {
      const auto model = pick_model(model_path);
      const auto ds = simulate_natural(model.spec, n, seed);
      const double did = lords::did_means(ds);
      const double a1 = lords::approach1_change_score(ds);
      nlohmann::ordered_json j;
      j["model"] = model.name;
      j["n"] = n;
      j["seed"] = seed;
      j["did_kg"] = did;
      j["approach1_kg"] = a1;
      j["abs_difference"] = std::abs(did - a1);
      std::cout << j.dump(2) << "\n";
      if (!cmd_did->get_option("--out")->empty()) {
        fs::create_directories(out_dir);
        std::ofstream out(fs::path(out_dir) / "did_demo.json");
        out << j.dump(2) << "\n";
        std::cout << "wrote " << (fs::path(out_dir) / "did_demo.json").string() << "\n";
      }
    }
    return 0;
  } catch (const lords::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const lords::EstimationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
