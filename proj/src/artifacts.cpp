#include "lords/artifacts.hpp"

#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

#include "lords/errors.hpp"

namespace lords {

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw ValidationError("write failed for '" + path.string() + "'");
}

std::string f4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string f6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

void write_dataset_csv(const Dataset& ds, const std::filesystem::path& path) {
  static const std::vector<std::string> canonical = {"X", "M0", "Y0", "Y1", "Hall", "Diet", "dY"};
  bool shaped = ds.column_names().size() == canonical.size();
  if (shaped)
    for (const auto& c : canonical) shaped = shaped && ds.has(c);
  if (shaped)
    write_csv(ds, path, canonical);
  else
    write_csv(ds, path);
}

void write_estimates_csv(const std::vector<EstimateSet>& estimates,
                         const std::filesystem::path& path) {
  std::string out = "rep,approach1,approach2,gcomp_cde,approach4,approach5,gcomp_tce\n";
  for (std::size_t r = 0; r < estimates.size(); ++r) {
    const auto& e = estimates[r];
    out += std::to_string(r) + "," + f4(e.approach1_kg) + "," + f4(e.approach2_kg) + "," +
           f4(e.gcomp_cde_kg) + "," + f4(e.approach4_kg) + "," + f4(e.approach5_kg) + "," +
           f4(e.gcomp_tce_kg) + "\n";
  }
  write_text(path, out);
}

void write_summary_json(const SummaryTable& summary, const std::filesystem::path& path) {
  nlohmann::ordered_json j;
  j["model"] = summary.model_name;
  j["replications"] = summary.replications;
  j["n_per_replication"] = summary.n_per_replication;
  j["master_seed"] = summary.master_seed;
  j["y0_fixed_kg"] = summary.y0_fixed_kg;
  auto one = [](const ApproachSummary& a) {
    nlohmann::ordered_json s;
    s["median_kg"] = a.median_kg;
    s["lo_kg"] = a.lo_kg;
    s["hi_kg"] = a.hi_kg;
    return s;
  };
  j["approaches"]["approach1"] = one(summary.approach1);
  j["approaches"]["approach2"] = one(summary.approach2);
  j["approaches"]["gcomp_cde"] = one(summary.gcomp_cde);
  j["approaches"]["approach4"] = one(summary.approach4);
  j["approaches"]["approach5"] = one(summary.approach5);
  j["approaches"]["gcomp_tce"] = one(summary.gcomp_tce);
  write_text(path, j.dump(2) + "\n");
}

void write_ground_truth_json(const GroundTruth& gt, const std::string& model_name,
                             const std::filesystem::path& path) {
  write_text(path, ground_truth_json(gt, model_name).dump(2) + "\n");
}

void write_rtm_report_json(const BiasingTermReport& report, const std::filesystem::path& path) {
  write_text(path, to_json(report).dump(2) + "\n");
}

void write_figure3_csvs(const Figure3Bundle& bundle, const std::filesystem::path& out_dir) {
  std::string points = "group,y0,y1\n";
  std::string ellipses = "group,vertex_index,y0,y1\n";
  std::string density_x = "group,y0,density\n";
  std::string density_y = "group,y1,density\n";
  for (const auto* g : {&bundle.girls, &bundle.boys}) {
    for (const auto& p : g->points)
      points += g->label + "," + f6(p[0]) + "," + f6(p[1]) + "\n";
    for (std::size_t k = 0; k < g->ellipse.boundary.size(); ++k)
      ellipses += g->label + "," + std::to_string(k) + "," + f6(g->ellipse.boundary[k][0]) + "," +
                  f6(g->ellipse.boundary[k][1]) + "\n";
    for (std::size_t k = 0; k < g->density_y0.grid.size(); ++k)
      density_x += g->label + "," + f6(g->density_y0.grid[k]) + "," +
                   f6(g->density_y0.density[k]) + "\n";
    for (std::size_t k = 0; k < g->density_y1.grid.size(); ++k)
      density_y += g->label + "," + f6(g->density_y1.grid[k]) + "," +
                   f6(g->density_y1.density[k]) + "\n";
  }
  write_text(out_dir / "figure3_points.csv", points);
  write_text(out_dir / "figure3_ellipses.csv", ellipses);
  write_text(out_dir / "figure3_density_x.csv", density_x);
  write_text(out_dir / "figure3_density_y.csv", density_y);
}

void write_figure3_svg(const Figure3Bundle& bundle, const std::filesystem::path& path) {
  write_text(path, render_svg(bundle));
}

SummaryTable reproduce_table1(const McConfig& cfg, const std::filesystem::path& out_dir,
                              Table1Format format) {
  std::filesystem::create_directories(out_dir);
  std::vector<EstimateSet> estimates;
  SummaryTable summary = run_summary(cfg, &estimates);
  const GroundTruth gt = ground_truth(cfg.spec);

  write_estimates_csv(estimates, out_dir / "estimates.csv");
  write_summary_json(summary, out_dir / "summary.json");
  write_ground_truth_json(gt, cfg.model_name, out_dir / "ground_truth.json");
  write_text(out_dir / ("table1." + file_extension(format)), emit_table1(summary, gt, format));
  return summary;
}

}  // namespace lords
