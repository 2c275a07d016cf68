#include "lords/table1.hpp"

#include <cmath>
#include <cstdio>

#include <nlohmann/json.hpp>

#include "lords/errors.hpp"

namespace lords {

Table1Format table1_format_from_string(const std::string& s) {
  if (s == "markdown" || s == "md") return Table1Format::markdown;
  if (s == "csv") return Table1Format::csv;
  if (s == "json") return Table1Format::json;
  throw ValidationError("unknown table format '" + s + "' (markdown, csv, json)");
}

std::string file_extension(Table1Format format) {
  switch (format) {
    case Table1Format::markdown: return "md";
    case Table1Format::csv: return "csv";
    case Table1Format::json: return "json";
  }
  throw ValidationError("unknown table format");
}

namespace {

double round1(double v) {
  const double r = std::round(v * 10.0) / 10.0;
  return r == 0.0 ? 0.0 : r;  // avoid -0.0
}

std::string fmt1(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", round1(v));
  return buf;
}

struct Row {
  std::string approach;
  std::string description;
  std::string estimand;
  bool has_truth;
  double truth;
  ApproachSummary stats;
};

std::vector<Row> build_rows(const SummaryTable& s, const GroundTruth& gt) {
  const std::string cde_label = "Controlled direct effect of X on Y1, Y0 fixed";
  const std::string tce_label = "Total causal effect of X on Y1";
  return {
      {"approach1", "Linear regression of the change score on the exposure",
       "Obscure when X and Y0 are correlated", false, 0.0, s.approach1},
      {"approach2", "Linear regression of follow-up weight on the exposure adjusting for baseline weight",
       cde_label, true, gt.cde_kg, s.approach2},
      {"gcomp_cde", "Parametric g-computation standardizing over baseline activity, baseline weight fixed",
       cde_label, true, gt.cde_kg, s.gcomp_cde},
      {"approach4", "Linear regression of the change score on the exposure adjusting for baseline weight",
       cde_label, true, gt.cde_kg, s.approach4},
      {"approach5", "Linear regression of follow-up weight on the exposure",
       tce_label, true, gt.tce_kg, s.approach5},
      {"gcomp_tce", "Parametric g-computation standardizing over baseline weight and activity jointly",
       tce_label, true, gt.tce_kg, s.gcomp_tce},
  };
}

std::string emit_markdown(const std::vector<Row>& rows) {
  std::string out;
  out += "| Approach | Description | Implied estimand | Value simulated (kg) | Estimate, median (95% SI) (kg) |\n";
  out += "|---|---|---|---|---|\n";
  for (const auto& r : rows) {
    out += "| " + r.approach + " | " + r.description + " | " + r.estimand + " | " +
           (r.has_truth ? fmt1(r.truth) : std::string("N/A")) + " | " + fmt1(r.stats.median_kg) +
           " (" + fmt1(r.stats.lo_kg) + ", " + fmt1(r.stats.hi_kg) + ") |\n";
  }
  return out;
}

std::string emit_csv(const std::vector<Row>& rows) {
  std::string out = "approach,description,estimand,value_simulated_kg,median_kg,lo_kg,hi_kg\n";
  for (const auto& r : rows) {
    out += r.approach + ",\"" + r.description + "\",\"" + r.estimand + "\"," +
           (r.has_truth ? fmt1(r.truth) : std::string("")) + "," + fmt1(r.stats.median_kg) + "," +
           fmt1(r.stats.lo_kg) + "," + fmt1(r.stats.hi_kg) + "\n";
  }
  return out;
}

std::string emit_json(const std::vector<Row>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json j;
    j["approach"] = r.approach;
    j["description"] = r.description;
    j["estimand"] = r.estimand;
    if (r.has_truth)
      j["value_simulated_kg"] = round1(r.truth);
    else
      j["value_simulated_kg"] = nullptr;
    j["median_kg"] = round1(r.stats.median_kg);
    j["lo_kg"] = round1(r.stats.lo_kg);
    j["hi_kg"] = round1(r.stats.hi_kg);
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

}  // namespace

std::string emit_table1(const SummaryTable& summary, const GroundTruth& truth,
                        Table1Format format) {
  const auto rows = build_rows(summary, truth);
  switch (format) {
    case Table1Format::markdown: return emit_markdown(rows);
    case Table1Format::csv: return emit_csv(rows);
    case Table1Format::json: return emit_json(rows);
  }
  throw ValidationError("unknown table format");
}

}  // namespace lords
