#pragma once

#include <filesystem>
#include <vector>

#include "lords/dgp.hpp"
#include "lords/figure3.hpp"
#include "lords/mc.hpp"
#include "lords/rtm.hpp"
#include "lords/table1.hpp"

namespace lords {

// Canonical column order for datasets shaped like the weight-gain process;
// datasets with other columns are written in their own order.
void write_dataset_csv(const Dataset& ds, const std::filesystem::path& path);

// rep,approach1,approach2,gcomp_cde,approach4,approach5,gcomp_tce at 4
// decimals, one row per replication.
void write_estimates_csv(const std::vector<EstimateSet>& estimates,
                         const std::filesystem::path& path);

// Config echo plus per-approach median and 95% simulation interval. Elapsed
// time is deliberately left out so reruns are byte-identical.
void write_summary_json(const SummaryTable& summary, const std::filesystem::path& path);

void write_ground_truth_json(const GroundTruth& gt, const std::string& model_name,
                             const std::filesystem::path& path);
void write_rtm_report_json(const BiasingTermReport& report, const std::filesystem::path& path);

// figure3_points.csv, figure3_ellipses.csv, figure3_density_x.csv,
// figure3_density_y.csv under out_dir.
void write_figure3_csvs(const Figure3Bundle& bundle, const std::filesystem::path& out_dir);
void write_figure3_svg(const Figure3Bundle& bundle, const std::filesystem::path& path);

// Full replication pipeline: runs the harness, then writes estimates.csv,
// summary.json, ground_truth.json and table1.<ext> under out_dir. Returns the
// summary (with wall time) for console reporting.
SummaryTable reproduce_table1(const McConfig& cfg, const std::filesystem::path& out_dir,
                              Table1Format format);

}  // namespace lords
