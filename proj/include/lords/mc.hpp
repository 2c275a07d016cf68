#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lords/estimators.hpp"
#include "lords/scm.hpp"

namespace lords {

struct McConfig {
  ScmSpec spec;
  std::string model_name = "lords_paradox";
  std::size_t replications = 1000;
  std::size_t n_per_replication = 10000;
  std::uint64_t master_seed = 1967;
  double y0_fixed_kg = 80.0;
  unsigned workers = 0;  // 0 = hardware concurrency
};

// Replication r simulates with child seed (master_seed, r), rescales to
// natural units and runs all six analyses. Results are stored by replication
// index, so output does not depend on how many workers ran or how work was
// scheduled. Estimator failures are rethrown annotated with the replication
// index.
std::vector<EstimateSet> run_replications(const McConfig& cfg);

struct ApproachSummary {
  double median_kg = 0.0;
  double lo_kg = 0.0;  // 2.5th centile
  double hi_kg = 0.0;  // 97.5th centile
};

struct SummaryTable {
  ApproachSummary approach1, approach2, gcomp_cde, approach4, approach5, gcomp_tce;
  std::string model_name;
  std::size_t replications = 0;
  std::size_t n_per_replication = 0;
  std::uint64_t master_seed = 0;
  double y0_fixed_kg = 0.0;
  double elapsed_seconds = 0.0;  // wall time of the run; not serialized
};

SummaryTable summarize(const std::vector<EstimateSet>& estimates, const McConfig& cfg);

// run_replications followed by summarize, with wall time recorded.
SummaryTable run_summary(const McConfig& cfg, std::vector<EstimateSet>* estimates_out = nullptr);

}  // namespace lords
