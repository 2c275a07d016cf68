#include "lords/mc.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <thread>

#include "lords/errors.hpp"
#include "lords/rng.hpp"
#include "lords/stats.hpp"

namespace lords {

namespace {

EstimateSet one_replication(const ScmSpec& spec, std::size_t n, std::uint64_t child,
                            double y0_fixed_kg) {
  const Dataset std_ds = simulate(spec, n, child);
  const Dataset nat = to_natural_units(std_ds, spec);
  return estimate_all(nat, y0_fixed_kg);
}

}  // namespace

std::vector<EstimateSet> run_replications(const McConfig& cfg) {
  if (cfg.replications < 1) throw ValidationError("replications must be at least 1");
  if (cfg.n_per_replication < 10) throw ValidationError("n_per_replication must be at least 10");
  const ScmSpec spec = validate_scm(cfg.spec);

  const std::size_t reps = cfg.replications;
  std::vector<EstimateSet> results(reps);

  unsigned workers = cfg.workers ? cfg.workers : std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, reps));

  std::atomic<std::size_t> next{0};
  std::mutex err_mutex;
  std::size_t err_rep = reps;
  std::exception_ptr err;

  auto worker = [&]() {
    for (;;) {
      const std::size_t r = next.fetch_add(1);
      if (r >= reps) return;
      try {
        const std::uint64_t child = rng::child_seed(cfg.master_seed, r);
        results[r] = one_replication(spec, cfg.n_per_replication, child, cfg.y0_fixed_kg);
      } catch (const std::exception& e) {
        std::lock_guard lock(err_mutex);
        if (r < err_rep) {
          err_rep = r;
          try {
            throw EstimationError("replication " + std::to_string(r) + ": " + e.what());
          } catch (...) {
            err = std::current_exception();
          }
        }
      }
    }
  };

  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (err) std::rethrow_exception(err);
  return results;
}

namespace {

ApproachSummary summarize_one(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  ApproachSummary s;
  s.median_kg = stats::percentile(values, 0.5);
  s.lo_kg = stats::percentile(values, 0.025);
  s.hi_kg = stats::percentile(values, 0.975);
  return s;
}

}  // namespace

SummaryTable summarize(const std::vector<EstimateSet>& estimates, const McConfig& cfg) {
  if (estimates.empty()) throw ValidationError("summarize needs at least one replication");

  auto pull = [&](double EstimateSet::* member) {
    std::vector<double> v(estimates.size());
    for (std::size_t i = 0; i < estimates.size(); ++i) v[i] = estimates[i].*member;
    return v;
  };

  SummaryTable t;
  t.approach1 = summarize_one(pull(&EstimateSet::approach1_kg));
  t.approach2 = summarize_one(pull(&EstimateSet::approach2_kg));
  t.gcomp_cde = summarize_one(pull(&EstimateSet::gcomp_cde_kg));
  t.approach4 = summarize_one(pull(&EstimateSet::approach4_kg));
  t.approach5 = summarize_one(pull(&EstimateSet::approach5_kg));
  t.gcomp_tce = summarize_one(pull(&EstimateSet::gcomp_tce_kg));
  t.model_name = cfg.model_name;
  t.replications = estimates.size();
  t.n_per_replication = cfg.n_per_replication;
  t.master_seed = cfg.master_seed;
  t.y0_fixed_kg = cfg.y0_fixed_kg;
  return t;
}

SummaryTable run_summary(const McConfig& cfg, std::vector<EstimateSet>* estimates_out) {
  const auto start = std::chrono::steady_clock::now();
  auto estimates = run_replications(cfg);
  SummaryTable t = summarize(estimates, cfg);
  t.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (estimates_out) *estimates_out = std::move(estimates);
  return t;
}

}  // namespace lords
