#include "experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <map>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "permsim/pipeline.hpp"
#include "permsim/rng.hpp"

namespace permsim::cli {

void validate(const ExperimentPlan& plan) {
  if (plan.n_values.empty()) throw std::invalid_argument("experiment: no n values");
  if (!std::is_sorted(plan.n_values.begin(), plan.n_values.end()))
    throw std::invalid_argument("experiment: n values must be ascending");
  if (plan.n_values.front() < 2) throw std::invalid_argument("experiment: n must be >= 2");
  if (plan.trials_per_n < 1) throw std::invalid_argument("experiment: trials must be >= 1");
  if (plan.k < 2) throw std::invalid_argument("experiment: k must be >= 2");
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t n, std::size_t trial) {
  return derive_seed(seed, {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(trial)});
}

namespace {

TrialRow run_trial(const ExperimentPlan& plan, std::size_t n, std::size_t trial) {
  PipelineConfig cfg;
  cfg.k = plan.k;
  cfg.sampler.mode = plan.sampler;
  cfg.metric = plan.metric;
  cfg.matching_mode = plan.matching_mode;
  cfg.seed = trial_seed(plan.seed, n, trial);

  const auto result = decompose_fresh(n, cfg);
  const auto baseline = baseline_decompose(result.perms);
  const auto& rec = result.record;

  TrialRow row;
  row.n = n;
  row.k = plan.k;
  row.seed = cfg.seed;
  row.trial = trial;
  row.M = rec.M;
  for (double b : rec.bottlenecks) row.bottleneck = std::max(row.bottleneck, b);
  row.label_count = rec.label_count;
  row.max_label_degree = rec.max_label_degree;
  row.ell = rec.part_count;
  row.ell_baseline = baseline.record.part_count;
  row.normalized_ratio = pipeline_stats(rec).normalized_ratio;
  row.wall_ms = rec.wall_time_ms;
  return row;
}

}  // namespace

std::vector<TrialRow> run_experiment(const ExperimentPlan& plan) {
  validate(plan);
  std::vector<std::pair<std::size_t, std::size_t>> jobs;
  for (auto n : plan.n_values)
    for (std::size_t t = 0; t < plan.trials_per_n; ++t) jobs.emplace_back(n, t);

  std::vector<TrialRow> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t j; (j = next.fetch_add(1)) < jobs.size();) {
      try {
        rows[j] = run_trial(plan, jobs[j].first, jobs[j].second);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(plan.threads, 1, jobs.size());
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);
  return rows;  // jobs were generated in (n, trial) order
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of empty set");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

std::vector<SummaryRow> summarize(const std::vector<TrialRow>& rows) {
  std::map<std::size_t, std::vector<const TrialRow*>> by_n;
  for (const auto& r : rows) by_n[r.n].push_back(&r);
  std::vector<SummaryRow> out;
  for (const auto& [n, group] : by_n) {
    std::vector<double> ell, base, ratio;
    for (const auto* r : group) {
      ell.push_back(static_cast<double>(r->ell));
      base.push_back(static_cast<double>(r->ell_baseline));
      ratio.push_back(r->normalized_ratio);
    }
    out.push_back({n, group.size(), median(ell), median(base), median(ratio)});
  }
  return out;
}

void write_experiment_csv(std::ostream& out, const std::vector<TrialRow>& rows, bool omit_timing) {
  char buf[512];
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%zu,%zu,%llu,%zu,%.17g,%zu,%zu,%zu,%zu,%.17g,%.3f\n", r.n, r.k,
                  static_cast<unsigned long long>(r.seed), r.M, r.bottleneck, r.label_count,
                  r.max_label_degree, r.ell, r.ell_baseline, r.normalized_ratio,
                  omit_timing ? 0.0 : r.wall_ms);
    out << buf;
  }
  out << "# summary\n# n,trials,median_ell,median_ell_baseline,median_normalized_ratio\n";
  for (const auto& s : summarize(rows)) {
    std::snprintf(buf, sizeof buf, "# %zu,%zu,%.17g,%.17g,%.17g\n", s.n, s.trials, s.median_ell,
                  s.median_ell_baseline, s.median_normalized_ratio);
    out << buf;
  }
}

}  // namespace permsim::cli
