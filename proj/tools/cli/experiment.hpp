#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "permsim/geometry.hpp"
#include "permsim/matching.hpp"

namespace permsim::cli {

struct ExperimentPlan {
  std::vector<std::size_t> n_values;  // ascending
  std::size_t k = 2;
  std::size_t trials_per_n = 1;
  std::uint64_t seed = 0;
  SamplerMode sampler = SamplerMode::uniform;
  Metric metric = Metric::euclidean;
  MatchingMode matching_mode = MatchingMode::exact;
  std::size_t threads = 1;
};

/// One CSV row. `bottleneck` is the largest over the k-1 matchings.
struct TrialRow {
  std::size_t n = 0;
  std::size_t k = 0;
  std::uint64_t seed = 0;
  std::size_t trial = 0;
  std::size_t M = 0;
  double bottleneck = 0.0;
  std::size_t label_count = 0;
  std::size_t max_label_degree = 0;
  std::size_t ell = 0;
  std::size_t ell_baseline = 0;
  double normalized_ratio = 0.0;
  double wall_ms = 0.0;
};

struct SummaryRow {
  std::size_t n = 0;
  std::size_t trials = 0;
  double median_ell = 0.0;
  double median_ell_baseline = 0.0;
  double median_normalized_ratio = 0.0;
};

/// Throws std::invalid_argument unless n_values is non-empty, ascending,
/// every n >= 2, trials >= 1 and k >= 2.
void validate(const ExperimentPlan& plan);

/// Seed of trial `trial` at size n; depends only on (plan seed, n, trial).
std::uint64_t trial_seed(std::uint64_t seed, std::size_t n, std::size_t trial);

/// Runs every (n, trial) pair, fanning trials out over plan.threads workers.
/// Rows come back sorted by (n, trial) whatever the schedule.
std::vector<TrialRow> run_experiment(const ExperimentPlan& plan);

std::vector<SummaryRow> summarize(const std::vector<TrialRow>& rows);

double median(std::vector<double> values);

/// Header, data rows, then '#'-prefixed summary lines. With omit_timing the
/// wall_ms column is written as 0 so the bytes depend on the plan alone.
void write_experiment_csv(std::ostream& out, const std::vector<TrialRow>& rows, bool omit_timing);

inline constexpr const char* kCsvHeader =
    "n,k,seed,M,bottleneck,label_count,max_label_degree,ell,ell_baseline,normalized_ratio,wall_ms";

}  // namespace permsim::cli
