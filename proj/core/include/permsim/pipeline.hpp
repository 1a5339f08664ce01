#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "permsim/decomposition.hpp"
#include "permsim/geometry.hpp"
#include "permsim/matching.hpp"
#include "permsim/permutation.hpp"

namespace permsim {

/// Raised when an emitted decomposition fails verification. Indicates a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct PipelineConfig {
  std::size_t k = 2;
  SamplerConfig sampler;
  Metric metric = Metric::euclidean;
  MatchingMode matching_mode = MatchingMode::automatic;
  std::optional<std::size_t> M_override;
  std::uint64_t seed = 0;
};

struct RunRecord {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t M = 0;
  std::vector<double> bottlenecks;  // one per matching; empty for the baseline
  std::size_t label_count = 0;
  std::size_t max_label_degree = 0;
  std::size_t part_count = 0;
  double wall_time_ms = 0.0;
  std::uint64_t seed = 0;
};

struct DecomposeResult {
  std::vector<Permutation> perms;
  Decomposition decomposition;
  RunRecord record;
};

/// Grid/matching/colouring construction on k given permutations. Each
/// permutation is embedded as a random cloud (stream j for permutation j).
/// The result is always verified before it is returned.
DecomposeResult decompose(std::span<const Permutation> perms, const PipelineConfig& cfg);

/// Same construction on k fresh random permutations of length n >= 2, read
/// off from independently sampled clouds.
DecomposeResult decompose_fresh(std::size_t n, const PipelineConfig& cfg);

/// Pipeline stages after the clouds exist; perms[j] must equal
/// permutation_of_cloud(clouds[j]).
DecomposeResult decompose_clouds(std::vector<PointCloud> clouds, const PipelineConfig& cfg);

enum class PileOrder { decreasing, increasing };

/// Patience piling: each value goes on the leftmost pile it can extend
/// (pile top larger for decreasing piles). Piles hold 1-based positions.
std::vector<std::vector<std::size_t>> patience_piles(const Permutation& p,
                                                     PileOrder order = PileOrder::decreasing);

/// Dilworth baseline: monotone piles per permutation, longest first, then
/// cut into equal-length aligned prefixes.
DecomposeResult baseline_decompose(std::span<const Permutation> perms,
                                   PileOrder order = PileOrder::decreasing);

struct ScalingPoint {
  std::size_t n = 0;
  std::size_t part_count = 0;
  double poly_exponent = 0.0;  // (k-1)/(2k-1)
  double log_exponent = 0.0;   // 3(k-1)/2 + 1/(2k-1)
  double normalized_ratio = 0.0;
};

/// Exponents of n and ln n in the part-count envelope for k permutations.
std::pair<double, double> envelope_exponents(std::size_t k);

/// part_count / (n^a ln^b n). Throws std::invalid_argument for n < 2.
ScalingPoint pipeline_stats(const RunRecord& record);

/// Random permutations via Fisher-Yates, stream j for permutation j.
std::vector<Permutation> random_permutations(std::size_t n, std::size_t k, std::uint64_t seed);

}  // namespace permsim
