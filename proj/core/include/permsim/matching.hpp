#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "permsim/geometry.hpp"

namespace permsim {

/// Perfect pairing of two equal-size clouds. Indices are 0-based into the
/// clouds' point arrays; pairs are sorted by red index.
struct BottleneckMatching {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  double bottleneck = 0.0;
  Metric metric = Metric::euclidean;

  /// blue index matched to each red index.
  std::vector<std::size_t> blue_of_red() const;
};

enum class MatchingMode {
  exact,               // minimum achievable maximum edge length
  threshold_doubling,  // within a factor 2 of optimal
  automatic,           // exact up to kExactModeLimit points, doubling above
};

inline constexpr std::size_t kExactModeLimit = 20000;

/// Partial matching plus its size. mate_of_red[r] is empty for unmatched r.
struct ThresholdMatching {
  std::vector<std::optional<std::size_t>> mate_of_red;
  std::size_t cardinality = 0;
};

/// Maximum-cardinality matching using only red-blue pairs at distance <= t.
/// Candidate pairs come from bucketing blue points into cells of side >= t
/// and scanning the 3x3 cell neighbourhood of every red point.
ThresholdMatching max_matching_under_threshold(const PointCloud& red, const PointCloud& blue,
                                               double t, Metric metric = Metric::euclidean);

/// Perfect matching minimising (exact) or approximately minimising
/// (threshold_doubling) the longest matched distance.
///
/// Throws std::invalid_argument on empty or unequal-size clouds and on
/// non-finite coordinates.
BottleneckMatching bottleneck_matching(const PointCloud& red, const PointCloud& blue,
                                       MatchingMode mode = MatchingMode::automatic,
                                       Metric metric = Metric::euclidean);

/// log^{3/4}(n) / sqrt(n), the starting threshold of doubling mode (with a
/// floor so that n = 1 still doubles).
double doubling_start_threshold(std::size_t n);

/// Hopcroft-Karp on an explicit bipartite graph; adjacency lists index the
/// right side. Exposed for tests and for the threshold search.
class HopcroftKarp {
 public:
  HopcroftKarp(std::size_t left, std::size_t right);

  /// Replaces the current matching. Every pair must be an edge usable by the
  /// next run().
  void warm_start(const std::vector<std::size_t>& mate_of_left);

  /// Augments to maximum cardinality using adjacency[u] restricted to its
  /// first limit[u] entries. Returns the cardinality.
  std::size_t run(const std::vector<std::vector<std::size_t>>& adjacency,
                  const std::vector<std::size_t>& limit);

  const std::vector<std::size_t>& mate_of_left() const noexcept { return mate_left_; }
  std::size_t cardinality() const noexcept { return size_; }

  static constexpr std::size_t kFree = static_cast<std::size_t>(-1);

 private:
  bool bfs(const std::vector<std::vector<std::size_t>>& adjacency,
           const std::vector<std::size_t>& limit);
  bool dfs(std::size_t root, const std::vector<std::vector<std::size_t>>& adjacency,
           const std::vector<std::size_t>& limit);

  std::vector<std::size_t> mate_left_;
  std::vector<std::size_t> mate_right_;
  std::vector<std::size_t> layer_;
  std::vector<std::size_t> cursor_;
  std::size_t size_ = 0;
};

}  // namespace permsim
