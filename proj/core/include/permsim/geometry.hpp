#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "permsim/permutation.hpp"

namespace permsim {

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

enum class Metric { euclidean, chebyshev };

/// The one distance routine every matching path uses, so that thresholds and
/// oracle comparisons see bit-identical values.
double distance(const Point& a, const Point& b, Metric metric) noexcept;

/// n points in the unit square, sorted by strictly increasing x with pairwise
/// distinct y. points()[i] carries permutation position i + 1.
class PointCloud {
 public:
  PointCloud() = default;
  /// Sorts by x and validates: coordinates finite and in [0,1], x strictly
  /// increasing after sorting, y distinct. Throws std::invalid_argument.
  explicit PointCloud(std::vector<Point> points);

  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  const std::vector<Point>& points() const noexcept { return points_; }
  const Point& operator[](std::size_t i) const { return points_[i]; }

  friend bool operator==(const PointCloud&, const PointCloud&) = default;

 private:
  std::vector<Point> points_;
};

enum class SamplerMode { uniform, poisson };

struct SamplerConfig {
  SamplerMode mode = SamplerMode::uniform;
  /// Poisson mode draws Poisson(rate_multiplier * n) points; must exceed 1.
  double rate_multiplier = 2.0;
  std::uint64_t seed = 0;
};

/// n i.i.d. uniform points on [0,1]^2, deterministic per (n, cfg, stream).
/// Poisson mode realises them by thinning a Poisson process of rate
/// rate_multiplier * n, redrawing the count whenever it falls below n.
PointCloud sample_cloud(std::size_t n, const SamplerConfig& cfg, std::uint64_t stream);

/// sigma(i) = rank of points[i].y. Throws std::invalid_argument
/// ("degenerate cloud") on repeated y.
Permutation permutation_of_cloud(const PointCloud& cloud);

/// Random cloud whose permutation is exactly p: sorted uniform x's, sorted
/// uniform y's, point i placed at (x_(i), y_(p(i))).
PointCloud embed_permutation(const Permutation& p, std::uint64_t seed, std::uint64_t stream = 0);

/// CSV with header "index,x,y", 1-indexed, x ascending, full round-trip
/// precision.
void write_cloud_csv(std::ostream& out, const PointCloud& cloud);
PointCloud read_cloud_csv(std::istream& in);

}  // namespace permsim
