#include "permsim/matching.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

namespace permsim {

namespace {

constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

double diameter(Metric metric) { return metric == Metric::euclidean ? std::sqrt(2.0) : 1.0; }

/// Blue points bucketed on a G x G grid whose cell side is at least the
/// query radius, so every neighbour within the radius lies in the 3x3 block.
class BlueBuckets {
 public:
  BlueBuckets(const PointCloud& blue, double radius) {
    const auto cap = static_cast<std::size_t>(
        std::ceil(2.0 * std::sqrt(static_cast<double>(std::max<std::size_t>(blue.size(), 1)))));
    if (radius >= 1.0) {
      side_ = 1;
    } else if (!(radius > 0.0)) {
      side_ = cap;
    } else {
      const double fit = std::floor((1.0 / radius) * (1.0 - 1e-9));
      side_ = fit < 1.0 ? 1 : std::min<std::size_t>(cap, static_cast<std::size_t>(fit));
    }
    start_.assign(side_ * side_ + 1, 0);
    for (const auto& p : blue.points()) ++start_[cell(p) + 1];
    for (std::size_t c = 0; c < side_ * side_; ++c) start_[c + 1] += start_[c];
    items_.resize(blue.size());
    auto fill = start_;
    for (std::size_t b = 0; b < blue.size(); ++b) items_[fill[cell(blue[b])]++] = b;
  }

  template <class Fn>
  void for_each_near(const Point& p, Fn&& fn) const {
    const auto cx = coord(p.x), cy = coord(p.y);
    const std::size_t x0 = cx == 0 ? 0 : cx - 1, x1 = std::min(side_ - 1, cx + 1);
    const std::size_t y0 = cy == 0 ? 0 : cy - 1, y1 = std::min(side_ - 1, cy + 1);
    for (std::size_t y = y0; y <= y1; ++y)
      for (std::size_t x = x0; x <= x1; ++x) {
        const std::size_t c = y * side_ + x;
        for (std::size_t i = start_[c]; i < start_[c + 1]; ++i) fn(items_[i]);
      }
  }

 private:
  std::size_t coord(double v) const {
    const auto c = static_cast<std::size_t>(v * static_cast<double>(side_));
    return std::min(c, side_ - 1);
  }
  std::size_t cell(const Point& p) const { return coord(p.y) * side_ + coord(p.x); }

  std::size_t side_ = 1;
  std::vector<std::size_t> start_;
  std::vector<std::size_t> items_;
};

/// For each red point, the blue points within `radius`, nearest first.
struct NeighborTable {
  std::vector<std::vector<std::size_t>> blue;
  std::vector<std::vector<double>> dist;
};

NeighborTable neighbors_within(const PointCloud& red, const PointCloud& blue, double radius,
                               Metric metric) {
  BlueBuckets buckets(blue, radius);
  NeighborTable table;
  table.blue.resize(red.size());
  table.dist.resize(red.size());
  std::vector<std::pair<double, std::size_t>> scratch;
  for (std::size_t r = 0; r < red.size(); ++r) {
    scratch.clear();
    buckets.for_each_near(red[r], [&](std::size_t b) {
      const double d = distance(red[r], blue[b], metric);
      if (d <= radius) scratch.emplace_back(d, b);
    });
    std::sort(scratch.begin(), scratch.end());
    table.blue[r].reserve(scratch.size());
    table.dist[r].reserve(scratch.size());
    for (const auto& [d, b] : scratch) {
      table.blue[r].push_back(b);
      table.dist[r].push_back(d);
    }
  }
  return table;
}

std::vector<std::size_t> limits_at(const NeighborTable& table, double t) {
  std::vector<std::size_t> limit(table.dist.size());
  for (std::size_t r = 0; r < limit.size(); ++r)
    limit[r] = static_cast<std::size_t>(
        std::upper_bound(table.dist[r].begin(), table.dist[r].end(), t) - table.dist[r].begin());
  return limit;
}

void check_inputs(const PointCloud& red, const PointCloud& blue) {
  if (red.empty() || blue.empty()) throw std::invalid_argument("bottleneck_matching: n = 0");
  if (red.size() != blue.size())
    throw std::invalid_argument("bottleneck_matching: clouds differ in size");
  for (const auto* c : {&red, &blue})
    for (const auto& p : c->points())
      if (!std::isfinite(p.x) || !std::isfinite(p.y))
        throw std::invalid_argument("bottleneck_matching: non-finite coordinate");
}

BottleneckMatching finish(const PointCloud& red, const PointCloud& blue,
                          const std::vector<std::size_t>& mate_of_red, Metric metric) {
  BottleneckMatching m;
  m.metric = metric;
  m.pairs.reserve(red.size());
  for (std::size_t r = 0; r < red.size(); ++r) {
    m.pairs.emplace_back(r, mate_of_red[r]);
    m.bottleneck = std::max(m.bottleneck, distance(red[r], blue[mate_of_red[r]], metric));
  }
  return m;
}

struct DoublingResult {
  double feasible = 0.0;     // smallest doubled threshold admitting a perfect matching
  double infeasible = -1.0;  // previous threshold, or -1 when the first probe succeeded
  NeighborTable table;
  std::vector<std::size_t> mate_of_red;
};

DoublingResult double_until_perfect(const PointCloud& red, const PointCloud& blue,
                                    Metric metric) {
  const std::size_t n = red.size();
  DoublingResult out;
  double t = doubling_start_threshold(n);
  for (;;) {
    auto table = neighbors_within(red, blue, t, metric);
    HopcroftKarp hk(n, n);
    if (hk.run(table.blue, limits_at(table, t)) == n) {
      out.feasible = t;
      out.table = std::move(table);
      out.mate_of_red = hk.mate_of_left();
      return out;
    }
    out.infeasible = t;
    // every pair is admissible beyond the diameter, so this terminates
    t = t >= diameter(metric) ? t : 2.0 * t;
    if (out.infeasible >= diameter(metric))
      throw std::logic_error("bottleneck_matching: complete graph has no perfect matching");
  }
}

}  // namespace

std::vector<std::size_t> BottleneckMatching::blue_of_red() const {
  std::vector<std::size_t> out(pairs.size());
  for (const auto& [r, b] : pairs) out[r] = b;
  return out;
}

double doubling_start_threshold(std::size_t n) {
  if (n < 2) return 1.0;
  const double dn = static_cast<double>(n);
  return std::pow(std::log(dn), 0.75) / std::sqrt(dn);
}

HopcroftKarp::HopcroftKarp(std::size_t left, std::size_t right)
    : mate_left_(left, kFree), mate_right_(right, kFree), layer_(left), cursor_(left) {}

void HopcroftKarp::warm_start(const std::vector<std::size_t>& mate_of_left) {
  std::fill(mate_right_.begin(), mate_right_.end(), kFree);
  mate_left_ = mate_of_left;
  size_ = 0;
  for (std::size_t u = 0; u < mate_left_.size(); ++u)
    if (mate_left_[u] != kFree) {
      mate_right_[mate_left_[u]] = u;
      ++size_;
    }
}

bool HopcroftKarp::bfs(const std::vector<std::vector<std::size_t>>& adjacency,
                       const std::vector<std::size_t>& limit) {
  std::deque<std::size_t> queue;
  for (std::size_t u = 0; u < mate_left_.size(); ++u) {
    if (mate_left_[u] == kFree) {
      layer_[u] = 0;
      queue.push_back(u);
    } else {
      layer_[u] = kUnreached;
    }
  }
  std::size_t free_layer = kUnreached;
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    if (layer_[u] >= free_layer) continue;
    for (std::size_t i = 0; i < limit[u]; ++i) {
      const std::size_t w = mate_right_[adjacency[u][i]];
      if (w == kFree) {
        free_layer = std::min(free_layer, layer_[u] + 1);
      } else if (layer_[w] == kUnreached) {
        layer_[w] = layer_[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return free_layer != kUnreached;
}

bool HopcroftKarp::dfs(std::size_t root, const std::vector<std::vector<std::size_t>>& adjacency,
                       const std::vector<std::size_t>& limit) {
  std::vector<std::size_t> stack{root};
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    if (cursor_[u] == limit[u]) {
      layer_[u] = kUnreached;
      stack.pop_back();
      continue;
    }
    const std::size_t v = adjacency[u][cursor_[u]++];
    const std::size_t w = mate_right_[v];
    if (w == kFree) {
      for (std::size_t x : stack) {
        const std::size_t chosen = adjacency[x][cursor_[x] - 1];
        mate_left_[x] = chosen;
        mate_right_[chosen] = x;
      }
      return true;
    }
    if (layer_[w] == layer_[u] + 1) stack.push_back(w);
  }
  return false;
}

std::size_t HopcroftKarp::run(const std::vector<std::vector<std::size_t>>& adjacency,
                              const std::vector<std::size_t>& limit) {
  while (bfs(adjacency, limit)) {
    std::fill(cursor_.begin(), cursor_.end(), 0);
    std::size_t gained = 0;
    for (std::size_t u = 0; u < mate_left_.size(); ++u)
      if (mate_left_[u] == kFree && layer_[u] == 0 && dfs(u, adjacency, limit)) ++gained;
    if (gained == 0) break;
    size_ += gained;
  }
  return size_;
}

ThresholdMatching max_matching_under_threshold(const PointCloud& red, const PointCloud& blue,
                                               double t, Metric metric) {
  if (!(t >= 0.0)) throw std::invalid_argument("max_matching_under_threshold: t must be >= 0");
  ThresholdMatching out;
  out.mate_of_red.assign(red.size(), std::nullopt);
  if (red.empty() || blue.empty()) return out;
  auto table = neighbors_within(red, blue, t, metric);
  HopcroftKarp hk(red.size(), blue.size());
  std::vector<std::size_t> limit(red.size());
  for (std::size_t r = 0; r < red.size(); ++r) limit[r] = table.blue[r].size();
  out.cardinality = hk.run(table.blue, limit);
  for (std::size_t r = 0; r < red.size(); ++r)
    if (hk.mate_of_left()[r] != HopcroftKarp::kFree) out.mate_of_red[r] = hk.mate_of_left()[r];
  return out;
}

BottleneckMatching bottleneck_matching(const PointCloud& red, const PointCloud& blue,
                                       MatchingMode mode, Metric metric) {
  check_inputs(red, blue);
  const std::size_t n = red.size();
  if (mode == MatchingMode::automatic)
    mode = n <= kExactModeLimit ? MatchingMode::exact : MatchingMode::threshold_doubling;

  auto doubled = double_until_perfect(red, blue, metric);
  if (mode == MatchingMode::threshold_doubling)
    return finish(red, blue, doubled.mate_of_red, metric);

  // The optimum is one of the red-blue distances in (infeasible, feasible].
  std::vector<double> candidates;
  for (const auto& row : doubled.table.dist)
    for (double d : row)
      if (d > doubled.infeasible) candidates.push_back(d);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  std::vector<std::size_t> best = doubled.mate_of_red;
  std::vector<std::size_t> warm(n, HopcroftKarp::kFree);
  std::size_t lo = 0, hi = candidates.size() - 1;  // candidates[hi] is feasible
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    HopcroftKarp hk(n, n);
    hk.warm_start(warm);
    if (hk.run(doubled.table.blue, limits_at(doubled.table, candidates[mid])) == n) {
      best = hk.mate_of_left();
      hi = mid;
    } else {
      warm = hk.mate_of_left();  // still valid at every larger threshold
      lo = mid + 1;
    }
  }
  return finish(red, blue, best, metric);
}

}  // namespace permsim
