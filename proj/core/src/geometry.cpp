#include "permsim/geometry.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "permsim/rng.hpp"

namespace permsim {

namespace {

// count uniform draws with no exact repeats; a repeated value is redrawn.
std::vector<double> distinct_uniforms(Rng& rng, std::size_t count) {
  std::vector<double> v(count);
  for (auto& x : v) x = rng.uniform();
  std::vector<std::size_t> order(count);
  for (;;) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return v[a] < v[b]; });
    bool clean = true;
    for (std::size_t i = 1; i < count; ++i) {
      if (v[order[i]] == v[order[i - 1]]) {
        v[order[i]] = rng.uniform();
        clean = false;
      }
    }
    if (clean) return v;
  }
}

void resample_ties(std::vector<Point>& pts, Rng& rng) {
  for (bool clean = false; !clean;) {
    clean = true;
    std::vector<std::size_t> order(pts.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return pts[a].x < pts[b].x; });
    for (std::size_t i = 1; i < order.size(); ++i)
      if (pts[order[i]].x == pts[order[i - 1]].x) {
        pts[order[i]].x = rng.uniform();
        clean = false;
      }
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return pts[a].y < pts[b].y; });
    for (std::size_t i = 1; i < order.size(); ++i)
      if (pts[order[i]].y == pts[order[i - 1]].y) {
        pts[order[i]].y = rng.uniform();
        clean = false;
      }
  }
}

}  // namespace

double distance(const Point& a, const Point& b, Metric metric) noexcept {
  const double dx = std::abs(a.x - b.x);
  const double dy = std::abs(a.y - b.y);
  if (metric == Metric::chebyshev) return std::max(dx, dy);
  return std::sqrt(dx * dx + dy * dy);
}

PointCloud::PointCloud(std::vector<Point> points) : points_(std::move(points)) {
  for (const auto& p : points_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw std::invalid_argument("point cloud: non-finite coordinate");
    if (p.x < 0.0 || p.x > 1.0 || p.y < 0.0 || p.y > 1.0)
      throw std::invalid_argument("point cloud: coordinate outside [0,1]");
  }
  std::sort(points_.begin(), points_.end(), [](const Point& a, const Point& b) { return a.x < b.x; });
  for (std::size_t i = 1; i < points_.size(); ++i)
    if (!(points_[i - 1].x < points_[i].x))
      throw std::invalid_argument("point cloud: repeated x coordinate");
  std::vector<double> ys(points_.size());
  std::transform(points_.begin(), points_.end(), ys.begin(), [](const Point& p) { return p.y; });
  std::sort(ys.begin(), ys.end());
  if (std::adjacent_find(ys.begin(), ys.end()) != ys.end())
    throw std::invalid_argument("degenerate cloud: repeated y coordinate");
}

PointCloud sample_cloud(std::size_t n, const SamplerConfig& cfg, std::uint64_t stream) {
  if (n == 0) throw std::invalid_argument("sample_cloud: n must be >= 1");
  Rng rng(cfg.seed, stream);
  std::vector<Point> pts;

  if (cfg.mode == SamplerMode::uniform) {
    pts.resize(n);
    for (auto& p : pts) {
      p.x = rng.uniform();
      p.y = rng.uniform();
    }
  } else {
    if (!(cfg.rate_multiplier > 1.0))
      throw std::invalid_argument("sample_cloud: poisson rate multiplier must exceed 1");
    const double mean = cfg.rate_multiplier * static_cast<double>(n);
    std::int64_t total = 0;
    do {
      total = rng.poisson(mean);
    } while (total < static_cast<std::int64_t>(n));
    const auto m = static_cast<std::size_t>(total);
    pts.resize(m);
    for (auto& p : pts) {
      p.x = rng.uniform();
      p.y = rng.uniform();
    }
    // keep a uniformly random n-subset: partial Fisher-Yates
    for (std::size_t i = 0; i < n; ++i) std::swap(pts[i], pts[i + rng.below(m - i)]);
    pts.resize(n);
  }
  resample_ties(pts, rng);
  return PointCloud(std::move(pts));
}

Permutation permutation_of_cloud(const PointCloud& cloud) {
  std::vector<double> ys;
  ys.reserve(cloud.size());
  for (const auto& p : cloud.points()) ys.push_back(p.y);
  try {
    return pattern_of(std::span<const double>(ys));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("degenerate cloud");
  }
}

PointCloud embed_permutation(const Permutation& p, std::uint64_t seed, std::uint64_t stream) {
  Rng rng(seed, stream);
  const std::size_t n = p.size();
  auto xs = distinct_uniforms(rng, n);
  auto ys = distinct_uniforms(rng, n);
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  std::vector<Point> pts(n);
  for (std::size_t i = 0; i < n; ++i)
    pts[i] = {xs[i], ys[static_cast<std::size_t>(p.values()[i]) - 1]};
  return PointCloud(std::move(pts));
}

void write_cloud_csv(std::ostream& out, const PointCloud& cloud) {
  out << "index,x,y\n";
  char buf[64];
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    out << (i + 1);
    for (double v : {cloud[i].x, cloud[i].y}) {
      auto res = std::to_chars(buf, buf + sizeof buf, v);
      out << ',' << std::string_view(buf, static_cast<std::size_t>(res.ptr - buf));
    }
    out << '\n';
  }
}

PointCloud read_cloud_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("cloud csv: missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "index,x,y") throw std::invalid_argument("cloud csv: expected header index,x,y");
  std::vector<Point> pts;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string idx, xs, ys;
    if (!std::getline(row, idx, ',') || !std::getline(row, xs, ',') || !std::getline(row, ys))
      throw std::invalid_argument("cloud csv: malformed line " + std::to_string(lineno));
    unsigned long long index = 0;
    Point p;
    try {
      index = std::stoull(idx);
      p = {std::stod(xs), std::stod(ys)};
    } catch (const std::logic_error&) {
      throw std::invalid_argument("cloud csv: malformed line " + std::to_string(lineno));
    }
    if (index != pts.size() + 1)
      throw std::invalid_argument("cloud csv: indices must run 1..n in order");
    pts.push_back(p);
  }
  if (pts.empty()) throw std::invalid_argument("cloud csv: no points");
  return PointCloud(std::move(pts));
}

}  // namespace permsim
