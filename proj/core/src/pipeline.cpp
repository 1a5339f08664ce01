#include "permsim/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "permsim/coloring.hpp"
#include "permsim/gridgraph.hpp"
#include "permsim/rng.hpp"

namespace permsim {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void check_same_length(std::span<const Permutation> perms) {
  if (perms.empty()) throw std::invalid_argument("need at least one permutation");
  for (const auto& p : perms)
    if (p.size() != perms.front().size())
      throw std::invalid_argument("permutations differ in length");
}

void certify(std::span<const Permutation> perms, const Decomposition& d) {
  if (auto verdict = verify_decomposition(perms, d); !verdict)
    throw InternalError("emitted decomposition failed verification: " + verdict.violation);
}

DecomposeResult run_stages(std::vector<PointCloud> clouds, std::vector<Permutation> perms,
                           const PipelineConfig& cfg, Clock::time_point start) {
  const std::size_t k = clouds.size();
  const std::size_t n = clouds.front().size();

  DecomposeResult result;
  RunRecord& rec = result.record;
  rec.n = n;
  rec.k = k;
  rec.seed = cfg.seed;
  rec.M = cfg.M_override ? *cfg.M_override : (n >= 2 ? grid_size(n, k) : 1);

  std::vector<BottleneckMatching> matchings;
  matchings.reserve(k - 1);
  for (std::size_t j = 1; j < k; ++j) {
    matchings.push_back(bottleneck_matching(clouds[0], clouds[j], cfg.matching_mode, cfg.metric));
    rec.bottlenecks.push_back(matchings.back().bottleneck);
  }

  const auto graph = build_multigraph(clouds, matchings, GridConfig{rec.M, k, n});
  const auto groups = group_by_label(graph);
  rec.label_count = groups.size();

  Decomposition& d = result.decomposition;
  d.n = n;
  d.k = k;
  // std::map iterates labels in sorted order, which fixes the part order.
  for (const auto& [label, sub] : groups) {
    const Multigraph mg = to_multigraph(sub);
    const EdgeColoring coloring = edge_color(mg);
    rec.max_label_degree = std::max(rec.max_label_degree, coloring.num_colors);
    for (const auto& cls : color_classes(coloring, mg)) {
      if (cls.empty()) continue;
      Part part{std::vector<std::vector<std::size_t>>(k)};
      for (std::size_t j = 0; j < k; ++j) {
        auto& idx = part.index_lists[j];
        idx.reserve(cls.size());
        for (std::size_t e : cls) idx.push_back(sub.edges[e].binding[j] + 1);
        std::sort(idx.begin(), idx.end());
      }
      d.parts.push_back(std::move(part));
    }
  }
  rec.part_count = d.parts.size();

  certify(perms, d);
  result.perms = std::move(perms);
  rec.wall_time_ms = elapsed_ms(start);
  return result;
}

void check_config(const PipelineConfig& cfg) {
  if (cfg.k < 2) throw std::invalid_argument("pipeline: k must be >= 2");
  if (cfg.M_override && *cfg.M_override < 1)
    throw std::invalid_argument("pipeline: M override must be >= 1");
}

}  // namespace

DecomposeResult decompose(std::span<const Permutation> perms, const PipelineConfig& cfg) {
  const auto start = Clock::now();
  check_config(cfg);
  check_same_length(perms);
  if (perms.size() != cfg.k)
    throw std::invalid_argument("decompose: expected " + std::to_string(cfg.k) +
                                " permutations, got " + std::to_string(perms.size()));
  std::vector<PointCloud> clouds;
  clouds.reserve(perms.size());
  for (std::size_t j = 0; j < perms.size(); ++j)
    clouds.push_back(embed_permutation(perms[j], cfg.seed, j));
  return run_stages(std::move(clouds), {perms.begin(), perms.end()}, cfg, start);
}

DecomposeResult decompose_fresh(std::size_t n, const PipelineConfig& cfg) {
  const auto start = Clock::now();
  check_config(cfg);
  if (n < 2) throw std::invalid_argument("decompose_fresh: n must be >= 2");
  SamplerConfig sampler = cfg.sampler;
  sampler.seed = cfg.seed;
  std::vector<PointCloud> clouds;
  std::vector<Permutation> perms;
  for (std::size_t j = 0; j < cfg.k; ++j) {
    clouds.push_back(sample_cloud(n, sampler, j));
    perms.push_back(permutation_of_cloud(clouds.back()));
  }
  return run_stages(std::move(clouds), std::move(perms), cfg, start);
}

DecomposeResult decompose_clouds(std::vector<PointCloud> clouds, const PipelineConfig& cfg) {
  const auto start = Clock::now();
  check_config(cfg);
  if (clouds.size() != cfg.k) throw std::invalid_argument("decompose_clouds: expected k clouds");
  std::vector<Permutation> perms;
  for (const auto& c : clouds) {
    if (c.empty() || c.size() != clouds.front().size())
      throw std::invalid_argument("decompose_clouds: clouds must be non-empty and equal in size");
    perms.push_back(permutation_of_cloud(c));
  }
  return run_stages(std::move(clouds), std::move(perms), cfg, start);
}

std::vector<std::vector<std::size_t>> patience_piles(const Permutation& p, PileOrder order) {
  std::vector<std::vector<std::size_t>> piles;
  std::vector<int> tops;
  const auto values = p.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    const int v = values[i];
    // Decreasing piles: tops increase left to right, take the first top > v.
    // Increasing piles: tops decrease left to right, take the first top < v.
    auto it = order == PileOrder::decreasing
                  ? std::upper_bound(tops.begin(), tops.end(), v)
                  : std::upper_bound(tops.begin(), tops.end(), v, std::greater<>());
    const auto pile = static_cast<std::size_t>(it - tops.begin());
    if (it == tops.end()) {
      tops.push_back(v);
      piles.emplace_back();
    } else {
      *it = v;
    }
    piles[pile].push_back(i + 1);
  }
  return piles;
}

DecomposeResult baseline_decompose(std::span<const Permutation> perms, PileOrder order) {
  const auto start = Clock::now();
  check_same_length(perms);
  const std::size_t k = perms.size();
  const std::size_t n = perms.front().size();

  std::vector<std::vector<std::vector<std::size_t>>> piles(k);
  std::size_t max_piles = 0;
  for (std::size_t j = 0; j < k; ++j) {
    piles[j] = patience_piles(perms[j], order);
    std::stable_sort(piles[j].begin(), piles[j].end(),
                     [](const auto& a, const auto& b) { return a.size() > b.size(); });
    max_piles = std::max(max_piles, piles[j].size());
  }

  DecomposeResult result;
  Decomposition& d = result.decomposition;
  d.n = n;
  d.k = k;
  std::vector<std::size_t> pile(k, 0), offset(k, 0);
  std::size_t consumed = 0;
  while (consumed < n) {
    std::size_t len = n;
    for (std::size_t j = 0; j < k; ++j) len = std::min(len, piles[j][pile[j]].size() - offset[j]);
    Part part{std::vector<std::vector<std::size_t>>(k)};
    for (std::size_t j = 0; j < k; ++j) {
      const auto& src = piles[j][pile[j]];
      part.index_lists[j].assign(src.begin() + static_cast<std::ptrdiff_t>(offset[j]),
                                 src.begin() + static_cast<std::ptrdiff_t>(offset[j] + len));
      offset[j] += len;
      if (offset[j] == src.size()) {
        ++pile[j];
        offset[j] = 0;
      }
    }
    d.parts.push_back(std::move(part));
    consumed += len;
  }

  RunRecord& rec = result.record;
  rec.n = n;
  rec.k = k;
  rec.label_count = 1;
  rec.max_label_degree = max_piles;
  rec.part_count = d.parts.size();
  certify(perms, d);
  result.perms.assign(perms.begin(), perms.end());
  rec.wall_time_ms = elapsed_ms(start);
  return result;
}

std::pair<double, double> envelope_exponents(std::size_t k) {
  if (k < 2) throw std::invalid_argument("envelope_exponents: k must be >= 2");
  const double kk = static_cast<double>(k);
  return {(kk - 1.0) / (2.0 * kk - 1.0), 1.5 * (kk - 1.0) + 1.0 / (2.0 * kk - 1.0)};
}

ScalingPoint pipeline_stats(const RunRecord& record) {
  if (record.n < 2) throw std::invalid_argument("pipeline_stats: n must be >= 2");
  const auto [a, b] = envelope_exponents(record.k);
  const double n = static_cast<double>(record.n);
  ScalingPoint s;
  s.n = record.n;
  s.part_count = record.part_count;
  s.poly_exponent = a;
  s.log_exponent = b;
  s.normalized_ratio =
      static_cast<double>(record.part_count) / (std::pow(n, a) * std::pow(std::log(n), b));
  return s;
}

std::vector<Permutation> random_permutations(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random_permutations: n must be >= 1");
  std::vector<Permutation> out;
  out.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    Rng rng(seed, j);
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 1);
    for (std::size_t i = n - 1; i > 0; --i) std::swap(v[i], v[rng.below(i + 1)]);
    out.emplace_back(std::move(v));
  }
  return out;
}

}  // namespace permsim
