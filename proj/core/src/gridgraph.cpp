#include "permsim/gridgraph.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace permsim {

std::size_t grid_size(std::size_t n, std::size_t k) {
  if (n < 2) throw std::invalid_argument("grid_size: n must be >= 2");
  if (k < 2) throw std::invalid_argument("grid_size: k must be >= 2");
  const long double dn = static_cast<long double>(n);
  const long double two_k_minus_1 = 2.0L * static_cast<long double>(k) - 1.0L;
  const long double value =
      std::pow(dn, 0.5L + 1.0L / (2.0L * two_k_minus_1)) / std::pow(std::log(dn), 1.0L / two_k_minus_1);
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(value)));
}

CellIndex cell_of(const Point& p, std::size_t M) {
  const auto index = [M](double v) {
    const double scaled = std::floor(v * static_cast<double>(M));
    if (scaled < 0.0) return std::size_t{1};
    return std::min(static_cast<std::size_t>(scaled) + 1, M);
  };
  return {index(p.y), index(p.x)};
}

std::string DisplacementLabel::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < offsets.size(); ++i) os << (i ? "," : "") << offsets[i];
  os << ')';
  return os.str();
}

LabeledMultigraph build_multigraph(std::span<const PointCloud> clouds,
                                   std::span<const BottleneckMatching> matchings,
                                   const GridConfig& cfg) {
  if (clouds.size() < 2) throw std::invalid_argument("build_multigraph: need k >= 2 clouds");
  if (matchings.size() + 1 != clouds.size())
    throw std::invalid_argument("build_multigraph: need k-1 matchings");
  if (cfg.M < 1) throw std::invalid_argument("build_multigraph: M must be >= 1");
  const std::size_t n = clouds[0].size();
  for (const auto& c : clouds)
    if (c.size() != n) throw std::invalid_argument("build_multigraph: cloud sizes differ");

  std::vector<std::vector<std::size_t>> partner(matchings.size());
  for (std::size_t j = 0; j < matchings.size(); ++j) {
    const auto& m = matchings[j];
    if (m.pairs.size() != n) throw std::invalid_argument("build_multigraph: matching not perfect");
    std::vector<std::size_t> of_red(n, n);
    std::vector<bool> blue_used(n, false);
    for (const auto& [r, b] : m.pairs) {
      if (r >= n || b >= n || of_red[r] != n || blue_used[b])
        throw std::invalid_argument("build_multigraph: matching not perfect");
      of_red[r] = b;
      blue_used[b] = true;
    }
    partner[j] = std::move(of_red);
  }

  LabeledMultigraph g{cfg.M, clouds.size(), {}};
  g.edges.reserve(n);
  for (std::size_t r = 0; r < n; ++r) {
    const CellIndex home = cell_of(clouds[0][r], cfg.M);
    LabeledEdge e;
    e.row = home.row;
    e.col = home.col;
    e.binding.push_back(r);
    e.label.offsets.reserve(2 * partner.size());
    for (std::size_t j = 0; j < partner.size(); ++j) {
      const std::size_t b = partner[j][r];
      const CellIndex away = cell_of(clouds[j + 1][b], cfg.M);
      e.label.offsets.push_back(static_cast<int>(away.row) - static_cast<int>(home.row));
      e.label.offsets.push_back(static_cast<int>(away.col) - static_cast<int>(home.col));
      e.binding.push_back(b);
    }
    g.edges.push_back(std::move(e));
  }
  return g;
}

std::map<DisplacementLabel, LabeledMultigraph> group_by_label(const LabeledMultigraph& g) {
  std::map<DisplacementLabel, LabeledMultigraph> groups;
  for (const auto& e : g.edges) {
    auto [it, fresh] = groups.try_emplace(e.label);
    if (fresh) {
      it->second.M = g.M;
      it->second.k = g.k;
    }
    it->second.edges.push_back(e);
  }
  return groups;
}

Multigraph to_multigraph(const LabeledMultigraph& g) {
  Multigraph mg;
  mg.vertex_count = 2 * g.M;
  mg.edges.reserve(g.edges.size());
  for (const auto& e : g.edges) mg.edges.emplace_back(e.row - 1, g.M + e.col - 1);
  return mg;
}

std::string multigraph_to_json(const LabeledMultigraph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : g.edges) {
    std::vector<std::size_t> binding;
    for (auto b : e.binding) binding.push_back(b + 1);
    edges.push_back({{"row", e.row}, {"col", e.col}, {"label", e.label.offsets}, {"binding", binding}});
  }
  return nlohmann::json{{"M", g.M}, {"k", g.k}, {"edges", std::move(edges)}}.dump();
}

}  // namespace permsim
