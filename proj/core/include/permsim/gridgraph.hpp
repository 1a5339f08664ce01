#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "permsim/coloring.hpp"
#include "permsim/geometry.hpp"
#include "permsim/matching.hpp"

namespace permsim {

/// ceil(n^{1/2 + 1/(2(2k-1))} / ln(n)^{1/(2k-1)}), at least 1. For k = 2 this
/// is ceil(n^{2/3} / ln(n)^{1/3}). Throws std::invalid_argument for n < 2 or
/// k < 2.
std::size_t grid_size(std::size_t n, std::size_t k);

struct GridConfig {
  std::size_t M = 1;
  std::size_t k = 2;
  std::size_t n = 0;
};

/// Grid square S_{row,col}; both 1-based.
struct CellIndex {
  std::size_t row = 1;
  std::size_t col = 1;
  friend bool operator==(const CellIndex&, const CellIndex&) = default;
};

/// col = floor(x M) + 1, row = floor(y M) + 1, clamped to M.
CellIndex cell_of(const Point& p, std::size_t M);

/// (drow_2, dcol_2, ..., drow_k, dcol_k): cell offsets of the matched points
/// relative to the red point's cell.
struct DisplacementLabel {
  std::vector<int> offsets;
  auto operator<=>(const DisplacementLabel&) const = default;
  bool operator==(const DisplacementLabel&) const = default;
  std::string to_string() const;
};

struct LabeledEdge {
  std::size_t row = 1;  // row vertex i_row
  std::size_t col = 1;  // column vertex j_col
  DisplacementLabel label;
  /// binding[0] is the red point index, binding[j] the index of its partner
  /// in cloud j (all 0-based).
  std::vector<std::size_t> binding;
};

struct LabeledMultigraph {
  std::size_t M = 1;
  std::size_t k = 2;
  std::vector<LabeledEdge> edges;
};

/// One edge per point of clouds[0], labelled by the cell offsets of the
/// points it is matched to in clouds[1..k-1] via matchings[0..k-2].
///
/// Throws std::invalid_argument when sizes disagree or a matching is not
/// perfect.
LabeledMultigraph build_multigraph(std::span<const PointCloud> clouds,
                                   std::span<const BottleneckMatching> matchings,
                                   const GridConfig& cfg);

/// Partition of the edge set by label, keys in lexicographic order.
std::map<DisplacementLabel, LabeledMultigraph> group_by_label(const LabeledMultigraph& g);

/// Row vertex r maps to r-1 and column vertex c to M+c-1.
Multigraph to_multigraph(const LabeledMultigraph& g);

/// {"M":..,"k":..,"edges":[{"row","col","label":[..],"binding":[..]}]}, with
/// 1-based bindings.
std::string multigraph_to_json(const LabeledMultigraph& g);

}  // namespace permsim
