#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace permsim {

/// Undirected multigraph given as an edge list over vertices 0..vertex_count-1.
/// Parallel edges are repeated entries.
struct Multigraph {
  std::size_t vertex_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

/// color_of_edge[e] in 1..num_colors.
struct EdgeColoring {
  std::vector<std::size_t> color_of_edge;
  std::size_t num_colors = 0;
};

/// Maximum number of incident edges over all vertices, counting multiplicity.
std::size_t max_degree(const Multigraph& g);

/// Proper edge colouring with exactly max_degree(g) colours (Konig).
///
/// Edges are inserted in input order. Each insertion takes the smallest free
/// colour a at one endpoint and b at the other; if they differ, the a/b
/// alternating path leaving the second endpoint is flipped first.
///
/// Throws std::invalid_argument if g has a self-loop or an odd cycle, or an
/// endpoint out of range.
EdgeColoring edge_color(const Multigraph& g);

/// Edge indices grouped by colour, colour 1 first. Every class is a matching.
/// Throws std::invalid_argument if `c` is not a proper colouring of `g`.
std::vector<std::vector<std::size_t>> color_classes(const EdgeColoring& c, const Multigraph& g);

}  // namespace permsim
