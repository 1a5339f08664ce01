#include "permsim/coloring.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>
#include <string>

namespace permsim {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

void check_bipartite(const Multigraph& g) {
  std::vector<std::vector<std::size_t>> adj(g.vertex_count);
  for (const auto& [u, v] : g.edges) {
    if (u >= g.vertex_count || v >= g.vertex_count)
      throw std::invalid_argument("edge_color: endpoint out of range");
    if (u == v) throw std::invalid_argument("edge_color: self-loop, graph is not bipartite");
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<int> side(g.vertex_count, -1);
  for (std::size_t s = 0; s < g.vertex_count; ++s) {
    if (side[s] != -1) continue;
    side[s] = 0;
    std::deque<std::size_t> queue{s};
    while (!queue.empty()) {
      const auto x = queue.front();
      queue.pop_front();
      for (auto y : adj[x]) {
        if (side[y] == -1) {
          side[y] = 1 - side[x];
          queue.push_back(y);
        } else if (side[y] == side[x]) {
          throw std::invalid_argument("edge_color: odd cycle, graph is not bipartite");
        }
      }
    }
  }
}

}  // namespace

std::size_t max_degree(const Multigraph& g) {
  std::vector<std::size_t> deg(g.vertex_count, 0);
  for (const auto& [u, v] : g.edges) {
    if (u >= g.vertex_count || v >= g.vertex_count)
      throw std::invalid_argument("max_degree: endpoint out of range");
    ++deg[u];
    ++deg[v];
  }
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

EdgeColoring edge_color(const Multigraph& g) {
  check_bipartite(g);
  const std::size_t delta = max_degree(g);
  EdgeColoring out{std::vector<std::size_t>(g.edges.size(), 0), delta};
  if (g.edges.empty()) return out;

  // Dense ids for touched vertices keep the colour table at O(m * delta).
  std::vector<std::size_t> dense(g.vertex_count, kNone);
  std::vector<std::pair<std::size_t, std::size_t>> ends(g.edges.size());
  std::size_t used = 0;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    auto [u, v] = g.edges[e];
    if (dense[u] == kNone) dense[u] = used++;
    if (dense[v] == kNone) dense[v] = used++;
    ends[e] = {dense[u], dense[v]};
  }

  // at[x * stride + c] = edge of colour c at vertex x; colour 0 unused.
  const std::size_t stride = delta + 1;
  std::vector<std::size_t> at(used * stride, kNone);
  const auto slot = [&](std::size_t x, std::size_t c) -> std::size_t& { return at[x * stride + c]; };
  const auto smallest_free = [&](std::size_t x) {
    for (std::size_t c = 1; c <= delta; ++c)
      if (slot(x, c) == kNone) return c;
    throw std::logic_error("edge_color: no free colour at a vertex below max degree");
  };
  const auto other = [&](std::size_t e, std::size_t x) {
    return ends[e].first == x ? ends[e].second : ends[e].first;
  };

  std::vector<std::size_t> path;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto [u, v] = ends[e];
    const std::size_t alpha = smallest_free(u);
    const std::size_t beta = smallest_free(v);
    if (alpha != beta) {
      // Flip the alpha/beta path starting at v so alpha becomes free there.
      path.clear();
      std::size_t x = v, c = alpha;
      while (slot(x, c) != kNone) {
        const std::size_t f = slot(x, c);
        path.push_back(f);
        x = other(f, x);
        if (x == u) throw std::logic_error("edge_color: alternating path reached its origin");
        c = c == alpha ? beta : alpha;
      }
      for (auto f : path) {
        slot(ends[f].first, out.color_of_edge[f]) = kNone;
        slot(ends[f].second, out.color_of_edge[f]) = kNone;
      }
      for (auto f : path) {
        const std::size_t flipped = out.color_of_edge[f] == alpha ? beta : alpha;
        out.color_of_edge[f] = flipped;
        slot(ends[f].first, flipped) = f;
        slot(ends[f].second, flipped) = f;
      }
    }
    out.color_of_edge[e] = alpha;
    slot(u, alpha) = e;
    slot(v, alpha) = e;
  }
  return out;
}

std::vector<std::vector<std::size_t>> color_classes(const EdgeColoring& c, const Multigraph& g) {
  if (c.color_of_edge.size() != g.edges.size())
    throw std::invalid_argument("color_classes: colouring does not cover the edge list");
  std::vector<std::vector<std::size_t>> classes(c.num_colors);
  std::vector<std::size_t> owner(g.vertex_count * (c.num_colors + 1), kNone);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const std::size_t col = c.color_of_edge[e];
    if (col < 1 || col > c.num_colors)
      throw std::invalid_argument("color_classes: colour " + std::to_string(col) + " out of range");
    for (std::size_t x : {g.edges[e].first, g.edges[e].second}) {
      if (x >= g.vertex_count) throw std::invalid_argument("color_classes: endpoint out of range");
      auto& o = owner[x * (c.num_colors + 1) + col];
      if (o != kNone)
        throw std::invalid_argument("color_classes: improper colouring, edges " + std::to_string(o) +
                                    " and " + std::to_string(e) + " share a vertex and colour");
      o = e;
    }
    classes[col - 1].push_back(e);
  }
  return classes;
}

}  // namespace permsim
