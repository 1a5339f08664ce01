#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "permsim/coloring.hpp"

namespace permsim {
namespace {

// Exhaustive check: every pair of edges sharing an endpoint differs in colour.
bool proper_by_enumeration(const Multigraph& g, const EdgeColoring& c) {
  for (std::size_t a = 0; a < g.edges.size(); ++a)
    for (std::size_t b = a + 1; b < g.edges.size(); ++b) {
      const auto [u1, v1] = g.edges[a];
      const auto [u2, v2] = g.edges[b];
      const bool share = u1 == u2 || u1 == v2 || v1 == u2 || v1 == v2;
      if (share && c.color_of_edge[a] == c.color_of_edge[b]) return false;
    }
  return true;
}

std::size_t colours_used(const EdgeColoring& c) {
  return std::set<std::size_t>(c.color_of_edge.begin(), c.color_of_edge.end()).size();
}

Multigraph random_bipartite(std::mt19937_64& gen) {
  const std::size_t left = 1 + gen() % 50, right = 1 + gen() % 50;
  Multigraph g{left + right, {}};
  const std::size_t target = gen() % 401;
  while (g.edges.size() < target) {
    const std::size_t u = gen() % left, v = left + gen() % right;
    const std::size_t copies = 1 + gen() % 6;
    for (std::size_t c = 0; c < copies && g.edges.size() < target; ++c) g.edges.emplace_back(u, v);
  }
  std::shuffle(g.edges.begin(), g.edges.end(), gen);
  return g;
}

TEST(MaxDegree, Examples) {
  EXPECT_EQ(max_degree(Multigraph{4, {}}), 0u);
  EXPECT_EQ(max_degree(Multigraph{2, {{0, 1}, {0, 1}, {0, 1}}}), 3u);
  EXPECT_EQ(max_degree(Multigraph{6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}}}), 5u);
}

TEST(EdgeColor, SingleEdge) {
  const auto c = edge_color(Multigraph{2, {{0, 1}}});
  EXPECT_EQ(c.num_colors, 1u);
  EXPECT_EQ(c.color_of_edge, (std::vector<std::size_t>{1}));
}

TEST(EdgeColor, PathOfTwo) {
  const auto c = edge_color(Multigraph{3, {{0, 1}, {1, 2}}});
  EXPECT_EQ(c.num_colors, 2u);
  EXPECT_EQ(std::set<std::size_t>(c.color_of_edge.begin(), c.color_of_edge.end()),
            (std::set<std::size_t>{1, 2}));
}

TEST(EdgeColor, ParallelPairPlusSpur) {
  const Multigraph g{3, {{0, 1}, {0, 1}, {0, 2}}};
  const auto c = edge_color(g);
  EXPECT_EQ(c.num_colors, 3u);
  EXPECT_EQ(colours_used(c), 3u);
  EXPECT_TRUE(proper_by_enumeration(g, c));
}

TEST(EdgeColor, RejectsNonBipartite) {
  EXPECT_THROW(edge_color(Multigraph{3, {{0, 1}, {1, 2}, {2, 0}}}), std::invalid_argument);
  EXPECT_THROW(edge_color(Multigraph{2, {{1, 1}}}), std::invalid_argument);
  EXPECT_THROW(edge_color(Multigraph{2, {{0, 2}}}), std::invalid_argument);
}

TEST(EdgeColor, EmptyGraph) {
  const auto c = edge_color(Multigraph{5, {}});
  EXPECT_EQ(c.num_colors, 0u);
  EXPECT_TRUE(color_classes(c, Multigraph{5, {}}).empty());
}

TEST(EdgeColor, RequiresPathFlips) {
  // Forces alpha != beta insertions: a long even cycle closed last.
  Multigraph g{8, {{0, 4}, {1, 4}, {1, 5}, {2, 5}, {2, 6}, {3, 6}, {3, 7}, {0, 7}, {0, 5}, {2, 4}}};
  const auto c = edge_color(g);
  EXPECT_EQ(c.num_colors, max_degree(g));
  EXPECT_TRUE(proper_by_enumeration(g, c));
}

TEST(EdgeColor, KonigOnRandomMultigraphs) {
  std::mt19937_64 gen(1234);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto g = random_bipartite(gen);
    const auto c = edge_color(g);
    const std::size_t delta = max_degree(g);
    ASSERT_EQ(c.num_colors, delta);
    EXPECT_EQ(colours_used(c), delta);
    for (auto col : c.color_of_edge) {
      EXPECT_GE(col, 1u);
      EXPECT_LE(col, delta);
    }
    const auto classes = color_classes(c, g);  // throws if improper
    ASSERT_EQ(classes.size(), delta);
    for (const auto& cls : classes) {
      std::set<std::size_t> touched;
      for (auto e : cls) {
        EXPECT_TRUE(touched.insert(g.edges[e].first).second);
        EXPECT_TRUE(touched.insert(g.edges[e].second).second);
      }
    }
    if (trial < 100) EXPECT_TRUE(proper_by_enumeration(g, c));
  }
}

TEST(EdgeColor, Deterministic) {
  std::mt19937_64 gen(77);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = random_bipartite(gen);
    EXPECT_EQ(edge_color(g).color_of_edge, edge_color(g).color_of_edge);
  }
}

TEST(ColorClasses, PerfectMatchingIsOneClass) {
  const Multigraph g{6, {{0, 3}, {1, 4}, {2, 5}}};
  const auto classes = color_classes(edge_color(g), g);
  ASSERT_EQ(classes.size(), 1u);
  EXPECT_EQ(classes[0], (std::vector<std::size_t>{0, 1, 2}));
}

TEST(ColorClasses, ReassembleToEdgeMultiset) {
  std::mt19937_64 gen(5);
  const auto g = random_bipartite(gen);
  std::vector<std::size_t> all;
  for (const auto& cls : color_classes(edge_color(g), g)) all.insert(all.end(), cls.begin(), cls.end());
  std::sort(all.begin(), all.end());
  std::vector<std::size_t> expected(g.edges.size());
  std::iota(expected.begin(), expected.end(), std::size_t{0});
  EXPECT_EQ(all, expected);
}

TEST(ColorClasses, RejectsImproperColouring) {
  const Multigraph g{3, {{0, 1}, {0, 2}}};
  EXPECT_THROW(color_classes(EdgeColoring{{1, 1}, 2}, g), std::invalid_argument);
  EXPECT_THROW(color_classes(EdgeColoring{{1, 3}, 2}, g), std::invalid_argument);
  EXPECT_THROW(color_classes(EdgeColoring{{1}, 2}, g), std::invalid_argument);
}

}  // namespace
}  // namespace permsim
