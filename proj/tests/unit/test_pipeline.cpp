#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "permsim/coloring.hpp"
#include "permsim/gridgraph.hpp"
#include "permsim/oracle.hpp"
#include "permsim/pipeline.hpp"
#include "support/generators.hpp"

namespace permsim {
namespace {

PipelineConfig config(std::uint64_t seed, std::size_t k = 2) {
  PipelineConfig cfg;
  cfg.k = k;
  cfg.seed = seed;
  return cfg;
}

void expect_valid(const DecomposeResult& r) {
  const auto v = verify_decomposition(r.perms, r.decomposition);
  EXPECT_TRUE(v.valid) << v.violation;
  EXPECT_EQ(r.record.part_count, r.decomposition.part_count());
}

TEST(Decompose, SingleElement) {
  const std::vector<Permutation> perms{Permutation({1}), Permutation({1})};
  const auto r = decompose(perms, config(0));
  ASSERT_EQ(r.decomposition.part_count(), 1u);
  EXPECT_EQ(r.decomposition.parts[0].length(), 1u);
  EXPECT_GE(r.record.label_count, 1u);
}

TEST(Decompose, IdentityVersusReverseNeedsNParts) {
  for (std::size_t n : {2u, 3u, 5u, 8u, 40u}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const std::vector<Permutation> perms{Permutation::identity(n), Permutation::reverse(n)};
      const auto r = decompose(perms, config(seed));
      expect_valid(r);
      EXPECT_EQ(r.decomposition.part_count(), n);
    }
  }
}

TEST(Decompose, AdversarialInputsStayValid) {
  std::vector<std::vector<Permutation>> cases;
  const std::size_t n = 60;
  cases.push_back({Permutation::identity(n), Permutation::identity(n)});
  cases.push_back({Permutation::reverse(n), Permutation::identity(n)});
  // block permutations: increasing blocks in decreasing order, and the reverse
  std::vector<int> blocks, flipped;
  for (int b = 5; b >= 0; --b)
    for (int i = 1; i <= 10; ++i) blocks.push_back(b * 10 + i);
  for (int b = 0; b < 6; ++b)
    for (int i = 10; i >= 1; --i) flipped.push_back(b * 10 + i);
  cases.push_back({Permutation(blocks), Permutation(flipped)});
  cases.push_back({Permutation(blocks), Permutation::identity(n), Permutation::reverse(n)});
  for (const auto& perms : cases) {
    auto cfg = config(3, perms.size());
    expect_valid(decompose(perms, cfg));
    cfg.M_override = 1;
    expect_valid(decompose(perms, cfg));
    cfg.M_override = 500;
    expect_valid(decompose(perms, cfg));
  }
}

TEST(Decompose, ExhaustiveSmallPairs) {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto all = testing::all_perms(n);
    for (const auto& a : all)
      for (const auto& b : all) {
        const std::vector<Permutation> perms{a, b};
        expect_valid(decompose(perms, config(n)));
      }
  }
}

TEST(Decompose, RandomLargerInputsStayValid) {
  std::mt19937_64 gen(44);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 5 + gen() % 500, k = 2 + gen() % 3;
    std::vector<Permutation> perms;
    for (std::size_t j = 0; j < k; ++j) perms.push_back(testing::random_perm(gen, n));
    auto cfg = config(gen(), k);
    cfg.metric = trial % 2 ? Metric::chebyshev : Metric::euclidean;
    cfg.matching_mode = trial % 3 ? MatchingMode::exact : MatchingMode::threshold_doubling;
    expect_valid(decompose(perms, cfg));
  }
}

TEST(Decompose, DeterministicGivenSeed) {
  EXPECT_EQ(decompose_fresh(700, config(5)).decomposition, decompose_fresh(700, config(5)).decomposition);
  std::mt19937_64 gen(1);
  const std::vector<Permutation> perms{testing::random_perm(gen, 300), testing::random_perm(gen, 300)};
  EXPECT_EQ(decompose(perms, config(9)).decomposition, decompose(perms, config(9)).decomposition);
}

TEST(Decompose, PartCountIsSumOfLabelDegrees) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    for (std::size_t k : {2u, 3u}) {
      const std::size_t n = 400;
      const auto cfg = config(seed, k);
      const auto r = decompose_fresh(n, cfg);
      expect_valid(r);
      // Rebuild the labelled graph through the public stages.
      std::vector<PointCloud> clouds;
      for (std::size_t j = 0; j < k; ++j)
        clouds.push_back(sample_cloud(n, SamplerConfig{SamplerMode::uniform, 2.0, seed}, j));
      std::vector<BottleneckMatching> ms;
      for (std::size_t j = 1; j < k; ++j) ms.push_back(bottleneck_matching(clouds[0], clouds[j]));
      const auto g = build_multigraph(clouds, ms, GridConfig{grid_size(n, k), k, n});
      std::size_t total = 0, worst = 0;
      for (const auto& [label, sub] : group_by_label(g)) {
        const auto d = max_degree(to_multigraph(sub));
        total += d;
        worst = std::max(worst, d);
      }
      EXPECT_EQ(r.record.part_count, total);
      EXPECT_EQ(r.record.max_label_degree, worst);
      EXPECT_EQ(r.record.label_count, group_by_label(g).size());
      EXPECT_LE(r.record.part_count, r.record.label_count * r.record.max_label_degree);
    }
  }
}

TEST(Decompose, FreshPoissonAndKThree) {
  auto cfg = config(12, 3);
  cfg.sampler.mode = SamplerMode::poisson;
  const auto r = decompose_fresh(1000, cfg);
  expect_valid(r);
  EXPECT_EQ(r.record.bottlenecks.size(), 2u);
  EXPECT_EQ(r.record.M, grid_size(1000, 3));
}

TEST(Decompose, RejectsBadInput) {
  const std::vector<Permutation> mixed{Permutation::identity(3), Permutation::identity(4)};
  EXPECT_THROW(decompose(mixed, config(0)), std::invalid_argument);
  const std::vector<Permutation> two{Permutation::identity(3), Permutation::identity(3)};
  EXPECT_THROW(decompose(two, config(0, 3)), std::invalid_argument);
  auto cfg = config(0);
  cfg.M_override = 0;
  EXPECT_THROW(decompose(two, cfg), std::invalid_argument);
  EXPECT_THROW(decompose_fresh(1, config(0)), std::invalid_argument);
  cfg = config(0, 1);
  EXPECT_THROW(decompose_fresh(10, cfg), std::invalid_argument);
}

TEST(PatiencePiles, WorkedExample) {
  // values 1,4,3,5,2 -> piles [1], [4,3,2], [5]; stored as positions
  const auto piles = patience_piles(Permutation({1, 4, 3, 5, 2}));
  EXPECT_EQ(piles, (std::vector<std::vector<std::size_t>>{{1}, {2, 3, 5}, {4}}));
}

TEST(PatiencePiles, CountEqualsBruteForceLis) {
  for (std::size_t n = 1; n <= 6; ++n)
    for (const auto& p : testing::all_perms(n)) EXPECT_EQ(patience_piles(p).size(), brute_lis(p));
  std::mt19937_64 gen(6);
  for (int trial = 0; trial < 300; ++trial) {
    const auto p = testing::random_perm(gen, 7 + gen() % 2);
    EXPECT_EQ(patience_piles(p).size(), brute_lis(p));
  }
}

TEST(PatiencePiles, PilesAreMonotone) {
  std::mt19937_64 gen(7);
  for (auto order : {PileOrder::decreasing, PileOrder::increasing}) {
    const auto p = testing::random_perm(gen, 200);
    for (const auto& pile : patience_piles(p, order))
      for (std::size_t i = 1; i < pile.size(); ++i) {
        EXPECT_LT(pile[i - 1], pile[i]);
        if (order == PileOrder::decreasing)
          EXPECT_GT(p.at(pile[i - 1]), p.at(pile[i]));
        else
          EXPECT_LT(p.at(pile[i - 1]), p.at(pile[i]));
      }
  }
}

TEST(Baseline, IdentityPairGivesSingletons) {
  const std::vector<Permutation> perms{Permutation::identity(9), Permutation::identity(9)};
  const auto r = baseline_decompose(perms);
  expect_valid(r);
  EXPECT_EQ(r.decomposition.part_count(), 9u);
}

TEST(Baseline, EqualPermutationsGiveLisParts) {
  std::mt19937_64 gen(8);
  for (int trial = 0; trial < 30; ++trial) {
    const auto p = testing::random_perm(gen, 1 + gen() % 200);
    const std::vector<Permutation> perms{p, p, p};
    const auto r = baseline_decompose(perms);
    expect_valid(r);
    EXPECT_EQ(r.decomposition.part_count(), longest_increasing_length(p.values()));
  }
}

TEST(Baseline, BoundedByKTimesMaxPiles) {
  std::mt19937_64 gen(9);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + gen() % 300, k = 2 + gen() % 3;
    std::vector<Permutation> perms;
    std::size_t max_piles = 0;
    for (std::size_t j = 0; j < k; ++j) {
      perms.push_back(testing::random_perm(gen, n));
      max_piles = std::max(max_piles, patience_piles(perms.back()).size());
    }
    for (auto order : {PileOrder::decreasing, PileOrder::increasing}) {
      const auto r = baseline_decompose(perms, order);
      expect_valid(r);
      EXPECT_LE(r.decomposition.part_count(), k * max_piles);
    }
  }
}

TEST(PipelineStats, Exponents) {
  auto [a2, b2] = envelope_exponents(2);
  EXPECT_DOUBLE_EQ(a2, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(b2, 11.0 / 6.0);
  auto [a3, b3] = envelope_exponents(3);
  EXPECT_DOUBLE_EQ(a3, 2.0 / 5.0);
  EXPECT_DOUBLE_EQ(b3, 3.0 + 1.0 / 5.0);
}

TEST(PipelineStats, RatioFromRecord) {
  RunRecord rec;
  rec.n = 4096;
  rec.k = 2;
  rec.part_count = 300;
  const auto s = pipeline_stats(rec);
  const double expected = 300.0 / (std::cbrt(4096.0) * std::pow(std::log(4096.0), 11.0 / 6.0));
  EXPECT_NEAR(s.normalized_ratio, expected, 1e-12 * expected);
  EXPECT_EQ(pipeline_stats(rec).normalized_ratio, s.normalized_ratio);
  rec.n = 1;
  EXPECT_THROW(pipeline_stats(rec), std::invalid_argument);
}

TEST(RandomPermutations, ReproducibleAndIndependent) {
  const auto a = random_permutations(50, 3, 7), b = random_permutations(50, 3, 7);
  EXPECT_EQ(a, b);
  EXPECT_NE(a[0], a[1]);
  EXPECT_NE(random_permutations(50, 1, 8)[0], a[0]);
  EXPECT_EQ(random_permutations(1, 2, 0)[0], Permutation({1}));
}

}  // namespace
}  // namespace permsim
