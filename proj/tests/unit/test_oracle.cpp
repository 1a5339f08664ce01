#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "permsim/matching.hpp"
#include "permsim/oracle.hpp"
#include "permsim/pipeline.hpp"
#include "support/generators.hpp"

namespace permsim {
namespace {

TEST(ExactU, WorkedExample) {
  const std::vector<Permutation> perms{Permutation({1, 4, 3, 5, 2}), Permutation({2, 5, 3, 1, 4})};
  EXPECT_EQ(exact_U(perms), 2u);
}

TEST(ExactU, EqualPermutationsNeedOnePart) {
  std::mt19937_64 gen(1);
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = testing::random_perm(gen, 1 + gen() % 7);
    const std::vector<Permutation> perms{p, p};
    EXPECT_EQ(exact_U(perms), 1u);
  }
}

TEST(ExactU, IdentityVersusReverse) {
  for (std::size_t n = 1; n <= 6; ++n) {
    const std::vector<Permutation> perms{Permutation::identity(n), Permutation::reverse(n)};
    EXPECT_EQ(exact_U(perms), n);
  }
}

TEST(ExactU, RefusesAboveCap) {
  const std::vector<Permutation> perms{Permutation::identity(8), Permutation::identity(8)};
  EXPECT_THROW(exact_U(perms), OracleRefusal);
  EXPECT_EQ(exact_U(perms, OracleBudget{8, 60.0}), 1u);
}

TEST(ExactU, AtLeastNOverCommonPattern) {
  std::mt19937_64 gen(2);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + gen() % 5;
    const auto a = testing::random_perm(gen, n), b = testing::random_perm(gen, n);
    const std::vector<Permutation> perms{a, b};
    const std::size_t lcp = longest_common_pattern(a, b);
    EXPECT_GE(exact_U(perms), (n + lcp - 1) / lcp);
  }
}

TEST(ExactU, BelowPipelineAndBaseline) {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + gen() % 6, k = 2 + gen() % 2;
    std::vector<Permutation> perms;
    for (std::size_t j = 0; j < k; ++j) perms.push_back(testing::random_perm(gen, n));
    const std::size_t u = exact_U(perms);
    PipelineConfig cfg;
    cfg.k = k;
    cfg.seed = gen();
    EXPECT_LE(u, decompose(perms, cfg).decomposition.part_count());
    EXPECT_LE(u, baseline_decompose(perms).decomposition.part_count());
  }
}

TEST(CommonPattern, Examples) {
  EXPECT_EQ(longest_common_pattern(Permutation({1, 4, 3, 5, 2}), Permutation({2, 5, 3, 1, 4})), 3u);
  EXPECT_EQ(longest_common_pattern(Permutation::identity(6), Permutation::reverse(6)), 1u);
  EXPECT_EQ(longest_common_pattern(Permutation::identity(6), Permutation::identity(6)), 6u);
  EXPECT_EQ(longest_common_pattern(Permutation({2, 1, 3}), Permutation({1, 3, 2})), 2u);
  EXPECT_THROW(longest_common_pattern(Permutation::identity(11), Permutation::identity(11)),
               OracleRefusal);
}

TEST(CommonPattern, Symmetric) {
  std::mt19937_64 gen(4);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + gen() % 8;
    const auto a = testing::random_perm(gen, n), b = testing::random_perm(gen, n);
    EXPECT_EQ(longest_common_pattern(a, b), longest_common_pattern(b, a));
  }
}

TEST(BruteBottleneck, HandExample) {
  const PointCloud red({{0.1, 0.2}, {0.5, 0.6}});
  const PointCloud blue({{0.2, 0.25}, {0.55, 0.65}});
  EXPECT_NEAR(brute_bottleneck(red, blue), std::hypot(0.1, 0.05), 1e-12);
  EXPECT_NEAR(brute_bottleneck(red, blue, Metric::chebyshev), 0.1, 1e-12);
  EXPECT_EQ(brute_bottleneck(red, red), 0.0);
}

TEST(BruteBottleneck, RefusalAndSizes) {
  std::mt19937_64 gen(5);
  EXPECT_THROW(brute_bottleneck(testing::random_cloud(gen, 8), testing::random_cloud(gen, 8)),
               OracleRefusal);
  EXPECT_THROW(brute_bottleneck(testing::random_cloud(gen, 3), testing::random_cloud(gen, 4)),
               std::invalid_argument);
}

TEST(BruteLis, Examples) {
  EXPECT_EQ(brute_lis(Permutation({1, 4, 3, 5, 2})), 3u);
  EXPECT_EQ(brute_lis(Permutation::identity(9)), 9u);
  EXPECT_EQ(brute_lis(Permutation::reverse(9)), 1u);
  EXPECT_THROW(brute_lis(Permutation::identity(13)), OracleRefusal);
  std::mt19937_64 gen(6);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = testing::random_perm(gen, 1 + gen() % 12);
    EXPECT_EQ(brute_lis(p), longest_increasing_length(p.values()));
  }
}

TEST(PoissonTail, FrozenValues) {
  EXPECT_NEAR(poisson_tail_bound(4.0, 16.0), 3.7894302843838e-05, 1e-15);
  EXPECT_NEAR(poisson_tail_bound(1.0, 1.5), 0.89745018695298, 1e-12);
}

TEST(PoissonTail, RejectsBadArguments) {
  EXPECT_THROW(poisson_tail_bound(4.0, 4.0), std::invalid_argument);
  EXPECT_THROW(poisson_tail_bound(4.0, 3.0), std::invalid_argument);
  EXPECT_THROW(poisson_tail_bound(0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(poisson_tail_bound(-1.0, 1.0), std::invalid_argument);
}

TEST(PoissonTail, BoundsMonteCarloTail) {
  std::mt19937_64 gen(7);
  for (auto [lambda, x] : {std::pair{4.0, 10.0}, std::pair{10.0, 16.0}, std::pair{1.0, 3.0}}) {
    std::poisson_distribution<int> draw(lambda);
    const int trials = 200000;
    int hits = 0;
    for (int i = 0; i < trials; ++i) hits += draw(gen) >= x;
    const double freq = static_cast<double>(hits) / trials;
    const double se = std::sqrt(freq * (1 - freq) / trials);
    EXPECT_LE(freq - 5 * se, poisson_tail_bound(lambda, x)) << lambda << " " << x;
  }
}

}  // namespace
}  // namespace permsim
