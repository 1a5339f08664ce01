#include <gtest/gtest.h>

#include <random>

#include "permsim/decomposition.hpp"
#include "permsim/pipeline.hpp"
#include "support/generators.hpp"

namespace permsim {
namespace {

using Lists = std::vector<std::vector<std::size_t>>;

struct WorkedExample : ::testing::Test {
  std::vector<Permutation> perms{Permutation({1, 4, 3, 5, 2}), Permutation({2, 5, 3, 1, 4})};
  // sigma: 1,3,2 and 4,5; pi: 2,5,3 and 1,4
  Decomposition d{5, 2, {Part{Lists{{1, 3, 5}, {1, 2, 3}}}, Part{Lists{{2, 4}, {4, 5}}}}};
};

TEST_F(WorkedExample, TwoPartDecompositionIsValid) {
  const auto v = verify_decomposition(perms, d);
  EXPECT_TRUE(v.valid) << v.violation;
}

TEST_F(WorkedExample, SameIndicesOnBothSidesAreRejected) {
  // sigma at {1,3,5} is 1,3,2 but pi at {1,3,5} is 2,3,4
  const Decomposition same{5, 2, {Part{Lists{{1, 3, 5}, {1, 3, 5}}}, Part{Lists{{2, 4}, {2, 4}}}}};
  const auto v = verify_decomposition(perms, same);
  EXPECT_FALSE(v.valid);
  EXPECT_NE(v.violation.find("order-isomorphic"), std::string::npos) << v.violation;
}

TEST_F(WorkedExample, PartOrderDoesNotMatter) {
  std::swap(d.parts[0], d.parts[1]);
  EXPECT_TRUE(verify_decomposition(perms, d).valid);
}

TEST_F(WorkedExample, CrossPairedPartsAreRejected) {
  std::swap(d.parts[0].index_lists[1], d.parts[1].index_lists[1]);
  const auto v = verify_decomposition(perms, d);
  EXPECT_FALSE(v.valid);
  EXPECT_NE(v.violation.find("length mismatch"), std::string::npos) << v.violation;
}

TEST_F(WorkedExample, MissingIndexIsRejected) {
  d.parts[0].index_lists[0] = {1, 3};
  d.parts[0].index_lists[1] = {1, 2};
  const auto v = verify_decomposition(perms, d);
  EXPECT_FALSE(v.valid);
  EXPECT_NE(v.violation.find("not a partition"), std::string::npos) << v.violation;
  EXPECT_NE(v.violation.find("5"), std::string::npos) << v.violation;
}

TEST_F(WorkedExample, NonIsomorphicPartIsRejected) {
  d.parts[0].index_lists[1] = {1, 2, 5};
  d.parts[1].index_lists[1] = {3, 4};
  const auto v = verify_decomposition(perms, d);
  EXPECT_FALSE(v.valid);
  EXPECT_NE(v.violation.find("order-isomorphic"), std::string::npos) << v.violation;
}

TEST_F(WorkedExample, MalformedPartsAreRejected) {
  auto bad = d;
  bad.parts[0].index_lists[0] = {3, 1, 5};
  EXPECT_FALSE(verify_decomposition(perms, bad).valid);
  bad = d;
  bad.parts[0].index_lists[0] = {1, 3, 6};
  EXPECT_FALSE(verify_decomposition(perms, bad).valid);
  bad = d;
  bad.parts[0].index_lists.pop_back();
  EXPECT_FALSE(verify_decomposition(perms, bad).valid);
  bad = d;
  bad.parts.push_back(Part{Lists{{}, {}}});
  EXPECT_FALSE(verify_decomposition(perms, bad).valid);
}

TEST_F(WorkedExample, DimensionMismatchThrows) {
  auto wrong_k = d;
  wrong_k.k = 3;
  EXPECT_THROW(verify_decomposition(perms, wrong_k), std::invalid_argument);
  auto wrong_n = d;
  wrong_n.n = 6;
  EXPECT_THROW(verify_decomposition(perms, wrong_n), std::invalid_argument);
}

TEST(Verify, AcceptsSingletonsForAnyPermutations) {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + gen() % 30, k = 2 + gen() % 3;
    std::vector<Permutation> perms;
    for (std::size_t j = 0; j < k; ++j) perms.push_back(testing::random_perm(gen, n));
    EXPECT_TRUE(verify_decomposition(perms, singleton_decomposition(n, k)).valid);
  }
}

TEST(Verify, RejectsSharedIndexMutations) {
  std::mt19937_64 gen(8);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 4 + gen() % 40;
    const std::vector<Permutation> perms{testing::random_perm(gen, n), testing::random_perm(gen, n)};
    auto d = baseline_decompose(perms).decomposition;
    ASSERT_TRUE(verify_decomposition(perms, d).valid);
    if (d.parts.size() < 2) continue;
    // Copy one index of another part into a different part.
    const std::size_t from = gen() % d.parts.size();
    std::size_t to = gen() % d.parts.size();
    if (to == from) to = (to + 1) % d.parts.size();
    const std::size_t j = gen() % 2;
    auto& dst = d.parts[to].index_lists[j];
    dst.back() = d.parts[from].index_lists[j].front();
    std::sort(dst.begin(), dst.end());
    EXPECT_FALSE(verify_decomposition(perms, d).valid);
  }
}

}  // namespace
}  // namespace permsim
