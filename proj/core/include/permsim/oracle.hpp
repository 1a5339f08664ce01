#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>

#include "permsim/geometry.hpp"
#include "permsim/permutation.hpp"

namespace permsim {

/// Thrown when an input exceeds an oracle's size cap.
class OracleRefusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleBudget {
  std::size_t max_n = 7;
  double time_cap_seconds = 60.0;

  static OracleBudget exact_u() { return {7, 60.0}; }
  static OracleBudget common_pattern() { return {10, 60.0}; }
  static OracleBudget bottleneck() { return {7, 60.0}; }
  static OracleBudget lis() { return {12, 60.0}; }
};

/// Smallest l such that the permutations are l-similar, by exhaustive search.
std::size_t exact_U(std::span<const Permutation> perms,
                    const OracleBudget& budget = OracleBudget::exact_u());

/// Longest l such that a and b have order-isomorphic subsequences of length l.
std::size_t longest_common_pattern(const Permutation& a, const Permutation& b,
                                   const OracleBudget& budget = OracleBudget::common_pattern());

/// min over all n! perfect matchings of the longest matched distance.
double brute_bottleneck(const PointCloud& red, const PointCloud& blue,
                        Metric metric = Metric::euclidean,
                        const OracleBudget& budget = OracleBudget::bottleneck());

/// Longest increasing subsequence by enumerating all 2^n subsets.
std::size_t brute_lis(const Permutation& p, const OracleBudget& budget = OracleBudget::lis());

/// (e lambda)^x e^{-lambda} / x^x, evaluated in log space. Requires
/// x > lambda > 0; throws std::invalid_argument otherwise.
double poisson_tail_bound(double lambda, double x);

}  // namespace permsim
