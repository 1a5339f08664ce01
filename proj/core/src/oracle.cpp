#include "permsim/oracle.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

namespace permsim {

namespace {

using Mask = std::uint32_t;

void enforce_cap(std::size_t n, const OracleBudget& budget, const char* who) {
  if (n > budget.max_n)
    throw OracleRefusal(std::string(who) + ": n = " + std::to_string(n) + " exceeds cap " +
                        std::to_string(budget.max_n));
}

class Deadline {
 public:
  Deadline(double seconds, const char* who)
      : end_(std::chrono::steady_clock::now() +
             std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                 std::chrono::duration<double>(seconds))),
        who_(who) {}
  void check() const {
    if (std::chrono::steady_clock::now() > end_)
      throw OracleRefusal(std::string(who_) + ": time cap exceeded");
  }

 private:
  std::chrono::steady_clock::time_point end_;
  const char* who_;
};

// Pattern of the values at the positions in `mask`, packed 4 bits per entry
// behind a length nibble. Valid for n <= 15.
std::uint64_t pattern_key(std::span<const int> values, Mask mask) {
  int picked[16];
  int len = 0;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (mask >> i & 1u) picked[len++] = values[i];
  std::uint64_t key = static_cast<std::uint64_t>(len);
  for (int i = 0; i < len; ++i) {
    int rank = 0;
    for (int j = 0; j < len; ++j) rank += picked[j] < picked[i];
    key = key << 4 | static_cast<std::uint64_t>(rank);
  }
  return key;
}

struct SubsetIndex {
  std::vector<std::uint64_t> key_of_mask;
  std::unordered_map<std::uint64_t, std::vector<Mask>> masks_of_key;
};

SubsetIndex index_subsets(const Permutation& p) {
  const Mask full = (Mask{1} << p.size()) - 1;
  SubsetIndex idx;
  idx.key_of_mask.resize(full + 1);
  for (Mask m = 1; m <= full; ++m) {
    idx.key_of_mask[m] = pattern_key(p.values(), m);
    idx.masks_of_key[idx.key_of_mask[m]].push_back(m);
  }
  return idx;
}

// Can the positions of one permutation be split into subsets realising the
// given block patterns (one subset per block)?
bool realisable(const SubsetIndex& idx, const std::vector<std::uint64_t>& keys, std::size_t block,
                Mask unused) {
  if (block == keys.size()) return unused == 0;
  auto it = idx.masks_of_key.find(keys[block]);
  if (it == idx.masks_of_key.end()) return false;
  for (Mask m : it->second)
    if ((m & unused) == m && realisable(idx, keys, block + 1, unused & ~m)) return true;
  return false;
}

struct USearch {
  std::size_t n;
  std::size_t target;
  const SubsetIndex& first;
  const std::vector<SubsetIndex>& others;
  const Deadline& deadline;
  std::vector<Mask> blocks;

  bool complete() const {
    std::vector<std::uint64_t> keys(blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b) keys[b] = first.key_of_mask[blocks[b]];
    // large blocks first: fewer candidate subsets
    std::vector<std::size_t> order(blocks.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](auto a, auto b) {
      return std::popcount(blocks[a]) > std::popcount(blocks[b]);
    });
    std::vector<std::uint64_t> sorted;
    for (auto o : order) sorted.push_back(keys[o]);
    const Mask full = (Mask{1} << n) - 1;
    for (const auto& other : others)
      if (!realisable(other, sorted, 0, full)) return false;
    return true;
  }

  // Restricted growth assignment of position i; new blocks open in order.
  bool assign(std::size_t i) {
    if (i == n) return blocks.size() == target && complete();
    deadline.check();
    if (blocks.size() + (n - i) < target) return false;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      blocks[b] |= Mask{1} << i;
      if (assign(i + 1)) return true;
      blocks[b] &= ~(Mask{1} << i);
    }
    if (blocks.size() < target) {
      blocks.push_back(Mask{1} << i);
      if (assign(i + 1)) return true;
      blocks.pop_back();
    }
    return false;
  }
};

}  // namespace

std::size_t exact_U(std::span<const Permutation> perms, const OracleBudget& budget) {
  if (perms.empty()) throw std::invalid_argument("exact_U: need at least one permutation");
  const std::size_t n = perms.front().size();
  for (const auto& p : perms)
    if (p.size() != n) throw std::invalid_argument("exact_U: permutations differ in length");
  enforce_cap(n, budget, "exact_U");
  if (n > 15) throw OracleRefusal("exact_U: n above 15 is not supported");
  const Deadline deadline(budget.time_cap_seconds, "exact_U");

  const SubsetIndex first = index_subsets(perms.front());
  std::vector<SubsetIndex> others;
  for (std::size_t j = 1; j < perms.size(); ++j) others.push_back(index_subsets(perms[j]));

  for (std::size_t target = 1; target <= n; ++target) {
    USearch search{n, target, first, others, deadline, {}};
    if (search.assign(0)) return target;
  }
  return n;  // singletons always work; unreachable
}

std::size_t longest_common_pattern(const Permutation& a, const Permutation& b,
                                   const OracleBudget& budget) {
  if (a.size() != b.size())
    throw std::invalid_argument("longest_common_pattern: permutations differ in length");
  const std::size_t n = a.size();
  enforce_cap(n, budget, "longest_common_pattern");
  if (n > 15) throw OracleRefusal("longest_common_pattern: n above 15 is not supported");
  const Mask full = (Mask{1} << n) - 1;
  for (std::size_t len = n; len >= 1; --len) {
    std::unordered_map<std::uint64_t, bool> seen;
    for (Mask m = 1; m <= full; ++m)
      if (static_cast<std::size_t>(std::popcount(m)) == len) seen[pattern_key(a.values(), m)] = true;
    for (Mask m = 1; m <= full; ++m)
      if (static_cast<std::size_t>(std::popcount(m)) == len && seen.contains(pattern_key(b.values(), m)))
        return len;
  }
  return 1;
}

double brute_bottleneck(const PointCloud& red, const PointCloud& blue, Metric metric,
                        const OracleBudget& budget) {
  if (red.size() != blue.size())
    throw std::invalid_argument("brute_bottleneck: clouds differ in size");
  if (red.empty()) throw std::invalid_argument("brute_bottleneck: n = 0");
  enforce_cap(red.size(), budget, "brute_bottleneck");
  std::vector<std::size_t> order(red.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  double best = std::numeric_limits<double>::infinity();
  do {
    double worst = 0.0;
    for (std::size_t r = 0; r < red.size(); ++r)
      worst = std::max(worst, distance(red[r], blue[order[r]], metric));
    best = std::min(best, worst);
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

std::size_t brute_lis(const Permutation& p, const OracleBudget& budget) {
  const std::size_t n = p.size();
  enforce_cap(n, budget, "brute_lis");
  if (n > 20) throw OracleRefusal("brute_lis: n above 20 is not supported");
  std::size_t best = 0;
  for (Mask m = 1; m < (Mask{1} << n); ++m) {
    int last = 0;
    bool increasing = true;
    for (std::size_t i = 0; i < n && increasing; ++i)
      if (m >> i & 1u) {
        increasing = p.values()[i] > last;
        last = p.values()[i];
      }
    if (increasing) best = std::max(best, static_cast<std::size_t>(std::popcount(m)));
  }
  return best;
}

double poisson_tail_bound(double lambda, double x) {
  if (!(lambda > 0.0) || !(x > lambda) || !std::isfinite(x))
    throw std::invalid_argument("poisson_tail_bound: requires x > lambda > 0");
  return std::exp(x * (1.0 + std::log(lambda)) - lambda - x * std::log(x));
}

}  // namespace permsim
