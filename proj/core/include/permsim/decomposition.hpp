#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "permsim/permutation.hpp"

namespace permsim {

/// One aligned piece of a decomposition: an increasing list of 1-indexed
/// positions for each of the k permutations, all of the same length.
struct Part {
  std::vector<std::vector<std::size_t>> index_lists;

  std::size_t length() const noexcept {
    return index_lists.empty() ? 0 : index_lists.front().size();
  }
  friend bool operator==(const Part&, const Part&) = default;
};

/// A set of parts that jointly partition {1..n} for each of k permutations.
/// Part order carries no meaning.
struct Decomposition {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<Part> parts;

  std::size_t part_count() const noexcept { return parts.size(); }
  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

struct Verdict {
  bool valid = true;
  std::string violation;  // empty when valid

  explicit operator bool() const noexcept { return valid; }

  static Verdict ok() { return {}; }
  static Verdict fail(std::string why) { return {false, std::move(why)}; }
};

/// Checks both decomposition invariants against `perms`: every part is
/// well-formed and order-isomorphic across permutations, and the index lists
/// of each permutation partition {1..n}. Reports the first violation found.
///
/// Throws std::invalid_argument when `perms.size() != d.k` or a permutation
/// length differs from `d.n`.
Verdict verify_decomposition(std::span<const Permutation> perms, const Decomposition& d);

/// Every position its own part; valid for any k permutations of length n.
Decomposition singleton_decomposition(std::size_t n, std::size_t k);

}  // namespace permsim
