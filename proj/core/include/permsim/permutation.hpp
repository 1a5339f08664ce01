#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace permsim {

/// A permutation of {1, ..., n} stored as its value sequence sigma(1..n).
///
/// Positions are 1-indexed in every public accessor; the underlying storage
/// is a plain vector so `values()[i - 1]` is sigma(i).
class Permutation {
 public:
  /// Validates that `values` is exactly {1, ..., n} for n = values.size() >= 1.
  /// Throws std::invalid_argument otherwise.
  explicit Permutation(std::vector<int> values);

  static Permutation identity(std::size_t n);
  static Permutation reverse(std::size_t n);

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const int> values() const noexcept { return values_; }

  /// sigma(position), position in 1..n.
  int at(std::size_t position) const;

  /// Values at the given 1-indexed positions, in the order listed.
  std::vector<int> values_at(std::span<const std::size_t> positions) const;

  std::string to_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> values_;
};

/// The rank sequence of a list of distinct numbers; always a permutation of
/// its own length.
using Pattern = Permutation;

/// Replaces the i-th smallest element by i. Throws std::invalid_argument with
/// "not distinct" on duplicates and on empty input.
Pattern pattern_of(std::span<const double> seq);
Pattern pattern_of(std::span<const int> seq);

/// True iff both sequences have the same length and the same pattern.
/// Each sequence must be duplicate-free.
bool is_order_isomorphic(std::span<const double> a, std::span<const double> b);
bool is_order_isomorphic(std::span<const int> a, std::span<const int> b);

/// Length of the longest strictly increasing subsequence, O(n log n).
std::size_t longest_increasing_length(std::span<const int> values);

}  // namespace permsim
