#pragma once

#include <cstdint>
#include <random>

namespace permsim {

/// SplitMix64 finalizer; used to derive independent sub-stream seeds.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Derives a child seed from a parent seed and an ordered list of tags.
/// derive_seed(s, {a, b}) differs from derive_seed(s, {b, a}).
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) noexcept;

/// Reproducible generator for one (seed, stream-id) pair.
///
/// Backed by mt19937_64. Uniform reals and bounded integers are computed
/// here rather than through <random> distributions so their output is the
/// same on every standard library.
class Rng {
 public:
  using result_type = std::uint64_t;

  Rng(std::uint64_t seed, std::uint64_t stream);

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on {0, ..., bound - 1}; bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  /// Poisson(mean) draw.
  std::int64_t poisson(double mean);

 private:
  std::mt19937_64 engine_;
};

}  // namespace permsim
