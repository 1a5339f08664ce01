#include "permsim/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace permsim {

namespace {

template <class T>
Pattern rank_sequence(std::span<const T> seq) {
  if (seq.empty()) throw std::invalid_argument("pattern_of: empty sequence");
  std::vector<std::size_t> order(seq.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return seq[a] < seq[b]; });
  std::vector<int> ranks(seq.size());
  for (std::size_t r = 0; r < order.size(); ++r) {
    if (r > 0 && !(seq[order[r - 1]] < seq[order[r]]))
      throw std::invalid_argument("pattern_of: not distinct");
    ranks[order[r]] = static_cast<int>(r + 1);
  }
  return Pattern(std::move(ranks));
}

template <class T>
bool same_pattern(std::span<const T> a, std::span<const T> b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  return rank_sequence(a) == rank_sequence(b);
}

}  // namespace

Permutation::Permutation(std::vector<int> values) : values_(std::move(values)) {
  const std::size_t n = values_.size();
  if (n == 0) throw std::invalid_argument("permutation must have length >= 1");
  std::vector<bool> seen(n + 1, false);
  for (int v : values_) {
    if (v < 1 || static_cast<std::size_t>(v) > n)
      throw std::invalid_argument("permutation value " + std::to_string(v) + " outside 1.." +
                                  std::to_string(n));
    if (seen[static_cast<std::size_t>(v)])
      throw std::invalid_argument("permutation value " + std::to_string(v) + " repeated");
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  return Permutation(std::move(v));
}

Permutation Permutation::reverse(std::size_t n) {
  std::vector<int> v(n);
  std::iota(v.rbegin(), v.rend(), 1);
  return Permutation(std::move(v));
}

int Permutation::at(std::size_t position) const {
  if (position < 1 || position > values_.size())
    throw std::out_of_range("permutation position out of range");
  return values_[position - 1];
}

std::vector<int> Permutation::values_at(std::span<const std::size_t> positions) const {
  std::vector<int> out;
  out.reserve(positions.size());
  for (std::size_t p : positions) out.push_back(at(p));
  return out;
}

std::string Permutation::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < values_.size(); ++i) os << (i ? " " : "") << values_[i];
  return os.str();
}

Pattern pattern_of(std::span<const double> seq) { return rank_sequence(seq); }
Pattern pattern_of(std::span<const int> seq) { return rank_sequence(seq); }

bool is_order_isomorphic(std::span<const double> a, std::span<const double> b) {
  return same_pattern(a, b);
}
bool is_order_isomorphic(std::span<const int> a, std::span<const int> b) {
  return same_pattern(a, b);
}

std::size_t longest_increasing_length(std::span<const int> values) {
  std::vector<int> tails;
  for (int v : values) {
    auto it = std::lower_bound(tails.begin(), tails.end(), v);
    if (it == tails.end())
      tails.push_back(v);
    else
      *it = v;
  }
  return tails.size();
}

}  // namespace permsim
