#include "permsim/decomposition.hpp"

#include <stdexcept>

namespace permsim {

Verdict verify_decomposition(std::span<const Permutation> perms, const Decomposition& d) {
  if (perms.size() != d.k)
    throw std::invalid_argument("verify_decomposition: expected " + std::to_string(d.k) +
                                " permutations, got " + std::to_string(perms.size()));
  for (const auto& p : perms)
    if (p.size() != d.n)
      throw std::invalid_argument("verify_decomposition: permutation length " +
                                  std::to_string(p.size()) + " != n = " + std::to_string(d.n));

  // seen[j][pos] counts how often position pos of permutation j is used.
  std::vector<std::vector<unsigned char>> seen(d.k, std::vector<unsigned char>(d.n + 1, 0));

  for (std::size_t part = 0; part < d.parts.size(); ++part) {
    const Part& pt = d.parts[part];
    const std::string where = "part " + std::to_string(part + 1);
    if (pt.index_lists.size() != d.k)
      return Verdict::fail(where + ": has " + std::to_string(pt.index_lists.size()) +
                           " index lists, expected " + std::to_string(d.k));
    const std::size_t len = pt.index_lists.front().size();
    if (len == 0) return Verdict::fail(where + ": empty");

    std::vector<int> reference;
    for (std::size_t j = 0; j < d.k; ++j) {
      const auto& idx = pt.index_lists[j];
      if (idx.size() != len)
        return Verdict::fail(where + ": length mismatch (" + std::to_string(len) + " vs " +
                             std::to_string(idx.size()) + " in permutation " +
                             std::to_string(j + 1) + ")");
      for (std::size_t t = 0; t < idx.size(); ++t) {
        if (idx[t] < 1 || idx[t] > d.n)
          return Verdict::fail(where + ": index " + std::to_string(idx[t]) +
                               " out of range in permutation " + std::to_string(j + 1));
        if (t > 0 && idx[t] <= idx[t - 1])
          return Verdict::fail(where + ": indices not strictly increasing in permutation " +
                               std::to_string(j + 1));
        if (seen[j][idx[t]]++)
          return Verdict::fail("not a partition: index " + std::to_string(idx[t]) +
                               " of permutation " + std::to_string(j + 1) + " used twice");
      }
      auto values = perms[j].values_at(idx);
      if (j == 0) {
        reference = std::move(values);
      } else if (!is_order_isomorphic(std::span<const int>(reference),
                                      std::span<const int>(values))) {
        return Verdict::fail(where + ": permutation " + std::to_string(j + 1) +
                             " not order-isomorphic to permutation 1");
      }
    }
  }

  for (std::size_t j = 0; j < d.k; ++j)
    for (std::size_t pos = 1; pos <= d.n; ++pos)
      if (!seen[j][pos])
        return Verdict::fail("not a partition: index " + std::to_string(pos) +
                             " of permutation " + std::to_string(j + 1) + " missing");
  return Verdict::ok();
}

Decomposition singleton_decomposition(std::size_t n, std::size_t k) {
  Decomposition d{n, k, {}};
  d.parts.reserve(n);
  for (std::size_t pos = 1; pos <= n; ++pos)
    d.parts.push_back(Part{std::vector<std::vector<std::size_t>>(k, {pos})});
  return d;
}

}  // namespace permsim
