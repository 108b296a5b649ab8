#pragma once

#include <cstdint>
#include <vector>

#include "polygen/polynomial.hpp"

namespace polygen {

/// Selects one of the N! sequential orderings; mu = 1 is the identity.
struct PermutationIndex {
  std::uint64_t mu = 1;  // 1 <= mu <= n!
  int n = 0;
};

/// Increasing real part, ties broken by increasing imaginary part; bitwise
/// duplicates keep a stable deterministic order.
[[nodiscard]] OrderedVector lexicographic_order(const RootSet& roots);

/// n! for n <= 20.
[[nodiscard]] std::uint64_t factorial(int n);

/// The idx.mu-th permutation of {0..n-1} in lexicographic enumeration order
/// (identity, then swap of the last two, ...). Throws std::invalid_argument
/// when mu is out of [1, n!].
[[nodiscard]] std::vector<int> permutation_by_index(const PermutationIndex& idx);

/// lexicographic_order followed by permutation_by_index: entry i of the
/// result is the sigma(i)-th element of the lexicographic ordering.
[[nodiscard]] OrderedVector order_by_mu(const RootSet& roots,
                                        const PermutationIndex& idx);

}  // namespace polygen
