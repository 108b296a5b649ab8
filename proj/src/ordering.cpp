#include "polygen/ordering.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace polygen {

OrderedVector lexicographic_order(const RootSet& roots) {
  const std::size_t n = roots.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const Complex& u = roots.values[a];
    const Complex& v = roots.values[b];
    if (u.real() != v.real()) return u.real() < v.real();
    if (u.imag() != v.imag()) return u.imag() < v.imag();
    return a < b;  // deterministic tie-break for bitwise-equal values
  });
  OrderedVector out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = roots.values[idx[i]];
  return out;
}

std::uint64_t factorial(int n) {
  if (n < 0 || n > 20) throw std::invalid_argument("factorial: n out of [0, 20]");
  std::uint64_t f = 1;
  for (int k = 2; k <= n; ++k) f *= static_cast<std::uint64_t>(k);
  return f;
}

std::vector<int> permutation_by_index(const PermutationIndex& idx) {
  const int n = idx.n;
  if (n < 1) throw std::invalid_argument("permutation_by_index: n must be >= 1");
  const std::uint64_t total = factorial(n);
  if (idx.mu < 1 || idx.mu > total)
    throw std::invalid_argument("permutation_by_index: mu out of [1, n!]");
  // Factoradic decomposition of mu - 1 walks the lexicographic enumeration.
  std::uint64_t rank = idx.mu - 1;
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<int> sigma(n);
  for (int i = 0; i < n; ++i) {
    const std::uint64_t block = factorial(n - 1 - i);
    const std::size_t pick = static_cast<std::size_t>(rank / block);
    rank %= block;
    sigma[i] = pool[pick];
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return sigma;
}

OrderedVector order_by_mu(const RootSet& roots, const PermutationIndex& idx) {
  if (static_cast<std::size_t>(idx.n) != roots.size())
    throw std::invalid_argument("order_by_mu: index arity mismatch");
  const OrderedVector lex = lexicographic_order(roots);
  const std::vector<int> sigma = permutation_by_index(idx);
  OrderedVector out(lex.size());
  for (std::size_t i = 0; i < lex.size(); ++i)
    out[i] = lex[static_cast<std::size_t>(sigma[i])];
  return out;
}

}  // namespace polygen
