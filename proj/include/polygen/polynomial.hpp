#pragma once

#include <cstddef>
#include <vector>

#include "polygen/complex.hpp"

namespace polygen {

/// Coefficients y_1..y_N of the monic polynomial z^N + sum_m y_m z^(N-m).
using CoeffVector = std::vector<Complex>;

/// An N-vector whose entry order carries meaning.
using OrderedVector = std::vector<Complex>;

/// Unordered multiset of the N zeros of a monic polynomial. The storage order
/// carries no meaning: compare via set_distance, never element-wise.
struct RootSet {
  std::vector<Complex> values;

  RootSet() = default;
  explicit RootSet(std::vector<Complex> v) : values(std::move(v)) {}

  [[nodiscard]] std::size_t size() const { return values.size(); }
};

struct MonicPolynomial {
  CoeffVector coeffs;  // degree equals coeffs.size(); leading 1 is implicit

  [[nodiscard]] int degree() const { return static_cast<int>(coeffs.size()); }
};

/// Horner value of z^N + sum_m y_m z^(N-m).
[[nodiscard]] Complex evaluate(const MonicPolynomial& poly, Complex z);

/// Value and derivative in one Horner pass.
[[nodiscard]] std::pair<Complex, Complex> evaluate_with_derivative(
    const MonicPolynomial& poly, Complex z);

/// Vieta map y_m = (-1)^m e_m(roots) via the product-expansion recurrence.
/// Requires cardinality >= 2; throws nonfinite_error if a coefficient
/// overflows.
[[nodiscard]] CoeffVector coefficients_from_zeros(const RootSet& roots);

/// Smallest pairwise distance within the set; +inf for fewer than 2 elements.
[[nodiscard]] double min_separation(const RootSet& roots);

/// True when two elements sit closer than tol * (1 + max |value|).
[[nodiscard]] bool is_non_generic(const RootSet& roots, double tol = 1e-8);

}  // namespace polygen
