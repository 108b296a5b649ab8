#include "polygen/polynomial.hpp"

#include <limits>
#include <stdexcept>

#include "polygen/errors.hpp"

namespace polygen {

Complex evaluate(const MonicPolynomial& poly, Complex z) {
  Complex acc(1.0, 0.0);
  for (const Complex& y : poly.coeffs) acc = acc * z + y;
  return acc;
}

std::pair<Complex, Complex> evaluate_with_derivative(const MonicPolynomial& poly,
                                                     Complex z) {
  Complex p(1.0, 0.0);
  Complex dp(0.0, 0.0);
  for (const Complex& y : poly.coeffs) {
    dp = dp * z + p;
    p = p * z + y;
  }
  return {p, dp};
}

CoeffVector coefficients_from_zeros(const RootSet& roots) {
  const std::size_t n = roots.size();
  if (n < 2) throw std::invalid_argument("coefficients_from_zeros: need N >= 2");
  // Expand prod_j (z - x_j) one factor at a time; e[m] accumulates
  // (-1)^m e_m, which is exactly y_m.
  CoeffVector y(n, Complex(0.0, 0.0));
  for (std::size_t k = 0; k < n; ++k) {
    const Complex x = roots.values[k];
    for (std::size_t m = k + 1; m-- > 1;) y[m] -= x * y[m - 1];
    y[0] -= x;
  }
  for (const Complex& c : y)
    if (!is_finite(c)) throw nonfinite_error("coefficients_from_zeros: overflow");
  return y;
}

double min_separation(const RootSet& roots) {
  const std::size_t n = roots.size();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      best = std::min(best, std::abs(roots.values[i] - roots.values[j]));
  return best;
}

bool is_non_generic(const RootSet& roots, double tol) {
  double max_mag = 0.0;
  for (const Complex& v : roots.values) max_mag = std::max(max_mag, std::abs(v));
  return min_separation(roots) < tol * (1.0 + max_mag);
}

}  // namespace polygen
