#pragma once

#include <cmath>
#include <complex>

namespace polygen {

using Complex = std::complex<double>;

[[nodiscard]] inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Square root on the branch with positive real part; on the imaginary axis
/// (zero real part) the branch with positive imaginary part.
[[nodiscard]] inline Complex principal_sqrt(Complex z) {
  Complex w = std::sqrt(z);
  if (w.real() < 0.0 || (w.real() == 0.0 && w.imag() < 0.0)) w = -w;
  return w;
}

/// z^ell for integer ell >= 0.
[[nodiscard]] inline Complex integer_pow(Complex z, long ell) {
  if (ell == 0) return Complex(1.0, 0.0);
  if (z == Complex(0.0, 0.0)) return z;
  return std::pow(z, static_cast<double>(ell));
}

/// exp(2 pi i numerator / denominator), the unit rotation by a rational angle.
[[nodiscard]] inline Complex unit_rotation(long numerator, long denominator) {
  constexpr double two_pi = 6.283185307179586476925286766559;
  return std::polar(1.0, two_pi * static_cast<double>(numerator) /
                             static_cast<double>(denominator));
}

/// 1 + a + ... + a^(ell-1); the removable singularity at a = 1 yields ell.
[[nodiscard]] inline Complex geometric_sum(Complex a, long ell) {
  if (std::abs(a - Complex(1.0, 0.0)) < 1e-12)
    return Complex(static_cast<double>(ell), 0.0);
  return (integer_pow(a, ell) - Complex(1.0, 0.0)) / (a - Complex(1.0, 0.0));
}

}  // namespace polygen
