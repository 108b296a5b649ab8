#include "polygen/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "polygen/errors.hpp"

namespace polygen {

namespace {

double max_abs(const CoeffVector& coeffs) {
  double m = 0.0;
  for (const Complex& c : coeffs) m = std::max(m, std::abs(c));
  return m;
}

std::vector<Complex> initial_guesses(const CoeffVector& coeffs,
                                     const OrderedVector* hint) {
  const std::size_t n = coeffs.size();
  if (hint != nullptr && hint->size() == n) {
    bool usable = true;
    for (const Complex& z : *hint)
      if (!is_finite(z)) usable = false;
    if (usable) {
      std::vector<Complex> z(*hint);
      // Exactly coincident hints would zero an Aberth denominator; nudge.
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j)
          if (z[i] == z[j])
            z[i] += Complex(1e-9, 1e-9) * (1.0 + std::abs(z[i])) *
                    static_cast<double>(i + 1);
      return z;
    }
  }
  // Scaled roots of unity with an angular offset so no guess starts on a
  // symmetry axis of the coefficient set.
  const double radius = 1.0 + max_abs(coeffs);
  std::vector<Complex> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double angle =
        2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) +
        0.4;
    z[k] = std::polar(radius, angle);
  }
  return z;
}

}  // namespace

RootFindResult find_zeros(const CoeffVector& coeffs, const OrderedVector* hint,
                          const RootFindOptions& options) {
  const std::size_t n = coeffs.size();
  if (n < 1) throw std::invalid_argument("find_zeros: need N >= 1");
  for (const Complex& c : coeffs)
    if (!is_finite(c)) throw nonfinite_error("find_zeros: non-finite coefficient");

  RootFindResult result;
  if (n == 1) {  // z + y_1
    result.roots = RootSet({-coeffs[0]});
    return result;
  }

  const MonicPolynomial poly{coeffs};
  const double scale = std::max(1.0, max_abs(coeffs));
  const double residual_stop = options.residual_tol * scale;

  std::vector<Complex> z = initial_guesses(coeffs, hint);
  int sweep = 0;
  for (; sweep < options.max_iterations; ++sweep) {
    bool all_converged = true;
    for (std::size_t k = 0; k < n; ++k) {
      const auto [p, dp] = evaluate_with_derivative(poly, z[k]);
      if (std::abs(p) <= residual_stop) continue;
      Complex newton;
      if (p == Complex(0.0, 0.0) || dp == Complex(0.0, 0.0)) {
        // Stationary point that is not a root: displace deterministically.
        newton = Complex(1e-3, 1e-3) * (1.0 + std::abs(z[k]));
      } else {
        newton = p / dp;
      }
      Complex repulsion(0.0, 0.0);
      for (std::size_t j = 0; j < n; ++j) {
        if (j == k) continue;
        Complex diff = z[k] - z[j];
        if (diff == Complex(0.0, 0.0))
          diff = Complex(1e-12, 1e-12) * (1.0 + std::abs(z[k]));
        repulsion += Complex(1.0, 0.0) / diff;
      }
      const Complex denom = Complex(1.0, 0.0) - newton * repulsion;
      const Complex step = denom == Complex(0.0, 0.0) ? newton : newton / denom;
      z[k] -= step;
      if (!is_finite(z[k])) throw nonfinite_error("find_zeros: iterate overflow");
      if (std::abs(step) > options.correction_tol * (1.0 + std::abs(z[k])))
        all_converged = false;
    }
    if (all_converged) break;
  }
  if (sweep >= options.max_iterations)
    throw no_convergence_error("find_zeros: max iterations exceeded");

  // Two polish sweeps drive corrections to the attainable floor.
  for (int extra = 0; extra < 2; ++extra) {
    for (std::size_t k = 0; k < n; ++k) {
      const auto [p, dp] = evaluate_with_derivative(poly, z[k]);
      if (std::abs(p) <= residual_stop || dp == Complex(0.0, 0.0)) continue;
      const Complex newton = p / dp;
      Complex repulsion(0.0, 0.0);
      for (std::size_t j = 0; j < n; ++j) {
        if (j == k) continue;
        const Complex diff = z[k] - z[j];
        if (diff == Complex(0.0, 0.0)) continue;
        repulsion += Complex(1.0, 0.0) / diff;
      }
      const Complex denom = Complex(1.0, 0.0) - newton * repulsion;
      if (denom == Complex(0.0, 0.0)) continue;
      const Complex candidate = z[k] - newton / denom;
      if (is_finite(candidate)) z[k] = candidate;
    }
  }

  result.iterations = sweep;

  // Residuals and Newton inclusion radii for the collision check: a multiple
  // root accepted by the residual stop leaves iterates separated by more than
  // the bare collision window, but their inclusion disks overlap.
  double max_mag = 0.0;
  std::vector<double> radius(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    max_mag = std::max(max_mag, std::abs(z[k]));
    const auto [p, dp] = evaluate_with_derivative(poly, z[k]);
    result.max_scaled_residual =
        std::max(result.max_scaled_residual, std::abs(p) / scale);
    const double dpm = std::abs(dp);
    radius[k] = dpm > 0.0 ? 3.0 * static_cast<double>(n) * std::abs(p) / dpm
                          : std::numeric_limits<double>::infinity();
  }
  const double collision_window = options.collision_tol * (1.0 + max_mag);
  for (std::size_t i = 0; i < n && !result.non_generic; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(z[i] - z[j]) < collision_window + radius[i] + radius[j]) {
        result.non_generic = true;
        break;
      }

  result.roots = RootSet(std::move(z));
  return result;
}

RootSet zeros_from_coefficients(const CoeffVector& coeffs,
                                const OrderedVector* hint) {
  return find_zeros(coeffs, hint).roots;
}

}  // namespace polygen
