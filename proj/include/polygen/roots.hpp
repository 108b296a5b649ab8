#pragma once

#include "polygen/polynomial.hpp"

namespace polygen {

struct RootFindOptions {
  int max_iterations = 500;
  double correction_tol = 1e-13;  // relative per-root correction stop
  double residual_tol = 1e-14;    // scaled residual stop (multiple roots
                                  // stagnate the correction criterion)
  double collision_tol = 1e-8;    // non-generic flag scale factor
};

struct RootFindResult {
  RootSet roots;
  int iterations = 0;
  bool non_generic = false;        // two roots within the collision window
  double max_scaled_residual = 0;  // max |p(x)| / max(1, ||coeffs||_inf)
};

/// All zeros of z^N + sum_m coeffs[m-1] z^(N-m) by simultaneous Aberth
/// iteration. `hint` seeds the iterates (previous step's roots); without one,
/// scaled roots of unity of radius 1 + max |coeff| are used. Throws
/// no_convergence_error when the iteration budget runs out and
/// nonfinite_error on non-finite coefficients.
[[nodiscard]] RootFindResult find_zeros(const CoeffVector& coeffs,
                                        const OrderedVector* hint = nullptr,
                                        const RootFindOptions& options = {});

/// Convenience wrapper returning only the zero set.
[[nodiscard]] RootSet zeros_from_coefficients(const CoeffVector& coeffs,
                                              const OrderedVector* hint = nullptr);

}  // namespace polygen
