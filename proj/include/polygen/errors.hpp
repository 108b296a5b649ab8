#pragma once

#include <stdexcept>
#include <string>

namespace polygen {

/// User-supplied configuration rejected before any computation ran.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Base for failures inside numerical routines.
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Iteration budget exhausted without meeting the convergence criteria.
struct no_convergence_error : numerical_error {
  using numerical_error::numerical_error;
};

/// A computation produced a non-finite value.
struct nonfinite_error : numerical_error {
  using numerical_error::numerical_error;
};

/// A recursion requires dividing by a value that is (numerically) zero.
struct division_error : numerical_error {
  using numerical_error::numerical_error;
};

}  // namespace polygen
