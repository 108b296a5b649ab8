#pragma once

#include <string>
#include <vector>

#include "polygen/engine.hpp"
#include "polygen/polynomial.hpp"
#include "polygen/seeds.hpp"

namespace polygen {

/// A fully validated run description parsed from a JSON config document.
struct RunConfig {
  SeedSpec seed;
  int depth = 0;
  std::vector<OrderingRule> lifts;
  OrderingRule display_ordering{OrderingKind::lexicographic, 1, 0};
  std::vector<RootSet> initial;
  long steps = 100;
  int max_period = 20;
  SolveMode mode = SolveMode::closed_form;
  double tol_exact = 1e-9;
  double tol_asymptotic = 1e-3;
  double collision_tol = 1e-8;
  /// Verification negative-control knob: relative perturbation injected into
  /// the closed-form coefficients before comparison. Zero in normal runs.
  double perturb = 0.0;
};

/// Grid description for a parameter sweep over affine multipliers.
struct SweepConfig {
  std::vector<std::vector<Complex>> axes;  // axes[m] lists a_m candidates
  std::vector<Complex> b;                  // shared offset vector
  RootSet initial;                         // one initial state, arity N
  long steps = 600;
  int max_period = 40;
  double tol_exact = 1e-9;
};

/// Parses a scalar entry in config syntax: a plain number, an [re, im]
/// pair, or {"rotation": [num, den], "modulus": m}. Throws config_error.
[[nodiscard]] Complex parse_complex_text(const std::string& text);

/// Parses and validates a schema-1 config document given as JSON text.
/// Throws config_error on structural or semantic violations.
[[nodiscard]] RunConfig parse_config(const std::string& text);

/// Reads and parses the JSON config file at path. Throws config_error when
/// the file is missing or unreadable.
[[nodiscard]] RunConfig load_config(const std::string& path);

/// Parses the "sweep" block of a schema-1 config document given as text.
[[nodiscard]] SweepConfig parse_sweep_config(const std::string& text);

/// Reads and parses a config file that must contain a "sweep" block.
[[nodiscard]] SweepConfig load_sweep_config(const std::string& path);

}  // namespace polygen
