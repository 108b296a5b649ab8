#pragma once

#include <optional>
#include <string>

#include "polygen/analysis.hpp"

namespace polygen {

/// Hyphenated display name of a detection verdict.
[[nodiscard]] std::string verdict_name(Verdict verdict);

/// Hyphenated display name of a taxonomy label.
[[nodiscard]] std::string taxonomy_name(TaxonomyLabel label);

/// One verification check: the worst residual seen against its tolerance.
struct CheckResult {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Outcome of the verification suite on one configured run.
struct VerifyReport {
  std::string subject;  // preset name or config path
  std::vector<CheckResult> checks;
  bool pass = false;
};

/// Inputs echoed into every simulation report.
struct ToleranceEcho {
  double exact = 1e-9;
  double asymptotic = 1e-3;
  double collision = 1e-8;
};

/// Everything the simulate command reports on one trajectory.
struct SimulateReport {
  std::string subject;
  int depth = 0;
  int arity = 0;
  long steps = 0;
  std::string mode;
  ToleranceEcho tolerances;
  PeriodReport set_period;
  std::optional<PeriodReport> ordered_period;  // non-lexicographic display rules
  std::optional<TaxonomyReport> taxonomy;      // affine seeds
  std::optional<PeriodicityConditionReport> condition;  // second-order seeds
  long non_generic_steps = 0;
  long ambiguous_steps = 0;
  bool divergence_truncated = false;
};

/// Serializes a simulate report as pretty-printed JSON text (schema 1,
/// complex numbers as [re, im] pairs, trailing newline).
[[nodiscard]] std::string simulate_report_json(const SimulateReport& report);

/// Serializes a verification report as pretty-printed JSON text.
[[nodiscard]] std::string verify_report_json(const VerifyReport& report);

/// Serializes a period report alone, for the detect-period command.
[[nodiscard]] std::string period_report_json(const PeriodReport& report,
                                             double tol_exact,
                                             double tol_asymptotic);

}  // namespace polygen
