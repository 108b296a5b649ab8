#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "polygen/complex.hpp"
#include "polygen/engine.hpp"
#include "polygen/polynomial.hpp"
#include "polygen/seeds.hpp"

namespace polygen {

/// Outcome of empirical period detection on a trajectory.
enum class Verdict {
  exact_periodic,
  asymptotically_periodic,
  convergent,
  divergent,
  inconclusive,
};

/// Result of a period scan. `period` is present iff the verdict is
/// exact_periodic or asymptotically_periodic, and is minimal: no proper
/// divisor passes the same criterion (guaranteed by the ascending scan).
struct PeriodReport {
  Verdict verdict = Verdict::inconclusive;
  std::optional<int> period;
  std::optional<long> onset;
  std::vector<double> residual_curve;
};

/// Tuning knobs for period detection beyond the exact-match tolerance.
struct DetectOptions {
  /// Residual threshold (relative to state scale) for the asymptotic claim.
  double tol_asymptotic = 1e-3;
  /// Any state magnitude above this declares divergence.
  double divergence_threshold = 1e12;
  /// Residuals below noise_floor_scale * scale are clamped before the
  /// trend test so rounding noise cannot flip successive ratios.
  double noise_floor_scale = 1e-14;
  /// Median of the residual ratios one period apart (same phase within the
  /// cycle) must not exceed 1 + trend_slack.
  double trend_slack = 1e-6;
  /// Total state drift (relative to scale) allowed between the asymptotic
  /// onset and the final step for a convergent verdict.
  double convergence_drift_bound = 0.1;
};

/// Bottleneck distance between two equal-cardinality root sets: the minimum
/// over bijections of the largest matched-pair distance. Symmetric and zero
/// iff the multisets coincide. Throws std::invalid_argument on size mismatch.
[[nodiscard]] double set_distance(const RootSet& a, const RootSet& b);

/// Best rational approximation r/s of x with s <= max_denominator and
/// |x - r/s| <= tol, found by continued fractions. Returns the reduced pair
/// or nothing when no convergent qualifies.
[[nodiscard]] std::optional<std::pair<long, long>> rational_approximation(
    double x, long max_denominator, double tol);

/// Classification of a single multiplier a_m.
enum class MultiplierKind {
  contracting,
  expanding,
  rational_rotation,
  irrational_unit,
};

/// One classified multiplier. For rational rotations a = exp(2*pi*i*r/s)
/// the reduced fraction r/s is stored; rotation_order is s (1 when a = 1).
struct MultiplierClass {
  MultiplierKind kind = MultiplierKind::irrational_unit;
  long rotation_order = 0;
  long rotation_numerator = 0;
};

/// Classifies one multiplier by modulus and, on the unit circle, by whether
/// its phase is a rational multiple of 2*pi (continued fractions, denominator
/// bound max_denominator).
[[nodiscard]] MultiplierClass classify_multiplier(Complex a,
                                                  double unit_tol = 1e-9,
                                                  long max_denominator = 1000000);

/// Least common multiple of the rotation orders over the unit-modulus
/// entries. Returns nothing when any entry is expanding or an irrational
/// rotation, or when every entry is contracting (convergent case).
[[nodiscard]] std::optional<long> predicted_period(
    const std::vector<MultiplierClass>& entries);

/// Long-time behavior classes for an affine seed.
enum class TaxonomyLabel {
  isochronous,
  asymptotically_isochronous,
  convergent,
  divergent,
  inconclusive,
};

/// Parameter-based prediction for an affine seed: the label, the predicted
/// period when one exists, the per-component multiplier classes, and the
/// componentwise limits b_m / (1 - a_m) when convergent.
struct TaxonomyReport {
  TaxonomyLabel label = TaxonomyLabel::inconclusive;
  std::optional<long> period;
  std::vector<MultiplierClass> multipliers;
  std::vector<Complex> limits;
};

/// Predicts long-time behavior from affine parameters alone: isochronous
/// when every multiplier is a rational rotation (period = lcm of orders),
/// asymptotically isochronous for a mix of rotations and contractions,
/// convergent when all contract, divergent when any expands. Irrational
/// unit-modulus multipliers, and a_m = 1 with b_m != 0 (secular growth),
/// are inconclusive.
[[nodiscard]] TaxonomyReport classify_parameters(const AffineParams& params,
                                                 double unit_tol = 1e-9,
                                                 long max_denominator = 1000000);

/// Scans lags L = 1..max_period on the state sequence (unordered, bottleneck
/// distance). Divergence is checked first; exact periodicity (all steps
/// within tol * scale) before asymptotic (residual below the asymptotic
/// tolerance from some onset with non-increasing trend). A lag-1 asymptotic
/// match with small total drift is reported convergent. Requires at least
/// 3 * max_period states; throws std::invalid_argument otherwise.
[[nodiscard]] PeriodReport detect_period(const Trajectory& traj, int max_period,
                                         double tol = 1e-9,
                                         const DetectOptions& options = {});

/// Same scan on the ordered component vectors (componentwise max distance),
/// which can reveal a longer period than the set-based scan when an ordering
/// rule permutes the components around the cycle. Requires the trajectory to
/// carry ordered states.
[[nodiscard]] PeriodReport detect_period_ordered(const Trajectory& traj,
                                                 int max_period,
                                                 double tol = 1e-9,
                                                 const DetectOptions& options = {});

/// Periodicity-condition report for an autonomous second-order seed whose
/// substitution multipliers rotate with common period P. beta_m is the
/// product of the substitution variable over one period, rho_m = |beta_m|,
/// and phase_fractions hold the rational phase r_m/s_m of each unit-modulus
/// beta_m when one exists.
struct PeriodicityConditionReport {
  std::vector<Complex> beta;
  std::vector<double> rho;
  std::vector<std::optional<std::pair<long, long>>> phase_fractions;
  bool satisfied = false;
  std::optional<long> predicted_period;
};

/// Evaluates the periodicity condition for an autonomous second-order seed
/// from the two initial states: u_m(0) is the coefficient ratio
/// y_m(1) / y_m(0), u_m(k) follows the closed affine recursion, and
/// beta_m multiplies u_m(k) over k = 0..P-1. Satisfied iff every rho_m is
/// at most 1 + tol, at least one is within tol of 1, and every unit-modulus
/// beta_m has a rational phase; the predicted period is then
/// lcm{ s_m * P : rho_m = 1 }. Throws division_error when some coefficient
/// y_m(0) vanishes and std::invalid_argument for non-autonomous parameters.
[[nodiscard]] PeriodicityConditionReport example4_condition_check(
    const RootSet& x0, const RootSet& x1, const SecondOrderParams& params,
    long P, double tol = 1e-9);

}  // namespace polygen
