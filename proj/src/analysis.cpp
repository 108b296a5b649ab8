#include "polygen/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "polygen/assignment.hpp"
#include "polygen/errors.hpp"

namespace polygen {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double median_of(std::vector<double> values) {
  // values is nonempty; the caller guarantees it.
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  double upper = values[mid];
  if (values.size() % 2 == 0) {
    std::nth_element(values.begin(), values.begin() + mid - 1,
                     values.begin() + mid);
    return 0.5 * (values[mid - 1] + upper);
  }
  return upper;
}

long lcm_checked(long a, long b) {
  // Orders are bounded by the continued-fraction denominator caps, so the
  // product stays far from overflow for realistic component counts.
  return std::lcm(a, b);
}

/// Shared lag scan. dist(ell, L) is the mismatch between steps ell and
/// ell + L; length is the number of states; scale = max(1, max |x|).
PeriodReport scan_for_period(
    std::size_t length, double scale, bool truncated, double max_magnitude,
    const std::function<double(std::size_t, std::size_t)>& dist, int max_period,
    double tol, const DetectOptions& opt) {
  PeriodReport report;
  if (truncated || max_magnitude > opt.divergence_threshold) {
    report.verdict = Verdict::divergent;
    return report;
  }
  if (max_period < 1)
    throw std::invalid_argument("detect_period: max_period must be positive");
  if (length < 3 * static_cast<std::size_t>(max_period))
    throw std::invalid_argument(
        "detect_period: trajectory too short, need at least 3 * max_period states");

  const auto curve_at = [&](int L) {
    std::vector<double> curve(length - static_cast<std::size_t>(L));
    for (std::size_t ell = 0; ell < curve.size(); ++ell)
      curve[ell] = dist(ell, static_cast<std::size_t>(L));
    return curve;
  };

  // Exact scan, ascending L: the first hit is automatically minimal.
  for (int L = 1; L <= max_period; ++L) {
    std::vector<double> curve = curve_at(L);
    const double worst = *std::max_element(curve.begin(), curve.end());
    if (worst <= tol * scale) {
      report.verdict = Verdict::exact_periodic;
      report.period = L;
      report.residual_curve = std::move(curve);
      return report;
    }
  }

  // Asymptotic scan: residual below tolerance from some onset, with a
  // non-increasing trend and a tail long enough to witness it.
  for (int L = 1; L <= max_period; ++L) {
    std::vector<double> curve = curve_at(L);
    const double bar = opt.tol_asymptotic * scale;
    std::size_t onset = 0;
    for (std::size_t ell = curve.size(); ell-- > 0;) {
      if (curve[ell] > bar) {
        onset = ell + 1;
        break;
      }
    }
    const std::size_t tail = curve.size() - onset;
    const std::size_t need =
        std::max<std::size_t>(2 * static_cast<std::size_t>(L), 8);
    if (tail < need) continue;

    // Trend on same-phase samples: the lag-L curve is modulated within each
    // period block, so compare residuals one block apart.
    const double floor_value = opt.noise_floor_scale * scale;
    const std::size_t stride = static_cast<std::size_t>(L);
    std::vector<double> ratios;
    ratios.reserve(tail);
    for (std::size_t ell = onset; ell + stride < curve.size(); ++ell) {
      const double lo = std::max(curve[ell], floor_value);
      const double hi = std::max(curve[ell + stride], floor_value);
      ratios.push_back(hi / lo);
    }
    if (ratios.empty() || median_of(ratios) > 1.0 + opt.trend_slack) continue;

    if (L == 1) {
      // Successive states settle; distinguish true convergence from slow
      // secular drift by the total movement across the settled stretch.
      const double drift = dist(onset, (length - 1) - onset);
      if (drift <= opt.convergence_drift_bound * scale) {
        report.verdict = Verdict::convergent;
        report.onset = static_cast<long>(onset);
        report.residual_curve = std::move(curve);
        return report;
      }
      continue;
    }
    report.verdict = Verdict::asymptotically_periodic;
    report.period = L;
    report.onset = static_cast<long>(onset);
    report.residual_curve = std::move(curve);
    return report;
  }
  return report;
}

double max_trajectory_magnitude(const Trajectory& traj) {
  double m = 0.0;
  for (const RootSet& state : traj.states)
    for (const Complex& v : state.values) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

double set_distance(const RootSet& a, const RootSet& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("set_distance: cardinality mismatch");
  const std::size_t n = a.size();
  if (n == 0) return 0.0;
  std::vector<std::vector<double>> cost(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      cost[i][j] = std::abs(a.values[i] - b.values[j]);
  return bottleneck_assignment(cost).value;
}

std::optional<std::pair<long, long>> rational_approximation(double x,
                                                            long max_denominator,
                                                            double tol) {
  if (!std::isfinite(x) || max_denominator < 1) return std::nullopt;
  const bool negative = x < 0.0;
  const double y = std::abs(x);

  long p_prev = 1, q_prev = 0;
  long p = static_cast<long>(std::floor(y)), q = 1;
  double frac = y - std::floor(y);
  for (int iter = 0; iter < 64; ++iter) {
    if (std::abs(y - static_cast<double>(p) / static_cast<double>(q)) <= tol)
      return std::make_pair(negative ? -p : p, q);
    if (frac < 1e-15) return std::nullopt;
    const double inv = 1.0 / frac;
    const double term = std::floor(inv);
    if (term > 1e15) return std::nullopt;
    frac = inv - term;
    const long a = static_cast<long>(term);
    if (q > (max_denominator - q_prev) / a) return std::nullopt;
    const long p_next = a * p + p_prev;
    const long q_next = a * q + q_prev;
    p_prev = p;
    q_prev = q;
    p = p_next;
    q = q_next;
  }
  return std::nullopt;
}

MultiplierClass classify_multiplier(Complex a, double unit_tol,
                                    long max_denominator) {
  MultiplierClass out;
  const double modulus = std::abs(a);
  if (modulus < 1.0 - unit_tol) {
    out.kind = MultiplierKind::contracting;
    return out;
  }
  if (modulus > 1.0 + unit_tol) {
    out.kind = MultiplierKind::expanding;
    return out;
  }
  double phase = std::arg(a) / kTwoPi;
  phase -= std::floor(phase);
  if (phase >= 1.0) phase = 0.0;
  const auto fraction = rational_approximation(phase, max_denominator, unit_tol);
  if (!fraction) {
    out.kind = MultiplierKind::irrational_unit;
    return out;
  }
  out.kind = MultiplierKind::rational_rotation;
  out.rotation_order = fraction->second;
  out.rotation_numerator = fraction->first % fraction->second;
  return out;
}

std::optional<long> predicted_period(const std::vector<MultiplierClass>& entries) {
  long period = 1;
  bool any_rotation = false;
  for (const MultiplierClass& entry : entries) {
    switch (entry.kind) {
      case MultiplierKind::expanding:
      case MultiplierKind::irrational_unit:
        return std::nullopt;
      case MultiplierKind::rational_rotation:
        any_rotation = true;
        period = lcm_checked(period, entry.rotation_order);
        break;
      case MultiplierKind::contracting:
        break;
    }
  }
  if (!any_rotation) return std::nullopt;
  return period;
}

TaxonomyReport classify_parameters(const AffineParams& params, double unit_tol,
                                   long max_denominator) {
  if (params.a.size() != params.b.size())
    throw std::invalid_argument("classify_parameters: a and b length mismatch");
  if (params.a.empty())
    throw std::invalid_argument("classify_parameters: empty parameter vector");
  TaxonomyReport report;
  report.multipliers.reserve(params.a.size());
  for (const Complex& a : params.a)
    report.multipliers.push_back(classify_multiplier(a, unit_tol, max_denominator));

  bool any_expanding = false;
  bool any_irrational = false;
  bool any_secular = false;
  bool all_contracting = true;
  bool all_rotations = true;
  for (std::size_t m = 0; m < params.a.size(); ++m) {
    const MultiplierClass& cls = report.multipliers[m];
    any_expanding = any_expanding || cls.kind == MultiplierKind::expanding;
    any_irrational = any_irrational || cls.kind == MultiplierKind::irrational_unit;
    if (cls.kind != MultiplierKind::contracting) all_contracting = false;
    if (cls.kind != MultiplierKind::rational_rotation) all_rotations = false;
    // a_m = 1 with b_m != 0 grows linearly in ell: not covered by the taxonomy.
    if (std::abs(params.a[m] - Complex(1.0, 0.0)) <= unit_tol &&
        std::abs(params.b[m]) != 0.0)
      any_secular = true;
  }

  if (any_expanding) {
    report.label = TaxonomyLabel::divergent;
    return report;
  }
  if (any_secular || any_irrational) {
    report.label = TaxonomyLabel::inconclusive;
    return report;
  }
  if (all_contracting) {
    report.label = TaxonomyLabel::convergent;
    report.limits.reserve(params.a.size());
    for (std::size_t m = 0; m < params.a.size(); ++m)
      report.limits.push_back(params.b[m] / (Complex(1.0, 0.0) - params.a[m]));
    return report;
  }
  report.period = predicted_period(report.multipliers);
  report.label = all_rotations ? TaxonomyLabel::isochronous
                               : TaxonomyLabel::asymptotically_isochronous;
  return report;
}

PeriodReport detect_period(const Trajectory& traj, int max_period, double tol,
                           const DetectOptions& options) {
  const double magnitude = max_trajectory_magnitude(traj);
  const double scale = std::max(1.0, magnitude);
  const auto dist = [&traj](std::size_t ell, std::size_t lag) {
    return set_distance(traj.states[ell], traj.states[ell + lag]);
  };
  return scan_for_period(traj.states.size(), scale, traj.divergence_truncated,
                         magnitude, dist, max_period, tol, options);
}

PeriodReport detect_period_ordered(const Trajectory& traj, int max_period,
                                   double tol, const DetectOptions& options) {
  if (traj.ordered.size() != traj.states.size())
    throw std::invalid_argument(
        "detect_period_ordered: trajectory carries no ordered states");
  const double magnitude = max_trajectory_magnitude(traj);
  const double scale = std::max(1.0, magnitude);
  const auto dist = [&traj](std::size_t ell, std::size_t lag) {
    const OrderedVector& now = traj.ordered[ell];
    const OrderedVector& later = traj.ordered[ell + lag];
    double worst = 0.0;
    for (std::size_t n = 0; n < now.size(); ++n)
      worst = std::max(worst, std::abs(later[n] - now[n]));
    return worst;
  };
  return scan_for_period(traj.ordered.size(), scale, traj.divergence_truncated,
                         magnitude, dist, max_period, tol, options);
}

PeriodicityConditionReport example4_condition_check(const RootSet& x0,
                                                    const RootSet& x1,
                                                    const SecondOrderParams& params,
                                                    long P, double tol) {
  if (!params.autonomous)
    throw std::invalid_argument(
        "example4_condition_check: parameters must be autonomous");
  const std::size_t n = x0.size();
  if (x1.size() != n || params.a_const.size() != n || params.b_const.size() != n)
    throw std::invalid_argument("example4_condition_check: arity mismatch");
  if (P < 1)
    throw std::invalid_argument("example4_condition_check: P must be positive");

  const CoeffVector y0 = coefficients_from_zeros(x0);
  const CoeffVector y1 = coefficients_from_zeros(x1);

  PeriodicityConditionReport report;
  report.beta.resize(n);
  report.rho.resize(n);
  report.phase_fractions.resize(n);

  bool all_bounded = true;
  bool any_unit = false;
  bool unit_phases_rational = true;
  std::optional<long> period;

  for (std::size_t m = 0; m < n; ++m) {
    if (std::abs(y0[m]) < 1e-300)
      throw division_error(
          "example4_condition_check: coefficient y_m(0) vanishes");
    const Complex u0 = y1[m] / y0[m];
    const Complex a = params.a_const[m];
    const Complex b = params.b_const[m];
    Complex beta(1.0, 0.0);
    for (long k = 0; k < P; ++k)
      beta *= integer_pow(a, k) * u0 + geometric_sum(a, k) * b;
    report.beta[m] = beta;
    const double rho = std::abs(beta);
    report.rho[m] = rho;

    if (rho > 1.0 + tol) all_bounded = false;
    if (std::abs(rho - 1.0) <= tol) {
      any_unit = true;
      double phase = std::arg(beta) / kTwoPi;
      phase -= std::floor(phase);
      if (phase >= 1.0) phase = 0.0;
      const auto fraction = rational_approximation(phase, 1000, tol);
      if (fraction) {
        const long s = fraction->second;
        const long r = fraction->first % s;
        report.phase_fractions[m] = std::make_pair(r, s);
        const long contribution = s * P;
        period = period ? lcm_checked(*period, contribution) : contribution;
      } else {
        unit_phases_rational = false;
      }
    }
  }

  report.satisfied = all_bounded && any_unit && unit_phases_rational;
  if (report.satisfied) report.predicted_period = period;
  return report;
}

}  // namespace polygen
