#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "polygen/polynomial.hpp"

namespace polygen {

/// y_m(ell+1) = a_m y_m(ell) + b_m.
struct AffineParams {
  std::vector<Complex> a;
  std::vector<Complex> b;
};

/// y_m(ell+1) = g_m(ell) y_m(ell) + h_m(ell); callables total on ell >= 0.
struct NonautonomousParams {
  std::function<std::vector<Complex>(long)> g;
  std::function<std::vector<Complex>(long)> h;
};

/// y_m(ell+2) = a_m(ell) y_m(ell+1)^2 / y_m(ell) + b_m(ell) y_m(ell+1).
struct SecondOrderParams {
  std::function<std::vector<Complex>(long)> a;
  std::function<std::vector<Complex>(long)> b;
  bool autonomous = false;
  std::vector<Complex> a_const;  // populated when autonomous
  std::vector<Complex> b_const;
};

/// Affine recursion on the reparameterized time axis t_ell = q^ell.
struct QAffineParams {
  AffineParams base;
  Complex q;
};

enum class SeedKind {
  affine,
  nonautonomous_linear,
  second_order_multiplicative,
  q_affine,
};

/// A solvable coefficient recursion of order 1 or 2 with a closed-form
/// solution oracle. Immutable after construction.
struct SeedSpec {
  SeedKind kind = SeedKind::affine;
  int arity = 0;  // N
  std::variant<AffineParams, NonautonomousParams, SecondOrderParams, QAffineParams>
      params;

  [[nodiscard]] int order() const {
    return kind == SeedKind::second_order_multiplicative ? 2 : 1;
  }
  [[nodiscard]] const AffineParams& affine() const {
    return std::get<AffineParams>(params);
  }
  [[nodiscard]] const NonautonomousParams& nonautonomous() const {
    return std::get<NonautonomousParams>(params);
  }
  [[nodiscard]] const SecondOrderParams& second_order() const {
    return std::get<SecondOrderParams>(params);
  }
  [[nodiscard]] const QAffineParams& q_affine() const {
    return std::get<QAffineParams>(params);
  }
};

[[nodiscard]] SeedSpec make_affine_seed(std::vector<Complex> a,
                                        std::vector<Complex> b);
[[nodiscard]] SeedSpec make_nonautonomous_seed(
    int arity, std::function<std::vector<Complex>(long)> g,
    std::function<std::vector<Complex>(long)> h);
[[nodiscard]] SeedSpec make_second_order_seed(
    int arity, std::function<std::vector<Complex>(long)> a,
    std::function<std::vector<Complex>(long)> b);
[[nodiscard]] SeedSpec make_second_order_autonomous_seed(std::vector<Complex> a,
                                                         std::vector<Complex> b);

/// Same stepping as the affine seed; emitted trajectories carry q^ell time
/// stamps. Throws config_error when q == 1.
[[nodiscard]] SeedSpec q_affine_wrap(AffineParams params, Complex q);

/// One step of the recursion: history holds the most recent `order` states
/// (oldest first), produced at times ell..ell+order-1; the result is
/// y(ell+order). Throws division_error when the second-order kind meets a
/// vanishing y_m(ell).
[[nodiscard]] CoeffVector seed_step(const SeedSpec& spec,
                                    const std::vector<CoeffVector>& history,
                                    long ell);

/// Closed-form evaluator with per-ell memoized prefixes, so walking a
/// trajectory costs O(1) per step. One instance per worker; not synchronized.
class SeedClosedForm {
 public:
  SeedClosedForm(const SeedSpec& spec, std::vector<CoeffVector> initial);

  /// y(ell) by the kind's closed-form formula.
  [[nodiscard]] CoeffVector at(long ell);

  /// Substitution variable u(ell) = y(ell+1)/y(ell) of the second-order kind,
  /// from its closed-form formula (not from ratios of states).
  [[nodiscard]] CoeffVector u_at(long ell);

 private:
  void extend(long ell);

  SeedSpec spec_;
  std::vector<CoeffVector> initial_;
  std::vector<CoeffVector> u0_;            // second-order substitution start
  std::vector<std::vector<Complex>> hom_;  // prefix products per ell
  std::vector<std::vector<Complex>> acc_;  // propagated offset sums per ell
  std::vector<std::vector<Complex>> prod_;  // second-order running product
};

/// One-shot convenience around SeedClosedForm.
[[nodiscard]] CoeffVector seed_closed_form(const SeedSpec& spec,
                                           const std::vector<CoeffVector>& initial,
                                           long ell);

/// Time stamps 0..steps: q^ell for q-affine seeds, ell otherwise.
[[nodiscard]] std::vector<Complex> time_stamps(const SeedSpec& spec, long steps);

}  // namespace polygen
