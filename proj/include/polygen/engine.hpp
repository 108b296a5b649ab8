#pragma once

#include <cstdint>
#include <vector>

#include "polygen/roots.hpp"
#include "polygen/seeds.hpp"

namespace polygen {

enum class OrderingKind { lexicographic, fixed_mu, contiguity, random };

struct OrderingRule {
  OrderingKind kind = OrderingKind::lexicographic;
  std::uint64_t mu = 1;        // fixed_mu only
  std::uint64_t rng_seed = 0;  // random only; always explicit
};

/// A seed plus `depth` lifts, one ordering rule per lift.
struct GenerationSpec {
  SeedSpec seed;
  int depth = 0;
  std::vector<OrderingRule> ordering;
};

/// Time-indexed zero sets plus the coefficient vectors they were computed
/// from and per-step diagnostic flags. `ordered` stays empty until an
/// ordering pass fills it.
struct Trajectory {
  std::vector<RootSet> states;
  std::vector<CoeffVector> coeffs;  // polynomial coefficients per step
  std::vector<OrderedVector> ordered;
  std::vector<Complex> stamps;  // ell, or q^ell for q-affine seeds
  std::vector<char> non_generic;
  std::vector<char> ambiguous;  // ordering not uniquely determined
  int depth = 0;
  int arity = 0;
  bool q_time = false;
  bool divergence_truncated = false;

  [[nodiscard]] std::size_t length() const { return states.size(); }
};

enum class SolveMode { iterated, closed_form };

struct SolveOptions {
  RootFindOptions root;
  double divergence_threshold = 1e12;
  bool stop_on_divergence = true;
};

struct StepResult {
  RootSet roots;
  CoeffVector coeffs;
  bool non_generic = false;
};

/// One generation-zero step: map each history zero set to coefficients, step
/// the seed, and root-find the updated polynomial. history is oldest-first
/// and was produced at times ell..ell+order-1.
[[nodiscard]] StepResult generation_zero_step(const std::vector<RootSet>& history,
                                              const SeedSpec& spec, long ell,
                                              const OrderedVector* hint = nullptr,
                                              const RootFindOptions& options = {});

/// Generation-zero trajectory of steps+1 states (the given initial states
/// included). closed_form mode evaluates the seed oracle per ell and
/// root-finds with warm starts; iterated mode repeats generation_zero_step.
/// Stops early (flagging the trajectory) once a state crosses the divergence
/// threshold.
[[nodiscard]] Trajectory solve_initial_value(const GenerationSpec& spec,
                                             const std::vector<RootSet>& initial,
                                             long steps, SolveMode mode,
                                             const SolveOptions& options = {});

struct OrderingOutcome {
  OrderedVector value;
  bool ambiguous = false;
};

/// Orders `current` under the rule. Contiguity requires `prev` (the previous
/// ordered state) and flags ambiguity when the strict nearest-predecessor
/// condition fails for the optimal assignment; other rules ignore `prev`.
[[nodiscard]] OrderingOutcome apply_ordering(const OrderedVector* prev,
                                             const RootSet& current,
                                             const OrderingRule& rule);

/// Fills `ordered`/`ambiguous` along the whole trajectory under one rule.
/// Contiguity starts from the lexicographic order of the first state; the
/// random rule draws one permutation per step from rule.rng_seed.
[[nodiscard]] Trajectory order_trajectory(Trajectory traj, const OrderingRule& rule);

/// Lift to the next generation: order each lower state under the rule, use
/// the ordered vectors as coefficients, and root-find each polynomial with
/// warm starts chained along ell. A non-generic lower state makes the
/// ordering ill-defined; the corresponding upper step is flagged ambiguous.
[[nodiscard]] Trajectory lift_generation(const Trajectory& lower,
                                         const OrderingRule& rule,
                                         const RootFindOptions& options = {});

/// solve_initial_value at depth zero followed by spec.depth lifts.
[[nodiscard]] Trajectory run_generation(const GenerationSpec& spec,
                                        const std::vector<RootSet>& initial,
                                        long steps, SolveMode mode,
                                        const SolveOptions& options = {});

/// Max residual of the key identity over the zeros, in both the forward form
/// (evaluated at x_next) and the alternative form (evaluated at x_now). Zero
/// in exact arithmetic for any two zero/coefficient pairs.
[[nodiscard]] double verify_key_identity(const RootSet& x_now, const RootSet& x_next,
                                         const CoeffVector& y_now,
                                         const CoeffVector& y_next);

}  // namespace polygen
