#include "polygen/engine.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "polygen/assignment.hpp"
#include "polygen/errors.hpp"
#include "polygen/ordering.hpp"

namespace polygen {

namespace {

double max_state_magnitude(const RootSet& state) {
  double m = 0.0;
  for (const Complex& v : state.values) m = std::max(m, std::abs(v));
  return m;
}

OrderingOutcome contiguity_order(const OrderedVector& prev, const RootSet& current) {
  const std::size_t n = current.size();
  if (prev.size() != n)
    throw std::invalid_argument("apply_ordering: prev arity mismatch");
  std::vector<std::vector<double>> cost(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      cost[i][j] = std::abs(current.values[j] - prev[i]);
  const std::vector<int> pick = min_cost_assignment(cost);

  OrderingOutcome out;
  out.value.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    out.value[i] = current.values[static_cast<std::size_t>(pick[i])];
  // Strict condition: each new point is closer to its own predecessor than
  // to any other predecessor. The optimal assignment is returned either way.
  for (std::size_t i = 0; i < n && !out.ambiguous; ++i) {
    const double own = std::abs(out.value[i] - prev[i]);
    for (std::size_t m = 0; m < n; ++m) {
      if (m == i) continue;
      if (!(own < std::abs(out.value[i] - prev[m]))) {
        out.ambiguous = true;
        break;
      }
    }
  }
  return out;
}

OrderingOutcome apply_rule(const OrderedVector* prev, const RootSet& current,
                           const OrderingRule& rule, std::mt19937_64* rng) {
  switch (rule.kind) {
    case OrderingKind::lexicographic:
      return {lexicographic_order(current), false};
    case OrderingKind::fixed_mu:
      return {order_by_mu(current, PermutationIndex{
                                       rule.mu, static_cast<int>(current.size())}),
              false};
    case OrderingKind::contiguity:
      if (prev == nullptr)
        throw std::invalid_argument(
            "apply_ordering: contiguity requires the previous ordered state");
      return contiguity_order(*prev, current);
    case OrderingKind::random: {
      std::mt19937_64 local(rule.rng_seed);
      std::mt19937_64& engine = rng != nullptr ? *rng : local;
      const std::uint64_t total = factorial(static_cast<int>(current.size()));
      std::uniform_int_distribution<std::uint64_t> pick(1, total);
      return {order_by_mu(current, PermutationIndex{
                                       pick(engine),
                                       static_cast<int>(current.size())}),
              false};
    }
  }
  throw std::logic_error("apply_ordering: unknown rule");
}

}  // namespace

StepResult generation_zero_step(const std::vector<RootSet>& history,
                                const SeedSpec& spec, long ell,
                                const OrderedVector* hint,
                                const RootFindOptions& options) {
  if (static_cast<int>(history.size()) != spec.order())
    throw std::invalid_argument("generation_zero_step: history length mismatch");
  std::vector<CoeffVector> ys;
  ys.reserve(history.size());
  for (const RootSet& state : history) ys.push_back(coefficients_from_zeros(state));
  CoeffVector next = seed_step(spec, ys, ell);
  RootFindResult found = find_zeros(next, hint, options);
  return {std::move(found.roots), std::move(next), found.non_generic};
}

Trajectory solve_initial_value(const GenerationSpec& spec,
                               const std::vector<RootSet>& initial, long steps,
                               SolveMode mode, const SolveOptions& options) {
  if (spec.depth != 0)
    throw std::invalid_argument("solve_initial_value: depth must be 0");
  const int p = spec.seed.order();
  const int n = spec.seed.arity;
  if (static_cast<int>(initial.size()) != p)
    throw std::invalid_argument("solve_initial_value: initial count must equal p");
  for (const RootSet& state : initial)
    if (static_cast<int>(state.size()) != n)
      throw std::invalid_argument("solve_initial_value: initial arity mismatch");
  if (steps < p - 1)
    throw std::invalid_argument("solve_initial_value: steps below initial data");

  Trajectory traj;
  traj.depth = 0;
  traj.arity = n;
  traj.q_time = spec.seed.kind == SeedKind::q_affine;
  traj.stamps = time_stamps(spec.seed, steps);

  for (const RootSet& state : initial) {
    traj.states.push_back(state);
    traj.coeffs.push_back(coefficients_from_zeros(state));
    traj.non_generic.push_back(is_non_generic(state, options.root.collision_tol));
    traj.ambiguous.push_back(0);
  }

  SeedClosedForm oracle(spec.seed,
                        std::vector<CoeffVector>(traj.coeffs.begin(),
                                                 traj.coeffs.begin() + p));
  bool diverged = false;
  for (long ell = 0; ell + p <= steps && !diverged; ++ell) {
    const OrderedVector hint = traj.states.back().values;
    RootSet state;
    CoeffVector coeffs;
    bool flag = false;
    if (mode == SolveMode::closed_form) {
      coeffs = oracle.at(ell + p);
      RootFindResult found = find_zeros(coeffs, &hint, options.root);
      state = std::move(found.roots);
      flag = found.non_generic;
    } else {
      std::vector<RootSet> window(traj.states.end() - p, traj.states.end());
      StepResult step = generation_zero_step(window, spec.seed, ell, &hint,
                                             options.root);
      state = std::move(step.roots);
      coeffs = std::move(step.coeffs);
      flag = step.non_generic;
    }
    if (options.stop_on_divergence &&
        max_state_magnitude(state) > options.divergence_threshold) {
      traj.divergence_truncated = true;
      diverged = true;
    }
    traj.states.push_back(std::move(state));
    traj.coeffs.push_back(std::move(coeffs));
    traj.non_generic.push_back(flag);
    traj.ambiguous.push_back(0);
  }
  traj.stamps.resize(traj.states.size());
  return traj;
}

OrderingOutcome apply_ordering(const OrderedVector* prev, const RootSet& current,
                               const OrderingRule& rule) {
  return apply_rule(prev, current, rule, nullptr);
}

Trajectory order_trajectory(Trajectory traj, const OrderingRule& rule) {
  traj.ordered.clear();
  traj.ordered.reserve(traj.states.size());
  std::mt19937_64 rng(rule.rng_seed);
  for (std::size_t ell = 0; ell < traj.states.size(); ++ell) {
    OrderingOutcome outcome;
    if (rule.kind == OrderingKind::contiguity && ell == 0) {
      outcome = {lexicographic_order(traj.states[0]), false};
    } else {
      const OrderedVector* prev = ell > 0 ? &traj.ordered[ell - 1] : nullptr;
      outcome = apply_rule(prev, traj.states[ell], rule, &rng);
    }
    traj.ordered.push_back(std::move(outcome.value));
    traj.ambiguous[ell] = static_cast<char>(traj.ambiguous[ell] || outcome.ambiguous);
  }
  return traj;
}

Trajectory lift_generation(const Trajectory& lower, const OrderingRule& rule,
                           const RootFindOptions& options) {
  if (lower.states.empty())
    throw std::invalid_argument("lift_generation: empty lower trajectory");
  const Trajectory ordered_lower = order_trajectory(lower, rule);

  Trajectory upper;
  upper.depth = lower.depth + 1;
  upper.arity = lower.arity;
  upper.q_time = lower.q_time;
  upper.stamps = lower.stamps;
  upper.divergence_truncated = lower.divergence_truncated;
  upper.states.reserve(lower.states.size());

  for (std::size_t ell = 0; ell < ordered_lower.states.size(); ++ell) {
    const CoeffVector& coeffs = ordered_lower.ordered[ell];
    const OrderedVector hint =
        ell > 0 ? upper.states.back().values : OrderedVector{};
    RootFindResult found =
        find_zeros(coeffs, ell > 0 ? &hint : nullptr, options);
    upper.states.push_back(std::move(found.roots));
    upper.coeffs.push_back(coeffs);
    upper.non_generic.push_back(found.non_generic);
    // Ordering trouble below (assignment tie or non-generic lower state)
    // makes this step's coefficients themselves uncertain.
    upper.ambiguous.push_back(static_cast<char>(ordered_lower.ambiguous[ell] ||
                                                ordered_lower.non_generic[ell]));
  }
  return upper;
}

Trajectory run_generation(const GenerationSpec& spec,
                          const std::vector<RootSet>& initial, long steps,
                          SolveMode mode, const SolveOptions& options) {
  if (static_cast<int>(spec.ordering.size()) != spec.depth)
    throw std::invalid_argument("run_generation: one ordering rule per lift");
  GenerationSpec base = spec;
  base.depth = 0;
  base.ordering.clear();
  Trajectory traj = solve_initial_value(base, initial, steps, mode, options);
  for (const OrderingRule& rule : spec.ordering)
    traj = lift_generation(traj, rule, options.root);
  return traj;
}

double verify_key_identity(const RootSet& x_now, const RootSet& x_next,
                           const CoeffVector& y_now, const CoeffVector& y_next) {
  const std::size_t n = x_now.size();
  if (x_next.size() != n || y_now.size() != n || y_next.size() != n)
    throw std::invalid_argument("verify_key_identity: arity mismatch");
  CoeffVector delta(n);
  for (std::size_t m = 0; m < n; ++m) delta[m] = y_next[m] - y_now[m];
  const MonicPolynomial increment{delta};  // sum_m delta_m z^(N-m) + z^N

  double worst = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    // Forward form at x_next: prod_j (x - x_now_j) + sum_m delta_m x^(N-m).
    const Complex x = x_next.values[k];
    Complex prod(1.0, 0.0);
    for (std::size_t j = 0; j < n; ++j) prod *= x - x_now.values[j];
    const Complex tail = evaluate(increment, x) - integer_pow(x, static_cast<long>(n));
    worst = std::max(worst, std::abs(prod + tail));

    // Alternative form at x_now: prod_j (x - x_next_j) - sum_m delta_m x^(N-m).
    const Complex w = x_now.values[k];
    Complex prod2(1.0, 0.0);
    for (std::size_t j = 0; j < n; ++j) prod2 *= w - x_next.values[j];
    const Complex tail2 =
        evaluate(increment, w) - integer_pow(w, static_cast<long>(n));
    worst = std::max(worst, std::abs(prod2 - tail2));
  }
  return worst;
}

}  // namespace polygen
