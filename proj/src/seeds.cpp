#include "polygen/seeds.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "polygen/errors.hpp"

namespace polygen {

namespace {

void check_finite(const CoeffVector& y, const char* where) {
  for (const Complex& c : y)
    if (!is_finite(c)) throw nonfinite_error(std::string(where) + ": overflow");
}

std::vector<Complex> call_family(const std::function<std::vector<Complex>(long)>& f,
                                 long ell, int arity, const char* name) {
  std::vector<Complex> v = f(ell);
  if (static_cast<int>(v.size()) != arity)
    throw std::invalid_argument(std::string(name) + ": callable arity mismatch");
  return v;
}

}  // namespace

SeedSpec make_affine_seed(std::vector<Complex> a, std::vector<Complex> b) {
  if (a.empty() || a.size() != b.size())
    throw std::invalid_argument("make_affine_seed: a and b must match");
  SeedSpec spec;
  spec.kind = SeedKind::affine;
  spec.arity = static_cast<int>(a.size());
  spec.params = AffineParams{std::move(a), std::move(b)};
  return spec;
}

SeedSpec make_nonautonomous_seed(int arity,
                                 std::function<std::vector<Complex>(long)> g,
                                 std::function<std::vector<Complex>(long)> h) {
  if (arity < 1 || !g || !h)
    throw std::invalid_argument("make_nonautonomous_seed: bad arguments");
  SeedSpec spec;
  spec.kind = SeedKind::nonautonomous_linear;
  spec.arity = arity;
  spec.params = NonautonomousParams{std::move(g), std::move(h)};
  return spec;
}

SeedSpec make_second_order_seed(int arity,
                                std::function<std::vector<Complex>(long)> a,
                                std::function<std::vector<Complex>(long)> b) {
  if (arity < 1 || !a || !b)
    throw std::invalid_argument("make_second_order_seed: bad arguments");
  SeedSpec spec;
  spec.kind = SeedKind::second_order_multiplicative;
  spec.arity = arity;
  SecondOrderParams params;
  params.a = std::move(a);
  params.b = std::move(b);
  params.autonomous = false;
  spec.params = std::move(params);
  return spec;
}

SeedSpec make_second_order_autonomous_seed(std::vector<Complex> a,
                                           std::vector<Complex> b) {
  if (a.empty() || a.size() != b.size())
    throw std::invalid_argument("make_second_order_autonomous_seed: a/b mismatch");
  SeedSpec spec;
  spec.kind = SeedKind::second_order_multiplicative;
  spec.arity = static_cast<int>(a.size());
  SecondOrderParams params;
  params.autonomous = true;
  params.a_const = a;
  params.b_const = b;
  params.a = [a](long) { return a; };
  params.b = [b](long) { return b; };
  spec.params = std::move(params);
  return spec;
}

SeedSpec q_affine_wrap(AffineParams params, Complex q) {
  if (params.a.empty() || params.a.size() != params.b.size())
    throw std::invalid_argument("q_affine_wrap: a and b must match");
  if (std::abs(q - Complex(1.0, 0.0)) < 1e-12)
    throw config_error("q_affine_wrap: q must differ from 1");
  SeedSpec spec;
  spec.kind = SeedKind::q_affine;
  spec.arity = static_cast<int>(params.a.size());
  spec.params = QAffineParams{std::move(params), q};
  return spec;
}

CoeffVector seed_step(const SeedSpec& spec, const std::vector<CoeffVector>& history,
                      long ell) {
  if (static_cast<int>(history.size()) != spec.order())
    throw std::invalid_argument("seed_step: history length must equal the order");
  for (const CoeffVector& y : history)
    if (static_cast<int>(y.size()) != spec.arity)
      throw std::invalid_argument("seed_step: history arity mismatch");

  const int n = spec.arity;
  CoeffVector out(n);
  switch (spec.kind) {
    case SeedKind::affine:
    case SeedKind::q_affine: {
      const AffineParams& p =
          spec.kind == SeedKind::affine ? spec.affine() : spec.q_affine().base;
      for (int m = 0; m < n; ++m) out[m] = p.a[m] * history[0][m] + p.b[m];
      break;
    }
    case SeedKind::nonautonomous_linear: {
      const NonautonomousParams& p = spec.nonautonomous();
      const auto g = call_family(p.g, ell, n, "seed_step");
      const auto h = call_family(p.h, ell, n, "seed_step");
      for (int m = 0; m < n; ++m) out[m] = g[m] * history[0][m] + h[m];
      break;
    }
    case SeedKind::second_order_multiplicative: {
      const SecondOrderParams& p = spec.second_order();
      const auto a = call_family(p.a, ell, n, "seed_step");
      const auto b = call_family(p.b, ell, n, "seed_step");
      const CoeffVector& y0 = history[0];
      const CoeffVector& y1 = history[1];
      for (int m = 0; m < n; ++m) {
        if (std::abs(y0[m]) < 1e-300)
          throw division_error("seed_step: y_m(ell) vanished");
        out[m] = a[m] * y1[m] * y1[m] / y0[m] + b[m] * y1[m];
      }
      break;
    }
  }
  check_finite(out, "seed_step");
  return out;
}

SeedClosedForm::SeedClosedForm(const SeedSpec& spec, std::vector<CoeffVector> initial)
    : spec_(spec), initial_(std::move(initial)) {
  if (static_cast<int>(initial_.size()) != spec_.order())
    throw std::invalid_argument("SeedClosedForm: initial count must equal order");
  for (const CoeffVector& y : initial_)
    if (static_cast<int>(y.size()) != spec_.arity)
      throw std::invalid_argument("SeedClosedForm: initial arity mismatch");

  const int n = spec_.arity;
  switch (spec_.kind) {
    case SeedKind::affine:
    case SeedKind::q_affine:
      break;  // direct formula, nothing to precompute
    case SeedKind::nonautonomous_linear:
      hom_.push_back(std::vector<Complex>(n, Complex(1.0, 0.0)));
      acc_.push_back(std::vector<Complex>(n, Complex(0.0, 0.0)));
      break;
    case SeedKind::second_order_multiplicative: {
      u0_.resize(1);
      u0_[0].resize(n);
      for (int m = 0; m < n; ++m) {
        if (std::abs(initial_[0][m]) < 1e-300)
          throw division_error("SeedClosedForm: y_m(0) = 0");
        u0_[0][m] = initial_[1][m] / initial_[0][m];
      }
      // hom_ holds prefix products of a, acc_ the propagated b sums (both
      // enter the u formula); prod_ holds prefix products of u itself.
      hom_.push_back(std::vector<Complex>(n, Complex(1.0, 0.0)));
      acc_.push_back(std::vector<Complex>(n, Complex(0.0, 0.0)));
      prod_.push_back(std::vector<Complex>(n, Complex(1.0, 0.0)));
      break;
    }
  }
}

void SeedClosedForm::extend(long ell) {
  const int n = spec_.arity;
  if (spec_.kind == SeedKind::nonautonomous_linear) {
    const NonautonomousParams& p = spec_.nonautonomous();
    while (static_cast<long>(hom_.size()) <= ell) {
      const long j = static_cast<long>(hom_.size()) - 1;
      const auto g = call_family(p.g, j, n, "SeedClosedForm");
      const auto h = call_family(p.h, j, n, "SeedClosedForm");
      std::vector<Complex> hom(n), acc(n);
      for (int m = 0; m < n; ++m) {
        hom[m] = g[m] * hom_.back()[m];
        acc[m] = g[m] * acc_.back()[m] + h[m];
      }
      hom_.push_back(std::move(hom));
      acc_.push_back(std::move(acc));
    }
    return;
  }
  if (spec_.kind == SeedKind::second_order_multiplicative) {
    const SecondOrderParams& p = spec_.second_order();
    while (static_cast<long>(prod_.size()) <= ell) {
      const long j = static_cast<long>(prod_.size()) - 1;  // extend by u(j)
      std::vector<Complex> u(n);
      if (p.autonomous) {
        for (int m = 0; m < n; ++m)
          u[m] = integer_pow(p.a_const[m], j) * u0_[0][m] +
                 geometric_sum(p.a_const[m], j) * p.b_const[m];
      } else {
        // Grow the prefix pieces of the u formula alongside the product.
        const auto a = call_family(p.a, j, n, "SeedClosedForm");
        const auto b = call_family(p.b, j, n, "SeedClosedForm");
        std::vector<Complex> hom(n), acc(n);
        for (int m = 0; m < n; ++m) {
          u[m] = hom_.back()[m] * u0_[0][m] + acc_.back()[m];
          hom[m] = a[m] * hom_.back()[m];
          acc[m] = a[m] * acc_.back()[m] + b[m];
        }
        hom_.push_back(std::move(hom));
        acc_.push_back(std::move(acc));
      }
      std::vector<Complex> prod(n);
      for (int m = 0; m < n; ++m) prod[m] = prod_.back()[m] * u[m];
      prod_.push_back(std::move(prod));
    }
  }
}

CoeffVector SeedClosedForm::u_at(long ell) {
  if (spec_.kind != SeedKind::second_order_multiplicative)
    throw std::invalid_argument("u_at: second-order seeds only");
  if (ell < 0) throw std::invalid_argument("u_at: ell must be >= 0");
  const int n = spec_.arity;
  const SecondOrderParams& p = spec_.second_order();
  CoeffVector u(n);
  if (p.autonomous) {
    for (int m = 0; m < n; ++m)
      u[m] = integer_pow(p.a_const[m], ell) * u0_[0][m] +
             geometric_sum(p.a_const[m], ell) * p.b_const[m];
  } else {
    extend(ell + 1);
    for (int m = 0; m < n; ++m) u[m] = hom_[ell][m] * u0_[0][m] + acc_[ell][m];
  }
  return u;
}

CoeffVector SeedClosedForm::at(long ell) {
  if (ell < 0) throw std::invalid_argument("SeedClosedForm: ell must be >= 0");
  const int n = spec_.arity;
  if (ell < spec_.order()) return initial_[static_cast<std::size_t>(ell)];

  CoeffVector out(n);
  switch (spec_.kind) {
    case SeedKind::affine:
    case SeedKind::q_affine: {
      const AffineParams& p =
          spec_.kind == SeedKind::affine ? spec_.affine() : spec_.q_affine().base;
      for (int m = 0; m < n; ++m)
        out[m] = integer_pow(p.a[m], ell) * initial_[0][m] +
                 geometric_sum(p.a[m], ell) * p.b[m];
      break;
    }
    case SeedKind::nonautonomous_linear: {
      extend(ell);
      for (int m = 0; m < n; ++m)
        out[m] = hom_[ell][m] * initial_[0][m] + acc_[ell][m];
      break;
    }
    case SeedKind::second_order_multiplicative: {
      extend(ell);
      for (int m = 0; m < n; ++m) out[m] = initial_[0][m] * prod_[ell][m];
      break;
    }
  }
  check_finite(out, "seed_closed_form");
  return out;
}

CoeffVector seed_closed_form(const SeedSpec& spec,
                             const std::vector<CoeffVector>& initial, long ell) {
  SeedClosedForm evaluator(spec, initial);
  return evaluator.at(ell);
}

std::vector<Complex> time_stamps(const SeedSpec& spec, long steps) {
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  if (spec.kind == SeedKind::q_affine) {
    const Complex q = spec.q_affine().q;
    Complex t(1.0, 0.0);
    for (long ell = 0; ell <= steps; ++ell) {
      out.push_back(t);
      t *= q;
    }
  } else {
    for (long ell = 0; ell <= steps; ++ell)
      out.push_back(Complex(static_cast<double>(ell), 0.0));
  }
  return out;
}

}  // namespace polygen
