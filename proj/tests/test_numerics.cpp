#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <vector>

#include "polygen/assignment.hpp"
#include "polygen/complex.hpp"
#include "polygen/errors.hpp"
#include "polygen/ordering.hpp"
#include "polygen/polynomial.hpp"
#include "polygen/roots.hpp"

using namespace polygen;

namespace {

Complex rand_disc(std::mt19937_64& rng, double radius = 1.0) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r = radius * std::sqrt(unit(rng));
  const double theta = 6.283185307179586 * unit(rng);
  return std::polar(r, theta);
}

/// Random multiset with a minimum pairwise separation, by rejection.
RootSet rand_separated_roots(std::mt19937_64& rng, int n, double min_sep,
                             double radius = 1.0) {
  while (true) {
    std::vector<Complex> values;
    values.reserve(n);
    for (int i = 0; i < n; ++i) values.push_back(rand_disc(rng, radius));
    if (min_separation(RootSet{values}) > min_sep) return RootSet{std::move(values)};
  }
}

double match_distance(const RootSet& a, const RootSet& b) {
  // Brute-force bottleneck over all pairings; n <= 8 in these tests.
  std::vector<int> perm(a.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
  double best = std::numeric_limits<double>::infinity();
  do {
    double worst = 0.0;
    for (std::size_t i = 0; i < perm.size(); ++i)
      worst = std::max(worst, std::abs(a.values[i] - b.values[perm[i]]));
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

TEST_CASE("coefficients from zeros match hand values") {
  const CoeffVector y1 = coefficients_from_zeros(RootSet{{{-1.0, -1.0}, {1.0, 0.0}}});
  REQUIRE(y1.size() == 2);
  CHECK(std::abs(y1[0] - Complex(0.0, 1.0)) < 1e-15);
  CHECK(std::abs(y1[1] - Complex(-1.0, -1.0)) < 1e-15);

  const CoeffVector y2 = coefficients_from_zeros(RootSet{{{1.0, 0.0}, {-1.0, 0.0}}});
  CHECK(std::abs(y2[0]) < 1e-15);
  CHECK(std::abs(y2[1] - Complex(-1.0, 0.0)) < 1e-15);
}

TEST_CASE("coefficients from zeros rejects singletons") {
  CHECK_THROWS_AS((void)coefficients_from_zeros(RootSet{{{1.0, 0.0}}}),
                  std::invalid_argument);
}

TEST_CASE("zeros from coefficients on z^2 - 1") {
  const RootSet roots = zeros_from_coefficients({{0.0, 0.0}, {-1.0, 0.0}});
  REQUIRE(roots.size() == 2);
  const double d = match_distance(roots, RootSet{{{1.0, 0.0}, {-1.0, 0.0}}});
  CHECK(d < 1e-12);
}

TEST_CASE("double root flags non-generic") {
  const RootFindResult result = find_zeros({{-2.0, 0.0}, {1.0, 0.0}});
  CHECK(result.non_generic);
  for (const Complex& root : result.roots.values)
    CHECK(std::abs(root - Complex(1.0, 0.0)) < 1e-6);
}

TEST_CASE("first evolved coefficients of the rotation pair match the quadratic formula") {
  // One affine step from y(0) = (i, -1-i) with a = (e^{2pi i/3}, e^{4pi i/5}),
  // b = (1, 2); the resulting pair must match the explicit quadratic roots.
  const Complex a1 = unit_rotation(1, 3), a2 = unit_rotation(2, 5);
  const CoeffVector y0 = {Complex(0.0, 1.0), Complex(-1.0, -1.0)};
  const CoeffVector y(
      {a1 * y0[0] + Complex(1.0, 0.0), a2 * y0[1] + Complex(2.0, 0.0)});
  const Complex disc = principal_sqrt(y[0] * y[0] - 4.0 * y[1]);
  const RootSet expected{{0.5 * (-y[0] + disc), 0.5 * (-y[0] - disc)}};
  const RootSet found = zeros_from_coefficients(y);
  CHECK(match_distance(found, expected) < 1e-9);
}

TEST_CASE("principal square root branch") {
  CHECK(std::abs(principal_sqrt(Complex(4.0, 0.0)) - Complex(2.0, 0.0)) < 1e-15);
  CHECK(std::abs(principal_sqrt(Complex(-1.0, 0.0)) - Complex(0.0, 1.0)) < 1e-15);
  CHECK(std::abs(principal_sqrt(Complex(0.0, 2.0)) - Complex(1.0, 1.0)) < 1e-15);
}

TEST_CASE("principal square root property over random inputs") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 10000; ++i) {
    const Complex z = rand_disc(rng, 10.0);
    const Complex w = principal_sqrt(z);
    CHECK(std::abs(w * w - z) <= 1e-13 * std::abs(z) + 1e-300);
    const bool branch_ok =
        w.real() > 0.0 || (w.real() == 0.0 && w.imag() >= 0.0) ||
        (w == Complex(0.0, 0.0));
    CHECK(branch_ok);
  }
}

TEST_CASE("lexicographic order examples") {
  const OrderedVector v1 = lexicographic_order(RootSet{{{1.0, 0.0}, {-1.0, -1.0}}});
  CHECK(v1[0] == Complex(-1.0, -1.0));
  CHECK(v1[1] == Complex(1.0, 0.0));

  const OrderedVector v2 = lexicographic_order(RootSet{{{0.0, 1.0}, {0.0, -1.0}}});
  CHECK(v2[0] == Complex(0.0, -1.0));
  CHECK(v2[1] == Complex(0.0, 1.0));

  const OrderedVector v3 =
      lexicographic_order(RootSet{{{2.0, 0.0}, {1.0, 1.0}, {1.0, -1.0}}});
  CHECK(v3[0] == Complex(1.0, -1.0));
  CHECK(v3[1] == Complex(1.0, 1.0));
  CHECK(v3[2] == Complex(2.0, 0.0));
}

TEST_CASE("lexicographic order is presentation-invariant and idempotent") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    RootSet set = rand_separated_roots(rng, 5, 1e-6);
    const OrderedVector reference = lexicographic_order(set);
    for (int shuffle = 0; shuffle < 5; ++shuffle) {
      std::shuffle(set.values.begin(), set.values.end(), rng);
      CHECK(lexicographic_order(set) == reference);
    }
    CHECK(lexicographic_order(RootSet{reference}) == reference);
  }
}

TEST_CASE("permutation enumeration matches the N=3 listing") {
  // abc, acb, bac, bca, cab, cba
  CHECK(permutation_by_index({1, 3}) == std::vector<int>{0, 1, 2});
  CHECK(permutation_by_index({2, 3}) == std::vector<int>{0, 2, 1});
  CHECK(permutation_by_index({3, 3}) == std::vector<int>{1, 0, 2});
  CHECK(permutation_by_index({4, 3}) == std::vector<int>{1, 2, 0});
  CHECK(permutation_by_index({5, 3}) == std::vector<int>{2, 0, 1});
  CHECK(permutation_by_index({6, 3}) == std::vector<int>{2, 1, 0});
}

TEST_CASE("permutation index is a bijection onto the group for N <= 5") {
  for (int n = 1; n <= 5; ++n) {
    std::set<std::vector<int>> seen;
    for (std::uint64_t mu = 1; mu <= factorial(n); ++mu) {
      const std::vector<int> sigma = permutation_by_index({mu, n});
      REQUIRE(sigma.size() == static_cast<std::size_t>(n));
      std::vector<char> hit(n, 0);
      for (int v : sigma) {
        REQUIRE(v >= 0);
        REQUIRE(v < n);
        hit[v] = 1;
      }
      CHECK(std::all_of(hit.begin(), hit.end(), [](char c) { return c == 1; }));
      seen.insert(sigma);
    }
    CHECK(seen.size() == factorial(n));
  }
  CHECK_THROWS_AS((void)permutation_by_index({0, 3}), std::invalid_argument);
  CHECK_THROWS_AS((void)permutation_by_index({7, 3}), std::invalid_argument);
}

TEST_CASE("order by permutation index") {
  const RootSet pair{{{1.0, 0.0}, {-1.0, -1.0}}};
  const OrderedVector id = order_by_mu(pair, {1, 2});
  CHECK(id[0] == Complex(-1.0, -1.0));
  CHECK(id[1] == Complex(1.0, 0.0));
  const OrderedVector swapped = order_by_mu(pair, {2, 2});
  CHECK(swapped[0] == Complex(1.0, 0.0));
  CHECK(swapped[1] == Complex(-1.0, -1.0));

  std::mt19937_64 rng(23);
  const RootSet triple = rand_separated_roots(rng, 3, 1e-3);
  const OrderedVector lex = lexicographic_order(triple);
  const OrderedVector reversed = order_by_mu(triple, {6, 3});
  for (int i = 0; i < 3; ++i) CHECK(reversed[i] == lex[2 - i]);
}

TEST_CASE("factorial values") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(1) == 1);
  CHECK(factorial(5) == 120);
  CHECK(factorial(20) == 2432902008176640000ULL);
}

TEST_CASE("monic evaluation") {
  const MonicPolynomial p{{Complex(0.0, 0.0), Complex(-1.0, 0.0)}};
  CHECK(std::abs(evaluate(p, Complex(1.0, 0.0))) < 1e-15);
  CHECK(std::abs(evaluate(p, Complex(2.0, 0.0)) - Complex(3.0, 0.0)) < 1e-15);

  const MonicPolynomial q{{Complex(0.0, 1.0), Complex(-1.0, -1.0)}};
  CHECK(std::abs(evaluate(q, Complex(-1.0, -1.0))) < 1e-14);

  const auto [value, derivative] = evaluate_with_derivative(p, Complex(2.0, 0.0));
  CHECK(std::abs(value - Complex(3.0, 0.0)) < 1e-15);
  CHECK(std::abs(derivative - Complex(4.0, 0.0)) < 1e-15);
}

TEST_CASE("root residual bound over random polynomials") {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<int> pick_n(2, 8);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = pick_n(rng);
    CoeffVector coeffs;
    coeffs.reserve(n);
    double scale = 1.0;
    for (int i = 0; i < n; ++i) {
      coeffs.push_back(rand_disc(rng, 2.0));
      scale = std::max(scale, std::abs(coeffs.back()));
    }
    const RootFindResult result = find_zeros(coeffs);
    const MonicPolynomial p{coeffs};
    for (const Complex& root : result.roots.values)
      CHECK(std::abs(evaluate(p, root)) <= 1e-10 * scale);
  }
}

TEST_CASE("vieta round trip on random generic root sets") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> pick_n(2, 8);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = pick_n(rng);
    const RootSet set = rand_separated_roots(rng, n, 1e-3);
    const CoeffVector coeffs = coefficients_from_zeros(set);
    const OrderedVector hint = lexicographic_order(set);
    const RootSet back = zeros_from_coefficients(coeffs, &hint);
    CHECK(match_distance(set, back) < 1e-9);
  }
}

TEST_CASE("root finder rejects non-finite coefficients") {
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS((void)find_zeros({{inf, 0.0}, {1.0, 0.0}}), nonfinite_error);
}

TEST_CASE("separation and genericity helpers") {
  CHECK(min_separation(RootSet{{{0.0, 0.0}, {3.0, 0.0}, {1.0, 0.0}}}) ==
        doctest::Approx(1.0));
  CHECK(std::isinf(min_separation(RootSet{{{1.0, 0.0}}})));
  CHECK(is_non_generic(RootSet{{{1.0, 0.0}, {1.0, 1e-9}}}));
  CHECK_FALSE(is_non_generic(RootSet{{{1.0, 0.0}, {2.0, 0.0}}}));
}

TEST_CASE("complex helpers") {
  CHECK(std::abs(unit_rotation(1, 4) - Complex(0.0, 1.0)) < 1e-15);
  CHECK(std::abs(integer_pow(Complex(2.0, 0.0), 10) - Complex(1024.0, 0.0)) <
        1e-12);
  CHECK(std::abs(geometric_sum(Complex(1.0, 0.0), 7) - Complex(7.0, 0.0)) <
        1e-15);
  CHECK(std::abs(geometric_sum(Complex(2.0, 0.0), 4) - Complex(15.0, 0.0)) <
        1e-12);
  CHECK(is_finite(Complex(1.0, 2.0)));
  CHECK_FALSE(is_finite(Complex(std::numeric_limits<double>::quiet_NaN(), 0.0)));
}

TEST_CASE("assignment solvers agree with brute force") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> entry(0.0, 10.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    std::vector<std::vector<double>> cost(n, std::vector<double>(n));
    for (auto& row : cost)
      for (double& c : row) c = entry(rng);

    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    double best_total = std::numeric_limits<double>::infinity();
    double best_bottleneck = std::numeric_limits<double>::infinity();
    do {
      double total = 0.0, worst = 0.0;
      for (int i = 0; i < n; ++i) {
        total += cost[i][perm[i]];
        worst = std::max(worst, cost[i][perm[i]]);
      }
      best_total = std::min(best_total, total);
      best_bottleneck = std::min(best_bottleneck, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));

    const std::vector<int> chosen = min_cost_assignment(cost);
    double total = 0.0;
    std::vector<char> used(n, 0);
    for (int i = 0; i < n; ++i) {
      total += cost[i][chosen[i]];
      used[chosen[i]] = 1;
    }
    CHECK(std::all_of(used.begin(), used.end(), [](char c) { return c == 1; }));
    CHECK(total == doctest::Approx(best_total).epsilon(1e-12));

    const BottleneckResult bottleneck = bottleneck_assignment(cost);
    CHECK(bottleneck.value == doctest::Approx(best_bottleneck).epsilon(1e-12));
  }
}
