#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "polygen/complex.hpp"
#include "polygen/errors.hpp"
#include "polygen/presets.hpp"
#include "polygen/seeds.hpp"

using namespace polygen;

namespace {

Complex rand_disc(std::mt19937_64& rng, double radius = 1.0) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  return std::polar(radius * std::sqrt(unit(rng)), 6.283185307179586 * unit(rng));
}

double max_component_gap(const CoeffVector& a, const CoeffVector& b) {
  double worst = 0.0;
  for (std::size_t m = 0; m < a.size(); ++m)
    worst = std::max(worst, std::abs(a[m] - b[m]));
  return worst;
}

/// Walks the recursion with seed_step, returning y(0..steps).
std::vector<CoeffVector> iterate_seed(const SeedSpec& spec,
                                      std::vector<CoeffVector> initial,
                                      long steps) {
  std::vector<CoeffVector> out = std::move(initial);
  const int p = spec.order();
  for (long ell = 0; ell + p <= steps; ++ell) {
    const std::vector<CoeffVector> history(out.end() - p, out.end());
    out.push_back(seed_step(spec, history, ell));
  }
  return out;
}

}  // namespace

TEST_CASE("affine step examples") {
  const SeedSpec identity = make_affine_seed({{1.0, 0.0}, {1.0, 0.0}},
                                             {{0.0, 0.0}, {0.0, 0.0}});
  const CoeffVector y{{3.0, 0.0}, {0.0, 5.0}};
  CHECK(max_component_gap(seed_step(identity, {y}, 0), y) < 1e-15);

  const SeedSpec doubling = make_affine_seed({{2.0, 0.0}, {2.0, 0.0}},
                                             {{1.0, 0.0}, {1.0, 0.0}});
  const CoeffVector stepped = seed_step(doubling, {{{0.0, 0.0}, {0.0, 0.0}}}, 0);
  CHECK(max_component_gap(stepped, {{1.0, 0.0}, {1.0, 0.0}}) < 1e-15);
}

TEST_CASE("second-order step matches its closed form on the rotation example") {
  const ExamplePreset preset = example_preset("4");
  const SecondOrderParams& params = preset.seed.second_order();
  REQUIRE(params.autonomous);
  CHECK(std::abs(params.a_const[0] - unit_rotation(1, 2)) < 1e-15);
  CHECK(std::abs(params.a_const[1] - unit_rotation(1, 4)) < 1e-15);

  const CoeffVector y0 = coefficients_from_zeros(preset.initial[0]);
  const CoeffVector y1 = coefficients_from_zeros(preset.initial[1]);
  SeedClosedForm oracle(preset.seed, {y0, y1});
  const CoeffVector stepped = seed_step(preset.seed, {y0, y1}, 0);
  CHECK(max_component_gap(stepped, oracle.at(2)) < 1e-12);
}

TEST_CASE("affine closed form with a = 1 grows linearly") {
  const SeedSpec spec = make_affine_seed({{1.0, 0.0}}, {{2.0, 0.0}});
  for (long ell : {0L, 1L, 5L, 10L}) {
    const CoeffVector y = seed_closed_form(spec, {{{0.0, 0.0}}}, ell);
    CHECK(std::abs(y[0] - Complex(2.0 * static_cast<double>(ell), 0.0)) < 1e-12);
  }
}

TEST_CASE("rotation multiplier is periodic in the closed form") {
  const SeedSpec spec = make_affine_seed({unit_rotation(1, 3)}, {{1.0, 0.0}});
  const CoeffVector y0{{0.3, 0.05}};
  SeedClosedForm oracle(spec, {y0});
  CHECK(max_component_gap(oracle.at(3), y0) < 1e-12);
  for (long k = 1; k <= 10; ++k)
    CHECK(max_component_gap(oracle.at(3 * k), y0) < 1e-10);
}

TEST_CASE("nonautonomous telescoping sum") {
  const SeedSpec spec = make_nonautonomous_seed(
      2, [](long) { return std::vector<Complex>{{1.0, 0.0}, {1.0, 0.0}}; },
      [](long ell) {
        const Complex v(static_cast<double>(ell), 0.0);
        return std::vector<Complex>{v, v};
      });
  const CoeffVector y0{{1.0, 0.0}, {0.0, 2.0}};
  SeedClosedForm oracle(spec, {y0});
  const std::vector<CoeffVector> walked = iterate_seed(spec, {y0}, 10);
  for (long ell = 0; ell <= 10; ++ell) {
    const double sum = 0.5 * static_cast<double>(ell * (ell - 1));
    const CoeffVector expected{y0[0] + Complex(sum, 0.0),
                               y0[1] + Complex(sum, 0.0)};
    CHECK(max_component_gap(oracle.at(ell), expected) < 1e-10);
    CHECK(max_component_gap(walked[ell], expected) < 1e-10);
  }
}

TEST_CASE("q-affine wrapper steps like the affine seed and stamps q powers") {
  const AffineParams params{{{0.5, 0.0}, {0.25, 0.0}}, {{1.0, 0.0}, {2.0, 0.0}}};
  const SeedSpec plain = make_affine_seed(params.a, params.b);
  const SeedSpec wrapped = q_affine_wrap(params, Complex(2.0, 0.0));
  const CoeffVector y0{{0.7, 0.1}, {-0.3, 0.4}};
  const std::vector<CoeffVector> a = iterate_seed(plain, {y0}, 20);
  const std::vector<CoeffVector> b = iterate_seed(wrapped, {y0}, 20);
  for (std::size_t ell = 0; ell < a.size(); ++ell)
    CHECK(max_component_gap(a[ell], b[ell]) == 0.0);

  const std::vector<Complex> stamps = time_stamps(wrapped, 3);
  REQUIRE(stamps.size() == 4);
  CHECK(stamps[0] == Complex(1.0, 0.0));
  CHECK(stamps[1] == Complex(2.0, 0.0));
  CHECK(stamps[2] == Complex(4.0, 0.0));
  CHECK(stamps[3] == Complex(8.0, 0.0));

  const std::vector<Complex> plain_stamps = time_stamps(plain, 2);
  CHECK(plain_stamps[2] == Complex(2.0, 0.0));

  CHECK_THROWS_AS((void)q_affine_wrap(params, Complex(1.0, 0.0)), config_error);
}

TEST_CASE("iterated affine and nonautonomous seeds match their closed forms") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 3);
    std::vector<Complex> a, b;
    CoeffVector y0;
    for (int m = 0; m < n; ++m) {
      a.push_back(rand_disc(rng, 1.05));
      b.push_back(rand_disc(rng, 1.0));
      y0.push_back(rand_disc(rng, 1.0));
    }
    const SeedSpec spec = make_affine_seed(a, b);
    SeedClosedForm oracle(spec, {y0});
    const std::vector<CoeffVector> walked = iterate_seed(spec, {y0}, 100);
    for (long ell = 0; ell <= 100; ++ell) {
      double scale = 1.0;
      for (const Complex& v : walked[ell]) scale = std::max(scale, std::abs(v));
      CHECK(max_component_gap(walked[ell], oracle.at(ell)) < 1e-10 * scale);
    }
  }

  std::uniform_int_distribution<int> table_rows(1, 4);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 2);
    const int rows = table_rows(rng);
    std::vector<std::vector<Complex>> g_table(rows), h_table(rows);
    for (int r = 0; r < rows; ++r)
      for (int m = 0; m < n; ++m) {
        g_table[r].push_back(rand_disc(rng, 1.05));
        h_table[r].push_back(rand_disc(rng, 1.0));
      }
    const SeedSpec spec = make_nonautonomous_seed(
        n, [g_table](long ell) { return g_table[ell % g_table.size()]; },
        [h_table](long ell) { return h_table[ell % h_table.size()]; });
    CoeffVector y0;
    for (int m = 0; m < n; ++m) y0.push_back(rand_disc(rng, 1.0));
    SeedClosedForm oracle(spec, {y0});
    const std::vector<CoeffVector> walked = iterate_seed(spec, {y0}, 100);
    for (long ell = 0; ell <= 100; ++ell) {
      double scale = 1.0;
      for (const Complex& v : walked[ell]) scale = std::max(scale, std::abs(v));
      CHECK(max_component_gap(walked[ell], oracle.at(ell)) < 1e-10 * scale);
    }
  }
}

TEST_CASE("iterated second-order seed matches its closed form") {
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<int> pick_den(2, 6);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 2);
    std::vector<Complex> a, b;
    CoeffVector y0, y1;
    for (int m = 0; m < n; ++m) {
      a.push_back(unit_rotation(1, pick_den(rng)));
      b.push_back(0.1 * rand_disc(rng, 1.0));
      const Complex start = std::polar(0.5 + unit(rng), 6.28318 * unit(rng));
      y0.push_back(start);
      // unit-modulus substitution start keeps magnitudes bounded
      y1.push_back(start * std::polar(1.0, 6.28318 * unit(rng)));
    }
    const SeedSpec spec = make_second_order_autonomous_seed(a, b);
    SeedClosedForm oracle(spec, {y0, y1});
    const std::vector<CoeffVector> walked = iterate_seed(spec, {y0, y1}, 60);
    for (long ell = 0; ell <= 60; ++ell) {
      double scale = 1.0;
      for (const Complex& v : walked[ell]) scale = std::max(scale, std::abs(v));
      CHECK(max_component_gap(walked[ell], oracle.at(ell)) < 1e-8 * scale);
    }
  }
}

TEST_CASE("contracting multipliers settle on the affine fixed point") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Complex> a, b;
    CoeffVector y0;
    for (int m = 0; m < 2; ++m) {
      a.push_back(rand_disc(rng, 0.9));
      b.push_back(rand_disc(rng, 1.0));
      y0.push_back(rand_disc(rng, 1.0));
    }
    const SeedSpec spec = make_affine_seed(a, b);
    const CoeffVector y = seed_closed_form(spec, {y0}, 500);
    for (int m = 0; m < 2; ++m)
      CHECK(std::abs(y[m] - b[m] / (Complex(1.0, 0.0) - a[m])) < 1e-6);
  }
}

TEST_CASE("substitution variable equals the coefficient ratio") {
  const ExamplePreset preset = example_preset("4");
  const CoeffVector y0 = coefficients_from_zeros(preset.initial[0]);
  const CoeffVector y1 = coefficients_from_zeros(preset.initial[1]);
  SeedClosedForm oracle(preset.seed, {y0, y1});
  const std::vector<CoeffVector> walked = iterate_seed(preset.seed, {y0, y1}, 31);
  for (long ell = 0; ell + 1 <= 31; ++ell) {
    const CoeffVector u = oracle.u_at(ell);
    for (std::size_t m = 0; m < u.size(); ++m)
      CHECK(std::abs(u[m] - walked[ell + 1][m] / walked[ell][m]) < 1e-9);
  }
}

TEST_CASE("second-order recursion stops at a vanishing coefficient") {
  const SeedSpec spec = make_second_order_autonomous_seed(
      {{0.0, 1.0}, {-1.0, 0.0}}, {{1.0, 0.0}, {1.0, 0.0}});
  const CoeffVector zero{{0.0, 0.0}, {0.0, 0.0}};
  const CoeffVector ones{{1.0, 0.0}, {1.0, 0.0}};
  CHECK_THROWS_AS((void)seed_step(spec, {zero, ones}, 0), division_error);
  CHECK_THROWS_AS(SeedClosedForm(spec, {zero, ones}), division_error);
}

TEST_CASE("seed step validates history length") {
  const SeedSpec affine = make_affine_seed({{0.5, 0.0}}, {{1.0, 0.0}});
  CHECK_THROWS_AS((void)seed_step(affine, {}, 0), std::invalid_argument);
  const SeedSpec second = make_second_order_autonomous_seed(
      {{1.0, 0.0}, {1.0, 0.0}}, {{0.0, 0.0}, {0.0, 0.0}});
  CHECK_THROWS_AS((void)seed_step(second, {{{1.0, 0.0}, {1.0, 0.0}}}, 0),
                  std::invalid_argument);
}
