#include "polygen/presets.hpp"

#include <cmath>
#include <stdexcept>

#include "polygen/complex.hpp"

namespace polygen {

namespace {

RootSet shared_initial_state() {
  return RootSet{{Complex(-1.0, -1.0), Complex(1.0, 0.0)}};
}

SeedSpec isochronous_seed() {
  return make_affine_seed({unit_rotation(1, 3), unit_rotation(2, 5)},
                          {Complex(1.0, 0.0), Complex(2.0, 0.0)});
}

SeedSpec mixed_seed() {
  return make_affine_seed({unit_rotation(1, 7), 0.9 * unit_rotation(2, 5)},
                          {Complex(0.1, 0.0), Complex(0.2, 0.0)});
}

SeedSpec damped_slow_seed() {
  return make_affine_seed({0.1 * unit_rotation(1, 3), unit_rotation(1, 25)},
                          {Complex(1.0, 0.0), Complex(1.0, 0.0)});
}

ExamplePreset affine_preset(std::string name, SeedSpec seed, int depth,
                            long plot_steps, long analysis_steps,
                            int max_period) {
  ExamplePreset preset;
  preset.name = std::move(name);
  preset.seed = std::move(seed);
  preset.depth = depth;
  preset.lifts.assign(static_cast<std::size_t>(depth),
                      OrderingRule{OrderingKind::lexicographic, 1, 0});
  preset.display_ordering = OrderingRule{OrderingKind::lexicographic, 1, 0};
  preset.initial = {shared_initial_state()};
  preset.plot_steps = plot_steps;
  preset.analysis_steps = analysis_steps;
  preset.max_period = max_period;
  return preset;
}

ExamplePreset rotation_product_preset() {
  ExamplePreset preset;
  preset.name = "4";
  preset.seed = make_second_order_autonomous_seed(
      {unit_rotation(1, 2), unit_rotation(1, 4)},
      {Complex(1.0, 0.0), Complex(2.0, 0.0)});
  preset.depth = 0;
  preset.display_ordering = OrderingRule{OrderingKind::lexicographic, 1, 0};

  const double root4_17 = std::pow(17.0, 0.25);
  const double root4_3 = std::pow(3.0, 0.25);
  const Complex gamma = std::polar(1.0, std::atan(4.0) / 2.0);
  const Complex root4_m3 = std::pow(Complex(-3.0, 0.0), 0.25);
  const Complex x1_0 =
      -(root4_17 + gamma) /
      (root4_17 + (Complex(1.0, 2.0)) * gamma - 2.0 * root4_m3 * gamma);
  const Complex x1_1 = (Complex(1.0, 1.0) - root4_3 * unit_rotation(1, 8)) * x1_0;

  preset.initial = {RootSet{{x1_0, Complex(1.0, 0.0)}},
                    RootSet{{x1_1, Complex(1.0, 0.0)}}};
  preset.plot_steps = 32;
  preset.analysis_steps = 40;
  preset.max_period = 10;
  return preset;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"1a", "1b", "1c", "2a", "2b", "3a", "3b", "4"};
}

ExamplePreset example_preset(const std::string& name) {
  if (name == "1a") {
    ExamplePreset preset =
        affine_preset("1a", isochronous_seed(), 0, 15, 45, 15);
    preset.plane_figure = true;
    return preset;
  }
  if (name == "1b") return affine_preset("1b", mixed_seed(), 0, 56, 230, 20);
  if (name == "1c") {
    ExamplePreset preset =
        affine_preset("1c", damped_slow_seed(), 0, 25, 180, 60);
    preset.display_ordering = OrderingRule{OrderingKind::contiguity, 1, 0};
    preset.plane_figure = true;
    return preset;
  }
  if (name == "2a") return affine_preset("2a", isochronous_seed(), 1, 15, 45, 15);
  if (name == "2b") return affine_preset("2b", mixed_seed(), 1, 56, 230, 20);
  if (name == "3a") return affine_preset("3a", isochronous_seed(), 2, 15, 45, 15);
  if (name == "3b") return affine_preset("3b", mixed_seed(), 2, 56, 230, 20);
  if (name == "4") return rotation_product_preset();
  throw std::invalid_argument("unknown preset: " + name);
}

}  // namespace polygen
