#pragma once

#include <string>
#include <vector>

#include "polygen/engine.hpp"
#include "polygen/polynomial.hpp"
#include "polygen/seeds.hpp"

namespace polygen {

/// A frozen example configuration: seed, generation depth, initial states,
/// plotting and analysis horizons, and the ordering used for display.
struct ExamplePreset {
  std::string name;
  SeedSpec seed;
  int depth = 0;                    // number of lifts above generation zero
  std::vector<OrderingRule> lifts;  // one rule per lift
  OrderingRule display_ordering;    // ordering applied to the emitted series
  std::vector<RootSet> initial;     // seed.order() states
  long plot_steps = 0;              // horizon of the emitted figures
  long analysis_steps = 0;          // horizon of the period analysis
  int max_period = 0;               // period-scan bound for this example
  bool plane_figure = false;        // emit the complex-plane scatter as well
};

/// Names of the built-in example presets.
[[nodiscard]] std::vector<std::string> preset_names();

/// Returns the named preset. Throws std::invalid_argument for unknown names.
[[nodiscard]] ExamplePreset example_preset(const std::string& name);

}  // namespace polygen
