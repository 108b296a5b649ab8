#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "polygen/config.hpp"
#include "polygen/engine.hpp"
#include "polygen/presets.hpp"
#include "polygen/report.hpp"

namespace polygen {

/// Runs the command-line interface on the given arguments (program name
/// excluded) and streams. Returns the process exit code: 0 success,
/// 1 verification failure, 2 config error, 3 numerical failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

/// The run configuration equivalent to a preset (analysis horizon and
/// period-scan bound included).
[[nodiscard]] RunConfig preset_run_config(const ExamplePreset& preset);

/// Solves the configured run and fills the display ordering.
[[nodiscard]] Trajectory compute_trajectory(const RunConfig& config);

/// Runs the verification suite on one configuration: iterated and
/// closed-form solves must agree, the coefficient/zero key identity must
/// hold along the trajectory, and zeros must round-trip to the stored
/// coefficients. config.perturb != 0 injects a deliberate inconsistency so
/// the suite is expected to fail (negative control).
[[nodiscard]] VerifyReport run_verification(const RunConfig& config,
                                            const std::string& subject);

}  // namespace polygen
