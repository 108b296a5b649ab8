#pragma once

#include <string>

#include "polygen/engine.hpp"

namespace polygen {

/// Writes content to path atomically: a temp file in the same directory is
/// renamed over the target. Parent directories are created as needed.
void atomic_write_file(const std::string& path, const std::string& content);

/// CSV of an ordered trajectory, one row per step:
/// ell,t,flag_nongeneric,flag_ambiguous,re_x1,im_x1,...,re_xN,im_xN
/// Values print with %.17g so reruns are byte-identical; complex time stamps
/// print as re+imi. A leading comment records the display ordering, since
/// the underlying states are unordered sets. max_ell truncates the horizon
/// when non-negative. Requires ordered states; throws std::invalid_argument
/// otherwise.
[[nodiscard]] std::string trajectory_csv(const Trajectory& traj,
                                         const std::string& ordering_note,
                                         long max_ell = -1);

/// CSV of one real coordinate per component: ell,re_x1,...,re_xN
/// (imaginary = true emits im_x1,...,im_xN instead).
[[nodiscard]] std::string component_series_csv(const Trajectory& traj,
                                               bool imaginary,
                                               long max_ell = -1);

/// Complex-plane scatter as a self-contained SVG: component 1 as dots,
/// component 2 as stars (further components cycle square/triangle), each
/// point labeled with its time index.
[[nodiscard]] std::string plane_svg(const Trajectory& traj,
                                    const std::string& title, long max_ell = -1);

/// Two stacked panels (real parts above imaginary parts) versus time as a
/// self-contained SVG; connecting segments are visual aids.
[[nodiscard]] std::string series_svg(const Trajectory& traj,
                                     const std::string& title, long max_ell = -1);

/// Parses a CSV produced by trajectory_csv back into a trajectory whose
/// states, ordered vectors, stamps, and flags are filled. Throws config_error
/// on malformed input.
[[nodiscard]] Trajectory parse_trajectory_csv(const std::string& text);

}  // namespace polygen
