#pragma once

#include <vector>

namespace polygen {

/// Column chosen for each row of a square cost matrix, minimizing the total
/// cost (shortest-augmenting-path method, O(n^3)).
[[nodiscard]] std::vector<int> min_cost_assignment(
    const std::vector<std::vector<double>>& cost);

struct BottleneckResult {
  std::vector<int> assignment;  // column per row
  double value = 0.0;           // largest selected entry
};

/// Perfect assignment minimizing the largest selected entry: binary search
/// over the distinct costs with an augmenting-path feasibility check.
[[nodiscard]] BottleneckResult bottleneck_assignment(
    const std::vector<std::vector<double>>& cost);

}  // namespace polygen
