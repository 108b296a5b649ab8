#include "polygen/assignment.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace polygen {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_square(const std::vector<std::vector<double>>& cost) {
  if (cost.empty()) throw std::invalid_argument("assignment: empty cost matrix");
  for (const auto& row : cost)
    if (row.size() != cost.size())
      throw std::invalid_argument("assignment: cost matrix not square");
}

// Kuhn augmenting path restricted to edges with cost <= threshold.
bool try_augment(const std::vector<std::vector<double>>& cost, double threshold,
                 int row, std::vector<char>& visited, std::vector<int>& row_of_col) {
  const int n = static_cast<int>(cost.size());
  for (int col = 0; col < n; ++col) {
    if (visited[col] || cost[row][col] > threshold) continue;
    visited[col] = 1;
    if (row_of_col[col] < 0 ||
        try_augment(cost, threshold, row_of_col[col], visited, row_of_col)) {
      row_of_col[col] = row;
      return true;
    }
  }
  return false;
}

bool feasible(const std::vector<std::vector<double>>& cost, double threshold,
              std::vector<int>& row_of_col) {
  const int n = static_cast<int>(cost.size());
  row_of_col.assign(n, -1);
  for (int row = 0; row < n; ++row) {
    std::vector<char> visited(n, 0);
    if (!try_augment(cost, threshold, row, visited, row_of_col)) return false;
  }
  return true;
}

}  // namespace

std::vector<int> min_cost_assignment(const std::vector<std::vector<double>>& cost) {
  check_square(cost);
  const int n = static_cast<int>(cost.size());
  // Potentials u (rows), v (columns); p[j] holds the row matched to column j,
  // with index 0 as the virtual start column (1-based internally).
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      int j1 = -1;
      double delta = kInf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> result(n, -1);
  for (int j = 1; j <= n; ++j)
    if (p[j] != 0) result[p[j] - 1] = j - 1;
  return result;
}

BottleneckResult bottleneck_assignment(const std::vector<std::vector<double>>& cost) {
  check_square(cost);
  const int n = static_cast<int>(cost.size());
  std::vector<double> levels;
  levels.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& row : cost) levels.insert(levels.end(), row.begin(), row.end());
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  std::vector<int> row_of_col;
  std::size_t lo = 0, hi = levels.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (feasible(cost, levels[mid], row_of_col))
      hi = mid;
    else
      lo = mid + 1;
  }
  if (!feasible(cost, levels[lo], row_of_col))
    throw std::invalid_argument("bottleneck_assignment: no perfect matching");

  BottleneckResult out;
  out.value = levels[lo];
  out.assignment.assign(n, -1);
  for (int col = 0; col < n; ++col)
    if (row_of_col[col] >= 0) out.assignment[row_of_col[col]] = col;
  return out;
}

}  // namespace polygen
