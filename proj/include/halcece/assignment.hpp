#pragma once

#include <cstddef>
#include <vector>

namespace halcece {

/// Dense square cost matrix, row-major.
struct CostMatrix {
  std::size_t n = 0;
  std::vector<double> cells;

  explicit CostMatrix(std::size_t size = 0, double fill = 0.0)
      : n(size), cells(size * size, fill) {}
  double& at(std::size_t row, std::size_t col) { return cells[row * n + col]; }
  double at(std::size_t row, std::size_t col) const { return cells[row * n + col]; }
};

struct Assignment {
  std::vector<std::size_t> column_of_row;
  double total = 0.0;
};

/// Minimum-cost perfect matching on a square matrix via shortest augmenting
/// paths with dual potentials (Jonker-Volgenant style), O(n^3). Entries must
/// be finite; forbidden cells are expressed with a large finite sentinel.
/// Deterministic: rows are augmented in order and ties resolve to the
/// smallest column index.
Assignment solve_assignment(const CostMatrix& cost);

}  // namespace halcece
