#include "halcece/assignment.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace halcece {

Assignment solve_assignment(const CostMatrix& cost) {
  const std::size_t n = cost.n;
  if (cost.cells.size() != n * n)
    throw std::invalid_argument("cost matrix is not square");
  for (double c : cost.cells)
    if (!std::isfinite(c))
      throw std::invalid_argument("cost matrix entries must be finite");

  Assignment out;
  out.column_of_row.assign(n, 0);
  if (n == 0) return out;

  constexpr std::size_t kFree = static_cast<std::size_t>(-1);
  const double inf = std::numeric_limits<double>::infinity();

  // p[j] = row currently matched to column j; column n is a virtual column
  // holding the row being augmented. u/v are the dual potentials.
  std::vector<std::size_t> p(n + 1, kFree);
  std::vector<double> u(n, 0.0), v(n + 1, 0.0);

  for (std::size_t i = 0; i < n; ++i) {
    p[n] = i;
    std::size_t j0 = n;
    std::vector<double> minv(n + 1, inf);
    std::vector<std::size_t> way(n + 1, n);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = n;
      for (std::size_t j = 0; j < n; ++j) {
        if (used[j]) continue;
        const double reduced = cost.at(i0, j) - u[i0] - v[j];
        if (reduced < minv[j]) {
          minv[j] = reduced;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != kFree);
    // Walk the augmenting path back to the virtual column.
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != n);
  }

  for (std::size_t j = 0; j < n; ++j) {
    out.column_of_row[p[j]] = j;
    out.total += cost.at(p[j], j);
  }
  return out;
}

}  // namespace halcece
