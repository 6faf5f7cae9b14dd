#include "modeshape/assignment.hpp"

#include <limits>

#include "modeshape/errors.hpp"

namespace modeshape {

Assignment solve_assignment(const Matrix& cost) {
  if (cost.rows() != cost.cols()) throw ConformanceError("assignment needs a square cost matrix");
  if (!cost.allFinite()) throw ConformanceError("assignment cost has non-finite entries");

  const auto n = static_cast<std::size_t>(cost.rows());
  const double inf = std::numeric_limits<double>::infinity();

  // 1-based potentials; index 0 is the virtual source column.
  std::vector<double> u(n + 1, 0.0);
  std::vector<double> v(n + 1, 0.0);
  std::vector<std::size_t> match(n + 1, 0);  // match[col] = row
  std::vector<std::size_t> way(n + 1, 0);

  for (std::size_t row = 1; row <= n; ++row) {
    match[0] = row;
    std::size_t col0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[col0] = true;
      const std::size_t i0 = match[col0];
      double delta = inf;
      std::size_t col1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double reduced = cost(static_cast<Index>(i0 - 1), static_cast<Index>(j - 1)) -
                               u[i0] - v[j];
        if (reduced < minv[j]) {
          minv[j] = reduced;
          way[j] = col0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          col1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      col0 = col1;
    } while (match[col0] != 0);
    do {
      const std::size_t col1 = way[col0];
      match[col0] = match[col1];
      col0 = col1;
    } while (col0 != 0);
  }

  Assignment out;
  out.column.assign(n, 0);
  for (std::size_t j = 1; j <= n; ++j) {
    out.column[match[j] - 1] = static_cast<Index>(j - 1);
  }
  for (std::size_t i = 0; i < n; ++i) {
    out.cost += cost(static_cast<Index>(i), out.column[i]);
  }
  return out;
}

}  // namespace modeshape
