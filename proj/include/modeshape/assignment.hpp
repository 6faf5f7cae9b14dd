#pragma once

#include <vector>

#include "modeshape/types.hpp"

namespace modeshape {

struct Assignment {
  /// column[i] is the column assigned to row i.
  std::vector<Index> column;
  double cost = 0.0;
};

/// Minimum-cost perfect matching on a square cost matrix (Hungarian method with potentials).
[[nodiscard]] Assignment solve_assignment(const Matrix& cost);

}  // namespace modeshape
