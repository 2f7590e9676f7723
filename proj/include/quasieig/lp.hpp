#pragma once

#include "quasieig/matrix.hpp"

namespace qe {

/// maximise ε subject to G·x ≥ ε·1, Σx = 1, x ≥ 0 (G is m×n).
struct MaxEpsProblem {
  Matrix g;
};

struct LpSolution {
  enum class Status { Optimal, Unbounded, Infeasible };

  double eps_star = 0.0;
  /// Point of the simplex attaining eps_star.
  Vector x_star;
  Status status = Status::Optimal;
};

/// Dense simplex with Bland's rule. The problem is always feasible and
/// bounded for finite G, so the status is always Optimal. Throws
/// NumericalBreakdown if the pivot budget is exhausted.
LpSolution solve_max_eps(const MaxEpsProblem& problem);

}  // namespace qe
