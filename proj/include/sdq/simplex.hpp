#pragma once

#include <optional>
#include <vector>

namespace sdq {

/// min objective.x  subject to  rows.x <= rhs,  x >= 0.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
};

struct LpSolution {
  std::vector<double> x;
  double objective = 0.0;
};

/// Dense two-phase primal simplex in long double, sized for the small,
/// degenerate filter-design programs. Deterministic: most-negative-cost
/// pivoting with a largest-pivot tie-break, falling back to Bland's rule when
/// progress stalls. Returns nullopt when infeasible; throws NumericalError if
/// the pivot cap is hit. Assumes a bounded objective (true here: nonnegative
/// costs over x >= 0), and callers should validate the returned point.
std::optional<LpSolution> solve_lp(const LinearProgram& lp);

}  // namespace sdq
