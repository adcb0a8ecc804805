#include "sdq/simplex.hpp"

#include <cmath>
#include <limits>

#include "sdq/errors.hpp"

namespace sdq {

namespace {

constexpr long double kReducedCostTol = 1e-9L;
constexpr long double kPivotTol = 1e-9L;
constexpr int kMaxPivots = 200000;
constexpr int kStallLimit = 100;  // pivots without progress before Bland mode

// Dense tableau in long double: these programs are small but heavily
// degenerate, and the extra mantissa keeps hundreds of pivots honest.
// Column layout: structural | slack | artificial | rhs.
struct Tableau {
  std::vector<std::vector<long double>> t;  // m constraint rows + cost row
  std::vector<std::size_t> basis;
  std::size_t n_cols = 0;  // excludes rhs

  long double rhs(std::size_t i) const { return t[i][n_cols]; }

  void pivot(std::size_t row, std::size_t col) {
    auto& pr = t[row];
    const long double p = pr[col];
    for (auto& v : pr) v /= p;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i == row) continue;
      const long double f = t[i][col];
      if (f == 0.0L) continue;
      for (std::size_t j = 0; j <= n_cols; ++j) t[i][j] -= f * pr[j];
    }
    basis[row] = col;
  }
};

enum class IterateEnd { optimal, no_pivot };

// Most-negative-cost entering with a largest-pivot ratio tie-break; switches
// to Bland's rule (lowest indices) after kStallLimit pivots without objective
// progress, which restores the termination guarantee under degeneracy.
IterateEnd simplex_iterate(Tableau& tab, std::size_t allowed_cols, int& pivots) {
  const std::size_t m = tab.basis.size();
  auto& cost = tab.t[m];
  bool bland = false;
  int stall = 0;
  long double last_objective = -cost[tab.n_cols];
  for (;;) {
    std::size_t enter = allowed_cols;
    if (bland) {
      for (std::size_t j = 0; j < allowed_cols; ++j) {
        if (cost[j] < -kReducedCostTol) {
          enter = j;
          break;
        }
      }
    } else {
      long double best = -kReducedCostTol;
      for (std::size_t j = 0; j < allowed_cols; ++j) {
        if (cost[j] < best) {
          best = cost[j];
          enter = j;
        }
      }
    }
    if (enter == allowed_cols) return IterateEnd::optimal;

    long double best_ratio = std::numeric_limits<long double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      const long double a = tab.t[i][enter];
      if (a > kPivotTol) {
        const long double ratio = std::max(tab.rhs(i), 0.0L) / a;
        if (ratio < best_ratio) best_ratio = ratio;
      }
    }
    if (best_ratio == std::numeric_limits<long double>::infinity())
      return IterateEnd::no_pivot;
    const long double tie = best_ratio + 1e-9L * (1.0L + best_ratio);
    std::size_t leave = m;
    long double leave_pivot = 0.0L;
    for (std::size_t i = 0; i < m; ++i) {
      const long double a = tab.t[i][enter];
      if (a > kPivotTol && std::max(tab.rhs(i), 0.0L) / a <= tie) {
        const bool better = bland ? (leave == m || tab.basis[i] < tab.basis[leave])
                                  : (a > leave_pivot);
        if (better) {
          leave = i;
          leave_pivot = a;
        }
      }
    }
    tab.pivot(leave, enter);
    if (++pivots > kMaxPivots)
      throw NumericalError("simplex: pivot cap exceeded",
                           static_cast<double>(-cost[tab.n_cols]));

    const long double objective = -cost[tab.n_cols];
    if (objective < last_objective - kReducedCostTol) {
      last_objective = objective;
      stall = 0;
    } else if (!bland && ++stall > kStallLimit) {
      bland = true;
    }
  }
}

}  // namespace

std::optional<LpSolution> solve_lp(const LinearProgram& lp) {
  const std::size_t n = lp.objective.size();
  const std::size_t m = lp.rows.size();
  if (lp.rhs.size() != m) throw DomainError("solve_lp: rhs length mismatch");
  for (const auto& row : lp.rows)
    if (row.size() != n) throw DomainError("solve_lp: row length mismatch");

  std::size_t n_art = 0;
  for (double b : lp.rhs)
    if (b < 0.0) ++n_art;

  Tableau tab;
  tab.n_cols = n + m + n_art;
  tab.t.assign(m + 1, std::vector<long double>(tab.n_cols + 1, 0.0L));
  tab.basis.assign(m, 0);

  std::size_t art = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = lp.rhs[i] < 0.0;
    const long double sgn = flip ? -1.0L : 1.0L;
    for (std::size_t j = 0; j < n; ++j) tab.t[i][j] = sgn * lp.rows[i][j];
    tab.t[i][n + i] = sgn;  // slack (surplus when flipped)
    tab.t[i][tab.n_cols] = sgn * lp.rhs[i];
    if (flip) {
      tab.t[i][n + m + art] = 1.0L;
      tab.basis[i] = n + m + art;
      ++art;
    } else {
      tab.basis[i] = n + i;
    }
  }

  int pivots = 0;
  if (n_art > 0) {
    // Phase 1: minimize the artificial sum; price out the basic artificials.
    auto& cost = tab.t[m];
    for (std::size_t j = n + m; j < n + m + n_art; ++j) cost[j] = 1.0L;
    for (std::size_t i = 0; i < m; ++i) {
      if (tab.basis[i] >= n + m) {
        for (std::size_t j = 0; j <= tab.n_cols; ++j) cost[j] -= tab.t[i][j];
      }
    }
    // The artificial sum is bounded below by zero, so no_pivot here can only
    // be numerical exhaustion; either way the residual decides feasibility.
    simplex_iterate(tab, tab.n_cols, pivots);
    const long double infeasibility = -tab.t[m][tab.n_cols];
    if (infeasibility > 1e-7L) return std::nullopt;
    // Drive leftover artificials out of the basis, pivoting on the largest
    // available element; an all-zero row is redundant and can stay parked.
    for (std::size_t i = 0; i < m; ++i) {
      if (tab.basis[i] < n + m) continue;
      std::size_t col = n + m;
      long double best = kPivotTol;
      for (std::size_t j = 0; j < n + m; ++j) {
        const long double a = std::abs(tab.t[i][j]);
        if (a > best) {
          best = a;
          col = j;
        }
      }
      if (col < n + m) tab.pivot(i, col);
    }
  }

  // Phase 2 objective, priced out against the current basis. Artificial
  // columns are barred from entering. For the bounded programs this solver
  // targets, a no_pivot end still leaves a feasible point in the tableau, and
  // callers validate what they get.
  auto& cost = tab.t[m];
  for (std::size_t j = 0; j <= tab.n_cols; ++j) cost[j] = 0.0L;
  for (std::size_t j = 0; j < n; ++j) cost[j] = lp.objective[j];
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t b = tab.basis[i];
    if (b < n && cost[b] != 0.0L) {
      const long double f = cost[b];
      for (std::size_t j = 0; j <= tab.n_cols; ++j) cost[j] -= f * tab.t[i][j];
    }
  }
  simplex_iterate(tab, n + m, pivots);

  LpSolution sol;
  sol.x.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (tab.basis[i] < n)
      sol.x[tab.basis[i]] = static_cast<double>(std::max(tab.rhs(i), 0.0L));
  }
  sol.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) sol.objective += lp.objective[j] * sol.x[j];
  return sol;
}

}  // namespace sdq
