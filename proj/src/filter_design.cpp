#include "sdq/filter_design.hpp"

#include <cmath>
#include <iostream>
#include <string>

#include "sdq/errors.hpp"
#include "sdq/matrix.hpp"
#include "sdq/simplex.hpp"

namespace sdq {

namespace {

double binomial(int n, int k) {
  double b = 1.0;
  for (int j = 1; j <= k; ++j) b = b * static_cast<double>(n - k + j) / static_cast<double>(j);
  return std::round(b);
}

// min ||g||_1 over g in R^{d+1}, g_0 = 1, subject to
// ||delta^(0) - Delta^r g||_1 <= gamma. Variables: p_1..p_d, n_1..n_d
// (g_l = p_l - n_l) and t_1..t_{d+r} bounding |h_i|.
std::optional<LpSolution> solve_filter_lp(int r, double gamma, int d) {
  const int nt = d + r;
  const std::size_t nv = static_cast<std::size_t>(2 * d + nt);
  LinearProgram lp;
  lp.objective.assign(nv, 0.0);
  for (int l = 0; l < 2 * d; ++l) lp.objective[static_cast<std::size_t>(l)] = 1.0;

  // h_i = a_i - sum_l coef(i,l) g_l with a_i the contribution of g_0 = 1.
  auto a_of = [&](int i) {
    if (i > r) return 0.0;
    return -((i % 2 == 0) ? 1.0 : -1.0) * binomial(r, i);
  };
  auto coef = [&](int i, int l) {
    const int dd = i - l;
    if (dd < 0 || dd > r) return 0.0;
    return ((dd % 2 == 0) ? 1.0 : -1.0) * binomial(r, dd);
  };

  for (int i = 1; i <= nt; ++i) {
    std::vector<double> pos(nv, 0.0), neg(nv, 0.0);
    for (int l = 1; l <= d; ++l) {
      const double c = coef(i, l);
      pos[static_cast<std::size_t>(l - 1)] = -c;
      pos[static_cast<std::size_t>(d + l - 1)] = c;
      neg[static_cast<std::size_t>(l - 1)] = c;
      neg[static_cast<std::size_t>(d + l - 1)] = -c;
    }
    pos[static_cast<std::size_t>(2 * d + i - 1)] = -1.0;
    neg[static_cast<std::size_t>(2 * d + i - 1)] = -1.0;
    lp.rows.push_back(std::move(pos));  //  h_i - t_i <= 0
    lp.rhs.push_back(-a_of(i));
    lp.rows.push_back(std::move(neg));  // -h_i - t_i <= 0
    lp.rhs.push_back(a_of(i));
  }
  std::vector<double> budget(nv, 0.0);
  for (int i = 0; i < nt; ++i) budget[static_cast<std::size_t>(2 * d + i)] = 1.0;
  lp.rows.push_back(std::move(budget));  // sum_i t_i <= gamma
  lp.rhs.push_back(gamma);

  return solve_lp(lp);
}

}  // namespace

FilterPair design_coarse_filter(int r, double gamma, const Alphabet& a) {
  if (r < 1) throw DomainError("design_coarse_filter: order must be >= 1");
  if (!(gamma > 1.0))
    throw InfeasibleError("design_coarse_filter: gamma must exceed 1 (got " +
                          std::to_string(gamma) + ")");
  if (gamma > 2.0 * static_cast<double>(a.levels))
    throw InfeasibleError("design_coarse_filter: gamma > 2L leaves no admissible inputs");

  constexpr int kHardCap = 64;
  const double sigma = std::ceil(M_PI * M_PI / (std::acosh(gamma) * std::acosh(gamma)));
  int d_max = std::max(static_cast<int>(std::min(sigma * r, double(kHardCap))), r + 1);

  struct Best {
    double objective;
    FilterPair filter;
  };
  std::optional<Best> best;
  int d_lo = r;
  for (;;) {
    for (int d = d_lo; d <= d_max; ++d) {
      auto sol = solve_filter_lp(r, gamma, d);
      if (!sol) continue;
      const double objective = 1.0 + sol->objective;  // |g_0| contributes 1
      if (best && objective >= best->objective - 1e-12) continue;
      std::vector<double> g(static_cast<std::size_t>(d) + 1, 0.0);
      g[0] = 1.0;
      for (int l = 1; l <= d; ++l)
        g[static_cast<std::size_t>(l)] =
            sol->x[static_cast<std::size_t>(l - 1)] - sol->x[static_cast<std::size_t>(d + l - 1)];
      while (g.size() > 1 && g.back() == 0.0) g.pop_back();
      try {
        // Trust nothing from the solver: recompute h and the budget check.
        FilterPair f = make_filter_pair(std::move(g), r, gamma);
        best = Best{objective, std::move(f)};
      } catch (const InfeasibleError&) {
        // solver point failed independent validation at this d; keep sweeping
      }
    }
    if (best || d_max >= kHardCap) break;
    // The usual sweep bound missed; widen and note it rather than guess.
    d_lo = d_max + 1;
    d_max = std::min(kHardCap, 2 * d_max);
    std::cerr << "design_coarse_filter: widening length sweep to d <= " << d_max
              << " for r=" << r << ", gamma=" << gamma << "\n";
  }
  if (!best)
    throw InfeasibleError("design_coarse_filter: no stable filter up to d = " +
                          std::to_string(kHardCap) + " for r = " + std::to_string(r) +
                          ", gamma = " + std::to_string(gamma));
  return std::move(best->filter);
}

nlohmann::json filter_to_json(const FilterPair& f) {
  return nlohmann::json{{"r", f.r}, {"gamma", f.gamma}, {"g", f.g}, {"h", f.h}};
}

FilterPair filter_from_json(const nlohmann::json& j) {
  for (const char* key : {"r", "gamma", "g", "h"}) {
    if (!j.contains(key))
      throw ConfigError(std::string("filter document missing key '") + key + "'");
  }
  FilterPair f = make_filter_pair(j.at("g").get<std::vector<double>>(), j.at("r").get<int>(),
                                  j.at("gamma").get<double>());
  const auto h = j.at("h").get<std::vector<double>>();
  if (h != f.h)
    throw ConfigError("filter document key 'h' is inconsistent with 'g'");
  return f;
}

}  // namespace sdq
