#include "sdq/sigma_delta.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sdq/errors.hpp"
#include "sdq/matrix.hpp"

namespace sdq {

namespace {

void check_order(int r) {
  if (r < 1) throw DomainError("sigma-delta order must be >= 1");
  if (r > 40) throw DomainError("sigma-delta order too large: " + std::to_string(r));
}

std::vector<double> binomial_row(int r) {
  std::vector<double> b(static_cast<std::size_t>(r) + 1, 0.0);
  b[0] = 1.0;
  for (int n = 1; n <= r; ++n)
    for (int j = n; j >= 1; --j)
      b[static_cast<std::size_t>(j)] += b[static_cast<std::size_t>(j - 1)];
  return b;
}

void require_finite(std::span<const double> y) {
  for (double v : y)
    if (!std::isfinite(v)) throw DomainError("sigma-delta input must be finite");
}

}  // namespace

SigmaDeltaTrace greedy_sigma_delta(std::span<const double> y, int r, const Alphabet& a) {
  check_order(r);
  require_finite(y);
  const auto binom = binomial_row(r);
  const std::size_t m = y.size();
  SigmaDeltaTrace t;
  t.q.resize(m);
  t.u.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    double acc = y[i];
    for (int j = 1; j <= r && static_cast<std::size_t>(j) <= i; ++j) {
      const double sign = (j % 2 == 1) ? 1.0 : -1.0;
      acc += sign * binom[static_cast<std::size_t>(j)] * t.u[i - static_cast<std::size_t>(j)];
    }
    t.q[i] = scalar_quantize(a, acc);
    t.u[i] = acc - t.q[i];
  }
  return t;
}

std::vector<double> difference_iterate(std::span<const double> g, int r) {
  if (r < 0) throw DomainError("difference order must be >= 0");
  std::vector<double> h(g.begin(), g.end());
  for (int pass = 0; pass < r; ++pass) {
    h.push_back(0.0);
    for (std::size_t i = h.size(); i-- > 1;) h[i] = h[i] - h[i - 1];
  }
  return h;
}

std::vector<double> apply_difference(std::span<const double> u, int r) {
  auto full = difference_iterate(u, r);
  full.resize(u.size());
  return full;
}

std::vector<double> convolve_causal(std::span<const double> g, std::span<const double> v) {
  std::vector<double> u(v.size(), 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    double acc = 0.0;
    const std::size_t jmax = std::min(i, g.size() - 1);
    for (std::size_t j = 0; j <= jmax; ++j) acc += g[j] * v[i - j];
    u[i] = acc;
  }
  return u;
}

FilterPair make_filter_pair(std::vector<double> g, int r, double gamma) {
  check_order(r);
  if (g.empty() || g.front() != 1.0)
    throw DomainError("filter pair: g must start with g_0 = 1");
  FilterPair f;
  f.r = r;
  f.gamma = gamma;
  f.h = difference_iterate(g, r);
  for (double& x : f.h) x = -x;
  f.h[0] += 1.0;  // exact: g_0 = 1 cancels the Kronecker delta
  f.g = std::move(g);
  if (norm_l1(f.h) > gamma + 1e-9)
    throw InfeasibleError("filter pair: ||h||_1 = " + std::to_string(norm_l1(f.h)) +
                          " exceeds gamma = " + std::to_string(gamma));
  return f;
}

double coarse_input_bound(const FilterPair& f, const Alphabet& a) {
  return (2.0 * static_cast<double>(a.levels) - f.gamma) * a.step / 2.0;
}

SigmaDeltaTrace coarse_sigma_delta(std::span<const double> y, const FilterPair& f,
                                   const Alphabet& a) {
  check_order(f.r);
  require_finite(y);
  if (f.g.empty() || f.g.front() != 1.0 || f.h.empty() || f.h.front() != 0.0)
    throw DomainError("coarse_sigma_delta: malformed filter pair");
  const double mu = coarse_input_bound(f, a);
  const double ymax = norm_linf(y);
  if (ymax > mu)
    throw OverrangeError("coarse_sigma_delta: ||y||_inf = " + std::to_string(ymax) +
                         " exceeds admissible bound mu = " + std::to_string(mu));
  const std::size_t m = y.size();
  SigmaDeltaTrace t;
  t.q.resize(m);
  t.v.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    double acc = y[i];
    const std::size_t jmax = std::min(i, f.h.size() - 1);
    for (std::size_t j = 1; j <= jmax; ++j) acc += f.h[j] * t.v[i - j];
    t.q[i] = scalar_quantize(a, acc);
    t.v[i] = acc - t.q[i];
  }
  t.u = convolve_causal(f.g, t.v);
  return t;
}

double trace_residual(std::span<const double> y, const SigmaDeltaTrace& t, int r) {
  if (y.size() != t.u.size() || y.size() != t.q.size())
    throw DomainError("trace_residual: length mismatch");
  const auto dru = apply_difference(t.u, r);
  double worst = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i)
    worst = std::max(worst, std::abs(dru[i] - (y[i] - t.q[i])));
  return worst;
}

}  // namespace sdq
