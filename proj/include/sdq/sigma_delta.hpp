#pragma once

#include <span>
#include <vector>

#include "sdq/alphabet.hpp"

namespace sdq {

/// One quantization run: output q, state sequence u, and (for coarse schemes)
/// the auxiliary state v with u = g * v. All state starts at zero, and every
/// trace satisfies Delta^r u = y - q.
struct SigmaDeltaTrace {
  std::vector<double> q;
  std::vector<double> u;
  std::vector<double> v;  // empty for greedy schemes
};

/// rth-order greedy scheme:
///   q_i = Q( sum_{j=1}^r (-1)^{j-1} C(r,j) u_{i-j} + y_i ),  u_i = arg - q_i.
SigmaDeltaTrace greedy_sigma_delta(std::span<const double> y, int r, const Alphabet& a);

/// Coarse-scheme filter pair: g with g_0 = 1, and h = delta^(0) - Delta^r g
/// (so h_0 = 0 and the recursion stays causal). gamma is the stability budget
/// the pair was designed for; the invariant ||h||_1 <= gamma holds.
struct FilterPair {
  std::vector<double> g;
  std::vector<double> h;
  int r = 1;
  double gamma = 0.0;
};

/// Builds the pair from g, computing h by r-fold differencing. Throws
/// DomainError if g_0 != 1, InfeasibleError if ||h||_1 > gamma.
FilterPair make_filter_pair(std::vector<double> g, int r, double gamma);

/// Largest admissible ||y||_inf for running f against alphabet a:
/// mu = (2L - gamma) * delta / 2.
double coarse_input_bound(const FilterPair& f, const Alphabet& a);

/// Coarse scheme: q_i = Q((h*v)_i + y_i), v_i = (h*v)_i + y_i - q_i, u = g*v.
/// Throws OverrangeError when ||y||_inf exceeds the admissible bound, since
/// the stability guarantee is void there.
SigmaDeltaTrace coarse_sigma_delta(std::span<const double> y, const FilterPair& f,
                                   const Alphabet& a);

/// Delta^r applied to a finitely supported sequence; the support grows by r.
std::vector<double> difference_iterate(std::span<const double> g, int r);

/// Delta^r with zero initial conditions, truncated to the input length
/// (multiplication by the matrix D^r).
std::vector<double> apply_difference(std::span<const double> u, int r);

/// Causal convolution (g * v)_i = sum_j g_j v_{i-j}, truncated to |v| terms.
std::vector<double> convolve_causal(std::span<const double> g, std::span<const double> v);

/// ||Delta^r u - (y - q)||_inf: residual of the defining recursion.
double trace_residual(std::span<const double> y, const SigmaDeltaTrace& t, int r);

}  // namespace sdq
