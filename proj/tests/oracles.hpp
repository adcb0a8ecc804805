// Test-only oracles, kept independent of the library's decomposition path.
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "sdq/matrix.hpp"

namespace sdq::test {

/// Cyclic Jacobi eigensolver for symmetric matrices; eigenvalues descending.
inline std::vector<double> jacobi_symmetric_eigenvalues(Matrix a, int max_sweeps = 100) {
  const std::size_t n = a.rows();
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (off < 1e-26 * frobenius_norm(a) * frobenius_norm(a) + 1e-300) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t i = 0; i < n; ++i) {
          const double aip = a(i, p), aiq = a(i, q);
          a(i, p) = c * aip - s * aiq;
          a(i, q) = s * aip + c * aiq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double api = a(p, i), aqi = a(q, i);
          a(p, i) = c * api - s * aqi;
          a(q, i) = s * api + c * aqi;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a(i, i);
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

/// Singular values of A through the Gram matrix route (independent of svd()).
inline std::vector<double> gram_singular_values(const Matrix& a) {
  const Matrix gram = transpose(a) * a;
  auto ev = jacobi_symmetric_eigenvalues(gram);
  for (double& v : ev) v = std::sqrt(std::max(0.0, v));
  return ev;
}

}  // namespace sdq::test
