#pragma once

#include <vector>

#include "sdq/matrix.hpp"

namespace sdq {

/// Lower bidiagonal first-difference matrix D: 1 on the diagonal, -1 below.
Matrix difference_matrix(std::size_t m);

/// D^r, the alternating binomial band.
Matrix difference_power(std::size_t m, int r);

/// D^{-r}; entry (i,j) = binomial(i-j+r-1, r-1) for i >= j. Built exactly by
/// iterated prefix sums of integer columns; throws CapacityError as soon as an
/// entry would pass 2^53 and stop being an exact integer in a double.
Matrix inverse_difference_power(std::size_t m, int r);

struct SvdResult {
  Matrix u;                             // m x m, orthonormal
  std::vector<double> singular_values;  // nonincreasing, length min(m, n)
  Matrix vt;                            // n x n, orthonormal (transposed factor)
};

/// Full SVD. Deterministic for a fixed input.
SvdResult svd(const Matrix& a);

/// Singular values only (nonincreasing).
std::vector<double> singular_values(const Matrix& a);

double smallest_singular_value(const Matrix& a);

/// Spectral norm, i.e. the largest singular value.
double operator_norm(const Matrix& a);

/// Moore-Penrose left inverse (A*A)^{-1}A* of a full-column-rank matrix.
/// Throws SingularityError when sigma_min <= 1e-12 * sigma_max.
Matrix pseudo_inverse(const Matrix& a);

/// Sobolev dual F = (D^{-r}E)^† D^{-r}, the left inverse of E minimizing
/// ||F D^r||.
Matrix sobolev_dual(const Matrix& e, int r);

/// D^{-r} A without forming D^{-r}: r-fold prefix sums down each column.
Matrix apply_inverse_difference(Matrix a, int r);
std::vector<double> apply_inverse_difference(std::vector<double> v, int r);

/// A D^{-r}: r-fold suffix sums along each row.
Matrix apply_inverse_difference_right(Matrix a, int r);

}  // namespace sdq
