#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "sdq/alphabet.hpp"
#include "sdq/matrix.hpp"
#include "sdq/random_ensembles.hpp"

namespace sdq {

/// A sparse recovery routine: maps (phi, y, k) to a k-sparse estimate.
using SparseDecoder =
    std::function<std::vector<double>(const Matrix&, std::span<const double>, std::size_t)>;

/// Orthogonal matching pursuit, k iterations: greedy column selection plus a
/// least-squares refit on the growing support. The default robust decoder.
/// Throws NumericalError if the support submatrix becomes rank deficient.
std::vector<double> robust_decode(const Matrix& phi, std::span<const double> y,
                                  std::size_t k);

/// Indices of the k largest magnitudes, sorted; ties go to the lower index.
std::vector<std::size_t> top_k_support(std::span<const double> v, std::size_t k);

struct TwoStageEstimate {
  std::vector<double> stage_one;      // k-sparse decoder output, length n
  std::vector<std::size_t> support;   // best k-term support of stage one
  std::vector<double> refined;        // Sobolev-dual refit on the support, length n
};

/// Stage one decodes q as noisy measurements; stage two reconstructs with the
/// Sobolev dual of the support submatrix.
TwoStageEstimate two_stage_decode(const Matrix& phi, std::span<const double> q,
                                  std::size_t k, int r,
                                  const SparseDecoder& decoder = {});

struct CsRunResult {
  double lambda = 0.0;  // m / k
  std::size_t n = 0;
  std::size_t k = 0;
  int r = 1;
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  bool support_recovered = false;
  double coarse_error_l2 = 0.0;  // stage-one error ||z - z_hat||_2
  double error_l2 = 0.0;         // stage-two error on the true support; NaN if missed
};

struct CsSweepConfig {
  std::size_t n = 256;
  std::size_t k = 4;
  int r = 2;
  std::vector<double> lambdas;
  std::size_t trials = 100;
  std::int64_t levels = 0;  // <= 0: sized from the input-range bound
  double step = 0.01;
  double min_magnitude = 0.2;
  double max_magnitude = 0.4;
  Family family = Family::gaussian;
  Normalization normalization = Normalization::one_over_sqrt_m;
  std::uint64_t seed = 1;
  std::uint64_t seed_offset = 0;
  int jobs = 0;
  std::string out;
};

struct CsSweepFailure {
  double lambda = 0.0;
  std::uint64_t trial = 0;
  std::string message;
};

struct CsSweepOutcome {
  std::vector<CsRunResult> records;
  std::vector<CsSweepFailure> failures;
};

CsSweepOutcome cs_error_sweep(const CsSweepConfig& config);

std::string cs_results_to_csv(const std::vector<CsRunResult>& records);
CsRunResult cs_result_from_csv_row(const std::string& line);
inline constexpr const char* kCsCsvHeader =
    "lambda,n,k,r,trial,seed,support_recovered,coarse_error_l2,error_l2";

}  // namespace sdq
