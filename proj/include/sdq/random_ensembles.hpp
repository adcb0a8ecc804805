#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "sdq/matrix.hpp"

namespace sdq {

enum class Family { gaussian, bernoulli, uniform_bounded };
enum class Normalization { unit_variance, one_over_sqrt_m };

std::string to_string(Family f);
std::string to_string(Normalization n);
Family family_from_string(const std::string& s);
Normalization normalization_from_string(const std::string& s);

/// Sub-Gaussian ensemble description. Every family has mean-zero unit-variance
/// entries before normalization; one_over_sqrt_m scales all entries by
/// rows^{-1/2}.
struct FrameEnsembleSpec {
  Family family = Family::gaussian;
  std::size_t rows = 1;  // m
  std::size_t cols = 1;  // k
  Normalization normalization = Normalization::unit_variance;
  std::uint64_t seed = 0;
};

/// Draws the matrix; bit-identical for identical specs.
Matrix draw_frame(const FrameEnsembleSpec& spec);

/// k-sparse test signal: support uniform among size-k subsets, nonzero
/// magnitudes uniform in [min_magnitude, max_magnitude], random signs.
struct SparseSignalSpec {
  std::size_t dimension = 1;  // n
  std::size_t sparsity = 1;   // k
  double min_magnitude = 1.0;
  double max_magnitude = 1.0;
  std::uint64_t seed = 0;
};

std::vector<double> draw_sparse_signal(const SparseSignalSpec& spec);

/// Support of a drawn signal (sorted indices of the nonzeros).
std::vector<std::size_t> signal_support(std::span<const double> z);

// JSON uses the wire keys {"family", "m", "k", "normalization", "seed"}.
nlohmann::json to_json(const FrameEnsembleSpec& spec);
FrameEnsembleSpec frame_spec_from_json(const nlohmann::json& j);

}  // namespace sdq
