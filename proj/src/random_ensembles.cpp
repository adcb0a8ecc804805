#include "sdq/random_ensembles.hpp"

#include <algorithm>
#include <cmath>

#include "sdq/errors.hpp"
#include "sdq/rng.hpp"

namespace sdq {

namespace {
constexpr double kSqrt3 = 1.7320508075688772935274463415059;
}

std::string to_string(Family f) {
  switch (f) {
    case Family::gaussian: return "gaussian";
    case Family::bernoulli: return "bernoulli";
    case Family::uniform_bounded: return "uniform_bounded";
  }
  throw DomainError("unknown family");
}

std::string to_string(Normalization n) {
  return n == Normalization::unit_variance ? "unit_variance" : "one_over_sqrt_m";
}

Family family_from_string(const std::string& s) {
  if (s == "gaussian") return Family::gaussian;
  if (s == "bernoulli") return Family::bernoulli;
  if (s == "uniform_bounded") return Family::uniform_bounded;
  throw ConfigError("unknown family '" + s + "'");
}

Normalization normalization_from_string(const std::string& s) {
  if (s == "unit_variance") return Normalization::unit_variance;
  if (s == "one_over_sqrt_m") return Normalization::one_over_sqrt_m;
  throw ConfigError("unknown normalization '" + s + "'");
}

Matrix draw_frame(const FrameEnsembleSpec& spec) {
  if (spec.rows < 1 || spec.cols < 1)
    throw DomainError("draw_frame: dimensions must be positive");
  Matrix e(spec.rows, spec.cols);
  auto& entries = e.entries();
  switch (spec.family) {
    case Family::gaussian: {
      GaussianSampler gauss(spec.seed);
      for (double& v : entries) v = gauss.next();
      break;
    }
    case Family::bernoulli: {
      SplitMix64 rng(spec.seed);
      for (double& v : entries) v = (rng.next_u64() >> 63) ? 1.0 : -1.0;
      break;
    }
    case Family::uniform_bounded: {
      // uniform on [-sqrt(3), sqrt(3)]: mean zero, unit variance
      SplitMix64 rng(spec.seed);
      for (double& v : entries) v = kSqrt3 * (2.0 * rng.next_unit() - 1.0);
      break;
    }
  }
  if (spec.normalization == Normalization::one_over_sqrt_m) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(spec.rows));
    for (double& v : entries) v *= scale;
  }
  return e;
}

std::vector<double> draw_sparse_signal(const SparseSignalSpec& spec) {
  if (spec.dimension < 1) throw DomainError("draw_sparse_signal: dimension must be positive");
  if (spec.sparsity < 1 || spec.sparsity > spec.dimension)
    throw DomainError("draw_sparse_signal: need 1 <= k <= n");
  if (!(spec.min_magnitude > 0.0) || spec.max_magnitude < spec.min_magnitude)
    throw DomainError("draw_sparse_signal: need 0 < min_magnitude <= max_magnitude");

  SplitMix64 rng(spec.seed);
  // Partial Fisher-Yates: the first k entries are a uniform size-k subset.
  std::vector<std::size_t> idx(spec.dimension);
  for (std::size_t i = 0; i < spec.dimension; ++i) idx[i] = i;
  for (std::size_t i = 0; i < spec.sparsity; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.next_u64() % (spec.dimension - i));
    std::swap(idx[i], idx[j]);
  }
  std::vector<double> z(spec.dimension, 0.0);
  for (std::size_t i = 0; i < spec.sparsity; ++i) {
    const double mag =
        spec.min_magnitude + (spec.max_magnitude - spec.min_magnitude) * rng.next_unit();
    const double sign = (rng.next_u64() >> 63) ? 1.0 : -1.0;
    z[idx[i]] = sign * mag;
  }
  return z;
}

std::vector<std::size_t> signal_support(std::span<const double> z) {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < z.size(); ++i)
    if (z[i] != 0.0) s.push_back(i);
  return s;
}

nlohmann::json to_json(const FrameEnsembleSpec& spec) {
  return nlohmann::json{{"family", to_string(spec.family)},
                        {"m", spec.rows},
                        {"k", spec.cols},
                        {"normalization", to_string(spec.normalization)},
                        {"seed", spec.seed}};
}

FrameEnsembleSpec frame_spec_from_json(const nlohmann::json& j) {
  for (const char* key : {"family", "m", "k", "normalization", "seed"}) {
    if (!j.contains(key))
      throw ConfigError(std::string("frame spec missing key '") + key + "'");
  }
  FrameEnsembleSpec spec;
  spec.family = family_from_string(j.at("family").get<std::string>());
  spec.rows = j.at("m").get<std::size_t>();
  spec.cols = j.at("k").get<std::size_t>();
  spec.normalization = normalization_from_string(j.at("normalization").get<std::string>());
  spec.seed = j.at("seed").get<std::uint64_t>();
  return spec;
}

}  // namespace sdq
