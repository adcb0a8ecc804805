#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sdq/alphabet.hpp"
#include "sdq/matrix.hpp"
#include "sdq/random_ensembles.hpp"
#include "sdq/sigma_delta.hpp"

namespace sdq {

enum class Scheme { greedy, coarse };
std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& s);

/// Calibrated by a pilot sweep: minimum median error at the top of the
/// lambda grid.
inline constexpr double kDefaultC13 = 1.5;

/// Quantizer order for oversampling rate lambda:
/// max(1, floor(sqrt(lambda) / (2 c13))).
int select_order(double lambda, double c13 = kDefaultC13);

struct FrameRunResult {
  double lambda = 0.0;  // m / k
  int r = 1;
  Scheme scheme = Scheme::greedy;
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  double error_l2 = 0.0;   // ||x - F q||_2
  double state_sup = 0.0;  // ||u||_inf
  double sigma_min = 0.0;  // sigma_min(D^{-r} E)
};

/// Encode y = Ex, quantize with the chosen scheme, reconstruct with the
/// Sobolev dual. For the coarse scheme a designed FilterPair must be supplied
/// (or is designed on the fly from gamma = 2L - 2||y||_inf/delta).
FrameRunResult run_frame_quantization(const Matrix& e, std::span<const double> x,
                                      Scheme scheme, int r, const Alphabet& a,
                                      const FilterPair* filter = nullptr);

enum class StepRule { fixed, coarse_theorem };
enum class LevelsRule { fixed, greedy_theorem };

struct FrameSweepConfig {
  std::size_t k = 4;
  std::vector<double> lambdas;
  std::size_t trials = 20;
  Scheme scheme = Scheme::greedy;
  int order = 1;       // <= 0 means select_order(lambda, c13)
  double c13 = kDefaultC13;
  std::int64_t levels = 4;
  double step = 0.5;
  StepRule step_rule = StepRule::fixed;        // coarse: per-lambda delta
  double step_scale = 1.05;                    // margin over the theorem bound
  LevelsRule levels_rule = LevelsRule::fixed;  // greedy: per-(lambda, r) L
  Family family = Family::gaussian;
  Normalization normalization = Normalization::one_over_sqrt_m;
  std::uint64_t seed = 1;
  std::uint64_t seed_offset = 0;
  int jobs = 0;  // <= 0: resolve from env / hardware
  std::string out;
};

struct SweepFailure {
  double lambda = 0.0;
  std::uint64_t trial = 0;
  std::string message;
};

struct FrameSweepOutcome {
  std::vector<FrameRunResult> records;
  std::vector<SweepFailure> failures;
};

/// One record per (lambda, trial), deterministic for a fixed config; per-run
/// errors become failure entries instead of aborting the sweep.
FrameSweepOutcome frame_error_sweep(const FrameSweepConfig& config);

/// Per-lambda parameters the sweep resolves from the config rules.
struct ResolvedFrameParams {
  int r = 1;
  Alphabet alphabet;
  double mu = 0.0;     // admissible input bound (coarse)
  double gamma = 0.0;  // stability budget (coarse)
};
ResolvedFrameParams resolve_frame_params(const FrameSweepConfig& config, double lambda);

std::string frame_results_to_csv(const std::vector<FrameRunResult>& records);
FrameRunResult frame_result_from_csv_row(const std::string& line);
inline constexpr const char* kFrameCsvHeader =
    "lambda,r,scheme,trial,seed,error_l2,state_sup,sigma_min";

}  // namespace sdq
