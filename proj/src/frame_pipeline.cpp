#include "sdq/frame_pipeline.hpp"

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "sdq/csv.hpp"
#include "sdq/errors.hpp"
#include "sdq/filter_design.hpp"
#include "sdq/linalg.hpp"
#include "sdq/parallel.hpp"
#include "sdq/rng.hpp"

namespace sdq {

namespace {
constexpr double kSqrtE = 1.6487212707001281468486507878142;
constexpr double kSqrt3 = 1.7320508075688772935274463415059;

// High-probability bound on ||Ex||_inf over the unit ball, for normalized
// frames: sqrt(e) lambda^{-1/4} in general, K lambda^{-1/2} when entries are
// bounded by K.
double input_range_bound(Family family, double lambda) {
  switch (family) {
    case Family::bernoulli: return 1.0 / std::sqrt(lambda);
    case Family::uniform_bounded: return kSqrt3 / std::sqrt(lambda);
    case Family::gaussian: return kSqrtE * std::pow(lambda, -0.25);
  }
  throw DomainError("unknown family");
}
}  // namespace

std::string to_string(Scheme s) { return s == Scheme::greedy ? "greedy" : "coarse"; }

Scheme scheme_from_string(const std::string& s) {
  if (s == "greedy") return Scheme::greedy;
  if (s == "coarse") return Scheme::coarse;
  throw ConfigError("unknown scheme '" + s + "'");
}

int select_order(double lambda, double c13) {
  if (!(lambda >= 1.0)) throw DomainError("select_order: lambda must be >= 1");
  if (!(c13 > 0.0)) throw DomainError("select_order: c13 must be positive");
  const int r = static_cast<int>(std::floor(std::sqrt(lambda) / (2.0 * c13)));
  return std::max(1, r);
}

FrameRunResult run_frame_quantization(const Matrix& e, std::span<const double> x,
                                      Scheme scheme, int r, const Alphabet& a,
                                      const FilterPair* filter) {
  if (e.rows() < e.cols()) throw DomainError("run_frame_quantization: frame needs rows >= cols");
  if (x.size() != e.cols()) throw DomainError("run_frame_quantization: signal length mismatch");

  const auto y = e * x;
  SigmaDeltaTrace trace;
  if (scheme == Scheme::greedy) {
    trace = greedy_sigma_delta(y, r, a);
  } else {
    FilterPair designed;
    const FilterPair* f = filter;
    if (f == nullptr) {
      const double gamma =
          2.0 * static_cast<double>(a.levels) - 2.0 * norm_linf(y) / a.step;
      designed = design_coarse_filter(r, gamma, a);
      f = &designed;
    } else if (f->r != r) {
      throw DomainError("run_frame_quantization: filter order does not match r");
    }
    trace = coarse_sigma_delta(y, *f, a);
  }

  const Matrix b = apply_inverse_difference(e, r);  // D^{-r} E
  const Matrix f_dual = apply_inverse_difference_right(pseudo_inverse(b), r);
  const auto xhat = f_dual * trace.q;

  FrameRunResult res;
  res.lambda = static_cast<double>(e.rows()) / static_cast<double>(e.cols());
  res.r = r;
  res.scheme = scheme;
  std::vector<double> diff(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) diff[i] = x[i] - xhat[i];
  res.error_l2 = norm_l2(diff);
  res.state_sup = norm_linf(trace.u);
  res.sigma_min = smallest_singular_value(b);
  return res;
}

ResolvedFrameParams resolve_frame_params(const FrameSweepConfig& config, double lambda) {
  ResolvedFrameParams p;
  p.r = config.order > 0 ? config.order : select_order(lambda, config.c13);
  const bool needs_range_rule = (config.scheme == Scheme::coarse &&
                                 config.step_rule == StepRule::coarse_theorem) ||
                                (config.scheme == Scheme::greedy &&
                                 config.levels_rule == LevelsRule::greedy_theorem);
  if (needs_range_rule && config.normalization != Normalization::one_over_sqrt_m)
    throw ConfigError("per-lambda alphabet rules require normalization one_over_sqrt_m");

  if (config.scheme == Scheme::greedy) {
    double levels = static_cast<double>(config.levels);
    if (config.levels_rule == LevelsRule::greedy_theorem) {
      const double c = input_range_bound(config.family, lambda);
      levels = 2.0 * std::ceil(c / config.step) + std::pow(2.0, p.r) + 1.0;
    }
    p.alphabet = make_alphabet(static_cast<std::int64_t>(levels), config.step);
    p.mu = input_range_bound(config.family, lambda);
    p.gamma = 0.0;
    return p;
  }

  p.mu = input_range_bound(config.family, lambda);
  double step = config.step;
  if (config.step_rule == StepRule::coarse_theorem)
    step = config.step_scale * 4.0 * p.mu / static_cast<double>(config.levels);
  p.alphabet = make_alphabet(config.levels, step);
  p.gamma = 2.0 * static_cast<double>(config.levels) - 2.0 * p.mu / step;
  return p;
}

FrameSweepOutcome frame_error_sweep(const FrameSweepConfig& config) {
  FrameSweepOutcome out;
  if (config.k < 1) throw ConfigError("frame sweep: k must be positive");
  const unsigned jobs = resolve_jobs(config.jobs);

  struct LambdaPlan {
    double lambda = 0.0;
    std::size_t m = 0;
    ResolvedFrameParams params;
    std::optional<FilterPair> filter;
    bool ok = false;
  };
  std::vector<LambdaPlan> plans(config.lambdas.size());
  std::map<std::pair<int, double>, FilterPair> filter_cache;
  for (std::size_t li = 0; li < config.lambdas.size(); ++li) {
    auto& plan = plans[li];
    plan.lambda = config.lambdas[li];
    try {
      if (!(plan.lambda >= 1.0)) throw ConfigError("lambda must be >= 1");
      plan.m = static_cast<std::size_t>(std::llround(plan.lambda * static_cast<double>(config.k)));
      if (plan.m < config.k) throw ConfigError("lambda * k must be >= k");
      plan.params = resolve_frame_params(config, plan.lambda);
      if (config.scheme == Scheme::coarse) {
        const auto key = std::make_pair(plan.params.r, plan.params.gamma);
        auto it = filter_cache.find(key);
        if (it == filter_cache.end())
          it = filter_cache
                   .emplace(key, design_coarse_filter(plan.params.r, plan.params.gamma,
                                                      plan.params.alphabet))
                   .first;
        plan.filter = it->second;
      }
      plan.ok = true;
    } catch (const std::exception& ex) {
      out.failures.push_back({plan.lambda, 0, ex.what()});
    }
  }

  const std::size_t total = config.lambdas.size() * config.trials;
  std::vector<std::optional<FrameRunResult>> slots(total);
  std::vector<std::optional<SweepFailure>> fails(total);
  parallel_for(total, jobs, [&](std::size_t task) {
    const std::size_t li = task / config.trials;
    const std::size_t trial = task % config.trials;
    const auto& plan = plans[li];
    if (!plan.ok) return;
    const std::uint64_t shifted = trial + config.seed_offset;
    const std::uint64_t seed_frame = derive_seed(config.seed, li, shifted, 0);
    const std::uint64_t seed_signal = derive_seed(config.seed, li, shifted, 1);
    try {
      const Matrix e = draw_frame(
          {config.family, plan.m, config.k, config.normalization, seed_frame});
      GaussianSampler gauss(seed_signal);
      std::vector<double> x(config.k);
      double nrm = 0.0;
      do {  // unit-sphere signal; re-draw on the measure-zero degenerate case
        for (double& v : x) v = gauss.next();
        nrm = norm_l2(x);
      } while (nrm < 1e-12);
      for (double& v : x) v /= nrm;
      FrameRunResult res = run_frame_quantization(
          e, x, config.scheme, plan.params.r, plan.params.alphabet,
          plan.filter ? &*plan.filter : nullptr);
      res.trial = trial;
      res.seed = seed_frame;
      slots[task] = res;
    } catch (const std::exception& ex) {
      fails[task] = SweepFailure{plan.lambda, trial, ex.what()};
    }
  });

  for (std::size_t t = 0; t < total; ++t) {
    if (slots[t]) out.records.push_back(*slots[t]);
    if (fails[t]) out.failures.push_back(*fails[t]);
  }
  return out;
}

std::string frame_results_to_csv(const std::vector<FrameRunResult>& records) {
  std::string s = kFrameCsvHeader;
  s += '\n';
  for (const auto& r : records) {
    s += format_double(r.lambda);
    s += ',';
    s += std::to_string(r.r);
    s += ',';
    s += to_string(r.scheme);
    s += ',';
    s += std::to_string(r.trial);
    s += ',';
    s += std::to_string(r.seed);
    s += ',';
    s += format_double(r.error_l2);
    s += ',';
    s += format_double(r.state_sup);
    s += ',';
    s += format_double(r.sigma_min);
    s += '\n';
  }
  return s;
}

FrameRunResult frame_result_from_csv_row(const std::string& line) {
  const auto f = split_csv_row(line);
  if (f.size() != 8) throw ConfigError("frame CSV row needs 8 fields");
  FrameRunResult r;
  r.lambda = parse_double(f[0]);
  r.r = static_cast<int>(parse_u64(f[1]));
  r.scheme = scheme_from_string(f[2]);
  r.trial = parse_u64(f[3]);
  r.seed = parse_u64(f[4]);
  r.error_l2 = parse_double(f[5]);
  r.state_sup = parse_double(f[6]);
  r.sigma_min = parse_double(f[7]);
  return r;
}

}  // namespace sdq
