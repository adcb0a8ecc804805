#include "sdq/cs_pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>

#include "sdq/csv.hpp"
#include "sdq/errors.hpp"
#include "sdq/linalg.hpp"
#include "sdq/parallel.hpp"
#include "sdq/rng.hpp"
#include "sdq/sigma_delta.hpp"

namespace sdq {

namespace {

Matrix columns_at(const Matrix& phi, const std::vector<std::size_t>& idx) {
  Matrix sub(phi.rows(), idx.size());
  for (std::size_t i = 0; i < phi.rows(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j) sub(i, j) = phi(i, idx[j]);
  return sub;
}

constexpr double kSqrtE = 1.6487212707001281468486507878142;
constexpr double kSqrt3 = 1.7320508075688772935274463415059;

}  // namespace

std::vector<double> robust_decode(const Matrix& phi, std::span<const double> y,
                                  std::size_t k) {
  const std::size_t m = phi.rows(), n = phi.cols();
  if (y.size() != m) throw DomainError("robust_decode: measurement length mismatch");
  if (k < 1 || k > m) throw DomainError("robust_decode: need 1 <= k <= m");

  std::vector<double> residual(y.begin(), y.end());
  std::vector<char> used(n, 0);
  std::vector<std::size_t> support;
  std::vector<double> coef;

  // Column-normalized correlations: the selected column is the best
  // single-column least-squares fit to the residual.
  std::vector<double> col_norm(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const double* row = &phi(i, 0);
    for (std::size_t j = 0; j < n; ++j) col_norm[j] += row[j] * row[j];
  }
  for (double& v : col_norm) v = std::sqrt(v);
  const double norm_floor = 1e-13 * norm_linf(col_norm);
  const double floor_corr = 1e-13 * std::max(1.0, norm_l2(y));

  for (std::size_t it = 0; it < k; ++it) {
    std::vector<double> corr(n, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      const double ri = residual[i];
      if (ri == 0.0) continue;
      const double* row = &phi(i, 0);
      for (std::size_t j = 0; j < n; ++j) corr[j] += row[j] * ri;
    }
    std::size_t best = n;
    double best_score = floor_corr;
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j] || col_norm[j] <= norm_floor) continue;
      const double score = std::abs(corr[j]) / col_norm[j];
      if (score > best_score) {
        best_score = score;
        best = j;
      }
    }
    if (best == n) break;  // residual indistinguishable from zero
    used[best] = 1;
    support.push_back(best);

    const Matrix sub = columns_at(phi, support);
    Matrix pinv;
    try {
      pinv = pseudo_inverse(sub);
    } catch (const SingularityError& ex) {
      throw NumericalError(
          "robust_decode: ill-conditioned least squares on selected support",
          ex.smallest_singular_value());
    }
    coef = pinv * y;
    const auto fit = sub * coef;
    for (std::size_t i = 0; i < m; ++i) residual[i] = y[i] - fit[i];
  }

  std::vector<double> z(n, 0.0);
  for (std::size_t j = 0; j < support.size(); ++j) z[support[j]] = coef[j];
  return z;
}

std::vector<std::size_t> top_k_support(std::span<const double> v, std::size_t k) {
  if (k > v.size()) throw DomainError("top_k_support: k exceeds vector length");
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(v[a]) > std::abs(v[b]);  // stable: ties keep the lower index
  });
  idx.resize(k);
  std::sort(idx.begin(), idx.end());
  return idx;
}

TwoStageEstimate two_stage_decode(const Matrix& phi, std::span<const double> q,
                                  std::size_t k, int r, const SparseDecoder& decoder) {
  if (q.size() != phi.rows()) throw DomainError("two_stage_decode: q length mismatch");
  TwoStageEstimate est;
  est.stage_one = decoder ? decoder(phi, q, k) : robust_decode(phi, q, k);
  est.support = top_k_support(est.stage_one, k);

  const Matrix e = columns_at(phi, est.support);
  const Matrix f = sobolev_dual(e, r);
  const auto x = f * q;
  est.refined.assign(phi.cols(), 0.0);
  for (std::size_t j = 0; j < est.support.size(); ++j) est.refined[est.support[j]] = x[j];
  return est;
}

CsSweepOutcome cs_error_sweep(const CsSweepConfig& config) {
  CsSweepOutcome out;
  if (config.k < 1 || config.k >= config.n)
    throw ConfigError("cs sweep: need 1 <= k < n");
  const unsigned jobs = resolve_jobs(config.jobs);

  struct LambdaPlan {
    double lambda = 0.0;
    std::size_t m = 0;
    Alphabet alphabet;
    bool ok = false;
  };
  std::vector<LambdaPlan> plans(config.lambdas.size());
  for (std::size_t li = 0; li < config.lambdas.size(); ++li) {
    auto& plan = plans[li];
    plan.lambda = config.lambdas[li];
    try {
      if (!(plan.lambda >= 1.0)) throw ConfigError("lambda must be >= 1");
      plan.m = static_cast<std::size_t>(
          std::llround(plan.lambda * static_cast<double>(config.k)));
      if (plan.m < config.k || plan.m > config.n)
        throw ConfigError("cs sweep needs k <= m <= n");
      std::int64_t levels = config.levels;
      if (levels <= 0) {
        // size the alphabet to cover ||phi z||_inf for the admissible signals
        double range = kSqrtE * std::pow(plan.lambda, -0.25);
        if (config.family == Family::bernoulli) range = std::pow(plan.lambda, -0.5);
        if (config.family == Family::uniform_bounded)
          range = kSqrt3 * std::pow(plan.lambda, -0.5);
        const double z_norm =
            config.max_magnitude * std::sqrt(static_cast<double>(config.k));
        const double c = range * z_norm;
        levels = static_cast<std::int64_t>(2.0 * std::ceil(c / config.step) +
                                           std::pow(2.0, config.r) + 1.0);
      }
      plan.alphabet = make_alphabet(levels, config.step);
      plan.ok = true;
    } catch (const std::exception& ex) {
      out.failures.push_back({plan.lambda, 0, ex.what()});
    }
  }

  const std::size_t total = config.lambdas.size() * config.trials;
  std::vector<std::optional<CsRunResult>> slots(total);
  std::vector<std::optional<CsSweepFailure>> fails(total);
  parallel_for(total, jobs, [&](std::size_t task) {
    const std::size_t li = task / config.trials;
    const std::size_t trial = task % config.trials;
    const auto& plan = plans[li];
    if (!plan.ok) return;
    const std::uint64_t shifted = trial + config.seed_offset;
    const std::uint64_t seed_phi = derive_seed(config.seed, li, shifted, 0);
    const std::uint64_t seed_z = derive_seed(config.seed, li, shifted, 1);
    try {
      const Matrix phi = draw_frame(
          {config.family, plan.m, config.n, config.normalization, seed_phi});
      const auto z = draw_sparse_signal({config.n, config.k, config.min_magnitude,
                                         config.max_magnitude, seed_z});
      const auto y = phi * z;
      const auto trace = greedy_sigma_delta(y, config.r, plan.alphabet);
      const auto est = two_stage_decode(phi, trace.q, config.k, config.r);

      CsRunResult res;
      res.lambda = static_cast<double>(plan.m) / static_cast<double>(config.k);
      res.n = config.n;
      res.k = config.k;
      res.r = config.r;
      res.trial = trial;
      res.seed = seed_phi;
      res.support_recovered = est.support == signal_support(z);
      std::vector<double> d1(config.n);
      for (std::size_t i = 0; i < config.n; ++i) d1[i] = z[i] - est.stage_one[i];
      res.coarse_error_l2 = norm_l2(d1);
      if (res.support_recovered) {
        std::vector<double> d2(config.n);
        for (std::size_t i = 0; i < config.n; ++i) d2[i] = z[i] - est.refined[i];
        res.error_l2 = norm_l2(d2);
      } else {
        res.error_l2 = std::numeric_limits<double>::quiet_NaN();
      }
      slots[task] = res;
    } catch (const std::exception& ex) {
      fails[task] = CsSweepFailure{plan.lambda, trial, ex.what()};
    }
  });

  for (std::size_t t = 0; t < total; ++t) {
    if (slots[t]) out.records.push_back(*slots[t]);
    if (fails[t]) out.failures.push_back(*fails[t]);
  }
  return out;
}

std::string cs_results_to_csv(const std::vector<CsRunResult>& records) {
  std::string s = kCsCsvHeader;
  s += '\n';
  for (const auto& r : records) {
    s += format_double(r.lambda);
    s += ',';
    s += std::to_string(r.n);
    s += ',';
    s += std::to_string(r.k);
    s += ',';
    s += std::to_string(r.r);
    s += ',';
    s += std::to_string(r.trial);
    s += ',';
    s += std::to_string(r.seed);
    s += ',';
    s += r.support_recovered ? "1" : "0";
    s += ',';
    s += format_double(r.coarse_error_l2);
    s += ',';
    s += format_double(r.error_l2);
    s += '\n';
  }
  return s;
}

CsRunResult cs_result_from_csv_row(const std::string& line) {
  const auto f = split_csv_row(line);
  if (f.size() != 9) throw ConfigError("cs CSV row needs 9 fields");
  CsRunResult r;
  r.lambda = parse_double(f[0]);
  r.n = parse_u64(f[1]);
  r.k = parse_u64(f[2]);
  r.r = static_cast<int>(parse_u64(f[3]));
  r.trial = parse_u64(f[4]);
  r.seed = parse_u64(f[5]);
  r.support_recovered = parse_u64(f[6]) != 0;
  r.coarse_error_l2 = parse_double(f[7]);
  r.error_l2 = parse_double(f[8]);
  return r;
}

}  // namespace sdq
