#include "sdq/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <iostream>
#include <json.hpp>
#include <string>
#include <vector>

#include "sdq/config_io.hpp"
#include "sdq/cs_pipeline.hpp"
#include "sdq/csv.hpp"
#include "sdq/errors.hpp"
#include "sdq/filter_design.hpp"
#include "sdq/frame_pipeline.hpp"
#include "sdq/linalg.hpp"
#include "sdq/parallel.hpp"
#include "sdq/random_ensembles.hpp"
#include "sdq/rng.hpp"
#include "sdq/sigma_delta.hpp"
#include "sdq/stats.hpp"

namespace sdq {

namespace {

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::cout << content;
  else
    write_text_file(out_path, content);
}

// --- singvals: sigma_j(D^{-r}) against the power-law sandwich -------------

std::string singvals_csv(std::size_t m, int r) {
  const auto sv = singular_values(inverse_difference_power(m, r));
  std::string s = "j,sigma,lower,upper,pass\n";
  const double md = static_cast<double>(m);
  for (std::size_t j = 1; j <= sv.size(); ++j) {
    const double ratio = md / static_cast<double>(j);
    const double lower = std::pow(3.0 * M_PI * r, -r) * std::pow(ratio, r);
    const double upper = std::pow(6.0 * r, r) * std::pow(ratio, r);
    const double sigma = sv[j - 1];
    const bool pass = sigma >= lower - 1e-9 && sigma <= upper + 1e-9;
    s += std::to_string(j);
    s += ',';
    s += format_double(sigma);
    s += ',';
    s += format_double(lower);
    s += ',';
    s += format_double(upper);
    s += ',';
    s += pass ? "1" : "0";
    s += '\n';
  }
  return s;
}

// --- stability: Monte Carlo state bounds -----------------------------------

struct StabilityArgs {
  std::string scheme = "greedy";
  int r = 1;
  std::int64_t levels = 4;
  double step = 0.5;
  double gamma = 0.0;        // coarse only
  double input_bound = 1.0;  // greedy only; coarse uses mu from gamma
  std::size_t trials = 1000;
  std::size_t length = 128;
  std::uint64_t seed = 1;
  std::uint64_t seed_offset = 0;
};

std::string stability_csv(const StabilityArgs& args, bool& all_pass) {
  const Alphabet a = make_alphabet(args.levels, args.step);
  const Scheme scheme = scheme_from_string(args.scheme);
  FilterPair filter;
  double input_bound = args.input_bound;
  if (scheme == Scheme::coarse) {
    filter = design_coarse_filter(args.r, args.gamma, a);
    input_bound = coarse_input_bound(filter, a);
  } else if (scheme == Scheme::greedy) {
    const double needed =
        2.0 * std::ceil(args.input_bound / a.step) + std::pow(2.0, args.r) + 1.0;
    if (static_cast<double>(a.levels) < needed)
      std::cerr << "stability: L = " << a.levels << " is below the guarantee threshold "
                << needed << "; expect violations\n";
  }

  std::string s = "scheme,r,gamma,trial,seed,sup_u,bound_u,sup_v,bound_v,pass\n";
  const double nan = std::nan("");
  all_pass = true;
  for (std::size_t trial = 0; trial < args.trials; ++trial) {
    const std::uint64_t seed = derive_seed(args.seed, trial + args.seed_offset, 0, 2);
    SplitMix64 rng(seed);
    std::vector<double> y(args.length);
    for (double& v : y) v = input_bound * (2.0 * rng.next_unit() - 1.0);
    SigmaDeltaTrace t;
    double bound_u = 0.0, sup_v = nan, bound_v = nan;
    if (scheme == Scheme::greedy) {
      t = greedy_sigma_delta(y, args.r, a);
      bound_u = a.step / 2.0;
    } else {
      t = coarse_sigma_delta(y, filter, a);
      bound_u = norm_l1(filter.g) * a.step / 2.0;
      sup_v = norm_linf(t.v);
      bound_v = a.step / 2.0;
    }
    const double sup_u = norm_linf(t.u);
    const bool pass = sup_u <= bound_u + 1e-12 &&
                      (scheme == Scheme::greedy || sup_v <= bound_v + 1e-12);
    all_pass = all_pass && pass;
    s += args.scheme;
    s += ',';
    s += std::to_string(args.r);
    s += ',';
    s += format_double(scheme == Scheme::coarse ? args.gamma : 0.0);
    s += ',';
    s += std::to_string(trial);
    s += ',';
    s += std::to_string(seed);
    s += ',';
    s += format_double(sup_u);
    s += ',';
    s += format_double(bound_u);
    s += ',';
    s += format_double(sup_v);
    s += ',';
    s += format_double(bound_v);
    s += ',';
    s += pass ? "1" : "0";
    s += '\n';
  }
  return s;
}

// --- verify: fast invariant sweep ------------------------------------------

bool verify_all() {
  int failures = 0;
  auto check = [&](bool ok, const std::string& name) {
    std::cout << (ok ? "[ok]   " : "[FAIL] ") << name << "\n";
    if (!ok) ++failures;
  };

  // singular-value sandwich
  for (std::size_t m : {32u, 64u}) {
    for (int r : {1, 2, 3}) {
      const auto csv = singvals_csv(m, r);
      check(csv.find(",0\n") == std::string::npos,
            "sandwich bounds m=" + std::to_string(m) + " r=" + std::to_string(r));
    }
  }

  // svd contract on a seeded frame
  {
    const Matrix a = draw_frame({Family::gaussian, 20, 8, Normalization::unit_variance, 7});
    const auto s = svd(a);
    Matrix sigma(20, 8);
    for (std::size_t i = 0; i < 8; ++i) sigma(i, i) = s.singular_values[i];
    check(max_abs(s.u * sigma * s.vt - a) <= 1e-9 * frobenius_norm(a), "svd reconstruction");
    check(max_abs(transpose(s.u) * s.u - Matrix::identity(20)) <= 1e-9, "svd U orthonormal");
    check(max_abs(s.vt * transpose(s.vt) - Matrix::identity(8)) <= 1e-9, "svd V orthonormal");
  }

  // left-inverse contracts
  {
    const Matrix a = draw_frame({Family::gaussian, 40, 5, Normalization::unit_variance, 11});
    check(max_abs(pseudo_inverse(a) * a - Matrix::identity(5)) <= 1e-8, "pseudo-inverse");
    for (int r : {1, 2}) {
      const Matrix e =
          draw_frame({Family::gaussian, 64, 4, Normalization::one_over_sqrt_m, 13});
      const Matrix f = sobolev_dual(e, r);
      check(max_abs(f * e - Matrix::identity(4)) <= 1e-8,
            "sobolev duality r=" + std::to_string(r));
      const double n1 = operator_norm(f * difference_power(64, r));
      const double n2 = 1.0 / smallest_singular_value(apply_inverse_difference(e, r));
      check(std::abs(n1 - n2) <= 1e-8 * n2, "dual norm identity r=" + std::to_string(r));
    }
  }

  // stability suites
  {
    StabilityArgs g;
    g.scheme = "greedy";
    g.trials = 200;
    g.length = 64;
    g.step = 0.25;
    g.input_bound = 1.0;
    for (int r : {1, 2, 3}) {
      g.r = r;
      g.levels = 2 * 4 + (1 << r) + 1;  // 2 ceil(C/delta) + 2^r + 1
      bool pass = false;
      stability_csv(g, pass);
      check(pass, "greedy stability r=" + std::to_string(r));
    }
    StabilityArgs c;
    c.scheme = "coarse";
    c.trials = 100;
    c.length = 64;
    c.levels = 4;
    c.step = 0.5;
    for (int r : {1, 2, 3}) {
      for (double gamma : {3.0, 5.0}) {
        c.r = r;
        c.gamma = gamma;
        bool pass = false;
        stability_csv(c, pass);
        check(pass, "coarse stability r=" + std::to_string(r) +
                        " gamma=" + format_double(gamma));
      }
    }
  }

  // trace residual identity
  {
    SplitMix64 rng(21);
    const Alphabet a = make_alphabet(12, 0.25);
    std::vector<double> y(48);
    for (double& v : y) v = 2.0 * rng.next_unit() - 1.0;
    bool ok = true;
    for (int r : {1, 2, 3})
      ok = ok && trace_residual(y, greedy_sigma_delta(y, r, a), r) <= 1e-9;
    check(ok, "trace residual identity");
  }

  // draw determinism
  {
    const FrameEnsembleSpec spec{Family::bernoulli, 16, 3, Normalization::unit_variance, 5};
    check(draw_frame(spec).entries() == draw_frame(spec).entries(), "draw determinism");
    FrameEnsembleSpec other = spec;
    other.seed = 6;
    check(draw_frame(spec).entries() != draw_frame(other).entries(), "seed sensitivity");
  }

  if (failures > 0) std::cout << failures << " verification failure(s)\n";
  return failures == 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Sigma-Delta quantization of random frame expansions: experiments"};
  app.require_subcommand(1);

  // singvals
  auto* sv_cmd = app.add_subcommand("singvals", "singular values of D^{-r} vs. bounds");
  std::size_t sv_m = 64;
  int sv_r = 1;
  std::string sv_out;
  sv_cmd->add_option("--m", sv_m, "matrix size")->required();
  sv_cmd->add_option("--r", sv_r, "difference order")->required();
  sv_cmd->add_option("--out", sv_out, "output CSV path (default: stdout)");

  // frame-sweep / cs-sweep
  auto* fs_cmd = app.add_subcommand("frame-sweep", "frame quantization error sweep");
  auto* cs_cmd = app.add_subcommand("cs-sweep", "two-stage compressed sensing sweep");
  std::string fs_config, fs_out, cs_config, cs_out;
  int jobs = 0;
  std::uint64_t seed_offset = 0;
  bool have_seed_offset = false;
  fs_cmd->add_option("--config", fs_config, "JSON config path")->required();
  fs_cmd->add_option("--out", fs_out, "output CSV path (overrides config)");
  cs_cmd->add_option("--config", cs_config, "JSON config path")->required();
  cs_cmd->add_option("--out", cs_out, "output CSV path (overrides config)");
  for (auto* cmd : {fs_cmd, cs_cmd}) {
    cmd->add_option("--jobs", jobs, "worker threads (default: SDQ_JOBS or hardware)");
    cmd->add_option("--seed-offset", seed_offset, "shift all trial seeds")
        ->each([&](const std::string&) { have_seed_offset = true; });
  }

  // stability
  auto* st_cmd = app.add_subcommand("stability", "Monte Carlo state-boundedness check");
  StabilityArgs st;
  std::string st_out;
  st_cmd->add_option("--scheme", st.scheme, "greedy or coarse")->required();
  st_cmd->add_option("--r", st.r, "scheme order")->required();
  st_cmd->add_option("--levels", st.levels, "alphabet half-size L");
  st_cmd->add_option("--step", st.step, "alphabet step delta");
  st_cmd->add_option("--gamma", st.gamma, "stability budget (coarse)");
  st_cmd->add_option("--input-bound", st.input_bound, "input sup bound (greedy)");
  st_cmd->add_option("--trials", st.trials, "number of random inputs");
  st_cmd->add_option("--length", st.length, "input length");
  st_cmd->add_option("--seed", st.seed, "base seed");
  st_cmd->add_option("--seed-offset", st.seed_offset, "shift all trial seeds");
  st_cmd->add_option("--out", st_out, "output CSV path (default: stdout)");

  // filter-design
  auto* fd_cmd = app.add_subcommand("filter-design", "coarse-scheme filter design");
  int fd_r = 2;
  double fd_gamma = 4.0;
  std::int64_t fd_levels = 0;
  std::string fd_out;
  fd_cmd->add_option("--r", fd_r, "scheme order")->required();
  fd_cmd->add_option("--gamma", fd_gamma, "stability budget")->required();
  fd_cmd->add_option("--levels", fd_levels, "alphabet half-size (default: smallest valid)");
  fd_cmd->add_option("--out", fd_out, "output JSON path (default: stdout)");

  // verify
  auto* vf_cmd = app.add_subcommand("verify", "run the built-in invariant suites");

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (sv_cmd->parsed()) {
      emit(sv_out, singvals_csv(sv_m, sv_r));
      return kExitOk;
    }
    if (fs_cmd->parsed()) {
      auto cfg = frame_sweep_config_from_json(parse_json_text(read_text_file(fs_config)));
      if (jobs > 0) cfg.jobs = jobs;
      if (have_seed_offset) cfg.seed_offset = seed_offset;
      const auto outcome = frame_error_sweep(cfg);
      for (const auto& f : outcome.failures)
        std::cerr << "frame-sweep failure: lambda=" << f.lambda << " trial=" << f.trial
                  << ": " << f.message << "\n";
      emit(!fs_out.empty() ? fs_out : cfg.out, frame_results_to_csv(outcome.records));
      for (double lam : cfg.lambdas) {
        std::vector<double> errs;
        for (const auto& rec : outcome.records)
          if (rec.lambda == lam) errs.push_back(rec.error_l2);
        if (errs.empty()) continue;
        std::cerr << "lambda=" << format_double(lam)
                  << ": median error_l2=" << format_double(median(errs))
                  << ", p90=" << format_double(percentile(errs, 0.9)) << "\n";
      }
      return outcome.records.empty() && !outcome.failures.empty() ? kExitRuntime : kExitOk;
    }
    if (cs_cmd->parsed()) {
      auto cfg = cs_sweep_config_from_json(parse_json_text(read_text_file(cs_config)));
      if (jobs > 0) cfg.jobs = jobs;
      if (have_seed_offset) cfg.seed_offset = seed_offset;
      const auto outcome = cs_error_sweep(cfg);
      for (const auto& f : outcome.failures)
        std::cerr << "cs-sweep failure: lambda=" << f.lambda << " trial=" << f.trial << ": "
                  << f.message << "\n";
      emit(!cs_out.empty() ? cs_out : cfg.out, cs_results_to_csv(outcome.records));
      for (double lam : cfg.lambdas) {
        std::vector<double> stage1, stage2;
        std::size_t hits = 0, count = 0;
        for (const auto& rec : outcome.records) {
          if (rec.lambda != lam) continue;
          ++count;
          stage1.push_back(rec.coarse_error_l2);
          if (rec.support_recovered) {
            ++hits;
            stage2.push_back(rec.error_l2);
          }
        }
        if (count == 0) continue;
        std::cerr << "lambda=" << format_double(lam) << ": recovered " << hits << "/"
                  << count << ", stage1 median=" << format_double(median(stage1));
        if (!stage2.empty())
          std::cerr << ", stage2 median=" << format_double(median(stage2))
                    << ", p90=" << format_double(percentile(stage2, 0.9));
        std::cerr << "\n";
      }
      return outcome.records.empty() && !outcome.failures.empty() ? kExitRuntime : kExitOk;
    }
    if (st_cmd->parsed()) {
      bool all_pass = false;
      const std::string csv = stability_csv(st, all_pass);
      emit(st_out, csv);
      if (!all_pass) std::cerr << "stability: bound violations present\n";
      return all_pass ? kExitOk : kExitRuntime;
    }
    if (fd_cmd->parsed()) {
      const std::int64_t levels =
          fd_levels > 0 ? fd_levels : static_cast<std::int64_t>(std::floor(fd_gamma / 2.0)) + 1;
      const FilterPair f = design_coarse_filter(fd_r, fd_gamma, make_alphabet(levels, 1.0));
      emit(fd_out, filter_to_json(f).dump(2) + "\n");
      return kExitOk;
    }
    if (vf_cmd->parsed()) {
      return verify_all() ? kExitOk : kExitRuntime;
    }
  } catch (const ConfigError& ex) {
    std::cerr << "config error: " << ex.what() << "\n";
    return kExitConfig;
  } catch (const FilesystemError& ex) {
    std::cerr << "filesystem error: " << ex.what() << "\n";
    return kExitFilesystem;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

int run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("sdq");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace sdq
