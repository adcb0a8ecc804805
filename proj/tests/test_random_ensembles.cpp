#include <algorithm>
#include <cmath>
#include <doctest.h>
#include <set>

#include "sdq/errors.hpp"
#include "sdq/matrix.hpp"
#include "sdq/random_ensembles.hpp"

using namespace sdq;

TEST_SUITE_BEGIN("random_ensembles");

TEST_CASE("bernoulli entries and determinism") {
  const FrameEnsembleSpec spec{Family::bernoulli, 2, 2, Normalization::unit_variance, 123};
  const Matrix e = draw_frame(spec);
  for (double v : e.entries()) CHECK(std::abs(v) == 1.0);
  CHECK(draw_frame(spec).entries() == e.entries());

  // 100 distinct seeds give 100 distinct draws
  std::set<std::vector<double>> seen;
  for (std::uint64_t s = 0; s < 100; ++s) {
    FrameEnsembleSpec sp = spec;
    sp.rows = 4;
    sp.cols = 4;
    sp.seed = s;
    seen.insert(draw_frame(sp).entries());
  }
  CHECK(seen.size() == 100);
}

TEST_CASE("gaussian sample moments") {
  const Matrix e = draw_frame({Family::gaussian, 10000, 1, Normalization::unit_variance, 2024});
  double mean = 0.0;
  for (double v : e.entries()) mean += v;
  mean /= 1e4;
  CHECK(std::abs(mean) <= 4.0 / std::sqrt(1e4));
  double var = 0.0;
  for (double v : e.entries()) var += (v - mean) * (v - mean);
  var /= 1e4 - 1;
  CHECK(std::abs(var - 1.0) <= 0.1);
}

TEST_CASE("uniform_bounded entries") {
  const double bound = std::sqrt(3.0);
  const Matrix e =
      draw_frame({Family::uniform_bounded, 5000, 2, Normalization::unit_variance, 7});
  double var = 0.0;
  for (double v : e.entries()) {
    REQUIRE(std::abs(v) <= bound);
    var += v * v;
  }
  var /= static_cast<double>(e.entries().size());
  CHECK(std::abs(var - 1.0) <= 0.1);
}

TEST_CASE("normalized columns concentrate at unit norm") {
  const Matrix e = draw_frame({Family::gaussian, 100, 8, Normalization::one_over_sqrt_m, 31});
  for (std::size_t j = 0; j < 8; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < 100; ++i) s += e(i, j) * e(i, j);
    CHECK(std::sqrt(s) == doctest::Approx(1.0).epsilon(0.3));
  }
}

TEST_CASE("l2->linf norms of normalized frames") {
  const std::size_t k = 4;
  const double lambda = 16.0;
  const auto m = static_cast<std::size_t>(lambda * k);
  // bernoulli rows sit exactly at lambda^{-1/2}
  const Matrix eb = draw_frame({Family::bernoulli, m, k, Normalization::one_over_sqrt_m, 5});
  for (std::size_t i = 0; i < m; ++i)
    CHECK(norm_l2(eb.row(i)) <= std::pow(lambda, -0.5) + 1e-12);
  // gaussian rows clear sqrt(e) lambda^{-1/4} on every one of 50 seeded draws
  const double thr = std::sqrt(std::exp(1.0)) * std::pow(lambda, -0.25);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const Matrix eg =
        draw_frame({Family::gaussian, m, k, Normalization::one_over_sqrt_m, 400 + s});
    double worst = 0.0;
    for (std::size_t i = 0; i < m; ++i) worst = std::max(worst, norm_l2(eg.row(i)));
    CHECK(worst <= thr);
  }
}

TEST_CASE("sparse signals") {
  const auto z = draw_sparse_signal({10, 3, 1.0, 2.0, 99});
  const auto supp = signal_support(z);
  REQUIRE(supp.size() == 3);
  for (std::size_t i : supp) {
    CHECK(std::abs(z[i]) >= 1.0);
    CHECK(std::abs(z[i]) <= 2.0);
  }
  CHECK(draw_sparse_signal({10, 3, 1.0, 2.0, 99}) == z);

  const auto dense = draw_sparse_signal({6, 6, 0.5, 0.5, 1});
  CHECK(signal_support(dense).size() == 6);

  CHECK_THROWS_AS(draw_sparse_signal({4, 5, 1.0, 2.0, 1}), DomainError);
  CHECK_THROWS_AS(draw_sparse_signal({4, 2, 2.0, 1.0, 1}), DomainError);
}

TEST_CASE("support frequencies match the uniform subset law") {
  const std::size_t n = 10, k = 3, draws = 10000;
  std::vector<std::size_t> counts(n, 0);
  for (std::uint64_t s = 0; s < draws; ++s) {
    const auto z = draw_sparse_signal({n, k, 1.0, 1.0, 5000 + s});
    for (std::size_t i : signal_support(z)) ++counts[i];
  }
  const double p = static_cast<double>(k) / static_cast<double>(n);
  const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(draws));
  for (std::size_t i = 0; i < n; ++i) {
    const double freq = static_cast<double>(counts[i]) / static_cast<double>(draws);
    CHECK(std::abs(freq - p) <= 3.0 * se);
  }
}

TEST_CASE("frame spec JSON wire format") {
  const FrameEnsembleSpec spec{Family::bernoulli, 256, 8, Normalization::one_over_sqrt_m, 42};
  const auto j = to_json(spec);
  CHECK(j.at("family") == "bernoulli");
  CHECK(j.at("m") == 256);
  CHECK(j.at("k") == 8);
  const FrameEnsembleSpec back = frame_spec_from_json(j);
  CHECK(back.family == spec.family);
  CHECK(back.rows == spec.rows);
  CHECK(back.cols == spec.cols);
  CHECK(back.normalization == spec.normalization);
  CHECK(back.seed == spec.seed);

  auto bad = j;
  bad.erase("seed");
  CHECK_THROWS_WITH_AS(frame_spec_from_json(bad), "frame spec missing key 'seed'",
                       ConfigError);
}

TEST_SUITE_END();
