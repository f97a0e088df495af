#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracle_values.hpp"
#include "rhinar/errors.hpp"
#include "rhinar/inar.hpp"
#include "rhinar/poisson.hpp"

using namespace rhinar;

namespace {

// O(n^2) recursion: lambda_n = max(0, baseline(n) + sum_{s<n} w_{n-s} Y_s), drawing
// from the same (step, lane) streams as the simulator.
PathRecord direct_simulate(const DerivedParams& d, const KernelTable& t, const PathRng& rng) {
  const std::size_t n = d.n_steps;
  PathRecord r;
  r.reset(n);
  for (std::size_t m = 1; m <= n; ++m) {
    double h = 0.0;
    for (std::size_t s = 1; s < m; ++s) h += t.weights[m - s] * r.y[s];
    r.lambda_hist[m] = h;
    const double lam = std::max(0.0, t.baseline[m] + h);
    r.lambda[m] = lam;
    auto plus = rng.stream(static_cast<std::uint32_t>(m), Lane::Plus);
    auto minus = rng.stream(static_cast<std::uint32_t>(m), Lane::Minus);
    r.x_plus[m] = poisson_sample(lam, plus);
    r.x_minus[m] = poisson_sample(lam, minus);
    r.n_plus[m] = r.n_plus[m - 1] + r.x_plus[m];
    r.n_minus[m] = r.n_minus[m - 1] + r.x_minus[m];
    r.y[m] = static_cast<double>(r.x_plus[m]) + d.beta * static_cast<double>(r.x_minus[m]);
  }
  price_path(r, d);
  return r;
}

std::vector<double> direct_history(const std::vector<double>& y, const std::vector<double>& w) {
  std::vector<double> h(y.size(), 0.0);
  for (std::size_t t = 1; t < y.size(); ++t)
    for (std::size_t s = 1; s < t; ++s) h[t] += w[t - s] * y[s];
  return h;
}

}  // namespace

TEST_CASE("CDQ history covers every earlier step exactly once") {
  for (std::size_t n : {1u, 2u, 3u, 7u, 64u, 100u, 257u, 1000u}) {
    for (std::size_t crossover : {2u, 4u, 16u, 512u}) {
      CAPTURE(n);
      CAPTURE(crossover);
      const std::vector<double> ones(n + 1, 1.0);
      const auto hist = cdq_history(ones, ones, crossover);
      REQUIRE(hist.size() == n + 1);
      for (std::size_t t = 1; t <= n; ++t) CHECK(hist[t] == doctest::Approx(double(t - 1)).epsilon(1e-12));
    }
  }
}

TEST_CASE("CDQ history matches direct summation on random data") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0, 1);
  for (std::size_t n : {5u, 33u, 320u, 1000u}) {
    std::vector<double> y(n + 1), w(n + 1);
    for (auto& v : y) v = std::floor(5 * u(gen));
    for (auto& v : w) v = u(gen) / (1.0 + double(&v - w.data()));
    const auto ref = direct_history(y, w);
    for (std::size_t crossover : {2u, 8u, 64u, 4096u}) {
      const auto hist = cdq_history(y, w, crossover);
      double worst = 0.0, scale = 1.0;
      for (std::size_t t = 1; t <= n; ++t) {
        worst = std::max(worst, std::abs(hist[t] - ref[t]));
        scale = std::max(scale, std::abs(ref[t]));
      }
      CHECK(worst <= 1e-12 * scale);
    }
  }
}

TEST_CASE("spectra are cached per node length") {
  const std::vector<double> w(1025, 0.5);
  const CdqConvolver small(w, 1024, 4);
  CHECK(small.cached_spectra() > 0);
  CHECK(small.cached_spectra() <= 2 * 10);  // at most two node lengths per level
  const CdqConvolver none(w, 1024, 1 << 20);
  CHECK(none.cached_spectra() == 0);
  CHECK_THROWS_AS(CdqConvolver(std::vector<double>(10, 1.0), 64, 16), ConfigError);
}

TEST_CASE("CDQ simulation equals the direct recursion") {
  for (double tau : {16.0, 64.0, 256.0}) {
    const DerivedParams d = derive(ModelConfig{}, tau);
    const KernelTable table = build_kernel_table(d);
    for (std::size_t crossover : {std::size_t{4}, std::size_t{32}, kDefaultCdqCrossover}) {
      const InarSimulator sim(d, table, crossover);
      for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const PathRng rng(1000 + seed, seed * 7);
        const PathRecord fast = sim.simulate(rng);
        const PathRecord slow = direct_simulate(d, table, rng);
        CAPTURE(tau);
        CAPTURE(crossover);
        CAPTURE(seed);
        CHECK(fast.x_plus == slow.x_plus);
        CHECK(fast.x_minus == slow.x_minus);
        double worst = 0.0;
        for (std::size_t n = 1; n <= d.n_steps; ++n)
          worst = std::max(worst, std::abs(fast.lambda[n] - slow.lambda[n]) / std::max(1.0, slow.lambda[n]));
        CHECK(worst < 1e-9);
        CHECK(fast.s == slow.s);
      }
    }
  }
}

TEST_CASE("one-step simulation is a single leaf") {
  const DerivedParams d = derive(ModelConfig{}, 1.0);
  REQUIRE(d.n_steps == 1);
  const KernelTable t = build_kernel_table(d);
  const PathRecord r = cdq_simulate(d, t, PathRng(9, 0));
  CHECK(r.lambda[1] == std::max(0.0, t.baseline[1]));
  CHECK(r.lambda_hist[1] == 0.0);
  CHECK(r.s.size() == 2);
}

TEST_CASE("zero intensity is absorbing") {
  DerivedParams d = derive(ModelConfig{}, 128);
  d.mu_tau = 0.0;
  d.xi = 0.0;
  d.mu = 0.0;
  const KernelTable t = build_kernel_table(d);
  const InarSimulator sim(d, t);
  for (std::uint64_t p = 0; p < 5; ++p) {
    const PathRecord r = sim.simulate(PathRng(1, p));
    CHECK(r.n_plus.back() == 0);
    CHECK(r.n_minus.back() == 0);
    for (double s : r.s) CHECK(s == d.s0);
  }
}

TEST_CASE("table and parameter mismatch") {
  const DerivedParams d64 = derive(ModelConfig{}, 64);
  const DerivedParams d128 = derive(ModelConfig{}, 128);
  const KernelTable t64 = build_kernel_table(d64);
  CHECK_THROWS_AS((void)cdq_simulate(d128, t64, PathRng(1, 0)), ConfigError);
}

TEST_CASE("price path") {
  const DerivedParams d = derive(ModelConfig{}, 320);
  PathRecord r;
  r.reset(3);
  price_path(r, d);
  for (double s : r.s) CHECK(s == 100.0);

  r.n_plus = {0, 1, 0, 0};
  price_path(r, d);
  CHECK(r.s[1] == doctest::Approx(oracle::kSingleStepPrice).epsilon(1e-14));

  r.n_plus = {0, 3, 10, 40};
  r.n_minus = {0, 3, 10, 40};
  price_path(r, d);
  for (double s : r.s) CHECK(s <= 100.0);
  CHECK(r.s[3] == doctest::Approx(100.0 * std::exp(-d.theta / 2 * d.price_scale() * 40)).epsilon(1e-14));
}

TEST_CASE("counts are non-negative and cumulative") {
  const DerivedParams d = derive(ModelConfig{}, 320);
  const InarSimulator sim(d);
  const PathRecord r = sim.simulate(PathRng(77, 3));
  REQUIRE(r.n_steps() == 320);
  for (std::size_t n = 1; n <= 320; ++n) {
    CHECK(r.x_plus[n] >= 0);
    CHECK(r.x_minus[n] >= 0);
    CHECK(r.n_plus[n] == r.n_plus[n - 1] + r.x_plus[n]);
    CHECK(r.lambda[n] >= 0.0);
  }
  CHECK(r.s[0] == 100.0);
}
