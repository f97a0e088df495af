#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "rhinar/poisson.hpp"
#include "rhinar/rng.hpp"

using namespace rhinar;

TEST_CASE("Philox4x32-10 known answers") {
  CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) ==
        PhiloxCounter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  CHECK(philox4x32_10({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu}) ==
        PhiloxCounter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
  CHECK(philox4x32_10({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u}) ==
        PhiloxCounter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("streams are pure functions of their address") {
  const PathRng a(42, 7), b(42, 7), other_path(42, 8), other_seed(43, 7);
  auto s1 = a.stream(5, Lane::Plus);
  auto s2 = b.stream(5, Lane::Plus);
  auto minus = a.stream(5, Lane::Minus);
  auto next_step = a.stream(6, Lane::Plus);
  auto p2 = other_path.stream(5, Lane::Plus);
  auto k2 = other_seed.stream(5, Lane::Plus);
  for (int i = 0; i < 10; ++i) {
    const double x = s1.uniform();
    CHECK(x == s2.uniform());
    CHECK(x != minus.uniform());
    CHECK(x != next_step.uniform());
    CHECK(x != p2.uniform());
    CHECK(x != k2.uniform());
    CHECK(x > 0.0);
    CHECK(x < 1.0);
  }
  CHECK(s1.blocks_used() == 5);
}

TEST_CASE("uniform moments") {
  const PathRng rng(1, 0);
  auto s = rng.stream(0, Lane::Gaussian);
  const int n = 1000000;
  double sum = 0, sq = 0;
  for (int i = 0; i < n; ++i) {
    const double u = s.uniform();
    sum += u;
    sq += u * u;
  }
  CHECK(std::abs(sum / n - 0.5) < 5 * std::sqrt(1.0 / 12.0 / n));
  CHECK(std::abs(sq / n - 1.0 / 3.0) < 2e-3);
}

TEST_CASE("derived seeds differ") {
  CHECK(derive_seed(1, 1) != derive_seed(1, 2));
  CHECK(derive_seed(1, 1) != derive_seed(2, 1));
  CHECK(derive_seed(5, 9) == derive_seed(5, 9));
}

TEST_CASE("Poisson edge cases") {
  const PathRng rng(3, 0);
  auto s = rng.stream(0, Lane::Plus);
  for (int i = 0; i < 100; ++i) CHECK(poisson_sample(0.0, s) == 0);
  CHECK(s.blocks_used() == 0);
  CHECK_THROWS_AS((void)poisson_sample(-1e-12, s), std::logic_error);
  CHECK_THROWS_AS((void)poisson_sample(std::nan(""), s), std::logic_error);
  CHECK_THROWS_AS((void)poisson_sample(INFINITY, s), std::logic_error);
  CHECK(log_factorial(0) == 0.0);
  CHECK(log_factorial(300) == doctest::Approx(std::lgamma(301.0)).epsilon(1e-15));
}

TEST_CASE("Poisson moments on both sides of the method switch") {
  for (double lambda : {0.3, 3.0, 9.9, 10.0, 25.0, 300.0}) {
    CAPTURE(lambda);
    const int n = 1000000;
    double sum = 0, sq = 0;
    for (int i = 0; i < n; ++i) {
      auto s = PathRng(17, static_cast<std::uint64_t>(i)).stream(0, Lane::Plus);
      const double x = static_cast<double>(poisson_sample(lambda, s));
      sum += x;
      sq += x * x;
    }
    const double mean = sum / n;
    const double var = sq / n - mean * mean;
    CHECK(std::abs(mean - lambda) < 3.0 * std::sqrt(lambda / n) + 1e-12);
    CHECK(std::abs(var / lambda - 1.0) < 0.05);
  }
}

TEST_CASE("Poisson probabilities at lambda = 12") {
  // Frequencies of k = 5..20 against the pmf, 4-sigma binomial bands.
  const int n = 400000;
  std::vector<int> counts(64, 0);
  for (int i = 0; i < n; ++i) {
    auto s = PathRng(23, static_cast<std::uint64_t>(i)).stream(1, Lane::Minus);
    const auto k = poisson_sample(12.0, s);
    if (k < 64) ++counts[static_cast<std::size_t>(k)];
  }
  for (int k = 5; k <= 20; ++k) {
    const double p = std::exp(-12.0 + k * std::log(12.0) - std::lgamma(k + 1.0));
    const double sd = std::sqrt(p * (1 - p) / n);
    CHECK(std::abs(counts[static_cast<std::size_t>(k)] / double(n) - p) < 4 * sd);
  }
}
