#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "rhinar/fft.hpp"

using namespace rhinar;

namespace {

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  REQUIRE(a.size() == b.size());
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("fft of zeros and of an impulse") {
  std::vector<Complex> zeros(64);
  fft(zeros);
  for (auto z : zeros) CHECK(z == Complex(0.0, 0.0));

  std::vector<Complex> delta(64);
  delta[0] = 1.0;
  fft(delta);
  for (auto z : delta) CHECK(std::abs(z - Complex(1.0, 0.0)) < 1e-15);
}

TEST_CASE("fft matches the DFT definition") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(-1, 1);
  const std::size_t n = 32;
  std::vector<Complex> x(n);
  for (auto& v : x) v = {u(gen), u(gen)};
  std::vector<Complex> X = x;
  fft(X);
  for (std::size_t k = 0; k < n; ++k) {
    Complex s = 0;
    for (std::size_t j = 0; j < n; ++j) s += x[j] * std::polar(1.0, -2.0 * M_PI * double(j * k) / double(n));
    CHECK(std::abs(s - X[k]) < 1e-13);
  }
}

TEST_CASE("ifft round trip") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  std::vector<Complex> x(4096);
  for (auto& v : x) v = {u(gen), 0.0};
  std::vector<Complex> y = x;
  fft(y);
  ifft(y);
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs(y[i] - x[i]));
  CHECK(worst <= 1e-12 * 1e3);
  CHECK(worst <= 1e-9);
}

TEST_CASE("size errors") {
  std::vector<Complex> bad(12);
  CHECK_THROWS_AS(fft(bad), std::length_error);
  CHECK_THROWS_AS(FftPlan(0), std::length_error);
  CHECK_THROWS_AS(RealFftPlan(2), std::length_error);
  CHECK_THROWS_AS(RealFftPlan(24), std::length_error);
  const std::vector<double> empty;
  const std::vector<double> one{1.0};
  CHECK_THROWS_AS((void)linear_convolve(empty, one), std::length_error);
}

TEST_CASE("real transform agrees with the complex one") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-1, 1);
  for (std::size_t n : {4u, 8u, 64u, 1024u}) {
    RealFftPlan plan(n);
    std::vector<double> x(n);
    for (auto& v : x) v = u(gen);
    std::vector<Complex> bins(plan.bins()), work(n / 2);
    plan.forward(x, bins, work);
    std::vector<Complex> ref(x.begin(), x.end());
    fft(ref);
    for (std::size_t k = 0; k < plan.bins(); ++k) CHECK(std::abs(bins[k] - ref[k]) < 1e-12 * double(n));
    std::vector<double> back(n);
    plan.inverse(bins, back, work);
    CHECK(max_diff(back, x) < 1e-14 * double(n));
  }
}

TEST_CASE("linear convolution identities") {
  const std::vector<double> a{1, 2, 3, 4, 5};
  const std::vector<double> id{1};
  CHECK(max_diff(linear_convolve(a, id), a) == 0.0);
  const std::vector<double> zero(7, 0.0);
  const auto c0 = linear_convolve(a, zero);
  CHECK(c0.size() == a.size() + zero.size() - 1);
  CHECK(max_abs(c0) == 0.0);
}

TEST_CASE("FFT convolution against direct summation") {
  std::mt19937_64 gen(2024);
  std::uniform_int_distribution<int> ints(-50, 50);
  std::uniform_real_distribution<double> reals(-1, 1);
  std::vector<double> a(1000), b(777);
  for (auto& v : a) v = ints(gen);
  for (auto& v : b) v = reals(gen);
  const auto fast = linear_convolve(a, b);
  const auto slow = linear_convolve_direct(a, b);
  CHECK(max_diff(fast, slow) <= 1e-8 * max_abs(slow));

  // Commutativity and linearity.
  CHECK(max_diff(linear_convolve(b, a), fast) <= 1e-10 * max_abs(slow));
  std::vector<double> a2(a.size()), sum(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    a2[i] = reals(gen);
    sum[i] = a[i] + a2[i];
  }
  const auto lhs = linear_convolve(sum, b);
  const auto r2 = linear_convolve(a2, b);
  double worst = 0.0;
  for (std::size_t i = 0; i < lhs.size(); ++i) worst = std::max(worst, std::abs(lhs[i] - fast[i] - r2[i]));
  CHECK(worst <= 1e-10 * max_abs(lhs));
}

TEST_CASE("random convolution sizes straddling the direct threshold") {
  std::mt19937_64 gen(99);
  std::uniform_int_distribution<std::size_t> len(1, 300);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> a(len(gen)), b(len(gen));
    for (auto& v : a) v = u(gen);
    for (auto& v : b) v = u(gen);
    const auto slow = linear_convolve_direct(a, b);
    CHECK(max_diff(linear_convolve(a, b, 1), slow) <= 1e-12 * std::max(1.0, max_abs(slow)) * 100);
  }
}
