#include "rhinar/poisson.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rhinar {

namespace {

constexpr int kLogFactTable = 256;

const std::array<double, kLogFactTable>& log_factorial_table() {
  static const std::array<double, kLogFactTable> table = [] {
    std::array<double, kLogFactTable> t{};
    for (int k = 0; k < kLogFactTable; ++k) t[k] = std::lgamma(k + 1.0);
    return t;
  }();
  return table;
}

std::int64_t poisson_inversion(double lambda, RandomStream& stream) {
  const double u = stream.uniform();
  double p = std::exp(-lambda);
  double cdf = p;
  std::int64_t k = 0;
  // The tail beyond k = 200 at lambda < 10 is below 1e-200; stop there to
  // guard against rounding in the cumulative sum.
  while (u > cdf && k < 200) {
    ++k;
    p *= lambda / static_cast<double>(k);
    cdf += p;
  }
  return k;
}

// W. Hormann, "The transformed rejection method for generating Poisson random
// variables", Insurance: Mathematics and Economics 12 (1993).
std::int64_t poisson_ptrs(double lambda, RandomStream& stream) {
  const double slam = std::sqrt(lambda);
  const double loglam = std::log(lambda);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);

  for (;;) {
    const double u = stream.uniform() - 0.5;
    const double v = stream.uniform();
    const double us = 0.5 - std::abs(u);
    const double kd = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::int64_t>(kd);
    if (kd < 0.0 || (us < 0.013 && v > us)) continue;
    const auto k = static_cast<std::int64_t>(kd);
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        -lambda + kd * loglam - log_factorial(k))
      return k;
  }
}

}  // namespace

double log_factorial(std::int64_t k) {
  if (k < kLogFactTable) return log_factorial_table()[static_cast<std::size_t>(k)];
  const double n = static_cast<double>(k) + 1.0;
  // lgamma(n) via Stirling with three correction terms; error < 1e-15 for n > 256.
  const double inv = 1.0 / n;
  const double inv2 = inv * inv;
  return (n - 0.5) * std::log(n) - n + 0.5 * std::log(2.0 * std::numbers::pi) +
         inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 / 1260.0));
}

std::int64_t poisson_sample(double lambda, RandomStream& stream) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw std::logic_error("poisson_sample: intensity must be finite and non-negative");
  if (lambda == 0.0) return 0;
  if (lambda < kPoissonInversionLimit) return poisson_inversion(lambda, stream);
  return poisson_ptrs(lambda, stream);
}

}  // namespace rhinar
