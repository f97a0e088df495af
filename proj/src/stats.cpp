#include "rhinar/stats.hpp"

#include <cmath>

#include "rhinar/errors.hpp"

namespace rhinar {

void MomentAccumulator::merge(const MomentAccumulator& other) noexcept {
  if (other.n == 0) return;
  if (n == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(n);
  const double nb = static_cast<double>(other.n);
  const double total = na + nb;
  const double d = other.mean - mean;
  mean += d * nb / total;
  m2 += other.m2 + d * d * na * nb / total;
  n += other.n;
}

PriceEstimate confidence_interval(const MomentAccumulator& acc) {
  if (acc.n < 2) throw ConfigError("confidence interval needs at least 2 samples");
  PriceEstimate e;
  e.mean = acc.mean;
  e.std_error = std::sqrt(acc.variance() / static_cast<double>(acc.n));
  e.ci_low = e.mean - kZ95 * e.std_error;
  e.ci_high = e.mean + kZ95 * e.std_error;
  e.n_paths = acc.n;
  return e;
}

PriceEstimate confidence_interval(std::span<const double> samples) {
  MomentAccumulator acc;
  for (double x : samples) acc.add(x);
  return confidence_interval(acc);
}

}  // namespace rhinar
