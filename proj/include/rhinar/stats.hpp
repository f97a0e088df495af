#pragma once

#include <cstddef>
#include <span>

namespace rhinar {

inline constexpr double kZ95 = 1.96;

// One-pass mean and sum of squared deviations (Welford); merge() is Chan's
// pairwise update, so merging fixed blocks in a fixed order is bit-stable.
struct MomentAccumulator {
  std::size_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) noexcept {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }

  void merge(const MomentAccumulator& other) noexcept;

  // Unbiased sample variance; 0 for n < 2.
  [[nodiscard]] double variance() const noexcept {
    return n < 2 ? 0.0 : m2 / static_cast<double>(n - 1);
  }
};

struct PriceEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::size_t n_paths = 0;

  [[nodiscard]] double halfwidth() const noexcept { return ci_high - mean; }
};

// mean +- 1.96 s / sqrt(n). Throws ConfigError for n < 2.
[[nodiscard]] PriceEstimate confidence_interval(const MomentAccumulator& acc);
[[nodiscard]] PriceEstimate confidence_interval(std::span<const double> samples);

}  // namespace rhinar
