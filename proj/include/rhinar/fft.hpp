#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace rhinar {

using Complex = std::complex<double>;

[[nodiscard]] constexpr bool is_power_of_two(std::size_t n) noexcept {
  return n != 0 && (n & (n - 1)) == 0;
}

[[nodiscard]] constexpr std::size_t next_power_of_two(std::size_t n) noexcept {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// Radix-2 iterative Cooley-Tukey transform of one fixed power-of-two size with
// precomputed twiddles and bit-reversal permutation. Immutable after construction.
class FftPlan {
 public:
  explicit FftPlan(std::size_t size);

  [[nodiscard]] std::size_t size() const noexcept { return size_; }

  // Unnormalised forward DFT: X_k = sum_j x_j exp(-2 pi i jk / N).
  void forward(std::span<Complex> data) const;
  // Inverse DFT including the 1/N factor.
  void inverse(std::span<Complex> data) const;

 private:
  void transform(std::span<Complex> data, bool inverse) const;

  std::size_t size_;
  std::vector<std::size_t> bitrev_;
  std::vector<Complex> twiddles_;  // exp(-2 pi i k / N), k < N/2
};

// Transform of real sequences of power-of-two length N >= 4 through one complex
// transform of length N/2. Spectra hold bins 0..N/2 (the rest follow by symmetry).
class RealFftPlan {
 public:
  explicit RealFftPlan(std::size_t size);

  [[nodiscard]] std::size_t size() const noexcept { return size_; }
  [[nodiscard]] std::size_t bins() const noexcept { return size_ / 2 + 1; }

  // in: N reals; out: N/2 + 1 bins. `work` needs N/2 entries.
  void forward(std::span<const double> in, std::span<Complex> out, std::span<Complex> work) const;
  // in: N/2 + 1 bins; out: N reals, including the 1/N factor.
  void inverse(std::span<const Complex> in, std::span<double> out, std::span<Complex> work) const;

 private:
  std::size_t size_;
  FftPlan half_;
  std::vector<Complex> twiddles_;  // exp(-2 pi i k / N), k <= N/2
};

// Convenience wrappers that build a plan on the fly. Throw std::length_error for
// non-power-of-two lengths.
void fft(std::span<Complex> data);
void ifft(std::span<Complex> data);

// Exact linear convolution C_j = sum_i A_i B_{j-i}, length |A| + |B| - 1.
// Zero-padded FFT above `direct_threshold` (min length), direct summation below.
[[nodiscard]] std::vector<double> linear_convolve(std::span<const double> a, std::span<const double> b,
                                                  std::size_t direct_threshold = 32);

[[nodiscard]] std::vector<double> linear_convolve_direct(std::span<const double> a,
                                                         std::span<const double> b);

}  // namespace rhinar
