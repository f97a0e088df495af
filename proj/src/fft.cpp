#include "rhinar/fft.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rhinar {

namespace {

// Plain complex product; std::complex operator* takes the slow C99 Annex G path.
inline Complex cmul(Complex a, Complex b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

}  // namespace

FftPlan::FftPlan(std::size_t size) : size_(size) {
  if (!is_power_of_two(size))
    throw std::length_error("fft: length " + std::to_string(size) + " is not a power of two");
  bitrev_.resize(size);
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < size) ++bits;
  for (std::size_t i = 0; i < size; ++i) {
    std::size_t r = 0;
    for (std::size_t b = 0; b < bits; ++b)
      if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (bits - 1 - b);
    bitrev_[i] = r;
  }
  twiddles_.resize(size / 2);
  for (std::size_t k = 0; k < size / 2; ++k) {
    const double ang = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(size);
    twiddles_[k] = {std::cos(ang), std::sin(ang)};
  }
}

void FftPlan::forward(std::span<Complex> data) const { transform(data, false); }

void FftPlan::inverse(std::span<Complex> data) const {
  transform(data, true);
  const double scale = 1.0 / static_cast<double>(size_);
  for (auto& x : data) x *= scale;
}

void FftPlan::transform(std::span<Complex> data, bool inverse) const {
  if (data.size() != size_) throw std::length_error("fft: buffer length does not match plan");
  const std::size_t n = size_;
  for (std::size_t i = 0; i < n; ++i)
    if (i < bitrev_[i]) std::swap(data[i], data[bitrev_[i]]);

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t j = 0; j < half; ++j) {
        Complex w = twiddles_[j * stride];
        if (inverse) w = std::conj(w);
        const Complex u = data[start + j];
        const Complex v = cmul(data[start + j + half], w);
        data[start + j] = u + v;
        data[start + j + half] = u - v;
      }
    }
  }
}

namespace {

std::size_t checked_half(std::size_t size) {
  if (!is_power_of_two(size) || size < 4)
    throw std::length_error("real fft: length " + std::to_string(size) +
                            " is not a power of two >= 4");
  return size / 2;
}

}  // namespace

RealFftPlan::RealFftPlan(std::size_t size) : size_(size), half_(checked_half(size)) {
  twiddles_.resize(size / 2 + 1);
  for (std::size_t k = 0; k <= size / 2; ++k) {
    const double ang = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(size);
    twiddles_[k] = {std::cos(ang), std::sin(ang)};
  }
}

// With z_j = x_{2j} + i x_{2j+1} and Z its half-length transform, the even and
// odd sub-spectra are E_k = (Z_k + conj Z_{h-k}) / 2, O_k = (Z_k - conj Z_{h-k}) / 2i
// and X_k = E_k + W^k O_k.
void RealFftPlan::forward(std::span<const double> in, std::span<Complex> out,
                          std::span<Complex> work) const {
  const std::size_t h = size_ / 2;
  if (in.size() != size_ || out.size() < h + 1 || work.size() < h)
    throw std::length_error("real fft: buffer length does not match plan");
  std::span<Complex> z = work.first(h);
  for (std::size_t j = 0; j < h; ++j) z[j] = {in[2 * j], in[2 * j + 1]};
  half_.forward(z);
  out[0] = {z[0].real() + z[0].imag(), 0.0};
  out[h] = {z[0].real() - z[0].imag(), 0.0};
  for (std::size_t k = 1; k < h; ++k) {
    const Complex a = z[k];
    const Complex b = std::conj(z[h - k]);
    const Complex e = 0.5 * (a + b);
    const Complex d = 0.5 * (a - b);
    const Complex o{d.imag(), -d.real()};  // d / i
    out[k] = e + cmul(twiddles_[k], o);
  }
}

void RealFftPlan::inverse(std::span<const Complex> in, std::span<double> out,
                          std::span<Complex> work) const {
  const std::size_t h = size_ / 2;
  if (in.size() < h + 1 || out.size() != size_ || work.size() < h)
    throw std::length_error("real fft: buffer length does not match plan");
  std::span<Complex> z = work.first(h);
  for (std::size_t k = 0; k < h; ++k) {
    const Complex a = in[k];
    const Complex b = std::conj(in[h - k]);
    const Complex e = 0.5 * (a + b);
    const Complex o = cmul(0.5 * (a - b), std::conj(twiddles_[k]));
    z[k] = {e.real() - o.imag(), e.imag() + o.real()};  // e + i o
  }
  half_.inverse(z);
  for (std::size_t j = 0; j < h; ++j) {
    out[2 * j] = z[j].real();
    out[2 * j + 1] = z[j].imag();
  }
}

void fft(std::span<Complex> data) { FftPlan(data.size()).forward(data); }

void ifft(std::span<Complex> data) { FftPlan(data.size()).inverse(data); }

std::vector<double> linear_convolve_direct(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::length_error("linear_convolve: empty input");
  std::vector<double> c(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

std::vector<double> linear_convolve(std::span<const double> a, std::span<const double> b,
                                    std::size_t direct_threshold) {
  if (a.empty() || b.empty()) throw std::length_error("linear_convolve: empty input");
  if (std::min(a.size(), b.size()) < direct_threshold) return linear_convolve_direct(a, b);

  const std::size_t out_len = a.size() + b.size() - 1;
  const FftPlan plan(next_power_of_two(out_len));
  std::vector<Complex> fa(plan.size()), fb(plan.size());
  std::copy(a.begin(), a.end(), fa.begin());
  std::copy(b.begin(), b.end(), fb.begin());
  plan.forward(fa);
  plan.forward(fb);
  for (std::size_t k = 0; k < plan.size(); ++k) fa[k] = cmul(fa[k], fb[k]);
  plan.inverse(fa);

  std::vector<double> c(out_len);
#ifndef NDEBUG
  double peak = 0.0, imag_peak = 0.0;
  for (std::size_t k = 0; k < out_len; ++k) {
    peak = std::max(peak, std::abs(fa[k].real()));
    imag_peak = std::max(imag_peak, std::abs(fa[k].imag()));
  }
  assert(imag_peak <= 1e-9 * std::max(peak, 1.0));
#endif
  for (std::size_t k = 0; k < out_len; ++k) c[k] = fa[k].real();
  return c;
}

}  // namespace rhinar
