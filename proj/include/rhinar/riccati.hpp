#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace rhinar {

using Complex = std::complex<double>;

// Volterra kernel K described by its first two antiderivatives
//   K1(t) = int_0^t K,  K2(t) = int_0^t K1,
// which is all product integration needs to integrate K exactly against
// piecewise-linear functions.
struct VolterraKernel {
  std::function<double(double)> k1;
  std::function<double(double)> k2;
};

// t^(alpha-1) / Gamma(alpha).
[[nodiscard]] VolterraKernel power_kernel(double alpha);
// gamma t^(alpha-1) E_{alpha,alpha}(-gamma t^alpha), the resolvent of the power kernel.
[[nodiscard]] VolterraKernel resolvent_kernel(double alpha, double gamma);

// Product-integration weights on the uniform grid t_m = m h, m = 0..n:
//   int_{t_{n-1}}^{t_n} ... over cell (j, j+1) at lag m = n - j, so that
//   int_0^{t_n} K(t_n - s) g(s) ds ~= sum_j (left[n-j] g_j + right[n-j] g_{j+1}).
// rect[m] = K1(m h) - K1((m-1) h) is the piecewise-constant (predictor) weight.
struct ProductWeights {
  double h = 0.0;
  std::vector<double> rect;
  std::vector<double> left;
  std::vector<double> right;
};

[[nodiscard]] ProductWeights product_weights(const VolterraKernel& kernel, double T, std::size_t n);

// Coefficients of  iota = K * F(iota),
//   F(p) = (z^2 - z)/2 + (rho xi z - kappa) p + xi^2 p^2 / 2.
struct RiccatiCoefficients {
  double kappa = 0.0;
  double xi = 0.0;
  double rho = 0.0;
};

struct RiccatiSolution {
  double h = 0.0;
  std::vector<Complex> iota;  // iota(t_m), iota(0) = 0
  Complex A;                  // int_0^T F(iota)
  Complex B;                  // kappa theta int_0^T iota
};

inline constexpr double kRiccatiOverflow = 1e8;

// Fractional Adams predictor-corrector. Throws NumericalError if |iota| exceeds
// kRiccatiOverflow.
[[nodiscard]] RiccatiSolution solve_riccati(Complex z, const RiccatiCoefficients& c, double theta,
                                            const ProductWeights& w, int corrector_iterations = 3);

// Deterministic (noise-free) variance  V = V0 + K * (kappa (theta - V)) on the
// same grid, returned at t_0..t_n.
[[nodiscard]] std::vector<double> deterministic_variance(double v0, double kappa, double theta,
                                                         const ProductWeights& w);

// Trapezoidal int_0^T of a grid function.
[[nodiscard]] double trapezoid(const std::vector<double>& values, double h);

}  // namespace rhinar
