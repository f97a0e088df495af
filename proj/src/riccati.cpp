#include "rhinar/riccati.hpp"

#include <cmath>
#include <string>

#include "rhinar/errors.hpp"
#include "rhinar/kernel.hpp"

namespace rhinar {

namespace {

inline Complex cmul(Complex a, Complex b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

}  // namespace

VolterraKernel power_kernel(double alpha) {
  const double g1 = std::tgamma(alpha + 1.0);
  const double g2 = std::tgamma(alpha + 2.0);
  return {[=](double t) { return t <= 0.0 ? 0.0 : std::pow(t, alpha) / g1; },
          [=](double t) { return t <= 0.0 ? 0.0 : std::pow(t, alpha + 1.0) / g2; }};
}

VolterraKernel resolvent_kernel(double alpha, double gamma) {
  return {[=](double t) { return t <= 0.0 ? 0.0 : resolvent_cumulative(alpha, gamma, t); },
          [=](double t) { return t <= 0.0 ? 0.0 : resolvent_cumulative_integral(alpha, gamma, t); }};
}

ProductWeights product_weights(const VolterraKernel& kernel, double T, std::size_t n) {
  if (n == 0 || !(T > 0.0)) throw ConfigError("riccati grid: need T > 0 and at least one step");
  ProductWeights w;
  w.h = T / static_cast<double>(n);
  std::vector<double> k1(n + 1), k2(n + 1);
  for (std::size_t m = 0; m <= n; ++m) {
    const double t = w.h * static_cast<double>(m);
    k1[m] = kernel.k1(t);
    k2[m] = kernel.k2(t);
  }
  w.rect.assign(n + 1, 0.0);
  w.left.assign(n + 1, 0.0);
  w.right.assign(n + 1, 0.0);
  for (std::size_t m = 1; m <= n; ++m) {
    // Over a cell at lag m the kernel argument u = t_n - s runs over [lo, hi];
    // M0 = int K(u) du, M1 = int u K(u) du by parts.
    const double lo = w.h * static_cast<double>(m - 1);
    const double hi = w.h * static_cast<double>(m);
    const double m0 = k1[m] - k1[m - 1];
    const double m1 = hi * k1[m] - lo * k1[m - 1] - (k2[m] - k2[m - 1]);
    w.rect[m] = m0;
    // g is linear in s; s = t_j at u = hi and s = t_{j+1} at u = lo.
    w.left[m] = (m1 - lo * m0) / w.h;
    w.right[m] = (hi * m0 - m1) / w.h;
  }
  return w;
}

RiccatiSolution solve_riccati(Complex z, const RiccatiCoefficients& c, double theta,
                              const ProductWeights& w, int corrector_iterations) {
  const std::size_t n = w.rect.size() - 1;
  const Complex forcing = 0.5 * (z * z - z);
  const Complex lin = c.rho * c.xi * z - c.kappa;
  const double quad = 0.5 * c.xi * c.xi;
  auto F = [&](Complex p) { return forcing + cmul(lin, p) + quad * cmul(p, p); };

  RiccatiSolution sol;
  sol.h = w.h;
  sol.iota.assign(n + 1, Complex{});
  std::vector<Complex> g(n + 1);
  g[0] = F(Complex{});

  for (std::size_t k = 1; k <= n; ++k) {
    Complex known{}, pred{};
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t m = k - j;
      known += w.left[m] * g[j];
      if (j > 0) known += w.right[m + 1] * g[j];
      pred += w.rect[m] * g[j];
    }
    Complex p = pred;
    for (int it = 0; it < corrector_iterations; ++it) p = known + w.right[1] * F(p);
    if (!(std::abs(p) < kRiccatiOverflow))
      throw NumericalError("riccati: |iota| exceeded " + std::to_string(kRiccatiOverflow) +
                           " at t = " + std::to_string(w.h * static_cast<double>(k)) +
                           " for z = " + std::to_string(z.real()) + (z.imag() < 0 ? "" : "+") +
                           std::to_string(z.imag()) + "i");
    sol.iota[k] = p;
    g[k] = F(p);
  }

  Complex a{}, b{};
  for (std::size_t k = 0; k <= n; ++k) {
    const double wt = (k == 0 || k == n) ? 0.5 : 1.0;
    a += wt * g[k];
    b += wt * sol.iota[k];
  }
  sol.A = w.h * a;
  sol.B = c.kappa * theta * w.h * b;
  return sol;
}

std::vector<double> deterministic_variance(double v0, double kappa, double theta,
                                           const ProductWeights& w) {
  const std::size_t n = w.rect.size() - 1;
  std::vector<double> v(n + 1), g(n + 1);
  v[0] = v0;
  g[0] = kappa * (theta - v0);
  for (std::size_t k = 1; k <= n; ++k) {
    double known = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      known += w.left[k - j] * g[j];
      if (j > 0) known += w.right[k - j + 1] * g[j];
    }
    // Linear in v_k: v = v0 + known + right[1] kappa (theta - v).
    const double r = w.right[1] * kappa;
    v[k] = (v0 + known + r * theta) / (1.0 + r);
    g[k] = kappa * (theta - v[k]);
  }
  return v;
}

double trapezoid(const std::vector<double>& values, double h) {
  if (values.size() < 2) return 0.0;
  double s = 0.5 * (values.front() + values.back());
  for (std::size_t k = 1; k + 1 < values.size(); ++k) s += values[k];
  return s * h;
}

}  // namespace rhinar
