#include "rhinar/kernel.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "rhinar/errors.hpp"

namespace rhinar {

namespace {

constexpr double kSeriesRange = 10.0;

void require_rough(double alpha) {
  if (!(alpha > 0.5 && alpha < 1.0))
    throw ConfigError("alpha: the INAR kernel requires alpha in (1/2, 1)");
}

double inv_gamma_one_minus(double alpha) { return 1.0 / std::tgamma(1.0 - alpha); }

// z^k / Gamma(a k + b) without overflowing the Gamma function.
double series_term(double z, int k, double a, double b) {
  const double arg = a * k + b;
  if (arg < 170.0) return std::pow(z, k) / std::tgamma(arg);
  const double sign = (z < 0.0 && (k % 2 == 1)) ? -1.0 : 1.0;
  return sign * std::exp(k * std::log(std::abs(z)) - std::lgamma(arg));
}

// E_alpha(-x), x >= 0, 0 < alpha < 1, from
//   E_alpha(-x) = sin(alpha pi) / (alpha pi) * int_0^inf exp(-y^(1/alpha)) x / (y^2 + 2 x y cos(alpha pi) + x^2) dy.
double mittag_leffler_negative_axis(double alpha, double x) {
  const double c = std::cos(alpha * std::numbers::pi);
  auto integrand = [&](double y) {
    return std::exp(-std::pow(y, 1.0 / alpha)) * x / (y * y + 2.0 * x * y * c + x * x);
  };
  const double upper = std::pow(60.0, alpha);  // exp(-60) beyond
  const double integral =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, 0.0, upper, 15, 1e-14);
  return std::sin(alpha * std::numbers::pi) / (alpha * std::numbers::pi) * integral;
}

}  // namespace

double phi_base(long n, double alpha) {
  if (n <= 0) return 0.0;
  require_rough(alpha);
  const double g = inv_gamma_one_minus(alpha);
  if (n == 1) return 1.0 - g;
  const double nd = static_cast<double>(n);
  return g * (std::pow(nd - 1.0, -alpha) - std::pow(nd, -alpha));
}

double phi_partial_sum(std::size_t n, double alpha) {
  if (n == 0) return 0.0;
  require_rough(alpha);
  return 1.0 - std::pow(static_cast<double>(n), -alpha) * inv_gamma_one_minus(alpha);
}

std::vector<double> build_weights(const DerivedParams& d) {
  std::vector<double> w(d.n_steps + 1, 0.0);
  const double scale = d.a_tau / (1.0 + d.beta);
  for (std::size_t k = 1; k <= d.n_steps; ++k)
    w[k] = scale * phi_base(static_cast<long>(k), d.alpha);
  return w;
}

double baseline_intensity(const DerivedParams& d, std::size_t n) {
  const double prefix = d.a_tau * phi_partial_sum(n - 1, d.alpha);
  return d.mu_tau + d.xi * d.mu_tau * ((1.0 - prefix) / (1.0 - d.a_tau) - prefix);
}

KernelTable build_kernel_table(const DerivedParams& d) {
  require_rough(d.alpha);
  KernelTable t;
  t.weights = build_weights(d);
  t.phi_prefix.assign(d.n_steps + 1, 0.0);
  for (std::size_t n = 1; n <= d.n_steps; ++n)
    t.phi_prefix[n] = d.a_tau * phi_partial_sum(n, d.alpha);
  t.baseline.assign(d.n_steps + 1, 0.0);
  for (std::size_t n = 1; n <= d.n_steps; ++n) {
    const double prefix = t.phi_prefix[n - 1];
    t.baseline[n] = d.mu_tau + d.xi * d.mu_tau * ((1.0 - prefix) / (1.0 - d.a_tau) - prefix);
  }
  return t;
}

MittagLefflerValue mittag_leffler_series(double a, double b, double z, int max_terms) {
  if (!(a > 0.0 && b > 0.0)) throw ConfigError("mittag_leffler: parameters must be positive");
  if (!(std::abs(z) <= kSeriesRange))
    throw NumericalError("mittag_leffler: |z| > 10 is outside the series range");
  if (z == 0.0) return {1.0 / std::tgamma(b), 1, 0.0};

  double sum = 0.0;
  double term = 0.0;
  int k = 0;
  for (; k < max_terms; ++k) {
    term = series_term(z, k, a, b);
    sum += term;
    if (k > 0 && std::abs(term) < 1e-16 * std::abs(sum)) {
      ++k;
      break;
    }
  }
  return {sum, k, std::abs(term)};
}

double mittag_leffler(double a, double b, double z) { return mittag_leffler_series(a, b, z).value; }

double resolvent_density(double alpha, double gamma, double t) {
  if (!(t > 0.0)) throw ConfigError("resolvent_density: t must be positive");
  return gamma * std::pow(t, alpha - 1.0) * mittag_leffler(alpha, alpha, -gamma * std::pow(t, alpha));
}

double resolvent_cumulative(double alpha, double gamma, double t) {
  if (t < 0.0) throw ConfigError("resolvent_cumulative: t must be non-negative");
  if (t == 0.0) return 0.0;
  const double x = gamma * std::pow(t, alpha);
  if (x <= kSeriesRange) return 1.0 - mittag_leffler(alpha, 1.0, -x);
  if (alpha >= 1.0) return -std::expm1(-x);
  return 1.0 - mittag_leffler_negative_axis(alpha, x);
}

double resolvent_cumulative_integral(double alpha, double gamma, double t) {
  if (t < 0.0) throw ConfigError("resolvent_cumulative_integral: t must be non-negative");
  if (t == 0.0) return 0.0;
  return t * (1.0 - mittag_leffler(alpha, 2.0, -gamma * std::pow(t, alpha)));
}

namespace {

// int_0^T f(s)^2 ds by termwise integration of the squared series
//   f(t) = gamma t^(alpha-1) sum_k c_k t^(alpha k),  c_k = (-gamma)^k / Gamma(alpha (k+1)).
double kernel_energy_series(double alpha, double gamma, double T) {
  constexpr int kTerms = 80;
  std::vector<double> c(kTerms);
  for (int k = 0; k < kTerms; ++k) c[k] = series_term(-gamma, k, alpha, alpha);
  double total = 0.0;
  for (int m = 0; m < kTerms; ++m) {
    double conv = 0.0;
    for (int k = 0; k <= m; ++k) conv += c[k] * c[m - k];
    const double expo = 2.0 * alpha - 1.0 + alpha * m;
    const double term = conv * std::pow(T, expo) / expo;
    total += term;
    if (m > 4 && std::abs(term) < 1e-17 * std::abs(total)) break;
  }
  return gamma * gamma * total;
}

}  // namespace

StripDiagnostics strip_from_cumulative(double nu, double f_cumulative, double kernel_energy) {
  StripDiagnostics s{};
  s.kernel_energy = kernel_energy;
  s.f_cumulative = f_cumulative;
  s.theta_T = 2.0 / (nu * nu * f_cumulative * f_cumulative);
  const double root = std::sqrt(1.0 + 2.0 * s.theta_T);
  s.delta = (root - 1.0) / 4.0;
  s.y_max = (1.0 + root) / 4.0;
  s.theta_star = s.y_max - 1.0;
  return s;
}

StripDiagnostics moment_strip_diagnostics(const ModelConfig& config, double T) {
  config.validate();
  if (!(T > 0.0 && T <= 1.0)) throw ConfigError("maturity: must lie in (0, 1]");
  if (config.gamma * std::pow(T, config.alpha) > kSeriesRange)
    throw NumericalError("moment_strip_diagnostics: gamma T^alpha outside the series range");
  const double F = resolvent_cumulative(config.alpha, config.gamma, T);
  const double energy = kernel_energy_series(config.alpha, config.gamma, T);
  return strip_from_cumulative(config.nu, F, energy);
}

}  // namespace rhinar
