#pragma once

#include <cstddef>
#include <string>

namespace rhinar {

// User-facing rough-Heston parameters. Names follow the usual rough-Heston
// notation: alpha = H + 1/2, gamma = mean reversion, nu = vol-of-vol.
struct ModelConfig {
  double alpha = 0.62;
  double gamma = 0.1;
  double rho = -0.681;
  double nu = 0.331;
  double theta = 0.3156;
  double v0 = 0.0392;
  double s0 = 100.0;
  double maturity = 1.0;

  // rho = 0 (beta = 1, no leverage) lies outside the model's assumptions and is
  // only accepted when explicitly requested.
  bool allow_zero_rho = false;

  // Throws ConfigError naming the offending field.
  void validate() const;

  [[nodiscard]] bool classical() const noexcept { return alpha >= 1.0; }
};

// Microstructural parameters of the bivariate INAR(inf) sequence.
struct DerivedParams {
  double alpha = 0.0;   // roughness actually used by the kernel (may be clamped below 1)
  double gamma = 0.0;
  double theta = 0.0;
  double beta = 0.0;    // liquidity asymmetry
  double mu = 0.0;      // exogenous intensity scale
  double xi = 0.0;      // V0 / theta
  double tau = 0.0;     // steps per unit time
  std::size_t n_steps = 0;
  double maturity = 1.0;
  double a_tau = 0.0;   // 1 - gamma tau^-alpha
  double mu_tau = 0.0;  // mu tau^(alpha-1)
  double s0 = 0.0;

  // Scale c_tau = (1 - a_tau) / (mu tau^alpha) used by the rescaled log-price.
  [[nodiscard]] double price_scale() const;
};

struct TimeScaled {
  double a_tau;
  double mu_tau;
};

// Root beta > 1 of 2 rho^2 (1 + beta^2) = (1 - beta)^2.
// Throws ConfigError unless rho is in (-1/sqrt2, 0); rho = 0 gives beta = 1 when allow_zero.
[[nodiscard]] double solve_beta(double rho, bool allow_zero = false);

// Inverse map: rho = (1 - beta) / sqrt(2 (1 + beta^2)).
[[nodiscard]] double rho_from_beta(double beta);

[[nodiscard]] double derive_mu(double nu, double theta, double beta, double gamma);

// nu = sqrt(theta (1 + beta^2) / (gamma mu (1 + beta)^2)).
[[nodiscard]] double nu_from_mu(double mu, double theta, double beta, double gamma);

[[nodiscard]] double derive_xi(double v0, double theta);

[[nodiscard]] TimeScaled derive_time_scaled(double gamma, double tau, double alpha, double mu);

// Builds the full parameter set for a simulation with `tau` steps per unit time
// over config.maturity. The number of steps is round(tau * maturity) and the
// effective tau is n_steps / maturity, so the grid hits the maturity exactly.
//
// alpha = 1 has no INAR kernel (Gamma(0) pole). It is rejected unless
// classical_clamp > 0, in which case alpha is replaced by 1 - classical_clamp.
[[nodiscard]] DerivedParams derive(const ModelConfig& config, double tau,
                                   double classical_clamp = 0.0);

// printf %g formatting with `digits` significant digits.
[[nodiscard]] std::string format_sig(double value, int digits = 6);

}  // namespace rhinar
