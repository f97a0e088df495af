#include "rhinar/params.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "rhinar/errors.hpp"

namespace rhinar {

namespace {

void require(bool ok, const char* field, const char* what) {
  if (!ok) throw ConfigError(std::string(field) + ": " + what);
}

bool finite_all(std::initializer_list<double> xs) {
  for (double x : xs)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace

void ModelConfig::validate() const {
  require(finite_all({alpha, gamma, rho, nu, theta, v0, s0, maturity}), "model",
          "all parameters must be finite");
  require(alpha > 0.5 && alpha <= 1.0, "alpha", "must lie in (1/2, 1]");
  require(gamma > 0.0, "gamma", "must be positive");
  const double rho_min = -1.0 / std::sqrt(2.0);
  if (allow_zero_rho)
    require(rho > rho_min && rho <= 0.0, "rho", "must lie in (-1/sqrt(2), 0]");
  else
    require(rho > rho_min && rho < 0.0, "rho", "must lie in (-1/sqrt(2), 0)");
  require(nu > 0.0, "nu", "must be positive");
  require(theta > 0.0, "theta", "must be positive");
  require(v0 >= 0.0, "v0", "must be non-negative");
  require(s0 > 0.0, "s0", "must be positive");
  require(maturity > 0.0 && maturity <= 1.0, "maturity", "must lie in (0, 1]");
}

double DerivedParams::price_scale() const {
  return (1.0 - a_tau) / (mu * std::pow(tau, alpha));
}

double solve_beta(double rho, bool allow_zero) {
  const double rho_min = -1.0 / std::sqrt(2.0);
  if (!(rho > rho_min) || rho > 0.0 || (rho == 0.0 && !allow_zero))
    throw ConfigError("rho: must lie in (-1/sqrt(2), 0) for beta > 1");
  // 1 - (1 - 2 rho^2)^2 = 4 rho^2 (1 - rho^2), written without cancellation.
  const double r2 = rho * rho;
  return (1.0 + 2.0 * std::abs(rho) * std::sqrt(1.0 - r2)) / (1.0 - 2.0 * r2);
}

double rho_from_beta(double beta) {
  return (1.0 - beta) / std::sqrt(2.0 * (1.0 + beta * beta));
}

double derive_mu(double nu, double theta, double beta, double gamma) {
  if (!(nu > 0.0 && theta > 0.0 && beta > 0.0 && gamma > 0.0))
    throw ConfigError("derive_mu: nu, theta, beta, gamma must be positive");
  const double bp = 1.0 + beta;
  return theta * (1.0 + beta * beta) / (gamma * nu * nu * bp * bp);
}

double nu_from_mu(double mu, double theta, double beta, double gamma) {
  const double bp = 1.0 + beta;
  return std::sqrt(theta * (1.0 + beta * beta) / (gamma * mu * bp * bp));
}

double derive_xi(double v0, double theta) {
  if (!(theta > 0.0)) throw ConfigError("theta: must be positive");
  if (!(v0 >= 0.0)) throw ConfigError("v0: must be non-negative");
  return v0 / theta;
}

TimeScaled derive_time_scaled(double gamma, double tau, double alpha, double mu) {
  if (!(tau >= 1.0)) throw ConfigError("tau: must be at least 1");
  const double decay = gamma * std::pow(tau, -alpha);
  // decay == 1 is the degenerate a_tau = 0 boundary (no excitation); beyond it
  // a_tau would be negative.
  if (!(decay <= 1.0))
    throw ConfigError("tau: gamma * tau^-alpha must not exceed 1 (increase tau)");
  return {1.0 - decay, mu * std::pow(tau, alpha - 1.0)};
}

DerivedParams derive(const ModelConfig& config, double tau, double classical_clamp) {
  config.validate();
  if (!(tau >= 1.0) || !std::isfinite(tau)) throw ConfigError("tau: must be at least 1");

  DerivedParams d;
  d.alpha = config.alpha;
  if (config.alpha >= 1.0) {
    if (!(classical_clamp > 0.0 && classical_clamp < 0.5))
      throw ConfigError(
          "alpha: alpha = 1 has no INAR kernel; use the benchmark engines or a classical clamp");
    d.alpha = 1.0 - classical_clamp;
  }
  d.gamma = config.gamma;
  d.theta = config.theta;
  d.maturity = config.maturity;
  d.s0 = config.s0;
  d.beta = solve_beta(config.rho, config.allow_zero_rho);
  d.mu = derive_mu(config.nu, config.theta, d.beta, config.gamma);
  d.xi = derive_xi(config.v0, config.theta);

  const long steps = std::lround(tau * config.maturity);
  d.n_steps = static_cast<std::size_t>(std::max(1L, steps));
  d.tau = static_cast<double>(d.n_steps) / config.maturity;
  const TimeScaled ts = derive_time_scaled(d.gamma, d.tau, d.alpha, d.mu);
  d.a_tau = ts.a_tau;
  d.mu_tau = ts.mu_tau;
  return d;
}

std::string format_sig(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

}  // namespace rhinar
