#include "rhinar/rough_heston.hpp"

#include <cmath>
#include <string>

#include "rhinar/errors.hpp"

namespace rhinar {

std::string_view convention_name(RiccatiConvention c) noexcept {
  return c == RiccatiConvention::Power ? "power" : "resolvent";
}

RiccatiConvention parse_convention(std::string_view name) {
  if (name == "power") return RiccatiConvention::Power;
  if (name == "resolvent") return RiccatiConvention::Resolvent;
  throw ConfigError("convention: expected 'power' or 'resolvent', got '" + std::string(name) + "'");
}

RiccatiCoefficients riccati_coefficients(const ModelConfig& config, RiccatiConvention convention) {
  if (convention == RiccatiConvention::Power)
    return {config.gamma, config.gamma * config.nu, config.rho};
  return {1.0, config.nu, config.rho};
}

VolterraKernel riccati_kernel(const ModelConfig& config, RiccatiConvention convention) {
  if (convention == RiccatiConvention::Power) return power_kernel(config.alpha);
  return resolvent_kernel(config.alpha, config.gamma);
}

namespace {

void check_maturity(double T) {
  if (!(T > 0.0) || !std::isfinite(T)) throw ConfigError("maturity: must be positive");
}

}  // namespace

Complex rough_heston_cf(Complex z, double T, const ModelConfig& config,
                        const RoughHestonSettings& settings) {
  check_maturity(T);
  const auto w = product_weights(riccati_kernel(config, settings.convention), T, settings.grid_steps);
  const auto sol = solve_riccati(z, riccati_coefficients(config, settings.convention), config.theta, w,
                                 settings.corrector_iterations);
  return std::exp(sol.B + config.v0 * sol.A);
}

RoughHestonPricer::RoughHestonPricer(const ModelConfig& config, RoughHestonSettings settings)
    : config_(config), settings_(settings) {
  if (!(config_.alpha > 0.5 && config_.alpha <= 1.0)) throw ConfigError("alpha: must lie in (1/2, 1]");
  if (!(config_.s0 > 0.0)) throw ConfigError("s0: must be positive");
}

const CfGrid& RoughHestonPricer::grid(double T) const {
  check_maturity(T);
  const std::lock_guard lock(mutex_);
  auto it = grids_.find(T);
  if (it != grids_.end()) return *it->second;
  const auto w = product_weights(riccati_kernel(config_, settings_.convention), T, settings_.grid_steps);
  const auto coeffs = riccati_coefficients(config_, settings_.convention);
  auto cf = [&](double u) {
    const auto sol = solve_riccati({0.5, u}, coeffs, config_.theta, w, settings_.corrector_iterations);
    return std::exp(sol.B + config_.v0 * sol.A);
  };
  auto grid = std::make_unique<CfGrid>(build_cf_grid(cf, settings_.fourier));
  return *grids_.emplace(T, std::move(grid)).first->second;
}

FourierPrice RoughHestonPricer::call_detail(double strike, double T) const {
  return lewis_call(grid(T), config_.s0, strike);
}

double RoughHestonPricer::call(double strike, double T) const { return call_detail(strike, T).price; }

double RoughHestonPricer::put(double strike, double T) const {
  return call(strike, T) - config_.s0 + strike;
}

double deterministic_total_variance(const ModelConfig& config, double T,
                                    const RoughHestonSettings& settings) {
  check_maturity(T);
  const auto w = product_weights(riccati_kernel(config, settings.convention), T, settings.grid_steps);
  const auto coeffs = riccati_coefficients(config, settings.convention);
  return trapezoid(deterministic_variance(config.v0, coeffs.kappa, config.theta, w), w.h);
}

}  // namespace rhinar
