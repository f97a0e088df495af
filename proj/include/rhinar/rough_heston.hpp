#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <string_view>

#include "rhinar/fourier.hpp"
#include "rhinar/params.hpp"
#include "rhinar/riccati.hpp"

namespace rhinar {

// How the model parameters enter the Riccati-Volterra equation.
//   Power:     kernel t^(alpha-1)/Gamma(alpha), kappa = gamma, xi = gamma nu.
//   Resolvent: kernel gamma t^(alpha-1) E_{alpha,alpha}(-gamma t^alpha), kappa = 1, xi = nu.
// Power reproduces the published benchmark prices and is the default.
enum class RiccatiConvention { Power, Resolvent };

[[nodiscard]] std::string_view convention_name(RiccatiConvention c) noexcept;
// Accepts "power" or "resolvent"; throws ConfigError.
[[nodiscard]] RiccatiConvention parse_convention(std::string_view name);

struct RoughHestonSettings {
  RiccatiConvention convention = RiccatiConvention::Power;
  std::size_t grid_steps = 512;
  int corrector_iterations = 3;
  FourierSettings fourier;
};

[[nodiscard]] RiccatiCoefficients riccati_coefficients(const ModelConfig& config,
                                                       RiccatiConvention convention);
[[nodiscard]] VolterraKernel riccati_kernel(const ModelConfig& config, RiccatiConvention convention);

// phi_T(z) = E[exp(z log(S_T/S0))] = exp(B + V0 A).
[[nodiscard]] Complex rough_heston_cf(Complex z, double T, const ModelConfig& config,
                                      const RoughHestonSettings& settings = {});

// Semi-analytic European pricer. Characteristic-function grids are cached per
// maturity; the object is safe to share between threads.
class RoughHestonPricer {
 public:
  explicit RoughHestonPricer(const ModelConfig& config, RoughHestonSettings settings = {});

  [[nodiscard]] FourierPrice call_detail(double strike, double T) const;
  [[nodiscard]] double call(double strike, double T) const;
  [[nodiscard]] double put(double strike, double T) const;

  [[nodiscard]] const CfGrid& grid(double T) const;
  [[nodiscard]] const ModelConfig& config() const noexcept { return config_; }
  [[nodiscard]] const RoughHestonSettings& settings() const noexcept { return settings_; }

 private:
  ModelConfig config_;
  RoughHestonSettings settings_;
  mutable std::mutex mutex_;
  mutable std::map<double, std::unique_ptr<CfGrid>> grids_;
};

// Black-Scholes-equivalent total variance int_0^T V(t) dt of the noise-free
// variance under the chosen convention.
[[nodiscard]] double deterministic_total_variance(const ModelConfig& config, double T,
                                                  const RoughHestonSettings& settings = {});

}  // namespace rhinar
