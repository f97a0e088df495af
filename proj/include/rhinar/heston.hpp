#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "rhinar/fourier.hpp"
#include "rhinar/params.hpp"
#include "rhinar/payoffs.hpp"
#include "rhinar/stats.hpp"

namespace rhinar {

// Vol-of-vol of the alpha = 1 model. Scaled (gamma nu) is what the rough
// variance equation reduces to at alpha = 1 and reproduces the published
// classical benchmark prices; Raw uses nu itself.
enum class VolOfVolConvention { Scaled, Raw };

[[nodiscard]] std::string_view vol_convention_name(VolOfVolConvention c) noexcept;
[[nodiscard]] VolOfVolConvention parse_vol_convention(std::string_view name);

struct HestonClassicalParams {
  double kappa = 0.0;
  double theta = 0.0;
  double sigma = 0.0;
  double rho = 0.0;
  double v0 = 0.0;
  double s0 = 0.0;

  [[nodiscard]] static HestonClassicalParams from_config(const ModelConfig& config,
                                                         VolOfVolConvention convention =
                                                             VolOfVolConvention::Scaled);

  // 2 kappa theta / sigma^2; the variance stays positive when >= 1. Reported, not enforced.
  [[nodiscard]] double feller_ratio() const noexcept;
  void validate() const;
};

// E[exp(z log(S_T/S0))], numerically stable for sigma -> 0.
[[nodiscard]] std::complex<double> heston_cf(std::complex<double> z, double T,
                                             const HestonClassicalParams& p);

[[nodiscard]] double heston_closed_form(double strike, double T, const HestonClassicalParams& p,
                                        bool call, const FourierSettings& fourier = {});

// Strike-independent grid, for pricing many strikes at one maturity.
[[nodiscard]] CfGrid heston_cf_grid(double T, const HestonClassicalParams& p,
                                    const FourierSettings& fourier = {});

struct EulerSettings {
  double tau = 320.0;           // steps per unit time
  std::size_t n_pairs = 500000;  // antithetic pairs; each pair is one sample
  std::uint64_t master_seed = 20250101;
  unsigned n_threads = 0;
  bool antithetic = true;        // false: one unpaired path per sample (for comparisons)

  void validate() const;
};

struct EulerResult {
  std::vector<PriceEstimate> estimates;  // aligned with specs
  double seconds = 0.0;
};

// Truncated Euler-Maruyama scheme for S and V with correlated Gaussians,
// evaluated with the same payoff code as the INAR engine.
[[nodiscard]] EulerResult euler_heston_simulate(const HestonClassicalParams& p, double T,
                                                const EulerSettings& settings,
                                                std::span<const OptionSpec> specs);

}  // namespace rhinar
