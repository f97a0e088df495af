#include "rhinar/heston.hpp"

#include <chrono>
#include <cmath>
#include <memory>
#include <numbers>
#include <string>

#include "rhinar/errors.hpp"
#include "rhinar/mc.hpp"
#include "rhinar/rng.hpp"

namespace rhinar {

namespace {

using C = std::complex<double>;

// log(1 + q) / q, accurate near q = 0.
C log1p_ratio(C q) {
  if (std::abs(q) < 1e-8) return 1.0 - q / 2.0 + q * q / 3.0;
  return std::log(1.0 + q) / q;
}

}  // namespace

std::string_view vol_convention_name(VolOfVolConvention c) noexcept {
  return c == VolOfVolConvention::Scaled ? "scaled" : "raw";
}

VolOfVolConvention parse_vol_convention(std::string_view name) {
  if (name == "scaled") return VolOfVolConvention::Scaled;
  if (name == "raw") return VolOfVolConvention::Raw;
  throw ConfigError("vol convention: expected 'scaled' or 'raw', got '" + std::string(name) + "'");
}

HestonClassicalParams HestonClassicalParams::from_config(const ModelConfig& config,
                                                         VolOfVolConvention convention) {
  HestonClassicalParams p;
  p.kappa = config.gamma;
  p.theta = config.theta;
  p.sigma = convention == VolOfVolConvention::Scaled ? config.gamma * config.nu : config.nu;
  p.rho = config.rho;
  p.v0 = config.v0;
  p.s0 = config.s0;
  return p;
}

double HestonClassicalParams::feller_ratio() const noexcept {
  return 2.0 * kappa * theta / (sigma * sigma);
}

void HestonClassicalParams::validate() const {
  if (!(kappa > 0.0)) throw ConfigError("kappa: must be positive");
  if (!(theta > 0.0)) throw ConfigError("theta: must be positive");
  if (!(sigma >= 0.0)) throw ConfigError("sigma: must be non-negative");
  if (!(rho >= -1.0 && rho <= 1.0)) throw ConfigError("rho: must lie in [-1, 1]");
  if (!(v0 >= 0.0)) throw ConfigError("v0: must be non-negative");
  if (!(s0 > 0.0)) throw ConfigError("s0: must be positive");
}

// With b = kappa - rho sigma z, d = sqrt(b^2 - sigma^2 (z^2 - z)), g = (b - d)/(b + d):
//   D = (z^2 - z)/(b + d) (1 - e^{-dT}) / (1 - g e^{-dT}),
//   C = kappa theta [ (b - d) T - 2 log((1 - g e^{-dT}) / (1 - g)) ] / sigma^2,
// using b - d = sigma^2 (z^2 - z)/(b + d) so nothing divides by sigma.
C heston_cf(C z, double T, const HestonClassicalParams& p) {
  const C zz = z * z - z;
  const C b = p.kappa - p.rho * p.sigma * z;
  const double s2 = p.sigma * p.sigma;
  const C d = std::sqrt(b * b - s2 * zz);
  const C bpd = b + d;
  const C e = std::exp(-d * T);
  const C g = s2 * zz / (bpd * bpd);
  const C one_m_ge = 1.0 - g * e;
  const C D = zz / bpd * (1.0 - e) / one_m_ge;
  const C q = g * (1.0 - e) / (1.0 - g);  // (1 - g e)/(1 - g) = 1 + q
  const C log_term = 2.0 * zz * (1.0 - e) / (bpd * bpd * (1.0 - g)) * log1p_ratio(q);
  const C Cc = p.kappa * p.theta * (zz / bpd * T - log_term);
  return std::exp(Cc + D * p.v0);
}

CfGrid heston_cf_grid(double T, const HestonClassicalParams& p, const FourierSettings& fourier) {
  p.validate();
  if (!(T > 0.0)) throw ConfigError("maturity: must be positive");
  return build_cf_grid([&](double u) { return heston_cf({0.5, u}, T, p); }, fourier);
}

double heston_closed_form(double strike, double T, const HestonClassicalParams& p, bool call,
                          const FourierSettings& fourier) {
  const double c = lewis_call(heston_cf_grid(T, p, fourier), p.s0, strike).price;
  return call ? c : c - p.s0 + strike;
}

void EulerSettings::validate() const {
  if (!(tau >= 1.0)) throw ConfigError("tau: must be at least 1");
  if (n_pairs < 2) throw ConfigError("paths: need at least 2 samples for a confidence interval");
}

EulerResult euler_heston_simulate(const HestonClassicalParams& p, double T, const EulerSettings& settings,
                                  std::span<const OptionSpec> specs) {
  p.validate();
  settings.validate();
  if (!(T > 0.0 && T <= 1.0)) throw ConfigError("maturity: must lie in (0, 1]");
  if (specs.empty()) throw ConfigError("spec: at least one option spec is required");
  for (const auto& s : specs) s.validate();

  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = static_cast<std::size_t>(std::max(1L, std::lround(settings.tau * T)));
  const double dt = T / static_cast<double>(n);
  const double sq = std::sqrt(dt);
  const double rho_perp = std::sqrt(1.0 - p.rho * p.rho);
  const std::uint64_t seed = settings.master_seed;
  const bool anti = settings.antithetic;

  auto make_worker = [&]() -> SampleFn {
    auto buf = std::make_shared<std::vector<double>>(4 * (n + 1));
    return [&, buf, n](std::uint64_t index, std::span<double> out) {
      double* s_main = buf->data();
      double* s_anti = s_main + (n + 1);
      const PathRng rng(seed, index);
      double s1 = p.s0, v1 = p.v0, s2 = p.s0, v2 = p.v0;
      s_main[0] = s1;
      s_anti[0] = s2;
      for (std::size_t i = 0; i < n; ++i) {
        // One Box-Muller pair per step from the step's Gaussian lane.
        auto st = rng.stream(static_cast<std::uint32_t>(i + 1), Lane::Gaussian);
        const double r = std::sqrt(-2.0 * std::log(st.uniform()));
        const double ang = 2.0 * std::numbers::pi * st.uniform();
        const double z1 = r * std::cos(ang);
        const double z2 = p.rho * z1 + rho_perp * r * std::sin(ang);

        const double a1 = std::sqrt(std::max(v1, 0.0));
        s1 += a1 * s1 * sq * z1;
        v1 = std::max(0.0, v1 + p.kappa * (p.theta - v1) * dt + p.sigma * a1 * sq * z2);
        s_main[i + 1] = s1;
        if (anti) {
          const double a2 = std::sqrt(std::max(v2, 0.0));
          s2 -= a2 * s2 * sq * z1;
          v2 = std::max(0.0, v2 + p.kappa * (p.theta - v2) * dt - p.sigma * a2 * sq * z2);
          s_anti[i + 1] = s2;
        }
      }
      const PathSummary m = summarize({s_main, n + 1});
      if (anti) {
        const PathSummary a = summarize({s_anti, n + 1});
        for (std::size_t k = 0; k < specs.size(); ++k)
          out[k] = 0.5 * (payoff(m, specs[k]) + payoff(a, specs[k]));
      } else {
        for (std::size_t k = 0; k < specs.size(); ++k) out[k] = payoff(m, specs[k]);
      }
    };
  };

  EulerResult result;
  for (const auto& a : run_samples(settings.n_pairs, specs.size(), settings.n_threads, make_worker))
    result.estimates.push_back(confidence_interval(a));
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace rhinar
