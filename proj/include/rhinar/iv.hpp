#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rhinar/errors.hpp"
#include "rhinar/mc.hpp"
#include "rhinar/params.hpp"
#include "rhinar/rough_heston.hpp"

namespace rhinar {

[[nodiscard]] double norm_cdf(double x) noexcept;

// Black-Scholes with zero rate. sigma = 0 or T = 0 gives the intrinsic value.
[[nodiscard]] double bs_price(double s0, double strike, double T, double sigma, bool call);
[[nodiscard]] double bs_vega(double s0, double strike, double T, double sigma);

// The price lies outside the open no-arbitrage interval.
class InversionError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

inline constexpr double kIvLow = 1e-6;
inline constexpr double kIvHigh = 5.0;

// Bisection on [1e-6, 5] to |price error| <= 1e-10 or 200 iterations, then a
// bracketed Newton polish.
[[nodiscard]] double implied_vol(double price, double s0, double strike, double T, bool call);

struct IVPoint {
  double maturity = 0.0;
  double log_moneyness = 0.0;  // log(K / S0)
  double iv = 0.0;
  double price = 0.0;
  double ci_halfwidth = 0.0;     // of the price; 0 for deterministic engines
  double iv_halfwidth = 0.0;     // ci_halfwidth / vega
  bool ok = false;
  std::string error;           // set when inversion failed
};

struct SlicePrice {
  double price = 0.0;
  double ci_halfwidth = 0.0;
  bool call = true;
};

// Prices one maturity slice. Out-of-the-money options are quoted (puts for
// K < S0, calls otherwise) since they carry the time value the inversion needs.
class SurfaceEngine {
 public:
  virtual ~SurfaceEngine() = default;
  [[nodiscard]] virtual std::vector<SlicePrice> price_slice(double T, std::span<const double> strikes) = 0;
  [[nodiscard]] virtual std::string name() const = 0;
  [[nodiscard]] virtual double spot() const = 0;
};

class SemiAnalyticEngine final : public SurfaceEngine {
 public:
  explicit SemiAnalyticEngine(const ModelConfig& config, RoughHestonSettings settings = {});
  std::vector<SlicePrice> price_slice(double T, std::span<const double> strikes) override;
  [[nodiscard]] std::string name() const override { return "semi-analytic"; }
  [[nodiscard]] double spot() const override { return pricer_.config().s0; }

 private:
  RoughHestonPricer pricer_;
};

// Runs the INAR simulator with config.maturity = T for each slice.
class McEngine final : public SurfaceEngine {
 public:
  McEngine(const ModelConfig& config, SimSettings settings);
  std::vector<SlicePrice> price_slice(double T, std::span<const double> strikes) override;
  [[nodiscard]] std::string name() const override { return "inar-mc"; }
  [[nodiscard]] double spot() const override { return config_.s0; }

 private:
  ModelConfig config_;
  SimSettings settings_;
};

// Black-Scholes prices at one volatility; the surface it implies is flat.
class FlatVolEngine final : public SurfaceEngine {
 public:
  FlatVolEngine(double s0, double sigma) : s0_(s0), sigma_(sigma) {}
  std::vector<SlicePrice> price_slice(double T, std::span<const double> strikes) override;
  [[nodiscard]] std::string name() const override { return "flat-vol"; }
  [[nodiscard]] double spot() const override { return s0_; }

 private:
  double s0_;
  double sigma_;
};

// Points ordered by maturity, then log-moneyness. Failed inversions are kept
// with ok = false.
[[nodiscard]] std::vector<IVPoint> build_surface(SurfaceEngine& engine, std::span<const double> maturities,
                                                 std::span<const double> log_moneyness);

inline constexpr double kSkewStep = 0.02;

// Central difference (iv(dk) - iv(-dk)) / (2 dk) from the points of one maturity.
// Throws ConfigError naming the missing k values.
[[nodiscard]] double atm_skew(std::span<const IVPoint> slice, double dk = kSkewStep);

struct SkewPoint {
  double maturity = 0.0;
  double skew = 0.0;
  double halfwidth = 0.0;  // propagated from the two IVs; 0 when exact
};

struct SkewFit {
  double c = 0.0;
  double exponent = 0.0;
  double r_squared = 0.0;
  std::vector<double> excluded;  // maturities dropped as too noisy
};

// Least squares of log|skew| on log T: |skew| ~ c T^exponent. Points whose
// halfwidth exceeds half their magnitude are excluded. Needs >= 3 remaining
// maturities and no zero skews.
[[nodiscard]] SkewFit powerlaw_fit(std::span<const SkewPoint> points);

// Per-maturity ATM skews of a surface.
[[nodiscard]] std::vector<SkewPoint> surface_skews(std::span<const IVPoint> surface, double dk = kSkewStep);

}  // namespace rhinar
