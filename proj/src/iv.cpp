#include "rhinar/iv.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "rhinar/params.hpp"

namespace rhinar {

double implied_vol(double price, double s0, double strike, double T, bool call) {
  if (!(s0 > 0.0) || !(strike > 0.0) || !(T > 0.0))
    throw ConfigError("implied_vol: spot, strike and maturity must be positive");
  const double lower = call ? std::max(s0 - strike, 0.0) : std::max(strike - s0, 0.0);
  const double upper = call ? s0 : strike;
  if (!(price > lower))
    throw InversionError("implied_vol: price " + format_sig(price, 10) +
                         " is at or below the intrinsic lower bound " + format_sig(lower, 10));
  if (!(price < upper))
    throw InversionError("implied_vol: price " + format_sig(price, 10) + " is at or above the upper bound " +
                         format_sig(upper, 10));

  double lo = kIvLow, hi = kIvHigh;
  if (price > bs_price(s0, strike, T, hi, call))
    throw InversionError("implied_vol: price " + format_sig(price, 10) + " needs volatility above " +
                         format_sig(kIvHigh, 3));
  if (price < bs_price(s0, strike, T, lo, call))
    throw InversionError("implied_vol: price " + format_sig(price, 10) + " needs volatility below " +
                         format_sig(kIvLow, 3));
  double mid = 0.5 * (lo + hi);
  double diff = 0.0;
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    diff = bs_price(s0, strike, T, mid, call) - price;
    if (std::abs(diff) <= 1e-10 || hi - lo < 1e-15) break;
    (diff > 0.0 ? hi : lo) = mid;
  }
  // A price tolerance of 1e-10 leaves sigma loose where vega is small; polish
  // with Newton steps that stay inside the bracket and keep improving.
  for (int it = 0; it < 3 && diff != 0.0; ++it) {
    const double vega = bs_vega(s0, strike, T, mid);
    if (!(vega > 0.0)) break;
    const double next = mid - diff / vega;
    if (!(next > lo && next < hi)) break;
    const double next_diff = bs_price(s0, strike, T, next, call) - price;
    if (!(std::abs(next_diff) < std::abs(diff))) break;
    mid = next;
    diff = next_diff;
  }
  return mid;
}

SemiAnalyticEngine::SemiAnalyticEngine(const ModelConfig& config, RoughHestonSettings settings)
    : pricer_(config, settings) {}

std::vector<SlicePrice> SemiAnalyticEngine::price_slice(double T, std::span<const double> strikes) {
  std::vector<SlicePrice> out;
  for (double K : strikes) {
    const bool call = K >= spot();
    out.push_back({call ? pricer_.call(K, T) : pricer_.put(K, T), 0.0, call});
  }
  return out;
}

McEngine::McEngine(const ModelConfig& config, SimSettings settings)
    : config_(config), settings_(settings) {
  config_.validate();
  settings_.validate();
}

std::vector<SlicePrice> McEngine::price_slice(double T, std::span<const double> strikes) {
  ModelConfig cfg = config_;
  cfg.maturity = T;
  std::vector<OptionSpec> specs;
  for (double K : strikes)
    specs.push_back(OptionSpec{.kind = K >= cfg.s0 ? OptionKind::EuropeanCall : OptionKind::EuropeanPut,
                               .strike = K,
                               .barrier = std::nullopt});
  const auto r = run_pricing(cfg, settings_, specs);
  std::vector<SlicePrice> out;
  for (std::size_t i = 0; i < specs.size(); ++i)
    out.push_back({r.estimates[i].mean, r.estimates[i].halfwidth(), specs[i].kind == OptionKind::EuropeanCall});
  return out;
}

std::vector<SlicePrice> FlatVolEngine::price_slice(double T, std::span<const double> strikes) {
  std::vector<SlicePrice> out;
  for (double K : strikes) {
    const bool call = K >= s0_;
    out.push_back({bs_price(s0_, K, T, sigma_, call), 0.0, call});
  }
  return out;
}

std::vector<IVPoint> build_surface(SurfaceEngine& engine, std::span<const double> maturities,
                                   std::span<const double> log_moneyness) {
  if (maturities.empty() || log_moneyness.empty()) throw ConfigError("grid: maturities and strikes must be non-empty");
  const double s0 = engine.spot();
  std::vector<double> strikes;
  for (double k : log_moneyness) strikes.push_back(s0 * std::exp(k));

  std::vector<IVPoint> surface;
  for (double T : maturities) {
    if (!(T > 0.0)) throw ConfigError("grid: maturities must be positive");
    const auto prices = engine.price_slice(T, strikes);
    for (std::size_t i = 0; i < strikes.size(); ++i) {
      IVPoint p;
      p.maturity = T;
      p.log_moneyness = log_moneyness[i];
      p.price = prices[i].price;
      p.ci_halfwidth = prices[i].ci_halfwidth;
      try {
        p.iv = implied_vol(p.price, s0, strikes[i], T, prices[i].call);
        const double vega = bs_vega(s0, strikes[i], T, p.iv);
        p.iv_halfwidth = vega > 0.0 ? p.ci_halfwidth / vega : 0.0;
        p.ok = true;
      } catch (const InversionError& e) {
        p.error = e.what();
      }
      surface.push_back(std::move(p));
    }
  }
  return surface;
}

namespace {

const IVPoint* find_k(std::span<const IVPoint> slice, double k) {
  for (const auto& p : slice)
    if (std::abs(p.log_moneyness - k) < 1e-9 && p.ok) return &p;
  return nullptr;
}

}  // namespace

double atm_skew(std::span<const IVPoint> slice, double dk) {
  const IVPoint* up = find_k(slice, dk);
  const IVPoint* down = find_k(slice, -dk);
  if (!up || !down)
    throw ConfigError("atm_skew: slice needs inverted points at k = " + format_sig(-dk) + " and k = " +
                      format_sig(dk));
  return (up->iv - down->iv) / (2.0 * dk);
}

std::vector<SkewPoint> surface_skews(std::span<const IVPoint> surface, double dk) {
  std::map<double, std::vector<IVPoint>> slices;
  for (const auto& p : surface) slices[p.maturity].push_back(p);
  std::vector<SkewPoint> out;
  for (const auto& [T, slice] : slices) {
    SkewPoint s;
    s.maturity = T;
    s.skew = atm_skew(slice, dk);
    const IVPoint* up = find_k(slice, dk);
    const IVPoint* down = find_k(slice, -dk);
    s.halfwidth = std::hypot(up->iv_halfwidth, down->iv_halfwidth) / (2.0 * dk);
    out.push_back(s);
  }
  return out;
}

SkewFit powerlaw_fit(std::span<const SkewPoint> points) {
  SkewFit fit;
  std::vector<double> x, y;
  for (const auto& p : points) {
    if (p.skew == 0.0) throw ConfigError("powerlaw_fit: zero skew at T = " + format_sig(p.maturity));
    if (!(p.maturity > 0.0)) throw ConfigError("powerlaw_fit: maturities must be positive");
    if (p.halfwidth > 0.5 * std::abs(p.skew)) {
      fit.excluded.push_back(p.maturity);
      continue;
    }
    x.push_back(std::log(p.maturity));
    y.push_back(std::log(std::abs(p.skew)));
  }
  if (x.size() < 3)
    throw ConfigError("powerlaw_fit: need at least 3 usable maturities, have " + std::to_string(x.size()));

  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw ConfigError("powerlaw_fit: maturities must not all coincide");
  fit.exponent = sxy / sxx;
  fit.c = std::exp(my - fit.exponent * mx);
  double ss_res = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (my + fit.exponent * (x[i] - mx));
    ss_res += r * r;
  }
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  return fit;
}

}  // namespace rhinar
