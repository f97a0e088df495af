#include <cmath>
#include <numbers>

#include "rhinar/errors.hpp"
#include "rhinar/iv.hpp"

namespace rhinar {

double norm_cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double bs_price(double s0, double strike, double T, double sigma, bool call) {
  if (!(s0 > 0.0) || !(strike > 0.0) || !(T >= 0.0) || !(sigma >= 0.0))
    throw ConfigError("bs_price: spot, strike must be positive; T, sigma non-negative");
  const double sd = sigma * std::sqrt(T);
  double c;
  if (sd == 0.0) {
    c = std::max(s0 - strike, 0.0);
  } else {
    const double d1 = std::log(s0 / strike) / sd + 0.5 * sd;
    c = s0 * norm_cdf(d1) - strike * norm_cdf(d1 - sd);
  }
  return call ? c : c - s0 + strike;
}

double bs_vega(double s0, double strike, double T, double sigma) {
  const double sd = sigma * std::sqrt(T);
  if (sd == 0.0) return 0.0;
  const double d1 = std::log(s0 / strike) / sd + 0.5 * sd;
  return s0 * std::sqrt(T) * std::exp(-0.5 * d1 * d1) / std::sqrt(2.0 * std::numbers::pi);
}

}  // namespace rhinar
