#include "rhinar/fourier.hpp"

#include <algorithm>
#include <array>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "rhinar/errors.hpp"

namespace rhinar {

namespace {

constexpr unsigned kNodes = 16;

struct Rule {
  std::array<double, kNodes> x;  // on [-1, 1]
  std::array<double, kNodes> w;
};

const Rule& legendre_rule() {
  static const Rule rule = [] {
    using G = boost::math::quadrature::gauss<double, kNodes>;
    const auto& a = G::abscissa();
    const auto& wt = G::weights();
    Rule r{};
    for (std::size_t i = 0; i < a.size(); ++i) {
      r.x[2 * i] = -a[i];
      r.w[2 * i] = wt[i];
      r.x[2 * i + 1] = a[i];
      r.w[2 * i + 1] = wt[i];
    }
    return r;
  }();
  return rule;
}

}  // namespace

CfGrid build_cf_grid(const CfLine& cf, const FourierSettings& settings) {
  if (!(settings.u_max > 0.0) || !(settings.panel_width > 0.0))
    throw ConfigError("fourier: u_max and panel width must be positive");
  const Rule& rule = legendre_rule();
  CfGrid grid;
  double last_panel_peak = 0.0;
  double a = 0.0;
  while (a < settings.u_max) {
    const double b = std::min(a + settings.panel_width, settings.u_max);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double peak = 0.0;
    for (unsigned i = 0; i < kNodes; ++i) {
      const double u = mid + half * rule.x[i];
      const Complex phi = cf(u);
      if (!std::isfinite(phi.real()) || !std::isfinite(phi.imag()))
        throw NumericalError("fourier: characteristic function not finite at u = " + std::to_string(u));
      grid.u.push_back(u);
      grid.weight.push_back(half * rule.w[i]);
      grid.phi.push_back(phi);
      peak = std::max(peak, std::abs(phi) / (0.25 + u * u));
    }
    a = b;
    last_panel_peak = peak;
    if (peak < settings.stop_tolerance) break;
  }
  grid.u_end = a;
  // |phi| decays faster than 1/u beyond the stopping panel, so the remaining
  // integral of |phi| / u^2 is at most peak * u_end^2 * (1 / u_end).
  grid.tail_bound = last_panel_peak * a;
  return grid;
}

FourierPrice lewis_call(const CfGrid& grid, double s0, double strike) {
  if (!(s0 > 0.0) || !(strike > 0.0)) throw ConfigError("fourier: spot and strike must be positive");
  const double x = std::log(s0 / strike);
  double integral = 0.0;
  for (std::size_t i = 0; i < grid.u.size(); ++i) {
    const double u = grid.u[i];
    const double c = std::cos(u * x), s = std::sin(u * x);
    const double re = c * grid.phi[i].real() - s * grid.phi[i].imag();
    integral += grid.weight[i] * re / (0.25 + u * u);
  }
  const double scale = std::sqrt(s0 * strike) / std::numbers::pi;
  return {s0 - scale * integral, scale * grid.tail_bound};
}

}  // namespace rhinar
