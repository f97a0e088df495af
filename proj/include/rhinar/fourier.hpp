#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace rhinar {

using Complex = std::complex<double>;

struct FourierSettings {
  double u_max = 200.0;
  double panel_width = 1.0;
  // Integration stops after the first panel whose largest |phi| / (1/4 + u^2)
  // is below this.
  double stop_tolerance = 1e-13;
};

// Moment generating function of X_T = log(S_T / S0) on the line Re z = 1/2,
// tabulated at Gauss-Legendre nodes. Independent of strike, so one grid prices
// a whole smile.
struct CfGrid {
  std::vector<double> u;
  std::vector<double> weight;
  std::vector<Complex> phi;     // phi(1/2 + i u)
  double u_end = 0.0;           // where integration stopped
  double tail_bound = 0.0;      // bound on int_{u_end}^inf |phi| / (1/4 + u^2) du
};

// phi(1/2 + i u) for u >= 0.
using CfLine = std::function<Complex(double u)>;

[[nodiscard]] CfGrid build_cf_grid(const CfLine& cf, const FourierSettings& settings = {});

struct FourierPrice {
  double price = 0.0;
  double error_bound = 0.0;  // truncation part only
};

// Call under r = 0:
//   C = S0 - sqrt(S0 K)/pi int_0^inf Re[exp(i u log(S0/K)) phi(1/2 + i u)] / (1/4 + u^2) du.
[[nodiscard]] FourierPrice lewis_call(const CfGrid& grid, double s0, double strike);

}  // namespace rhinar
