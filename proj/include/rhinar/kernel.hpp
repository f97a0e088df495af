#pragma once

#include <cstddef>
#include <vector>

#include "rhinar/params.hpp"

namespace rhinar {

// Base kernel phi_n of the heavy-tailed INAR sequence:
//   phi_1 = 1 - 1/Gamma(1-alpha),  phi_n = ((n-1)^-alpha - n^-alpha) / Gamma(1-alpha).
// Returns 0 for n <= 0. Requires alpha in (1/2, 1).
[[nodiscard]] double phi_base(long n, double alpha);

// Closed telescoping form of sum_{s=1}^{n} phi_s = 1 - n^-alpha / Gamma(1-alpha); 0 for n = 0.
[[nodiscard]] double phi_partial_sum(std::size_t n, double alpha);

// Precomputed per-configuration tables, 1-based (index 0 is padding).
struct KernelTable {
  std::vector<double> weights;     // w_k = a_tau phi_k / (1 + beta), k = 1..n
  std::vector<double> phi_prefix;  // sum_{s<=n} a_tau phi_s, n = 0..n_steps
  std::vector<double> baseline;    // mu_hat_tau(n), n = 1..n_steps; may be negative

  [[nodiscard]] std::size_t n_steps() const noexcept { return baseline.empty() ? 0 : baseline.size() - 1; }
};

[[nodiscard]] std::vector<double> build_weights(const DerivedParams& d);

// mu_hat(n) = mu_tau + xi mu_tau ((1 - S_{n-1}) / (1 - a_tau) - S_{n-1}),
// S_m = sum_{s<=m} a_tau phi_s.
[[nodiscard]] double baseline_intensity(const DerivedParams& d, std::size_t n);

[[nodiscard]] KernelTable build_kernel_table(const DerivedParams& d);

struct MittagLefflerValue {
  double value;
  int terms;           // number of series terms summed
  double last_term;    // magnitude of the last term added (truncation indicator)
};

// Two-parameter Mittag-Leffler function E_{a,b}(z) for real z, |z| <= 10, by its
// power series. Throws NumericalError outside that range.
[[nodiscard]] MittagLefflerValue mittag_leffler_series(double a, double b, double z,
                                                       int max_terms = 200);
[[nodiscard]] double mittag_leffler(double a, double b, double z);

// Density f(t) = gamma t^(alpha-1) E_{alpha,alpha}(-gamma t^alpha), t > 0.
[[nodiscard]] double resolvent_density(double alpha, double gamma, double t);

// F(t) = int_0^t f = 1 - E_alpha(-gamma t^alpha). For alpha < 1 and arguments
// beyond the series range the Laplace-type integral representation of
// E_alpha on the negative axis is used.
[[nodiscard]] double resolvent_cumulative(double alpha, double gamma, double t);

// int_0^t F(s) ds = t (1 - E_{alpha,2}(-gamma t^alpha)).
[[nodiscard]] double resolvent_cumulative_integral(double alpha, double gamma, double t);

struct StripDiagnostics {
  double kernel_energy;  // int_0^T f^2
  double f_cumulative;   // F(T) = sup-norm of s -> F(T - s)
  double theta_T;        // 2 / (c_V^2 F(T)^2)
  double delta;          // strip half-width around Re z = 1/2
  double y_max;
  double theta_star;     // y_max - 1
};

// Novikov-type moment-strip quantities with c_X = 1 and c_V = nu.
[[nodiscard]] StripDiagnostics moment_strip_diagnostics(const ModelConfig& config, double T);

// Same formulas given an already computed F(T).
[[nodiscard]] StripDiagnostics strip_from_cumulative(double nu, double f_cumulative,
                                                     double kernel_energy);

}  // namespace rhinar
