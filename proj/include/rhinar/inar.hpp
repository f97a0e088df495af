#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "rhinar/fft.hpp"
#include "rhinar/kernel.hpp"
#include "rhinar/params.hpp"
#include "rhinar/rng.hpp"

namespace rhinar {

// Node length (R - L + 1) below which a CDQ node propagates its left half by
// direct summation instead of FFT. Chosen from tools/bench_cdq.
inline constexpr std::size_t kDefaultCdqCrossover = 512;

// One simulated path. Step arrays are 1-based (index 0 is the empty pre-history);
// cumulative counts and prices cover 0..n.
struct PathRecord {
  std::vector<std::int64_t> x_plus;
  std::vector<std::int64_t> x_minus;
  std::vector<std::int64_t> n_plus;
  std::vector<std::int64_t> n_minus;
  std::vector<double> lambda_hist;  // excitation received from earlier steps
  std::vector<double> lambda;       // clamped intensity used at each step
  std::vector<double> y;            // X+ + beta X-
  std::vector<double> s;            // price path, s[0] = S0

  void reset(std::size_t n_steps);
  [[nodiscard]] std::size_t n_steps() const noexcept { return s.empty() ? 0 : s.size() - 1; }
};

// Propagates the excitation of a simulated left half [L, M] onto the right half
// (M, R] of a CDQ node. Transforms of the weight segments are computed once per
// distinct node length and shared read-only by all paths.
class CdqConvolver {
 public:
  CdqConvolver(std::span<const double> weights, std::size_t n_steps, std::size_t crossover);

  // Per-thread FFT buffers.
  struct Scratch {
    std::vector<double> real;
    std::vector<Complex> bins;
    std::vector<Complex> work;
  };
  [[nodiscard]] Scratch make_scratch() const;

  // hist[t] += sum_{s=L}^{M} y[s] * w[t - s] for t in (M, R]; arrays are 1-based.
  void propagate(std::span<const double> y, std::size_t L, std::size_t M, std::size_t R,
                 std::span<double> hist, Scratch& scratch) const;

  [[nodiscard]] std::size_t crossover() const noexcept { return crossover_; }
  [[nodiscard]] std::size_t cached_spectra() const noexcept { return spectra_.size(); }

 private:
  struct Spectrum {
    std::size_t plan_index;
    std::vector<Complex> data;
  };

  void collect(std::size_t L, std::size_t R);
  const RealFftPlan& plan_for(std::size_t size);

  std::vector<double> weights_;  // 1-based
  std::size_t crossover_;
  std::vector<std::unique_ptr<RealFftPlan>> plans_;
  std::vector<Spectrum> spectra_;
  std::vector<int> spectrum_by_span_;  // indexed by R - L, -1 if direct
  std::size_t max_fft_ = 4;
};

// Runs only the CDQ excitation bookkeeping for a given y sequence:
// returns hist[t] = sum_{s<t} w[t-s] y[s], t = 1..n (1-based, hist[0] = 0).
[[nodiscard]] std::vector<double> cdq_history(std::span<const double> y, std::span<const double> weights,
                                              std::size_t crossover = kDefaultCdqCrossover);

// Path simulator for one configuration. Immutable after construction and safe
// to share between threads; each thread supplies its own record and scratch.
class InarSimulator {
 public:
  explicit InarSimulator(const DerivedParams& params, std::size_t crossover = kDefaultCdqCrossover);
  InarSimulator(const DerivedParams& params, KernelTable table,
                std::size_t crossover = kDefaultCdqCrossover);

  // Simulates counts on [1, n] and fills the price path.
  void simulate(const PathRng& rng, PathRecord& out, CdqConvolver::Scratch& scratch) const;
  [[nodiscard]] PathRecord simulate(const PathRng& rng) const;

  [[nodiscard]] const DerivedParams& params() const noexcept { return params_; }
  [[nodiscard]] const KernelTable& table() const noexcept { return table_; }
  [[nodiscard]] const CdqConvolver& convolver() const noexcept { return convolver_; }

 private:
  void run(std::size_t L, std::size_t R, const PathRng& rng, PathRecord& out,
           CdqConvolver::Scratch& scratch) const;
  void leaf(std::size_t n, const PathRng& rng, PathRecord& out) const;

  DerivedParams params_;
  KernelTable table_;
  CdqConvolver convolver_;
};

// Checks that the table was built for the same step count; throws ConfigError.
[[nodiscard]] PathRecord cdq_simulate(const DerivedParams& params, const KernelTable& table,
                                      const PathRng& rng,
                                      std::size_t crossover = kDefaultCdqCrossover);

// Rescaled log-price: with c = (1 - a_tau) / (mu tau^alpha),
//   P_n = sqrt(theta/2) sqrt(c) (N+_n - N-_n) - (theta/2) c N+_n,  s[n] = S0 exp(P_n).
void price_path(PathRecord& path, const DerivedParams& params);

}  // namespace rhinar
