#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "rhinar/inar.hpp"
#include "rhinar/params.hpp"
#include "rhinar/payoffs.hpp"
#include "rhinar/stats.hpp"

namespace rhinar {

struct SimSettings {
  double tau = 320.0;
  std::size_t n_paths = 500000;
  std::uint64_t master_seed = 20250101;
  unsigned n_threads = 0;  // 0 = hardware concurrency
  std::size_t crossover = kDefaultCdqCrossover;
  // alpha = 1 runs the INAR engine at alpha = 1 - classical_clamp; 0 rejects it.
  double classical_clamp = 0.0;

  void validate() const;
};

// Paths are processed in fixed blocks of this many indices. Each block is
// reduced on its own and blocks are merged in index order, which makes the
// aggregates independent of the thread count.
inline constexpr std::size_t kPathBlock = 1024;

[[nodiscard]] unsigned resolve_threads(unsigned requested) noexcept;

// Fills one payoff per spec for sample `index`. A worker is created once per
// thread and may keep scratch state.
using SampleFn = std::function<void(std::uint64_t index, std::span<double> payoffs)>;
using WorkerFactory = std::function<SampleFn()>;

// Generic deterministic Monte Carlo driver shared by the INAR and Euler engines.
[[nodiscard]] std::vector<MomentAccumulator> run_samples(std::size_t n_samples, std::size_t n_specs,
                                                         unsigned n_threads,
                                                         const WorkerFactory& make_worker);

struct PricingResult {
  std::vector<OptionSpec> specs;
  std::vector<PriceEstimate> estimates;  // aligned with specs
  DerivedParams derived;
  double seconds = 0.0;
};

// Prices every spec on the same simulated paths.
[[nodiscard]] PricingResult run_pricing(const ModelConfig& config, const SimSettings& settings,
                                        std::span<const OptionSpec> specs);

struct ConvergenceRow {
  double tau = 0.0;
  std::uint64_t seed = 0;
  std::vector<PriceEstimate> estimates;  // aligned with specs
  std::vector<double> deviations;        // estimate - reference
  double seconds = 0.0;
  double micros_per_path = 0.0;
};

// One pricing run per tau, each with its own seed derived from the master seed.
// references.size() must equal specs.size().
[[nodiscard]] std::vector<ConvergenceRow> convergence_study(const ModelConfig& config,
                                                            const SimSettings& settings,
                                                            std::span<const double> taus,
                                                            std::span<const OptionSpec> specs,
                                                            std::span<const double> references);

[[nodiscard]] std::uint64_t tau_seed(std::uint64_t master_seed, double tau) noexcept;

}  // namespace rhinar
