#include "rhinar/mc.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <memory>
#include <mutex>
#include <thread>

#include "rhinar/errors.hpp"

namespace rhinar {

void SimSettings::validate() const {
  if (!(tau >= 1.0) || !std::isfinite(tau)) throw ConfigError("tau: must be at least 1");
  if (n_paths < 2) throw ConfigError("paths: need at least 2 paths for a confidence interval");
  if (crossover < 2) throw ConfigError("crossover: must be at least 2");
  if (!(classical_clamp >= 0.0 && classical_clamp < 0.5))
    throw ConfigError("classical_clamp: must lie in [0, 0.5)");
}

unsigned resolve_threads(unsigned requested) noexcept {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<MomentAccumulator> run_samples(std::size_t n_samples, std::size_t n_specs,
                                           unsigned n_threads, const WorkerFactory& make_worker) {
  const std::size_t n_blocks = (n_samples + kPathBlock - 1) / kPathBlock;
  std::vector<std::vector<MomentAccumulator>> blocks(n_blocks);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    try {
      SampleFn sample = make_worker();
      std::vector<double> payoffs(n_specs);
      for (;;) {
        const std::size_t b = next.fetch_add(1);
        if (b >= n_blocks) break;
        std::vector<MomentAccumulator> acc(n_specs);
        const std::size_t end = std::min(n_samples, (b + 1) * kPathBlock);
        for (std::size_t i = b * kPathBlock; i < end; ++i) {
          sample(i, payoffs);
          for (std::size_t k = 0; k < n_specs; ++k) acc[k].add(payoffs[k]);
        }
        blocks[b] = std::move(acc);
      }
    } catch (...) {
      const std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next.store(n_blocks);
    }
  };

  const unsigned threads = static_cast<unsigned>(
      std::min<std::size_t>(resolve_threads(n_threads), std::max<std::size_t>(n_blocks, 1)));
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<MomentAccumulator> total(n_specs);
  for (const auto& block : blocks)
    for (std::size_t k = 0; k < n_specs; ++k) total[k].merge(block[k]);
  return total;
}

PricingResult run_pricing(const ModelConfig& config, const SimSettings& settings,
                          std::span<const OptionSpec> specs) {
  settings.validate();
  if (specs.empty()) throw ConfigError("spec: at least one option spec is required");
  for (const auto& s : specs) s.validate();

  const auto start = std::chrono::steady_clock::now();
  PricingResult result;
  result.specs.assign(specs.begin(), specs.end());
  result.derived = derive(config, settings.tau, settings.classical_clamp);
  const InarSimulator sim(result.derived, settings.crossover);

  const std::uint64_t seed = settings.master_seed;
  auto make_worker = [&]() -> SampleFn {
    auto record = std::make_shared<PathRecord>();
    auto scratch = std::make_shared<CdqConvolver::Scratch>(sim.convolver().make_scratch());
    return [&, record, scratch](std::uint64_t index, std::span<double> out) {
      sim.simulate(PathRng(seed, index), *record, *scratch);
      const PathSummary summary = summarize(record->s);
      for (std::size_t k = 0; k < specs.size(); ++k) out[k] = payoff(summary, specs[k]);
    };
  };

  const auto acc = run_samples(settings.n_paths, specs.size(), settings.n_threads, make_worker);
  for (const auto& a : acc) result.estimates.push_back(confidence_interval(a));
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::uint64_t tau_seed(std::uint64_t master_seed, double tau) noexcept {
  return derive_seed(master_seed, static_cast<std::uint64_t>(std::llround(tau * 1024.0)));
}

std::vector<ConvergenceRow> convergence_study(const ModelConfig& config, const SimSettings& settings,
                                              std::span<const double> taus,
                                              std::span<const OptionSpec> specs,
                                              std::span<const double> references) {
  if (taus.empty()) throw ConfigError("taus: at least one tau is required");
  if (references.size() != specs.size())
    throw ConfigError("reference: one reference price per spec is required");
  std::vector<double> sorted(taus.begin(), taus.end());
  std::sort(sorted.begin(), sorted.end());

  std::vector<ConvergenceRow> rows;
  for (double tau : sorted) {
    SimSettings s = settings;
    s.tau = tau;
    s.master_seed = tau_seed(settings.master_seed, tau);
    const PricingResult r = run_pricing(config, s, specs);
    ConvergenceRow row;
    row.tau = tau;
    row.seed = s.master_seed;
    row.estimates = r.estimates;
    for (std::size_t k = 0; k < specs.size(); ++k)
      row.deviations.push_back(r.estimates[k].mean - references[k]);
    row.seconds = r.seconds;
    row.micros_per_path = 1e6 * r.seconds / static_cast<double>(s.n_paths);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace rhinar
