#include "rhinar/inar.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rhinar/errors.hpp"
#include "rhinar/poisson.hpp"

namespace rhinar {

namespace {

inline Complex cmul(Complex a, Complex b) {
  return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

std::size_t log2_exact(std::size_t n) {
  std::size_t k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

// Visits CDQ nodes in the order of the recursion: left subtree, propagation of
// the left half, right subtree. Leaves are therefore reached in time order.
template <class Leaf>
void cdq_walk(const CdqConvolver& conv, std::size_t L, std::size_t R, std::span<const double> y,
              std::span<double> hist, CdqConvolver::Scratch& scratch, Leaf& leaf) {
  if (L == R) {
    leaf(L);
    return;
  }
  const std::size_t M = (L + R) / 2;
  cdq_walk(conv, L, M, y, hist, scratch, leaf);
  conv.propagate(y, L, M, R, hist, scratch);
  cdq_walk(conv, M + 1, R, y, hist, scratch, leaf);
}

}  // namespace

void PathRecord::reset(std::size_t n_steps) {
  const std::size_t len = n_steps + 1;
  for (auto* v : {&x_plus, &x_minus, &n_plus, &n_minus}) v->assign(len, 0);
  for (auto* v : {&lambda_hist, &lambda, &y}) v->assign(len, 0.0);
  s.assign(len, 0.0);
}

CdqConvolver::CdqConvolver(std::span<const double> weights, std::size_t n_steps,
                           std::size_t crossover)
    : weights_(weights.begin(), weights.end()), crossover_(std::max<std::size_t>(crossover, 2)) {
  if (weights_.size() < n_steps + 1)
    throw ConfigError("kernel table has " + std::to_string(weights_.empty() ? 0 : weights_.size() - 1) +
                      " weights, need " + std::to_string(n_steps));
  spectrum_by_span_.assign(n_steps + 1, -1);
  if (n_steps >= 2) collect(1, n_steps);
}

const RealFftPlan& CdqConvolver::plan_for(std::size_t size) {
  const std::size_t k = log2_exact(size);
  if (plans_.size() <= k) plans_.resize(k + 1);
  if (!plans_[k]) plans_[k] = std::make_unique<RealFftPlan>(size);
  return *plans_[k];
}

void CdqConvolver::collect(std::size_t L, std::size_t R) {
  if (L >= R) return;
  const std::size_t span = R - L;
  if (span + 1 >= crossover_ && span >= 4 && spectrum_by_span_[span] < 0) {
    // Outputs needed are indices [M-L, R-L-1] of the linear convolution; any
    // circular wrap from a transform of size >= R-L lands beyond them.
    const std::size_t size = next_power_of_two(span);
    const RealFftPlan& plan = plan_for(size);
    std::vector<double> segment(size, 0.0);
    for (std::size_t j = 0; j < span; ++j) segment[j] = weights_[j + 1];
    std::vector<Complex> work(size / 2);
    Spectrum spec{log2_exact(size), std::vector<Complex>(plan.bins())};
    plan.forward(segment, spec.data, work);
    spectrum_by_span_[span] = static_cast<int>(spectra_.size());
    spectra_.push_back(std::move(spec));
    max_fft_ = std::max(max_fft_, size);
  }
  const std::size_t M = (L + R) / 2;
  collect(L, M);
  collect(M + 1, R);
}

CdqConvolver::Scratch CdqConvolver::make_scratch() const {
  return Scratch{std::vector<double>(max_fft_), std::vector<Complex>(max_fft_ / 2 + 1),
                 std::vector<Complex>(max_fft_ / 2)};
}

void CdqConvolver::propagate(std::span<const double> y, std::size_t L, std::size_t M, std::size_t R,
                             std::span<double> hist, Scratch& scratch) const {
  bool any = false;
  for (std::size_t s = L; s <= M; ++s) any |= (y[s] != 0.0);
  if (!any) return;

  const int idx = spectrum_by_span_[R - L];
  if (idx < 0) {
    const double* w = weights_.data();
    for (std::size_t s = L; s <= M; ++s) {
      const double ys = y[s];
      if (ys == 0.0) continue;
      const double* ws = w - s;  // ws[t] = w[t - s]
      for (std::size_t t = M + 1; t <= R; ++t) hist[t] += ys * ws[t];
    }
    return;
  }

  const Spectrum& spec = spectra_[static_cast<std::size_t>(idx)];
  const RealFftPlan& plan = *plans_[spec.plan_index];
  const std::size_t size = plan.size();
  if (scratch.real.size() < size) {
    scratch.real.resize(size);
    scratch.bins.resize(size / 2 + 1);
    scratch.work.resize(size / 2);
  }
  std::span<double> buf(scratch.real.data(), size);
  std::span<Complex> bins(scratch.bins.data(), plan.bins());
  std::fill(buf.begin(), buf.end(), 0.0);
  std::copy(y.begin() + static_cast<std::ptrdiff_t>(L), y.begin() + static_cast<std::ptrdiff_t>(M + 1),
            buf.begin());
  plan.forward(buf, bins, scratch.work);
  for (std::size_t k = 0; k < bins.size(); ++k) bins[k] = cmul(bins[k], spec.data[k]);
  plan.inverse(bins, buf, scratch.work);
  // buf[k] = sum_s y[s] w[k + 1 - (s - L)], so target t reads index t - L - 1.
  for (std::size_t t = M + 1; t <= R; ++t) hist[t] += buf[t - L - 1];
}

std::vector<double> cdq_history(std::span<const double> y, std::span<const double> weights,
                                std::size_t crossover) {
  if (y.empty()) return {};
  const std::size_t n = y.size() - 1;
  std::vector<double> hist(n + 1, 0.0);
  if (n == 0) return hist;
  const CdqConvolver conv(weights, n, crossover);
  auto scratch = conv.make_scratch();
  auto leaf = [](std::size_t) {};
  cdq_walk(conv, 1, n, y, hist, scratch, leaf);
  return hist;
}

InarSimulator::InarSimulator(const DerivedParams& params, std::size_t crossover)
    : InarSimulator(params, build_kernel_table(params), crossover) {}

InarSimulator::InarSimulator(const DerivedParams& params, KernelTable table, std::size_t crossover)
    : params_(params), table_(std::move(table)), convolver_(table_.weights, params.n_steps, crossover) {
  if (table_.n_steps() != params_.n_steps)
    throw ConfigError("kernel table built for " + std::to_string(table_.n_steps()) +
                      " steps, parameters have " + std::to_string(params_.n_steps));
}

void InarSimulator::leaf(std::size_t n, const PathRng& rng, PathRecord& out) const {
  const double lam = std::max(0.0, table_.baseline[n] + out.lambda_hist[n]);
  out.lambda[n] = lam;
  const auto step = static_cast<std::uint32_t>(n);
  auto plus = rng.stream(step, Lane::Plus);
  auto minus = rng.stream(step, Lane::Minus);
  const std::int64_t xp = poisson_sample(lam, plus);
  const std::int64_t xm = poisson_sample(lam, minus);
  out.x_plus[n] = xp;
  out.x_minus[n] = xm;
  out.n_plus[n] = out.n_plus[n - 1] + xp;
  out.n_minus[n] = out.n_minus[n - 1] + xm;
  out.y[n] = static_cast<double>(xp) + params_.beta * static_cast<double>(xm);
}

void InarSimulator::simulate(const PathRng& rng, PathRecord& out, CdqConvolver::Scratch& scratch) const {
  const std::size_t n = params_.n_steps;
  out.reset(n);
  auto leaf_fn = [&](std::size_t step) { leaf(step, rng, out); };
  cdq_walk(convolver_, 1, n, out.y, out.lambda_hist, scratch, leaf_fn);
  price_path(out, params_);
}

PathRecord InarSimulator::simulate(const PathRng& rng) const {
  PathRecord rec;
  auto scratch = convolver_.make_scratch();
  simulate(rng, rec, scratch);
  return rec;
}

PathRecord cdq_simulate(const DerivedParams& params, const KernelTable& table, const PathRng& rng,
                        std::size_t crossover) {
  const InarSimulator sim(params, table, crossover);
  return sim.simulate(rng);
}

void price_path(PathRecord& path, const DerivedParams& params) {
  const std::size_t n = path.n_plus.size();
  path.s.resize(n);
  const double c = params.price_scale();
  const double diffusion = std::sqrt(params.theta / 2.0) * std::sqrt(c);
  const double drift = params.theta / 2.0 * c;
  for (std::size_t i = 0; i < n; ++i) {
    const auto np = static_cast<double>(path.n_plus[i]);
    const auto nm = static_cast<double>(path.n_minus[i]);
    if (np == 0.0 && nm == 0.0) {
      path.s[i] = params.s0;  // also covers a zero-intensity model with c = inf
      continue;
    }
    path.s[i] = params.s0 * std::exp(diffusion * (np - nm) - drift * np);
  }
}

}  // namespace rhinar
