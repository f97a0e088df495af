#pragma once

#include <cstdint>

#include "rhinar/rng.hpp"

namespace rhinar {

// Intensity at which the sampler switches from sequential-search inversion to
// Hormann's PTRS transformed rejection.
inline constexpr double kPoissonInversionLimit = 10.0;

// Exact Poisson(lambda) draw. Inversion by sequential search consumes exactly one
// uniform; PTRS consumes two uniforms per trial. lambda = 0 returns 0 without
// touching the stream. Throws std::logic_error for negative or non-finite lambda.
[[nodiscard]] std::int64_t poisson_sample(double lambda, RandomStream& stream);

// log(k!) with a table for small k and Stirling's series beyond.
[[nodiscard]] double log_factorial(std::int64_t k);

}  // namespace rhinar
