#pragma once

#include <array>
#include <cstdint>

namespace rhinar {

// Philox4x32-10 counter-based block cipher (Salmon et al., SC'11).
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

[[nodiscard]] PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key) noexcept;

[[nodiscard]] std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Draw lanes within one time step. Each lane is an independent sub-stream.
enum class Lane : std::uint32_t { Plus = 0, Minus = 1, Gaussian = 2 };

// Uniform stream addressed by (master seed, path, step, lane). Output is a pure
// function of that address and the number of draws taken, so simulation results
// do not depend on thread count or scheduling.
class RandomStream {
 public:
  RandomStream(PhiloxKey key, std::uint64_t path, std::uint32_t step, Lane lane) noexcept
      : key_(key), path_(path), step_(step), lane_(static_cast<std::uint32_t>(lane)) {}

  // Uniform on the open interval (0, 1) with 53 random bits.
  double uniform() noexcept {
    if (have_ == 0) refill();
    return buffer_[--have_];
  }

  [[nodiscard]] std::uint32_t blocks_used() const noexcept { return block_; }

 private:
  void refill() noexcept;

  PhiloxKey key_;
  std::uint64_t path_;
  std::uint32_t step_;
  std::uint32_t lane_;
  std::uint32_t block_ = 0;
  int have_ = 0;
  double buffer_[2] = {0.0, 0.0};
};

// Per-path view: hands out step/lane streams for one path index.
class PathRng {
 public:
  PathRng(std::uint64_t master_seed, std::uint64_t path) noexcept;

  [[nodiscard]] RandomStream stream(std::uint32_t step, Lane lane) const noexcept {
    return RandomStream(key_, path_, step, lane);
  }
  [[nodiscard]] std::uint64_t path() const noexcept { return path_; }

 private:
  PhiloxKey key_;
  std::uint64_t path_;
};

[[nodiscard]] PhiloxKey key_from_seed(std::uint64_t master_seed) noexcept;

// Derives an independent master seed, e.g. one per tau in a convergence sweep.
[[nodiscard]] std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t salt) noexcept;

}  // namespace rhinar
