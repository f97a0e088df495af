#include "rhinar/rng.hpp"

namespace rhinar {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) noexcept {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

inline double to_open_unit(std::uint64_t bits) noexcept {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

PhiloxCounter philox4x32_10(PhiloxCounter c, PhiloxKey k) noexcept {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, c[0], hi0, lo0);
    mulhilo(kMul1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    k[0] += kWeyl0;
    k[1] += kWeyl1;
  }
  return c;
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

PhiloxKey key_from_seed(std::uint64_t master_seed) noexcept {
  const std::uint64_t h = splitmix64(master_seed);
  return {static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t salt) noexcept {
  return splitmix64(master_seed ^ splitmix64(salt + 0x632BE59BD9B4E019ull));
}

void RandomStream::refill() noexcept {
  // Counter layout: {block | lane << 28, step, path lo, path hi}.
  const PhiloxCounter ctr{block_ | (lane_ << 28), step_, static_cast<std::uint32_t>(path_),
                          static_cast<std::uint32_t>(path_ >> 32)};
  const PhiloxCounter out = philox4x32_10(ctr, key_);
  ++block_;
  buffer_[1] = to_open_unit((static_cast<std::uint64_t>(out[1]) << 32) | out[0]);
  buffer_[0] = to_open_unit((static_cast<std::uint64_t>(out[3]) << 32) | out[2]);
  have_ = 2;
}

PathRng::PathRng(std::uint64_t master_seed, std::uint64_t path) noexcept
    : key_(key_from_seed(master_seed)), path_(path) {}

}  // namespace rhinar
