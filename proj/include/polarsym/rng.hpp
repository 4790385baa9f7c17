#pragma once
// Deterministic random streams (xoshiro256++ seeded via splitmix64).
// Hand-rolled so that simulation manifests replay bit-identically across
// standard libraries; std::normal_distribution sequences are
// implementation-defined.

#include <array>
#include <cmath>
#include <cstdint>

namespace polarsym {

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}
}  // namespace detail

class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = detail::splitmix64(sm);
  }

  // Independent stream for one frame of a Monte-Carlo run; depends only on
  // (seed, frame), never on worker count or processing order.
  static Rng for_frame(std::uint64_t seed, std::uint64_t frame) {
    std::uint64_t sm = seed;
    const std::uint64_t base = detail::splitmix64(sm);
    return Rng(base ^ (0xD1B54A32D192ED03ull * (frame + 1)));
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // k uniform random bits in the low positions, 0 <= k <= 32.
  std::uint32_t bits(int k) {
    if (k == 0) return 0;
    return static_cast<std::uint32_t>(next_u64() >> (64 - k));
  }

  bool coin() { return (next_u64() >> 63) != 0; }

  // Unbiased integer in [0, bound) by rejection.
  std::uint32_t below(std::uint32_t bound) {
    const std::uint64_t threshold = (~std::uint64_t{0}) - (~std::uint64_t{0}) % bound;
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r < threshold) return static_cast<std::uint32_t>(r % bound);
    }
  }

  // Uniform in (0, 1]; never returns 0 so it is safe under log().
  double uniform01() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 6.283185307179586476925287 * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> state_{};
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace polarsym
