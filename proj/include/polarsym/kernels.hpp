#pragma once
// Data-parallel inner loops of the decoders: min-sum check-node update,
// sign-adjusted variable-node update, partial-sum combine and the BPSK
// correlation metric. A scalar reference implementation always exists;
// SIMD variants are selected at runtime and must match it bit for bit.

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace polarsym::kernels {

// dst[k] = sign(a[k]) * sign(b[k]) * min(|a[k]|, |b[k]|). dst may alias a or b.
using FFn = void (*)(float* dst, const float* a, const float* b, std::size_t len);

// dst[k] = b[k] - a[k] if u[k] else b[k] + a[k]. dst may alias a or b.
using GFn = void (*)(float* dst, const float* a, const float* b, const std::uint8_t* u,
                     std::size_t len);

// dst[k] = a[k] ^ b[k]. dst may alias a; b must not overlap dst.
using XorFn = void (*)(std::uint8_t* dst, const std::uint8_t* a, const std::uint8_t* b,
                       std::size_t len);

// Sum of (1 - 2*bits[k]) * llr[k]. Accumulated in eight lanes (lane = k mod 8)
// folded left to right, so every backend returns the identical float.
using CorrFn = float (*)(const float* llr, const std::uint8_t* bits, std::size_t len);

struct Backend {
  const char* name;
  FFn f_llr;
  GFn g_llr;
  XorFn xor_bits;
  CorrFn correlation;
};

// Backends usable on this machine; index 0 is the scalar reference.
const std::vector<const Backend*>& available();

// Currently active backend. The default is the best available one, or the
// backend named by the POLARSYM_KERNELS environment variable if set.
const Backend& active();

// Switches backends by name ("scalar", "avx2"); false if unavailable.
bool select(std::string_view name);

inline void f_llr(float* dst, const float* a, const float* b, std::size_t len) {
  active().f_llr(dst, a, b, len);
}
inline void g_llr(float* dst, const float* a, const float* b, const std::uint8_t* u,
                  std::size_t len) {
  active().g_llr(dst, a, b, u, len);
}
inline void xor_bits(std::uint8_t* dst, const std::uint8_t* a, const std::uint8_t* b,
                     std::size_t len) {
  active().xor_bits(dst, a, b, len);
}
inline float correlation(const float* llr, const std::uint8_t* bits, std::size_t len) {
  return active().correlation(llr, bits, len);
}

}  // namespace polarsym::kernels
