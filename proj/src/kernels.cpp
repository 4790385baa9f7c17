#include "polarsym/kernels.hpp"

#include <atomic>
#include <bit>
#include <cstdlib>

#if defined(__x86_64__) || defined(__i386__)
#include <cpuid.h>
#endif

namespace polarsym::kernels {

#ifdef POLARSYM_HAVE_AVX2
const Backend* avx2_backend();  // defined in kernels_avx2.cpp
#endif

namespace {

inline std::uint32_t f32_bits(float x) { return std::bit_cast<std::uint32_t>(x); }
inline float bits_f32(std::uint32_t b) { return std::bit_cast<float>(b); }

void f_llr_scalar(float* dst, const float* a, const float* b, std::size_t len) {
  for (std::size_t k = 0; k < len; ++k) {
    const float fa = bits_f32(f32_bits(a[k]) & 0x7fffffffu);
    const float fb = bits_f32(f32_bits(b[k]) & 0x7fffffffu);
    const float magnitude = fa < fb ? fa : fb;
    const std::uint32_t sign = (f32_bits(a[k]) ^ f32_bits(b[k])) & 0x80000000u;
    dst[k] = bits_f32(f32_bits(magnitude) | sign);
  }
}

void g_llr_scalar(float* dst, const float* a, const float* b, const std::uint8_t* u,
                  std::size_t len) {
  for (std::size_t k = 0; k < len; ++k) {
    dst[k] = u[k] ? b[k] - a[k] : b[k] + a[k];
  }
}

void xor_bits_scalar(std::uint8_t* dst, const std::uint8_t* a, const std::uint8_t* b,
                     std::size_t len) {
  for (std::size_t k = 0; k < len; ++k) dst[k] = a[k] ^ b[k];
}

float correlation_scalar(const float* llr, const std::uint8_t* bits, std::size_t len) {
  float lane[8] = {0, 0, 0, 0, 0, 0, 0, 0};
  for (std::size_t k = 0; k < len; ++k) {
    lane[k & 7] += bits[k] ? -llr[k] : llr[k];
  }
  float sum = 0.0f;
  for (int j = 0; j < 8; ++j) sum += lane[j];
  return sum;
}

constexpr Backend kScalar{"scalar", f_llr_scalar, g_llr_scalar, xor_bits_scalar,
                          correlation_scalar};

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  unsigned eax = 0, ebx = 0, ecx = 0, edx = 0;
  if (!__get_cpuid(1, &eax, &ebx, &ecx, &edx)) return false;
  const bool osxsave = (ecx >> 27) & 1u;
  if (!osxsave) return false;
  std::uint32_t xcr0_lo, xcr0_hi;
  asm volatile("xgetbv" : "=a"(xcr0_lo), "=d"(xcr0_hi) : "c"(0));
  if ((xcr0_lo & 0x6) != 0x6) return false;  // XMM and YMM state enabled
  if (!__get_cpuid_count(7, 0, &eax, &ebx, &ecx, &edx)) return false;
  return (ebx >> 5) & 1u;
#else
  return false;
#endif
}

std::vector<const Backend*> detect_backends() {
  std::vector<const Backend*> list{&kScalar};
#ifdef POLARSYM_HAVE_AVX2
  if (cpu_has_avx2()) list.push_back(avx2_backend());
#endif
  return list;
}

std::atomic<const Backend*>& active_slot() {
  static std::atomic<const Backend*> slot{[] {
    const Backend* chosen = available().back();
    if (const char* requested = std::getenv("POLARSYM_KERNELS")) {
      for (const Backend* backend : available()) {
        if (std::string_view(backend->name) == requested) chosen = backend;
      }
    }
    return chosen;
  }()};
  return slot;
}

}  // namespace

const std::vector<const Backend*>& available() {
  static const std::vector<const Backend*> list = detect_backends();
  return list;
}

const Backend& active() { return *active_slot().load(std::memory_order_relaxed); }

bool select(std::string_view name) {
  for (const Backend* backend : available()) {
    if (std::string_view(backend->name) == name) {
      active_slot().store(backend, std::memory_order_relaxed);
      return true;
    }
  }
  return false;
}

}  // namespace polarsym::kernels
