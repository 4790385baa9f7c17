// AVX2 variants of the decoder kernels. Compiled with -mavx2 in this
// translation unit only; callers reach it through runtime dispatch.

#include <immintrin.h>

#include <bit>
#include <cstdint>

#include "polarsym/kernels.hpp"

namespace polarsym::kernels {

namespace {

inline std::uint32_t f32_bits(float x) { return std::bit_cast<std::uint32_t>(x); }
inline float bits_f32(std::uint32_t b) { return std::bit_cast<float>(b); }

void f_llr_avx2(float* dst, const float* a, const float* b, std::size_t len) {
  const __m256 abs_mask = _mm256_castsi256_ps(_mm256_set1_epi32(0x7fffffff));
  const __m256 sign_mask = _mm256_castsi256_ps(_mm256_set1_epi32(0x80000000));
  std::size_t k = 0;
  for (; k + 8 <= len; k += 8) {
    const __m256 va = _mm256_loadu_ps(a + k);
    const __m256 vb = _mm256_loadu_ps(b + k);
    const __m256 magnitude =
        _mm256_min_ps(_mm256_and_ps(va, abs_mask), _mm256_and_ps(vb, abs_mask));
    const __m256 sign = _mm256_and_ps(_mm256_xor_ps(va, vb), sign_mask);
    _mm256_storeu_ps(dst + k, _mm256_or_ps(magnitude, sign));
  }
  for (; k < len; ++k) {
    const float fa = bits_f32(f32_bits(a[k]) & 0x7fffffffu);
    const float fb = bits_f32(f32_bits(b[k]) & 0x7fffffffu);
    const float magnitude = fa < fb ? fa : fb;
    const std::uint32_t sign = (f32_bits(a[k]) ^ f32_bits(b[k])) & 0x80000000u;
    dst[k] = bits_f32(f32_bits(magnitude) | sign);
  }
}

void g_llr_avx2(float* dst, const float* a, const float* b, const std::uint8_t* u,
                std::size_t len) {
  const __m256i zero = _mm256_setzero_si256();
  const __m256 sign_mask = _mm256_castsi256_ps(_mm256_set1_epi32(0x80000000));
  std::size_t k = 0;
  for (; k + 8 <= len; k += 8) {
    const __m128i u8 = _mm_loadl_epi64(reinterpret_cast<const __m128i*>(u + k));
    const __m256i u32 = _mm256_cvtepu8_epi32(u8);
    const __m256 flip = _mm256_and_ps(
        _mm256_castsi256_ps(_mm256_cmpgt_epi32(u32, zero)), sign_mask);
    const __m256 va = _mm256_xor_ps(_mm256_loadu_ps(a + k), flip);
    _mm256_storeu_ps(dst + k, _mm256_add_ps(_mm256_loadu_ps(b + k), va));
  }
  for (; k < len; ++k) {
    dst[k] = u[k] ? b[k] - a[k] : b[k] + a[k];
  }
}

void xor_bits_avx2(std::uint8_t* dst, const std::uint8_t* a, const std::uint8_t* b,
                   std::size_t len) {
  std::size_t k = 0;
  for (; k + 32 <= len; k += 32) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + k));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + k));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + k), _mm256_xor_si256(va, vb));
  }
  for (; k < len; ++k) dst[k] = a[k] ^ b[k];
}

float correlation_avx2(const float* llr, const std::uint8_t* bits, std::size_t len) {
  const __m256i zero = _mm256_setzero_si256();
  const __m256 sign_mask = _mm256_castsi256_ps(_mm256_set1_epi32(0x80000000));
  __m256 acc = _mm256_setzero_ps();
  std::size_t k = 0;
  for (; k + 8 <= len; k += 8) {
    const __m128i u8 = _mm_loadl_epi64(reinterpret_cast<const __m128i*>(bits + k));
    const __m256i u32 = _mm256_cvtepu8_epi32(u8);
    const __m256 flip = _mm256_and_ps(
        _mm256_castsi256_ps(_mm256_cmpgt_epi32(u32, zero)), sign_mask);
    acc = _mm256_add_ps(acc, _mm256_xor_ps(_mm256_loadu_ps(llr + k), flip));
  }
  alignas(32) float lane[8];
  _mm256_store_ps(lane, acc);
  for (; k < len; ++k) {
    lane[k & 7] += bits[k] ? -llr[k] : llr[k];
  }
  float sum = 0.0f;
  for (int j = 0; j < 8; ++j) sum += lane[j];
  return sum;
}

constexpr Backend kAvx2{"avx2", f_llr_avx2, g_llr_avx2, xor_bits_avx2, correlation_avx2};

}  // namespace

const Backend* avx2_backend() { return &kAvx2; }

}  // namespace polarsym::kernels
