#include "hecke/fp_kernels.hpp"

#include <immintrin.h>

namespace hecke::kernels::detail {

namespace {

// Values below 2^24 convert to float exactly, so the float quotient is off by
// at most one and a single correction step suffices.
constexpr std::uint32_t kFloatReduceLimit = 4096;

inline __m256i reduce_small(__m256i v, __m256 inv_p, __m256i pv) {
  __m256 q = _mm256_mul_ps(_mm256_cvtepi32_ps(v), inv_p);
  __m256i qi = _mm256_cvttps_epi32(q);
  __m256i r = _mm256_sub_epi32(v, _mm256_mullo_epi32(qi, pv));
  // r in (-p, 2p)
  __m256i neg = _mm256_cmpgt_epi32(_mm256_setzero_si256(), r);
  r = _mm256_add_epi32(r, _mm256_and_si256(neg, pv));
  __m256i big = _mm256_cmpgt_epi32(r, _mm256_sub_epi32(pv, _mm256_set1_epi32(1)));
  return _mm256_sub_epi32(r, _mm256_and_si256(big, pv));
}

void axpy_mod_avx2(std::uint32_t* y, const std::uint32_t* x, std::uint32_t c,
                   std::uint32_t p, std::size_t len) {
  std::size_t i = 0;
  if (p < kFloatReduceLimit) {
    const __m256i cv = _mm256_set1_epi32(static_cast<int>(c));
    const __m256i pv = _mm256_set1_epi32(static_cast<int>(p));
    const __m256 inv_p = _mm256_set1_ps(1.0f / static_cast<float>(p));
    for (; i + 8 <= len; i += 8) {
      __m256i yv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(y + i));
      __m256i xv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + i));
      __m256i s = _mm256_add_epi32(yv, _mm256_mullo_epi32(xv, cv));
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(y + i),
                          reduce_small(s, inv_p, pv));
    }
  }
  for (; i < len; ++i)
    y[i] = static_cast<std::uint32_t>((y[i] + std::uint64_t(c) * x[i]) % p);
}

void scale_mod_avx2(std::uint32_t* y, std::uint32_t c, std::uint32_t p,
                    std::size_t len) {
  std::size_t i = 0;
  if (p < kFloatReduceLimit) {
    const __m256i cv = _mm256_set1_epi32(static_cast<int>(c));
    const __m256i pv = _mm256_set1_epi32(static_cast<int>(p));
    const __m256 inv_p = _mm256_set1_ps(1.0f / static_cast<float>(p));
    for (; i + 8 <= len; i += 8) {
      __m256i yv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(y + i));
      _mm256_storeu_si256(reinterpret_cast<__m256i*>(y + i),
                          reduce_small(_mm256_mullo_epi32(yv, cv), inv_p, pv));
    }
  }
  for (; i < len; ++i)
    y[i] = static_cast<std::uint32_t>(std::uint64_t(c) * y[i] % p);
}

void acc_scaled_avx2(std::uint32_t* acc, const std::uint32_t* x,
                     std::uint32_t c, std::size_t len) {
  const __m256i cv = _mm256_set1_epi32(static_cast<int>(c));
  std::size_t i = 0;
  for (; i + 8 <= len; i += 8) {
    __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(acc + i));
    __m256i xv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(acc + i),
                        _mm256_add_epi32(a, _mm256_mullo_epi32(xv, cv)));
  }
  for (; i < len; ++i) acc[i] += c * x[i];
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable t{axpy_mod_avx2, scale_mod_avx2, acc_scaled_avx2};
  return t;
}

}  // namespace hecke::kernels::detail
