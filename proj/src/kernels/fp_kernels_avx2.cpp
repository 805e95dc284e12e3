// Mersenne-31 vector kernels. This translation unit is compiled with
// -mavx2 and is only entered after a runtime CPU check; everything here
// assumes p == 2^31 - 1, for which reduction is two shift-add folds.

#include <immintrin.h>

#include "compartdb/kernels/fp_kernels.hpp"

namespace compartdb::kernels::detail {

namespace {

constexpr std::uint64_t kM = kMersenne31;

inline std::uint32_t fold_m31(std::uint64_t t) {
  t = (t & kM) + (t >> 31);
  t = (t & kM) + (t >> 31);
  return t >= kM ? std::uint32_t(t - kM) : std::uint32_t(t);
}

// (low 32 bits of each 64-bit lane) reduced mod 2^31-1, lanes stay 64-bit.
inline __m256i fold2_m31(__m256i t, __m256i mask) {
  __m256i lo = _mm256_and_si256(t, mask);
  __m256i hi = _mm256_srli_epi64(t, 31);
  t = _mm256_add_epi64(lo, hi);
  lo = _mm256_and_si256(t, mask);
  hi = _mm256_srli_epi64(t, 31);
  return _mm256_add_epi64(lo, hi);  // <= M + 1
}

inline __m256i cond_sub_m31(__m256i t, __m256i mask, __m256i m_minus_1) {
  __m256i ge = _mm256_cmpgt_epi64(t, m_minus_1);
  return _mm256_sub_epi64(t, _mm256_and_si256(ge, mask));
}

inline __m128i pack_lanes(__m256i t) {
  // Low dwords of the four 64-bit lanes. Kept function-local so no AVX
  // instruction runs before the runtime CPU check.
  const __m256i idx = _mm256_setr_epi32(0, 2, 4, 6, 1, 3, 5, 7);
  return _mm256_castsi256_si128(_mm256_permutevar8x32_epi32(t, idx));
}

}  // namespace

void axpy_mod_avx2_m31(std::uint32_t* y, const std::uint32_t* x, std::size_t n,
                       std::uint32_t c) {
  const __m256i cv = _mm256_set1_epi64x(c);
  const __m256i mask = _mm256_set1_epi64x(std::int64_t(kM));
  const __m256i m1 = _mm256_set1_epi64x(std::int64_t(kM - 1));
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i xw = _mm256_cvtepu32_epi64(_mm_loadu_si128((const __m128i*)(x + i)));
    __m256i yw = _mm256_cvtepu32_epi64(_mm_loadu_si128((const __m128i*)(y + i)));
    __m256i t = fold2_m31(_mm256_mul_epu32(xw, cv), mask);  // c*x, <= M+1
    t = _mm256_add_epi64(t, yw);                            // < 2^32
    t = fold2_m31(t, mask);
    t = cond_sub_m31(t, mask, m1);
    _mm_storeu_si128((__m128i*)(y + i), pack_lanes(t));
  }
  for (; i < n; ++i) {
    y[i] = fold_m31(std::uint64_t(c) * x[i] + y[i]);
  }
}

void scale_mod_avx2_m31(std::uint32_t* y, std::size_t n, std::uint32_t c) {
  const __m256i cv = _mm256_set1_epi64x(c);
  const __m256i mask = _mm256_set1_epi64x(std::int64_t(kM));
  const __m256i m1 = _mm256_set1_epi64x(std::int64_t(kM - 1));
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i yw = _mm256_cvtepu32_epi64(_mm_loadu_si128((const __m128i*)(y + i)));
    __m256i t = fold2_m31(_mm256_mul_epu32(yw, cv), mask);
    t = cond_sub_m31(t, mask, m1);
    _mm_storeu_si128((__m128i*)(y + i), pack_lanes(t));
  }
  for (; i < n; ++i) {
    y[i] = fold_m31(std::uint64_t(c) * y[i]);
  }
}

std::uint32_t dot_mod_avx2_m31(const std::uint32_t* x, const std::uint32_t* y,
                               std::size_t n) {
  const __m256i mask = _mm256_set1_epi64x(std::int64_t(kM));
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i xw = _mm256_cvtepu32_epi64(_mm_loadu_si128((const __m128i*)(x + i)));
    __m256i yw = _mm256_cvtepu32_epi64(_mm_loadu_si128((const __m128i*)(y + i)));
    __m256i t = _mm256_mul_epu32(xw, yw);  // < 2^62
    __m256i lo = _mm256_and_si256(t, mask);
    __m256i hi = _mm256_srli_epi64(t, 31);
    acc = _mm256_add_epi64(acc, _mm256_add_epi64(lo, hi));  // += (< 2^32)
  }
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256((__m256i*)lanes, acc);
  std::uint64_t total = 0;
  for (std::uint64_t lane : lanes) total += fold_m31(lane);
  for (; i < n; ++i) {
    total += fold_m31(std::uint64_t(x[i]) * y[i]);
  }
  return fold_m31(total);
}

}  // namespace compartdb::kernels::detail
