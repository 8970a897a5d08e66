// AVX2 variants of the bitset word kernels. Compiled with -mavx2 and only
// ever dispatched to after a CPUID check, so the rest of the library stays
// runnable on any x86-64.

#include "kappa/bitkernels.hpp"

#if defined(KAPPA_BUILD_AVX2)

#include <immintrin.h>

#include <bit>

namespace kappa::bitk {

namespace {

constexpr std::size_t kLanes = 4;  // 4 x u64 per 256-bit register

void avx2_and(word* dst, const word* a, const word* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_and_si256(va, vb));
  }
  for (; i < n; ++i) dst[i] = a[i] & b[i];
}

void avx2_or(word* dst, const word* a, const word* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_or_si256(va, vb));
  }
  for (; i < n; ++i) dst[i] = a[i] | b[i];
}

void avx2_andnot(word* dst, const word* a, const word* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    // _mm256_andnot_si256(x, y) = ~x & y
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_andnot_si256(vb, va));
  }
  for (; i < n; ++i) dst[i] = a[i] & ~b[i];
}

bool avx2_equal(const word* a, const word* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    __m256i x = _mm256_xor_si256(va, vb);
    if (!_mm256_testz_si256(x, x)) return false;
  }
  for (; i < n; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

bool avx2_subset(const word* a, const word* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    __m256i d = _mm256_andnot_si256(vb, va);  // a & ~b
    if (!_mm256_testz_si256(d, d)) return false;
  }
  for (; i < n; ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

bool avx2_intersects(const word* a, const word* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    if (!_mm256_testz_si256(va, vb)) return true;  // testz(a,b) tests a&b
  }
  for (; i < n; ++i)
    if (a[i] & b[i]) return true;
  return false;
}

bool avx2_is_zero(const word* a, std::size_t n) {
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    if (!_mm256_testz_si256(va, va)) return false;
  }
  for (; i < n; ++i)
    if (a[i]) return false;
  return true;
}

// No vector popcount in AVX2; unrolled hardware popcnt on the loaded words
// still clearly beats the byte-table tricks at these sizes.
std::size_t avx2_popcount(const word* a, std::size_t n) {
  std::size_t c = 0;
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    c += static_cast<std::size_t>(_mm_popcnt_u64(a[i]));
    c += static_cast<std::size_t>(_mm_popcnt_u64(a[i + 1]));
    c += static_cast<std::size_t>(_mm_popcnt_u64(a[i + 2]));
    c += static_cast<std::size_t>(_mm_popcnt_u64(a[i + 3]));
  }
  for (; i < n; ++i) c += static_cast<std::size_t>(std::popcount(a[i]));
  return c;
}

}  // namespace

const Kernels* avx2_kernels() {
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
  if (!ok) return nullptr;
  static const Kernels k = {
      "avx2",      avx2_and,        avx2_or,      avx2_andnot, avx2_equal,
      avx2_subset, avx2_intersects, avx2_is_zero, avx2_popcount,
  };
  return &k;
}

}  // namespace kappa::bitk

#endif  // KAPPA_BUILD_AVX2
