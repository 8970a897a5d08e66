#include "kappa/bitkernels.hpp"

#include <bit>
#include <cstdlib>
#include <cstring>

namespace kappa::bitk {

namespace {

void scalar_and(word* dst, const word* a, const word* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] & b[i];
}

void scalar_or(word* dst, const word* a, const word* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] | b[i];
}

void scalar_andnot(word* dst, const word* a, const word* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] & ~b[i];
}

bool scalar_equal(const word* a, const word* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] != b[i]) return false;
  return true;
}

bool scalar_subset(const word* a, const word* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

bool scalar_intersects(const word* a, const word* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] & b[i]) return true;
  return false;
}

bool scalar_is_zero(const word* a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i]) return false;
  return true;
}

std::size_t scalar_popcount(const word* a, std::size_t n) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < n; ++i) c += static_cast<std::size_t>(std::popcount(a[i]));
  return c;
}

const Kernels& pick_active() {
  static const Kernels& chosen = []() -> const Kernels& {
    const char* force = std::getenv("KAPPA_KERNELS");
    if (force && std::strcmp(force, "scalar") == 0) return scalar_kernels();
    if (const Kernels* v = avx2_kernels()) {
      if (!force || std::strcmp(force, "avx2") == 0) return *v;
    }
    return scalar_kernels();
  }();
  return chosen;
}

}  // namespace

const Kernels& scalar_kernels() {
  static const Kernels k = {
      "scalar",       scalar_and,    scalar_or,      scalar_andnot, scalar_equal,
      scalar_subset,  scalar_intersects, scalar_is_zero, scalar_popcount,
  };
  return k;
}

#if !defined(KAPPA_BUILD_AVX2)
const Kernels* avx2_kernels() { return nullptr; }
#endif

const Kernels& kernels() { return pick_active(); }

}  // namespace kappa::bitk
