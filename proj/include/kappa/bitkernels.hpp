#pragma once

#include <cstddef>
#include <cstdint>

// Word-level primitives behind the membership bitsets. Everything hot in the
// enumeration core (dedup, inclusion filtering, lattice joins) bottoms out in
// these, so they come in a scalar reference flavor and an AVX2 flavor chosen
// once at startup. The two must agree bit-for-bit; tests/test_bitkernels.cpp
// checks every entry point against the scalar reference.

namespace kappa::bitk {

using word = std::uint64_t;

struct Kernels {
  const char* name;
  void (*bit_and)(word* dst, const word* a, const word* b, std::size_t n);
  void (*bit_or)(word* dst, const word* a, const word* b, std::size_t n);
  void (*bit_andnot)(word* dst, const word* a, const word* b, std::size_t n);  // a & ~b
  bool (*equal)(const word* a, const word* b, std::size_t n);
  bool (*subset)(const word* a, const word* b, std::size_t n);  // (a & ~b) == 0
  bool (*intersects)(const word* a, const word* b, std::size_t n);
  bool (*is_zero)(const word* a, std::size_t n);
  std::size_t (*popcount)(const word* a, std::size_t n);
};

const Kernels& scalar_kernels();

// AVX2 table when compiled in and this CPU supports it, nullptr otherwise.
const Kernels* avx2_kernels();

// Active table: AVX2 when available, scalar otherwise.
// KAPPA_KERNELS=scalar|avx2 in the environment forces a backend.
const Kernels& kernels();

}  // namespace kappa::bitk
