#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace kappa {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

// (prime, multiplicity) pairs, primes ascending.
inline std::vector<std::pair<std::uint64_t, std::uint32_t>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, std::uint32_t>> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    std::uint32_t e = 0;
    while (n % d == 0) n /= d, ++e;
    out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

// Returns p if n = p^k with k >= 1, 0 otherwise (so 1 -> 0).
inline std::uint64_t prime_power_base(std::uint64_t n) {
  auto f = factorize(n);
  return f.size() == 1 ? f[0].first : 0;
}

// p-part of n for a prime p.
inline std::uint64_t prime_part(std::uint64_t n, std::uint64_t p) {
  std::uint64_t part = 1;
  while (n % p == 0) n /= p, part *= p;
  return part;
}

inline std::uint32_t ilog(std::uint64_t n, std::uint64_t base) {
  std::uint32_t k = 0;
  while (n > 1) n /= base, ++k;
  return k;
}

inline std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace kappa
