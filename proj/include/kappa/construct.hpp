#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "kappa/group.hpp"

namespace kappa {

// Invariant factors of a finite abelian group in primary decomposition:
// every entry is a prime power >= 2.
struct AbelianType {
  std::vector<std::uint32_t> prime_powers;
};

// Images of the acted-on group's generators as words over those generators.
// A word is a list of (generator index, exponent) factors.
struct ActionSpec {
  using Word = std::vector<std::pair<std::uint32_t, long long>>;
  std::vector<Word> images;  // one word per generator of the abelian base
};

// Element indexing conventions (all deterministic):
//  - cyclic(n): element k is the k-th power of the generator; identity 0.
//  - abelian(t): elements are exponent tuples (e_1,...,e_m), e_i < k_i,
//    indexed lexicographically with the last coordinate fastest; identity 0.
//  - direct_product: pairs (g1, g2), index g1*|G2| + g2.
//  - semidirect: pairs (x, c^i) with x in the base, index x*q + i; the base
//    embeds at indices x*q, the acting generator c is index 1, and conjugation
//    satisfies c^{-1}·x·c = action(x).
//  - from_permutations: breadth-first closure order from the identity.

FiniteGroup cyclic(std::uint32_t n, std::uint32_t max_order = limits::kDefaultMaxOrder);
FiniteGroup abelian(const AbelianType& t, std::uint32_t max_order = limits::kDefaultMaxOrder);
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b,
                           std::uint32_t max_order = limits::kDefaultMaxOrder);
FiniteGroup semidirect(const AbelianType& base, std::uint32_t acting_order, const ActionSpec& act,
                       std::uint32_t max_order = limits::kDefaultMaxOrder);
FiniteGroup from_permutations(std::uint32_t degree,
                              const std::vector<std::vector<std::uint32_t>>& generators,
                              std::uint32_t max_order = limits::kDefaultMaxOrder);

// Catalog parameters are positional integers; named forms accepted by the
// descriptor grammar map onto the same slots. Entries:
//   dihedral(order)           order >= 2, even
//   quaternion(order)         order = 2^n >= 8
//   semidihedral(order)       order = 2^n >= 16
//   modular(p, n)             order p^n; n >= 3 (p odd), n >= 4 (p = 2)
//   heisenberg(p)             order p^3, exponent p, p odd
//   extraspecial(p, sign)     sign +1 / -1; p^3 of exponent p / p^2 (D8/Q8 at p=2)
//   a5()
//   example72()
//   fermat_family(p)          p a Fermat prime
//   mersenne_family(q, r)     q = 2^r - 1 a Mersenne prime
FiniteGroup catalog(const std::string& name, const std::vector<long long>& params,
                    std::uint32_t max_order = limits::kDefaultMaxOrder);

}  // namespace kappa
