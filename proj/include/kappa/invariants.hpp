#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kappa/group.hpp"

namespace kappa {

// p such that |G| = p^k with k >= 1, nullopt otherwise (trivial group included).
std::optional<std::uint32_t> p_group_prime(const FiniteGroup& g);
std::optional<std::uint32_t> p_group_prime(const Subgroup& h);

// Sylow p-subgroup by normalizer growth: a proper p-subgroup of a group with
// a larger p-part always has p-elements in its normalizer outside itself, so
// repeatedly adjoin the smallest such element. Returns the trivial subgroup
// when p does not divide |G|. Ties broken by smallest element index.
Subgroup sylow_subgroup(const FiniteGroup& g, std::uint32_t p);

// Frattini subgroup of a p-group: ⟨x^p, [x,y]⟩. Also usable on p-subgroups.
Subgroup frattini(const FiniteGroup& g);
Subgroup frattini_of(const Subgroup& h);

// Maximal subgroups. For p-groups these are the preimages of the hyperplanes
// of G/Φ(G) ((p^d−1)/(p−1) of them; their intersection is re-checked to be
// Φ(G)). For anything else the complete lattice is filtered, subject to the
// oracle cap.
std::vector<Subgroup> maximal_subgroups(const FiniteGroup& g,
                                        std::uint32_t oracle_cap = limits::kDefaultOracleCap);

// Ω₁: subgroup generated by the elements of order dividing p (p-group input).
Subgroup omega1(const FiniteGroup& g);
Subgroup omega1_of(const Subgroup& h);
// ℧_k: subgroup generated by p^k-th powers.
Subgroup mho(const FiniteGroup& g, std::uint32_t k);
Subgroup mho_of(const Subgroup& h, std::uint32_t k);

struct HomocyclicType {
  std::uint32_t p;
  std::uint32_t e;     // exponent p^e
  std::uint32_t rank;  // C_{p^e}^rank
};
// Engaged iff G is an abelian p-group with |G| = |Ω₁(G)|^e, p^e = exp(G).
std::optional<HomocyclicType> homocyclic_type(const FiniteGroup& g);
std::optional<HomocyclicType> homocyclic_type_of(const Subgroup& h);

// d(G) with |G/Φ(G)| = p^d (p-group input). Convention: d(trivial) = 0.
std::uint32_t minimal_generators(const FiniteGroup& g);
std::uint32_t minimal_generators_of(const Subgroup& h);

// Lower central series; defined for nilpotent input (p-groups always are).
std::uint32_t nilpotency_class(const FiniteGroup& g);
std::uint32_t nilpotency_class_of(const Subgroup& h);

// |G| = p^n with n >= 2 and class exactly n-1 (so order-p^2 groups qualify).
bool is_maximal_class(const FiniteGroup& g);
bool is_maximal_class_of(const Subgroup& h);

// The t with: every subgroup of index p^t abelian, some subgroup of index
// p^{t-1} non-abelian. 0 for abelian input. Needs the lattice (cap applies).
std::uint32_t at_level(const FiniteGroup& g, std::uint32_t oracle_cap = limits::kDefaultOracleCap);

struct PGroupProfile {
  std::uint32_t p = 0;
  std::uint32_t n = 0;  // |G| = p^n
  std::uint32_t d = 0;
  std::uint32_t exp = 0;  // exponent value (a power of p)
  std::uint32_t at_level = 0;
  bool maximal_class = false;
};
PGroupProfile p_group_profile(const FiniteGroup& g,
                              std::uint32_t oracle_cap = limits::kDefaultOracleCap);

// P = [P,A] × C_P(A) for an abelian p-subgroup P normalized by a coprime A.
// Returns ([P,A], C_P(A)); the internal-direct-product facts are asserted.
std::pair<Subgroup, Subgroup> coprime_action_decomposition(const FiniteGroup& g, const Subgroup& p_sub,
                                                           const Subgroup& a_sub);

// Decomposition of an abelian p-group into cyclic factors (internal direct
// product), by iterated maximal-order splitting with exhaustive complement
// search over the lattice. Deterministic.
std::vector<Subgroup> abelian_cyclic_decomposition(const FiniteGroup& g,
                                                   std::uint32_t oracle_cap = limits::kDefaultOracleCap);

// For an abelian p-group G and 1 < H ≤ G: an N ≤ G with G/N cyclic and
// |H : H∩N| = p, found constructively (factor complement not containing H,
// refined by a maximal subgroup of H·N_i / N_i). The result is re-verified.
Subgroup find_cyclic_quotient_witness(const FiniteGroup& g, const Subgroup& h,
                                      std::uint32_t oracle_cap = limits::kDefaultOracleCap);

}  // namespace kappa
