#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "kappa/group.hpp"
#include "kappa/numutil.hpp"

namespace kappa {

// Orbits of conjugation acting on a set of subgroups. Orbits are listed by
// ascending canonical representative; the representative is the member with
// the canonically smallest membership vector.
struct SubgroupOrbit {
  Subgroup representative;
  std::vector<Subgroup> members;
};

struct SubgroupClassPartition {
  std::vector<SubgroupOrbit> orbits;

  std::size_t orbit_count() const { return orbits.size(); }
  std::size_t total_members() const {
    std::size_t t = 0;
    for (const auto& o : orbits) t += o.members.size();
    return t;
  }
};

// Decomposition H = kernel ⋊ complement of a non-nilpotent minimal
// non-abelian subgroup: kernel = H' (elementary abelian Sylow p), complement
// a cyclic Sylow q.
struct MillerMorenoShape {
  std::uint32_t p = 0;
  std::uint32_t q = 0;
  Subgroup kernel;
  Subgroup complement;
};

struct MnaMemberShape {
  std::optional<std::uint32_t> p_group;      // engaged when the member is a p-group
  std::optional<MillerMorenoShape> split;    // engaged otherwise
};

struct MnaReport {
  std::vector<Subgroup> members;  // canonically sorted
  SubgroupClassPartition classes;
  std::uint32_t alpha1 = 0;
  std::uint32_t kappa1 = 0;
  std::optional<std::uint32_t> beta1;  // p-groups only: non-abelian maximal count
  std::set<std::uint32_t> pi1;
  std::vector<MnaMemberShape> shapes;  // parallel to members
};

// All minimal non-abelian subgroups: closures of non-commuting pairs,
// deduplicated, then filtered to the inclusion-minimal ones. Memoized.
std::vector<Subgroup> enumerate_mna(const FiniteGroup& g);

// Orbit closure under conjugation by a generating set. For inputs closed
// under conjugation (the only ones produced here) the orbits partition the
// input set exactly.
SubgroupClassPartition conjugacy_partition(const FiniteGroup& g, const std::vector<Subgroup>& subs);

MnaReport mna_report(const FiniteGroup& g);

// nullopt for nilpotent (= p-group) members. Throws ContractError when the
// input is not minimal non-abelian.
std::optional<MillerMorenoShape> miller_moreno_decompose(const FiniteGroup& g, const Subgroup& h);

std::set<std::uint32_t> pi1(const FiniteGroup& g);

// Split-form test: with K normal, K∩C = 1, KC = G, decides whether
// C_K(c) = 1 for every non-identity c in C.
bool is_frobenius(const FiniteGroup& g, const Subgroup& kernel, const Subgroup& complement);

enum class Transitivity { intransitive, transitive, two_transitive };

struct TransitivityResult {
  Transitivity level = Transitivity::intransitive;
  bool vacuous = false;  // |set| <= 1: two_transitive by convention, flagged
};

// Conjugation action on a conjugation-closed list of subgroups; the
// two-transitivity check runs directly on ordered pairs.
TransitivityResult action_transitivity(const FiniteGroup& g, const std::vector<Subgroup>& set);

// 2^(2^n)+1 / 2^r−1 primality-with-form tests; 2 is excluded by both.
bool is_fermat_prime(std::uint64_t p);
bool is_mersenne_prime(std::uint64_t q);

struct ClassSplitResult {
  bool applicable = false;  // false when Conj(G,H) == Conj(M,H)
  bool passed = false;
  std::size_t size_in_g = 0;
  std::size_t size_in_m = 0;
  std::size_t classes_in_m = 0;  // how many M-classes Conj(G,H) splits into
};

// For H ≤ M maximal in a p-group G: when the G-class of H is bigger than the
// M-class, it must be exactly p times bigger and split into p M-classes.
ClassSplitResult conj_class_split_check(const FiniteGroup& g, const Subgroup& h, const Subgroup& m);

}  // namespace kappa
