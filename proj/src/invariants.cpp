#include "kappa/invariants.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "kappa/errors.hpp"
#include "kappa/numutil.hpp"

namespace kappa {

std::optional<std::uint32_t> p_group_prime(const FiniteGroup& g) {
  std::uint64_t p = prime_power_base(g.order());
  if (!p) return std::nullopt;
  return static_cast<std::uint32_t>(p);
}

std::optional<std::uint32_t> p_group_prime(const Subgroup& h) {
  std::uint64_t p = prime_power_base(h.order);
  if (!p) return std::nullopt;
  return static_cast<std::uint32_t>(p);
}

namespace {

bool is_p_element(const FiniteGroup& g, std::uint32_t x, std::uint32_t p) {
  std::uint32_t o = g.element_order(x);
  while (o % p == 0) o /= p;
  return o == 1;  // true for the identity too
}

}  // namespace

Subgroup sylow_subgroup(const FiniteGroup& g, std::uint32_t p) {
  if (!is_prime(p)) throw InputError("sylow_subgroup: p must be prime");
  std::uint64_t part = prime_part(g.order(), p);
  Subgroup s = trivial_subgroup(g);
  if (part == 1) return s;
  while (s.order < part) {
    Subgroup n = s.order == 1 ? full_subgroup(g) : normalizer(g, s);
    std::uint32_t pick = g.order();
    for (std::uint32_t x : n.members.to_indices()) {
      if (!s.contains(x) && x != g.identity() && is_p_element(g, x, p)) {
        pick = x;
        break;
      }
    }
    if (pick == g.order())
      throw ContractError("sylow_subgroup: no p-element in normalizer; table is inconsistent");
    DenseBitset seed = s.members;
    seed.set(pick);
    Subgroup grown = closure_of_set(g, seed);
    if (prime_part(grown.order, p) != grown.order)
      throw ContractError("sylow_subgroup: growth left the p-world");
    s = std::move(grown);
  }
  return s;
}

Subgroup frattini_of(const Subgroup& h) {
  auto p = p_group_prime(h);
  if (!p) throw ContractError("frattini: input is not a p-group");
  const FiniteGroup& g = h.parent;
  DenseBitset seed = derived_subgroup(h).members;
  h.members.for_each([&](std::uint32_t x) { seed.set(g.power(x, *p)); });
  return closure_of_set(g, seed);
}

Subgroup frattini(const FiniteGroup& g) { return frattini_of(full_subgroup(g)); }

namespace {

std::vector<Subgroup> maximal_subgroups_pgroup(const FiniteGroup& g, std::uint32_t p) {
  Subgroup phi = frattini(g);
  CosetQuotient q = quotient(g, phi);
  const FiniteGroup& eb = q.group;  // elementary abelian of rank d
  std::uint32_t qn = eb.order();

  // greedy basis of the quotient as an F_p vector space
  std::vector<std::uint32_t> basis;
  DenseBitset span = DenseBitset::with_bit(qn, eb.identity());
  for (std::uint32_t x = 0; x < qn; ++x) {
    if (span.test(x)) continue;
    basis.push_back(x);
    DenseBitset next(qn);
    span.for_each([&](std::uint32_t s) {
      std::uint32_t y = s;
      for (std::uint32_t j = 0; j < p; ++j) {
        next.set(y);
        y = eb.mul(y, x);
      }
    });
    span = std::move(next);
  }
  std::uint32_t d = static_cast<std::uint32_t>(basis.size());

  // coordinates of every quotient element w.r.t. the basis
  std::vector<std::vector<std::uint32_t>> coords(qn);
  std::uint64_t tuples = ipow(p, d);
  for (std::uint64_t t = 0; t < tuples; ++t) {
    std::vector<std::uint32_t> digits(d);
    std::uint64_t v = t;
    std::uint32_t elem = eb.identity();
    for (std::uint32_t i = 0; i < d; ++i) {
      digits[i] = static_cast<std::uint32_t>(v % p);
      v /= p;
      elem = eb.mul(elem, eb.power(basis[i], digits[i]));
    }
    coords[elem] = std::move(digits);
  }

  // hyperplanes = kernels of functionals with first nonzero coefficient 1
  std::vector<Subgroup> out;
  std::vector<std::uint32_t> c(d, 0);
  for (std::uint64_t t = 1; t < tuples; ++t) {
    std::uint64_t v = t;
    for (std::uint32_t i = 0; i < d; ++i) {
      c[i] = static_cast<std::uint32_t>(v % p);
      v /= p;
    }
    std::uint32_t first = 0;
    while (c[first] == 0) ++first;
    if (c[first] != 1) continue;
    DenseBitset ker(qn);
    for (std::uint32_t x = 0; x < qn; ++x) {
      std::uint32_t acc = 0;
      for (std::uint32_t i = 0; i < d; ++i) acc = (acc + c[i] * coords[x][i]) % p;
      if (acc == 0) ker.set(x);
    }
    DenseBitset pre(g.order());
    for (std::uint32_t x = 0; x < g.order(); ++x)
      if (ker.test(q.projection[x])) pre.set(x);
    out.push_back(make_subgroup(g, std::move(pre)));
  }

  // the Frattini subgroup must be exactly the intersection of the maximals
  if (!out.empty()) {
    DenseBitset meet = out[0].members;
    for (const Subgroup& m : out) meet &= m.members;
    if (meet != phi.members)
      throw ContractError("maximal_subgroups: hyperplane intersection is not the Frattini subgroup");
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

}  // namespace

std::vector<Subgroup> maximal_subgroups(const FiniteGroup& g, std::uint32_t oracle_cap) {
  if (g.order() == 1) return {};
  if (auto p = p_group_prime(g)) return maximal_subgroups_pgroup(g, *p);
  std::vector<Subgroup> all = all_subgroups_bruteforce(g, oracle_cap);
  std::vector<Subgroup> proper;
  for (const Subgroup& s : all)
    if (s.order < g.order()) proper.push_back(s);
  std::vector<Subgroup> out;
  for (const Subgroup& s : proper) {
    bool maximal = true;
    for (const Subgroup& t : proper)
      if (t.order > s.order && t.members.contains_all(s.members)) {
        maximal = false;
        break;
      }
    if (maximal) out.push_back(s);
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

Subgroup omega1_of(const Subgroup& h) {
  auto p = p_group_prime(h);
  if (!p) throw ContractError("omega1: input is not a p-group");
  DenseBitset seed(h.parent.order());
  h.members.for_each([&](std::uint32_t x) {
    if (h.parent.element_order(x) <= *p) seed.set(x);
  });
  return closure_of_set(h.parent, seed);
}

Subgroup omega1(const FiniteGroup& g) { return omega1_of(full_subgroup(g)); }

Subgroup mho_of(const Subgroup& h, std::uint32_t k) {
  auto p = p_group_prime(h);
  if (!p) throw ContractError("mho: input is not a p-group");
  // x^(p^k) = x^(p^k mod ord(x)); reduce first so k can be arbitrary
  auto modpow = [](std::uint64_t base, std::uint32_t exp, std::uint32_t mod) {
    std::uint64_t r = 1 % mod, b = base % mod;
    while (exp) {
      if (exp & 1) r = r * b % mod;
      b = b * b % mod;
      exp >>= 1;
    }
    return static_cast<std::uint32_t>(r);
  };
  DenseBitset seed(h.parent.order());
  h.members.for_each([&](std::uint32_t x) {
    seed.set(h.parent.power(x, modpow(*p, k, h.parent.element_order(x))));
  });
  return closure_of_set(h.parent, seed);
}

Subgroup mho(const FiniteGroup& g, std::uint32_t k) { return mho_of(full_subgroup(g), k); }

std::optional<HomocyclicType> homocyclic_type_of(const Subgroup& h) {
  auto p = p_group_prime(h);
  if (!p || !is_abelian(h)) return std::nullopt;
  std::uint32_t ex = exponent(h);
  std::uint32_t e = ilog(ex, *p);
  std::uint32_t rank = ilog(static_cast<std::uint32_t>(omega1_of(h).order), *p);
  if (ipow(*p, e * rank) == h.order) return HomocyclicType{*p, e, rank};
  return std::nullopt;
}

std::optional<HomocyclicType> homocyclic_type(const FiniteGroup& g) {
  return homocyclic_type_of(full_subgroup(g));
}

std::uint32_t minimal_generators_of(const Subgroup& h) {
  if (h.order == 1) return 0;
  auto p = p_group_prime(h);
  if (!p) throw ContractError("minimal_generators: input is not a p-group");
  Subgroup phi = frattini_of(h);
  return ilog(h.order / phi.order, *p);
}

std::uint32_t minimal_generators(const FiniteGroup& g) {
  return minimal_generators_of(full_subgroup(g));
}

std::uint32_t nilpotency_class_of(const Subgroup& h) {
  const FiniteGroup& g = h.parent;
  Subgroup k = h;
  std::uint32_t cls = 0;
  while (k.order > 1) {
    // [K, H]
    DenseBitset seed(g.order());
    std::vector<std::uint32_t> kel = k.members.to_indices();
    std::vector<std::uint32_t> hel = h.members.to_indices();
    for (std::uint32_t x : kel)
      for (std::uint32_t y : hel) seed.set(g.commutator(x, y));
    Subgroup next = closure_of_set(g, seed);
    if (next.order == k.order) throw ContractError("nilpotency_class: input is not nilpotent");
    k = std::move(next);
    ++cls;
  }
  return cls;
}

std::uint32_t nilpotency_class(const FiniteGroup& g) {
  return nilpotency_class_of(full_subgroup(g));
}

bool is_maximal_class_of(const Subgroup& h) {
  auto p = p_group_prime(h);
  if (!p) throw ContractError("is_maximal_class: input is not a p-group");
  std::uint32_t n = ilog(h.order, *p);
  if (n < 2) return false;
  return nilpotency_class_of(h) == n - 1;
}

bool is_maximal_class(const FiniteGroup& g) { return is_maximal_class_of(full_subgroup(g)); }

std::uint32_t at_level(const FiniteGroup& g, std::uint32_t oracle_cap) {
  auto p = p_group_prime(g);
  if (!p) throw ContractError("at_level: input is not a p-group");
  if (g.is_abelian()) return 0;
  std::uint32_t n = ilog(g.order(), *p);
  // smallest non-abelian subgroup order determines the level
  std::uint32_t min_k = n;
  for (const DenseBitset& bits : subgroup_lattice(g, oracle_cap)) {
    Subgroup s = make_subgroup(g, bits);
    std::uint32_t k = ilog(s.order, *p);
    if (k >= min_k) continue;
    if (!is_abelian(s)) min_k = k;
  }
  return n - min_k + 1;
}

PGroupProfile p_group_profile(const FiniteGroup& g, std::uint32_t oracle_cap) {
  auto p = p_group_prime(g);
  if (!p) throw ContractError("p_group_profile: input is not a p-group");
  PGroupProfile pr;
  pr.p = *p;
  pr.n = ilog(g.order(), *p);
  pr.d = minimal_generators(g);
  pr.exp = exponent(g);
  pr.at_level = at_level(g, oracle_cap);
  pr.maximal_class = is_maximal_class(g);
  return pr;
}

std::pair<Subgroup, Subgroup> coprime_action_decomposition(const FiniteGroup& g,
                                                           const Subgroup& p_sub,
                                                           const Subgroup& a_sub) {
  auto p = p_group_prime(p_sub);
  if (!p) throw ContractError("coprime_action_decomposition: P is not a p-group");
  if (!is_abelian(p_sub)) throw ContractError("coprime_action_decomposition: P is not abelian");
  if (std::gcd(p_sub.order, a_sub.order) != 1)
    throw ContractError("coprime_action_decomposition: |P| and |A| are not coprime");
  std::vector<std::uint32_t> pel = p_sub.members.to_indices();
  std::vector<std::uint32_t> ael = a_sub.members.to_indices();
  for (std::uint32_t a : ael)
    for (std::uint32_t x : pel)
      if (!p_sub.contains(g.conjugate_element(x, a)))
        throw ContractError("coprime_action_decomposition: A does not normalize P");

  DenseBitset comm_seed(g.order());
  for (std::uint32_t x : pel)
    for (std::uint32_t a : ael) comm_seed.set(g.commutator(x, a));
  Subgroup commutators = closure_of_set(g, comm_seed);

  DenseBitset fixed(g.order());
  for (std::uint32_t x : pel) {
    bool ok = true;
    for (std::uint32_t a : ael)
      if (!g.commutes(x, a)) {
        ok = false;
        break;
      }
    if (ok) fixed.set(x);
  }
  Subgroup cp = make_subgroup(g, std::move(fixed));

  if (!p_sub.members.contains_all(commutators.members))
    throw ContractError("coprime_action_decomposition: [P,A] escaped P");
  if ((commutators.members & cp.members).count() != 1 ||
      static_cast<std::uint64_t>(commutators.order) * cp.order != p_sub.order)
    throw ContractError("coprime_action_decomposition: not an internal direct product");
  return {commutators, cp};
}

std::vector<Subgroup> abelian_cyclic_decomposition(const FiniteGroup& g, std::uint32_t oracle_cap) {
  if (!g.is_abelian()) throw ContractError("abelian_cyclic_decomposition: input is not abelian");
  std::vector<Subgroup> factors;
  if (g.order() == 1) return factors;
  const auto& lattice = subgroup_lattice(g, oracle_cap);
  Subgroup remaining = full_subgroup(g);
  while (remaining.order > 1) {
    std::uint32_t best = g.identity();
    remaining.members.for_each([&](std::uint32_t x) {
      if (g.element_order(x) > g.element_order(best)) best = x;
    });
    Subgroup c = closure(g, std::array<std::uint32_t, 1>{best});
    factors.push_back(c);
    if (c.order == remaining.order) break;
    std::uint32_t want = remaining.order / c.order;
    bool found = false;
    for (const DenseBitset& bits : lattice) {
      if (bits.count() != want) continue;
      if (!remaining.members.contains_all(bits)) continue;
      if ((bits & c.members).count() != 1) continue;
      remaining = make_subgroup(g, bits);
      found = true;
      break;
    }
    if (!found)
      throw ContractError("abelian_cyclic_decomposition: no complement found (not abelian?)");
  }
  return factors;
}

Subgroup find_cyclic_quotient_witness(const FiniteGroup& g, const Subgroup& h,
                                      std::uint32_t oracle_cap) {
  auto p = p_group_prime(g);
  if (!p || !g.is_abelian())
    throw ContractError("find_cyclic_quotient_witness: G must be an abelian p-group");
  if (h.order <= 1) throw ContractError("find_cyclic_quotient_witness: H must be nontrivial");

  Subgroup n = [&] {
    if (exponent(g) == g.order()) {
      // cyclic G: the maximal subgroup of (cyclic) H works
      return mho_of(h, 1);
    }
    std::vector<Subgroup> factors = abelian_cyclic_decomposition(g, oracle_cap);
    const auto& lattice = subgroup_lattice(g, oracle_cap);
    for (std::size_t i = 0; i < factors.size(); ++i) {
      DenseBitset rest(g.order());
      rest.set(g.identity());
      for (std::size_t j = 0; j < factors.size(); ++j)
        if (j != i) rest |= factors[j].members;
      Subgroup ni = closure_of_set(g, rest);
      if (ni.members.contains_all(h.members)) continue;
      Subgroup hni = join(h, ni);
      std::uint32_t want = hni.order / *p;
      for (const DenseBitset& bits : lattice) {
        if (bits.count() != want) continue;
        if (!bits.contains_all(ni.members)) continue;
        if (!hni.members.contains_all(bits)) continue;
        return make_subgroup(g, bits);
      }
      throw ContractError("find_cyclic_quotient_witness: no index-p refinement found");
    }
    throw ContractError("find_cyclic_quotient_witness: H lies in every factor complement");
  }();

  // re-verify both properties before handing the witness out
  CosetQuotient q = quotient(g, n);
  if (exponent(q.group) != q.group.order())
    throw ContractError("find_cyclic_quotient_witness: quotient is not cyclic");
  std::uint32_t meet = static_cast<std::uint32_t>((h.members & n.members).count());
  if (h.order != meet * *p)
    throw ContractError("find_cyclic_quotient_witness: |H : H∩N| != p");
  return n;
}

}  // namespace kappa
