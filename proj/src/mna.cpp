#include "kappa/mna.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "kappa/errors.hpp"
#include "kappa/invariants.hpp"

namespace kappa {

std::vector<Subgroup> enumerate_mna(const FiniteGroup& g) {
  {
    std::scoped_lock lk(g.memo().m);
    if (g.memo().mna) {
      std::vector<Subgroup> out;
      for (const auto& bits : *g.memo().mna) out.push_back(make_subgroup(g, bits));
      return out;
    }
  }

  std::uint32_t n = g.order();
  std::vector<DenseBitset> cands;
  std::unordered_set<DenseBitset, DenseBitsetHash> seen;
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = a + 1; b < n; ++b) {
      if (g.commutes(a, b)) continue;
      DenseBitset seed(n);
      seed.set(a);
      seed.set(b);
      DenseBitset h = closure_of_set(g, seed).members;
      if (seen.insert(h).second) cands.push_back(std::move(h));
    }

  // keep the inclusion-minimal candidates; a strictly smaller candidate
  // inside H witnesses a non-abelian proper subgroup of H
  std::sort(cands.begin(), cands.end(), [](const DenseBitset& a, const DenseBitset& b) {
    std::size_t ca = a.count(), cb = b.count();
    if (ca != cb) return ca < cb;
    return a.compare(b) < 0;
  });
  std::vector<DenseBitset> minimal;
  for (const DenseBitset& h : cands) {
    bool keep = true;
    for (const DenseBitset& k : minimal) {
      if (k.count() >= h.count()) break;  // sorted by size
      if (h.contains_all(k)) {
        keep = false;
        break;
      }
    }
    if (keep) minimal.push_back(h);
  }
  // (minimal stays sorted because cands was)

  {
    std::scoped_lock lk(g.memo().m);
    if (!g.memo().mna) g.memo().mna = minimal;
  }
  std::vector<Subgroup> out;
  out.reserve(minimal.size());
  for (const auto& bits : minimal) out.push_back(make_subgroup(g, bits));
  return out;
}

SubgroupClassPartition conjugacy_partition(const FiniteGroup& g, const std::vector<Subgroup>& subs) {
  for (const Subgroup& s : subs)
    if (!s.parent.same_rep(g)) throw InputError("conjugacy_partition: subgroup of a different group");

  std::unordered_map<DenseBitset, std::size_t, DenseBitsetHash> index;
  for (std::size_t i = 0; i < subs.size(); ++i) index.emplace(subs[i].members, i);

  std::vector<char> used(subs.size(), 0);
  std::vector<SubgroupOrbit> orbits;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (used[i]) continue;
    // orbit closure by the generating set
    std::vector<DenseBitset> orbit{subs[i].members};
    std::unordered_set<DenseBitset, DenseBitsetHash> in_orbit{subs[i].members};
    for (std::size_t w = 0; w < orbit.size(); ++w) {
      Subgroup cur = make_subgroup(g, orbit[w]);
      for (std::uint32_t s : g.generators()) {
        DenseBitset img = conjugate_subgroup(g, cur, s).members;
        if (in_orbit.insert(img).second) orbit.push_back(std::move(img));
      }
    }
    SubgroupOrbit o;
    for (DenseBitset& bits : orbit) {
      auto it = index.find(bits);
      if (it != index.end()) used[it->second] = 1;
      o.members.push_back(make_subgroup(g, std::move(bits)));
    }
    std::sort(o.members.begin(), o.members.end(), canonical_less);
    o.representative = o.members.front();
    orbits.push_back(std::move(o));
  }
  std::sort(orbits.begin(), orbits.end(), [](const SubgroupOrbit& a, const SubgroupOrbit& b) {
    return canonical_less(a.representative, b.representative);
  });
  return SubgroupClassPartition{std::move(orbits)};
}

std::optional<MillerMorenoShape> miller_moreno_decompose(const FiniteGroup& g, const Subgroup& h) {
  // re-verify minimality: every proper subgroup generated by a non-commuting
  // pair of h's elements would equal h
  if (is_abelian(h)) throw ContractError("miller_moreno_decompose: input is abelian");
  std::vector<std::uint32_t> elems = h.members.to_indices();
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = i + 1; j < elems.size(); ++j) {
      if (g.commutes(elems[i], elems[j])) continue;
      DenseBitset seed(g.order());
      seed.set(elems[i]);
      seed.set(elems[j]);
      if (closure_of_set(g, seed).order != h.order)
        throw ContractError("miller_moreno_decompose: input is not minimal non-abelian");
    }

  if (p_group_prime(h)) return std::nullopt;  // nilpotent case

  auto factors = factorize(h.order);
  if (factors.size() != 2)
    throw ContractError("miller_moreno_decompose: order has more than two primes");

  Subgroup kernel = derived_subgroup(h);
  auto kp = p_group_prime(kernel);
  if (!kp) throw ContractError("miller_moreno_decompose: derived subgroup is not a p-group");
  std::uint32_t p = *kp;
  std::uint32_t q = static_cast<std::uint32_t>(factors[0].first == p ? factors[1].first
                                                                     : factors[0].first);
  // kernel must be the full (elementary abelian) Sylow p-subgroup of H
  if (kernel.order != prime_part(h.order, p))
    throw ContractError("miller_moreno_decompose: derived subgroup is not the Sylow p-part");
  if (!is_abelian(kernel) || exponent(kernel) != p)
    throw ContractError("miller_moreno_decompose: kernel is not elementary abelian");

  GroupView view = as_group(h);
  Subgroup comp_local = sylow_subgroup(view.group, q);
  Subgroup complement = view.lift(g, comp_local.members);
  if (exponent(complement) != complement.order)
    throw ContractError("miller_moreno_decompose: Sylow q-subgroup is not cyclic");
  if ((kernel.members & complement.members).count() != 1 ||
      static_cast<std::uint64_t>(kernel.order) * complement.order != h.order)
    throw ContractError("miller_moreno_decompose: kernel/complement do not split the group");

  return MillerMorenoShape{p, q, kernel, complement};
}

std::set<std::uint32_t> pi1(const FiniteGroup& g) {
  std::set<std::uint32_t> out;
  for (const Subgroup& h : enumerate_mna(g)) {
    Subgroup d = derived_subgroup(h);
    auto p = p_group_prime(d);
    if (!p)
      throw ContractError("pi1: a minimal non-abelian member has non-prime-power derived subgroup");
    out.insert(*p);
  }
  return out;
}

MnaReport mna_report(const FiniteGroup& g) {
  MnaReport r;
  r.members = enumerate_mna(g);
  r.classes = conjugacy_partition(g, r.members);
  r.alpha1 = static_cast<std::uint32_t>(r.members.size());
  r.kappa1 = static_cast<std::uint32_t>(r.classes.orbit_count());
  if (r.classes.total_members() != r.members.size())
    throw ContractError("mna_report: orbit partition does not cover the member set");
  if (auto p = p_group_prime(g); p && g.order() > 1) {
    std::uint32_t nonab = 0;
    for (const Subgroup& m : maximal_subgroups(g))
      if (!is_abelian(m)) ++nonab;
    r.beta1 = nonab;
  }
  for (const Subgroup& h : r.members) {
    MnaMemberShape shape;
    if (auto hp = p_group_prime(h)) {
      shape.p_group = *hp;
      // minimality re-check for p-group members via the two-generator
      // characterization: d(H) = 2 and |H'| = p
      Subgroup d = derived_subgroup(h);
      if (d.order != *hp || minimal_generators_of(h) != 2)
        throw ContractError("mna_report: p-group member fails d=2, |H'|=p");
    } else {
      shape.split = miller_moreno_decompose(g, h);
    }
    Subgroup d = derived_subgroup(h);
    auto dp = p_group_prime(d);
    if (!dp) throw ContractError("mna_report: member derived subgroup is not a p-group");
    r.pi1.insert(*dp);
    r.shapes.push_back(std::move(shape));
  }
  return r;
}

bool is_frobenius(const FiniteGroup& g, const Subgroup& kernel, const Subgroup& complement) {
  if (!is_normal(g, kernel)) throw ContractError("is_frobenius: kernel is not normal");
  if ((kernel.members & complement.members).count() != 1)
    throw ContractError("is_frobenius: kernel and complement intersect nontrivially");
  if (static_cast<std::uint64_t>(kernel.order) * complement.order != g.order())
    throw ContractError("is_frobenius: kernel·complement does not cover the group");
  std::vector<std::uint32_t> kel = kernel.members.to_indices();
  bool frob = true;
  complement.members.for_each([&](std::uint32_t c) {
    if (!frob || c == g.identity()) return;
    for (std::uint32_t k : kel) {
      if (k != g.identity() && g.commutes(k, c)) {
        frob = false;
        return;
      }
    }
  });
  return frob;
}

TransitivityResult action_transitivity(const FiniteGroup& g, const std::vector<Subgroup>& set) {
  std::unordered_set<DenseBitset, DenseBitsetHash> keys;
  for (const Subgroup& s : set) keys.insert(s.members);
  // contract: closed under conjugation
  for (const Subgroup& s : set)
    for (std::uint32_t gen : g.generators())
      if (!keys.count(conjugate_subgroup(g, s, gen).members))
        throw ContractError("action_transitivity: set is not closed under conjugation");

  if (set.size() <= 1) return {Transitivity::two_transitive, true};

  SubgroupClassPartition part = conjugacy_partition(g, set);
  if (part.orbit_count() > 1) return {Transitivity::intransitive, false};

  // ordered-pair orbit closure from (set[0], set[1]); 2-transitive iff it
  // reaches all m(m-1) ordered pairs of distinct members
  struct PairHash {
    std::size_t operator()(const std::pair<DenseBitset, DenseBitset>& p) const {
      return p.first.hash() * 1000003u ^ p.second.hash();
    }
  };
  std::unordered_set<std::pair<DenseBitset, DenseBitset>, PairHash> seen;
  std::vector<std::pair<Subgroup, Subgroup>> work{{set[0], set[1]}};
  seen.insert({set[0].members, set[1].members});
  for (std::size_t w = 0; w < work.size(); ++w) {
    for (std::uint32_t gen : g.generators()) {
      Subgroup a = conjugate_subgroup(g, work[w].first, gen);
      Subgroup b = conjugate_subgroup(g, work[w].second, gen);
      if (seen.insert({a.members, b.members}).second) work.emplace_back(std::move(a), std::move(b));
    }
  }
  std::size_t m = set.size();
  bool two = seen.size() == m * (m - 1);
  return {two ? Transitivity::two_transitive : Transitivity::transitive, false};
}

bool is_fermat_prime(std::uint64_t p) {
  if (p < 3 || !is_prime(p)) return false;
  std::uint64_t e = p - 1;
  if (e & (e - 1)) return false;  // must be a power of two
  std::uint32_t lg = 0;
  while (e > 1) e >>= 1, ++lg;
  return lg >= 1 && (lg & (lg - 1)) == 0;  // exponent itself a power of two
}

bool is_mersenne_prime(std::uint64_t q) {
  if (q < 3 || !is_prime(q)) return false;
  return ((q + 1) & q) == 0;  // q+1 a power of two
}

ClassSplitResult conj_class_split_check(const FiniteGroup& g, const Subgroup& h, const Subgroup& m) {
  auto p = p_group_prime(g);
  if (!p) throw ContractError("conj_class_split_check: G is not a p-group");
  if (!m.members.contains_all(h.members))
    throw ContractError("conj_class_split_check: H is not inside M");
  if (m.order * *p != g.order())
    throw ContractError("conj_class_split_check: M is not maximal (index != p)");

  // Conj(G, H)
  std::vector<DenseBitset> orbit_g{h.members};
  std::unordered_set<DenseBitset, DenseBitsetHash> seen_g{h.members};
  for (std::size_t w = 0; w < orbit_g.size(); ++w) {
    Subgroup cur = make_subgroup(g, orbit_g[w]);
    for (std::uint32_t gen : g.generators())
      if (DenseBitset img = conjugate_subgroup(g, cur, gen).members; seen_g.insert(img).second)
        orbit_g.push_back(std::move(img));
  }
  // Conj(M, H): conjugate by every element of M (M's own generators are not
  // recorded anywhere, elements are few enough)
  std::vector<std::uint32_t> mel = m.members.to_indices();
  auto m_orbit_of = [&](const DenseBitset& start) {
    std::vector<DenseBitset> orb{start};
    std::unordered_set<DenseBitset, DenseBitsetHash> seen{start};
    for (std::size_t w = 0; w < orb.size(); ++w) {
      Subgroup cur = make_subgroup(g, orb[w]);
      for (std::uint32_t x : mel)
        if (DenseBitset img = conjugate_subgroup(g, cur, x).members; seen.insert(img).second)
          orb.push_back(std::move(img));
    }
    return orb;
  };
  std::vector<DenseBitset> orbit_m = m_orbit_of(h.members);

  ClassSplitResult res;
  res.size_in_g = orbit_g.size();
  res.size_in_m = orbit_m.size();
  if (orbit_g.size() == orbit_m.size()) {
    res.applicable = false;
    res.passed = true;  // classes coincide; the relation is not in play
    res.classes_in_m = 1;
    return res;
  }
  res.applicable = true;

  // count the M-classes partitioning Conj(G,H)
  std::unordered_set<DenseBitset, DenseBitsetHash> remaining(orbit_g.begin(), orbit_g.end());
  std::size_t classes = 0;
  std::size_t per_class = orbit_m.size();
  bool even_split = true;
  while (!remaining.empty()) {
    std::vector<DenseBitset> cls = m_orbit_of(*remaining.begin());
    if (cls.size() != per_class) even_split = false;
    for (const DenseBitset& b : cls) remaining.erase(b);
    ++classes;
  }
  res.classes_in_m = classes;
  res.passed = even_split && res.size_in_g == *p * res.size_in_m && classes == *p;
  return res;
}

}  // namespace kappa
