#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <thread>

#include "kappa/construct.hpp"
#include "kappa/errors.hpp"
#include "kappa/group.hpp"
#include "kappa/invariants.hpp"
#include "kappa/numutil.hpp"

using namespace kappa;

namespace {

std::uint32_t find_element_of_order(const FiniteGroup& g, std::uint32_t k) {
  for (std::uint32_t x = 0; x < g.order(); ++x)
    if (g.element_order(x) == k) return x;
  REQUIRE(false);
  return 0;
}

std::vector<FiniteGroup> small_p_group_corpus() {
  return {
      catalog("quaternion", {8}),    catalog("dihedral", {8}),    catalog("dihedral", {16}),
      catalog("quaternion", {16}),   catalog("semidihedral", {16}), catalog("modular", {2, 4}),
      catalog("dihedral", {32}),     catalog("quaternion", {32}), catalog("semidihedral", {32}),
      catalog("heisenberg", {3}),    catalog("modular", {3, 3}),  catalog("modular", {3, 4}),
      abelian(AbelianType{{4, 2}}),  abelian(AbelianType{{2, 2, 2}}),
  };
}

}  // namespace

TEST_CASE("sylow: p-group, A5, the order-72 group") {
  FiniteGroup q8 = catalog("quaternion", {8});
  CHECK(sylow_subgroup(q8, 2).order == 8);

  FiniteGroup a5 = catalog("a5", {});
  CHECK(sylow_subgroup(a5, 2).order == 4);
  CHECK(sylow_subgroup(a5, 3).order == 3);
  CHECK(sylow_subgroup(a5, 5).order == 5);
  CHECK(sylow_subgroup(a5, 7).order == 1);  // p not dividing order -> trivial
  CHECK_THROWS_AS(sylow_subgroup(a5, 4), InputError);

  FiniteGroup g72 = catalog("example72", {});
  Subgroup syl3 = sylow_subgroup(g72, 3);
  CHECK(syl3.order == 9);
  // must be exactly the embedded base <a,b> = indices {x*8}
  syl3.members.for_each([&](std::uint32_t x) { CHECK(x % 8 == 0); });
  CHECK(is_normal(g72, syl3));
  CHECK(sylow_subgroup(g72, 2).order == 8);
}

TEST_CASE("sylow subgroups are p-groups of full p-part across a mixed corpus") {
  for (FiniteGroup g : {catalog("a5", {}), catalog("example72", {}),
                        direct_product(catalog("quaternion", {8}), cyclic(3)),
                        catalog("fermat_family", {5}), catalog("mersenne_family", {3, 2})}) {
    for (auto [p, e] : factorize(g.order())) {
      Subgroup s = sylow_subgroup(g, static_cast<std::uint32_t>(p));
      CHECK(s.order == prime_part(g.order(), p));
    }
  }
}

TEST_CASE("frattini and maximal subgroups") {
  FiniteGroup q8 = catalog("quaternion", {8});
  CHECK(frattini(q8).members == center(q8).members);
  CHECK(maximal_subgroups(q8).size() == 3);

  FiniteGroup eb8 = abelian(AbelianType{{2, 2, 2}});
  CHECK(frattini(eb8).order == 1);
  CHECK(maximal_subgroups(eb8).size() == 7);  // (2^3-1)/(2-1)

  FiniteGroup c9 = cyclic(9);
  CHECK(maximal_subgroups(c9).size() == 1);

  FiniteGroup h27 = catalog("heisenberg", {3});
  CHECK(frattini(h27).members == center(h27).members);
  CHECK(maximal_subgroups(h27).size() == 4);  // (3^2-1)/(3-1)

  CHECK_THROWS_AS(frattini(cyclic(6)), ContractError);
}

TEST_CASE("maximal subgroups: structural vs lattice route agree on p-groups") {
  for (FiniteGroup g : {catalog("dihedral", {16}), catalog("heisenberg", {3}),
                        abelian(AbelianType{{4, 2}})}) {
    auto structural = maximal_subgroups(g);
    // lattice route: proper subgroups maximal under inclusion
    auto all = all_subgroups_bruteforce(g);
    std::vector<Subgroup> via_lattice;
    for (const Subgroup& s : all) {
      if (s.order == g.order()) continue;
      bool maximal = true;
      for (const Subgroup& t : all)
        if (t.order < g.order() && t.order > s.order && t.members.contains_all(s.members))
          maximal = false;
      if (maximal) via_lattice.push_back(s);
    }
    std::sort(via_lattice.begin(), via_lattice.end(), canonical_less);
    REQUIRE(structural.size() == via_lattice.size());
    for (std::size_t i = 0; i < structural.size(); ++i)
      CHECK(structural[i].members == via_lattice[i].members);
  }
}

TEST_CASE("maximal subgroups of a non-p-group via the lattice") {
  FiniteGroup s3 = catalog("dihedral", {6});
  auto ms = maximal_subgroups(s3);
  CHECK(ms.size() == 4);  // C3 and three C2
}

TEST_CASE("omega1 / mho / exponent") {
  FiniteGroup g44 = abelian(AbelianType{{4, 4}});
  Subgroup om = omega1(g44);
  CHECK(om.order == 4);
  CHECK(exponent(om) == 2);
  CHECK(mho(g44, 1).members == om.members);  // homocyclic: mho_{e-1} = omega1
  CHECK(mho(g44, 2).order == 1);

  FiniteGroup eb = abelian(AbelianType{{3, 3}});
  CHECK(omega1(eb).order == 9);

  CHECK(exponent(catalog("quaternion", {8})) == 4);
  CHECK_THROWS_AS(omega1(cyclic(6)), ContractError);
}

TEST_CASE("homocyclic detection with type witness") {
  auto t = homocyclic_type(abelian(AbelianType{{4, 4}}));
  REQUIRE(t.has_value());
  CHECK(t->p == 2);
  CHECK(t->e == 2);
  CHECK(t->rank == 2);

  CHECK(!homocyclic_type(abelian(AbelianType{{4, 2}})).has_value());

  auto c25 = homocyclic_type(cyclic(25));
  REQUIRE(c25.has_value());
  CHECK(c25->p == 5);
  CHECK(c25->e == 2);
  CHECK(c25->rank == 1);

  CHECK(!homocyclic_type(catalog("dihedral", {8})).has_value());  // non-abelian
  CHECK(!homocyclic_type(cyclic(6)).has_value());                 // not a p-group
}

TEST_CASE("minimal generator count") {
  CHECK(minimal_generators(cyclic(27)) == 1);
  CHECK(minimal_generators(catalog("quaternion", {8})) == 2);
  CHECK(minimal_generators(abelian(AbelianType{{5, 5, 5}})) == 3);
  CHECK(minimal_generators(catalog("heisenberg", {3})) == 2);
  CHECK_THROWS_AS(minimal_generators(cyclic(6)), ContractError);
}

TEST_CASE("nilpotency class and maximal class") {
  CHECK(nilpotency_class(cyclic(1)) == 0);
  CHECK(nilpotency_class(cyclic(9)) == 1);
  CHECK(nilpotency_class(catalog("dihedral", {8})) == 2);
  CHECK(nilpotency_class(catalog("dihedral", {32})) == 4);

  CHECK(is_maximal_class(catalog("dihedral", {8})));
  CHECK(is_maximal_class(catalog("quaternion", {8})));
  CHECK(is_maximal_class(catalog("heisenberg", {3})));
  CHECK(is_maximal_class(catalog("semidihedral", {16})));
  CHECK(!is_maximal_class(cyclic(27)));
  CHECK(!is_maximal_class(abelian(AbelianType{{2, 2, 2}})));
  // order p^2 counts by the class formula
  CHECK(is_maximal_class(abelian(AbelianType{{2, 2}})));
  CHECK(is_maximal_class(cyclic(9)));

  CHECK_THROWS_AS(nilpotency_class(catalog("dihedral", {6})), ContractError);  // not nilpotent
}

TEST_CASE("at_level") {
  CHECK(at_level(catalog("quaternion", {8})) == 1);   // minimal non-abelian
  CHECK(at_level(catalog("heisenberg", {3})) == 1);
  CHECK(at_level(catalog("dihedral", {16})) == 2);
  CHECK(at_level(catalog("dihedral", {32})) == 3);
  CHECK(at_level(abelian(AbelianType{{4, 2}})) == 0);  // abelian convention
  // the modular groups are minimal non-abelian: every maximal subgroup is
  // abelian although only one is cyclic
  CHECK(at_level(catalog("modular", {2, 4})) == 1);
  CHECK(at_level(catalog("modular", {3, 4})) == 1);
  CHECK_THROWS_AS(at_level(catalog("dihedral", {128}), 100), CapExceeded);
}

TEST_CASE("p-group profile invariants hold across the corpus") {
  for (const FiniteGroup& g : small_p_group_corpus()) {
    PGroupProfile pr = p_group_profile(g);
    CHECK(pr.d >= 1);
    CHECK((pr.at_level >= 1) == !g.is_abelian());
    if (pr.maximal_class) CHECK(nilpotency_class(g) == pr.n - 1);
    CHECK(ipow(pr.p, pr.n) == g.order());
    CHECK(exponent(g) == pr.exp);
  }
}

TEST_CASE("p-group profile rollup") {
  PGroupProfile pr = p_group_profile(catalog("dihedral", {16}));
  CHECK(pr.p == 2);
  CHECK(pr.n == 4);
  CHECK(pr.d == 2);
  CHECK(pr.exp == 8);
  CHECK(pr.at_level == 2);
  CHECK(pr.maximal_class);
}

TEST_CASE("coprime action decomposition") {
  // A centralizes P: [P,A] = 1, C_P(A) = P
  FiniteGroup dp = direct_product(abelian(AbelianType{{3, 3}}), cyclic(4));
  Subgroup p_sub = sylow_subgroup(dp, 3);
  Subgroup a_sub = sylow_subgroup(dp, 2);
  auto [comm, fix] = coprime_action_decomposition(dp, p_sub, a_sub);
  CHECK(comm.order == 1);
  CHECK(fix.members == p_sub.members);

  // order-72 group: [P,<c>] = P, C_P(<c>) = 1
  FiniteGroup g72 = catalog("example72", {});
  Subgroup p72 = sylow_subgroup(g72, 3);
  Subgroup c = closure(g72, std::array<std::uint32_t, 1>{1});
  auto [comm72, fix72] = coprime_action_decomposition(g72, p72, c);
  CHECK(comm72.members == p72.members);
  CHECK(fix72.order == 1);

  // fermat family p=5: [P,<b>] = P = C25, C_P(b) = 1
  FiniteGroup f = catalog("fermat_family", {5});
  Subgroup pf = sylow_subgroup(f, 5);
  Subgroup bf = closure(f, std::array<std::uint32_t, 1>{1});
  auto [commf, fixf] = coprime_action_decomposition(f, pf, bf);
  CHECK(commf.order == 25);
  CHECK(fixf.order == 1);

  // violated preconditions
  CHECK_THROWS_AS(coprime_action_decomposition(g72, p72, sylow_subgroup(g72, 3)), ContractError);
}

TEST_CASE("abelian cyclic decomposition is an internal direct product") {
  for (FiniteGroup g : {abelian(AbelianType{{4, 2}}), abelian(AbelianType{{2, 2, 2}}),
                        abelian(AbelianType{{9, 3}}), cyclic(8)}) {
    auto factors = abelian_cyclic_decomposition(g);
    std::uint64_t prod = 1;
    for (const Subgroup& f : factors) {
      CHECK(exponent(f) == f.order);  // cyclic
      prod *= f.order;
    }
    CHECK(prod == g.order());
    // orders are non-increasing (maximal-order splitting)
    for (std::size_t i = 1; i < factors.size(); ++i)
      CHECK(factors[i - 1].order >= factors[i].order);
  }
}

TEST_CASE("cyclic quotient witness: spec'd cases") {
  // cyclic G, H = G -> N is the maximal subgroup of G
  FiniteGroup c8 = cyclic(8);
  Subgroup n8 = find_cyclic_quotient_witness(c8, full_subgroup(c8));
  CHECK(n8.order == 4);

  // Klein group, H = G: some C2 with cyclic quotient; deterministic
  FiniteGroup v4 = abelian(AbelianType{{2, 2}});
  Subgroup nv = find_cyclic_quotient_witness(v4, full_subgroup(v4));
  CHECK(nv.order == 2);
  Subgroup nv2 = find_cyclic_quotient_witness(v4, full_subgroup(v4));
  CHECK(nv.members == nv2.members);

  // C4 x C2 with H = omega1
  FiniteGroup g42 = abelian(AbelianType{{4, 2}});
  Subgroup h = omega1(g42);
  Subgroup n = find_cyclic_quotient_witness(g42, h);
  CosetQuotient q = quotient(g42, n);
  CHECK(exponent(q.group) == q.group.order());
  CHECK(h.order == (h.members & n.members).count() * 2);

  CHECK_THROWS_AS(find_cyclic_quotient_witness(g42, trivial_subgroup(g42)), ContractError);
  CHECK_THROWS_AS(find_cyclic_quotient_witness(catalog("dihedral", {8}), h), ContractError);
}

TEST_CASE("cyclic quotient witness validates for every nontrivial subgroup") {
  for (FiniteGroup g : {abelian(AbelianType{{4, 2}}), abelian(AbelianType{{2, 2, 2}}),
                        abelian(AbelianType{{9, 3}}), abelian(AbelianType{{4, 4}}), cyclic(27)}) {
    std::uint32_t p = *p_group_prime(g);
    for (const Subgroup& h : all_subgroups_bruteforce(g)) {
      if (h.order == 1) continue;
      Subgroup n = find_cyclic_quotient_witness(g, h);
      CosetQuotient q = quotient(g, n);
      CHECK(exponent(q.group) == q.group.order());                     // cyclic quotient
      CHECK(h.order == (h.members & n.members).count() * p);           // index p
    }
  }
}

TEST_CASE("abelian maximal subgroup count is 0, 1 or p+1") {
  for (const FiniteGroup& g : small_p_group_corpus()) {
    if (g.is_abelian()) continue;
    std::uint32_t p = *p_group_prime(g);
    std::uint32_t count = 0;
    for (const Subgroup& m : maximal_subgroups(g))
      if (is_abelian(m)) ++count;
    bool ok = count == 0 || count == 1 || count == p + 1;
    CHECK(ok);
  }
}

TEST_CASE("non-abelian order-p^3 subgroup count is divisible by p") {
  for (const FiniteGroup& g : small_p_group_corpus()) {
    std::uint32_t p = *p_group_prime(g);
    if (g.order() < ipow(p, 4)) continue;
    std::uint32_t t3 = 0;
    for (const Subgroup& s : all_subgroups_bruteforce(g))
      if (s.order == ipow(p, 3) && !is_abelian(s)) ++t3;
    CHECK(t3 % p == 0);
  }
}

TEST_CASE("minimal non-abelian equivalent conditions agree on the corpus") {
  for (const FiniteGroup& g : small_p_group_corpus()) {
    std::uint32_t p = *p_group_prime(g);
    bool mna_direct = false;
    if (!g.is_abelian()) {
      mna_direct = true;
      for (const Subgroup& s : all_subgroups_bruteforce(g))
        if (s.order < g.order() && !is_abelian(s)) mna_direct = false;
    }
    bool cond2 = !g.is_abelian() && minimal_generators(g) == 2 && derived_subgroup(g).order == p;
    bool cond3 = !g.is_abelian() && minimal_generators(g) == 2 &&
                 frattini(g).members == center(g).members;
    CHECK(mna_direct == cond2);
    CHECK(cond2 == cond3);
  }
}

TEST_CASE("MNA p-group with exp <= p^2 and cyclic frattini has order p^3") {
  for (const FiniteGroup& g : small_p_group_corpus()) {
    std::uint32_t p = *p_group_prime(g);
    if (g.is_abelian()) continue;
    bool mna = minimal_generators(g) == 2 && derived_subgroup(g).order == p;
    if (!mna) continue;
    Subgroup phi = frattini(g);
    bool cyclic_phi = exponent(phi) == phi.order;
    if (exponent(g) <= p * p && cyclic_phi) CHECK(g.order() == p * p * p);
  }
}

TEST_CASE("at_level shortcut agrees with the lattice definition") {
  for (FiniteGroup g : {catalog("dihedral", {16}), catalog("dihedral", {32}),
                        catalog("quaternion", {32}), catalog("semidihedral", {32}),
                        catalog("modular", {3, 4})}) {
    std::uint32_t p = *p_group_prime(g);
    std::uint32_t t = at_level(g);
    std::uint32_t n = ilog(g.order(), p);
    // every subgroup of index p^t abelian; some subgroup of index p^{t-1} not
    bool all_abelian_at_t = true, some_nonabelian_above = false;
    for (const Subgroup& s : all_subgroups_bruteforce(g)) {
      std::uint32_t k = ilog(s.order, p);
      if (n - k == t && !is_abelian(s)) all_abelian_at_t = false;
      if (n - k == t - 1 && !is_abelian(s)) some_nonabelian_above = true;
    }
    CHECK(all_abelian_at_t);
    CHECK(some_nonabelian_above);
  }
}

TEST_CASE("memoized lattice is stable under concurrent readers") {
  FiniteGroup g = catalog("dihedral", {32});
  const std::vector<DenseBitset>* p1 = nullptr;
  const std::vector<DenseBitset>* p2 = nullptr;
  std::thread t1([&] { p1 = &subgroup_lattice(g, 200); });
  std::thread t2([&] { p2 = &subgroup_lattice(g, 200); });
  t1.join();
  t2.join();
  CHECK(p1 == p2);  // one write wins, both see the same storage
  CHECK(p1->size() == all_subgroups_bruteforce(g).size());
}
