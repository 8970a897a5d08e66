#include "kappa/theorems.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

#include "kappa/construct.hpp"
#include "kappa/errors.hpp"
#include "kappa/invariants.hpp"
#include "kappa/mna.hpp"
#include "kappa/numutil.hpp"

namespace kappa {

json subgroup_witness(const Subgroup& s) {
  json j;
  j["order"] = s.order;
  j["members"] = s.members.to_indices();
  return j;
}

namespace {

using clock_type = std::chrono::steady_clock;

template <class F>
TheoremVerdict run_timed(const char* id, F&& body) {
  TheoremVerdict v;
  v.theorem = id;
  auto t0 = clock_type::now();
  try {
    body(v);
  } catch (const CapExceeded& e) {
    v.not_computed = true;
    v.applicable = false;
    v.passed = false;
    v.witness["refusal"] = e.what();
  }
  v.elapsed_ms =
      std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(clock_type::now() - t0)
          .count();
  return v;
}

std::vector<std::uint32_t> primes_of(std::uint64_t n) {
  std::vector<std::uint32_t> out;
  for (auto [p, e] : factorize(n)) out.push_back(static_cast<std::uint32_t>(p));
  return out;
}

// first prime whose Sylow subgroup is non-abelian, 0 if all are abelian
std::uint32_t nonabelian_sylow_prime(const FiniteGroup& g) {
  for (std::uint32_t p : primes_of(g.order()))
    if (!is_abelian(sylow_subgroup(g, p))) return p;
  return 0;
}

bool is_minimal_normal(const FiniteGroup& g, const Subgroup& s) {
  if (s.order <= 1 || !is_normal(g, s)) return false;
  bool ok = true;
  s.members.for_each([&](std::uint32_t x) {
    if (!ok || x == g.identity()) return;
    if (!(normal_closure(g, x).members == s.members)) ok = false;
  });
  return ok;
}

Subgroup quotient_preimage(const CosetQuotient& q, const DenseBitset& quotient_bits) {
  DenseBitset pre(q.parent.order());
  for (std::uint32_t x = 0; x < q.parent.order(); ++x)
    if (quotient_bits.test(q.projection[x])) pre.set(x);
  return make_subgroup(q.parent, std::move(pre));
}

bool subgroup_is_cyclic(const Subgroup& s) { return exponent(s) == s.order; }

// ---------------------------------------------------------------------------
// Structure theorems

TheoremVerdict check_pi1_hall_split(const FiniteGroup& g, const RunCaps&) {
  return run_timed("pi1_hall_split", [&](TheoremVerdict& v) {
    if (g.is_abelian()) return;  // vacuous
    v.applicable = true;
    std::set<std::uint32_t> pi = pi1(g);
    v.witness["pi1"] = std::vector<std::uint32_t>(pi.begin(), pi.end());

    auto is_pi_number = [&](std::uint32_t n) {
      for (std::uint32_t p : primes_of(n))
        if (!pi.count(p)) return false;
      return true;
    };
    DenseBitset kbits(g.order());
    for (std::uint32_t x = 0; x < g.order(); ++x)
      if (is_pi_number(g.element_order(x))) kbits.set(x);

    // the pi-element set must be a subgroup
    std::vector<std::uint32_t> kel = kbits.to_indices();
    for (std::uint32_t a : kel)
      for (std::uint32_t b : kel)
        if (!kbits.test(g.mul(a, b))) {
          v.passed = false;
          v.witness["failure"] = "pi-elements are not closed under multiplication";
          v.witness["pair"] = {a, b};
          return;
        }
    Subgroup k = make_subgroup(g, kbits);

    std::uint64_t hall = 1;
    for (auto [p, e] : factorize(g.order()))
      if (pi.count(static_cast<std::uint32_t>(p))) hall *= ipow(p, e);

    bool order_ok = k.order == hall;
    bool normal_ok = is_normal(g, k);
    CosetQuotient q = quotient(g, k);
    bool complement_abelian = q.group.is_abelian();

    v.witness["k"] = subgroup_witness(k);
    v.witness["hall_order"] = hall;
    v.witness["quotient_order"] = q.group.order();
    v.witness["quotient_abelian"] = complement_abelian;
    v.passed = order_ok && normal_ok && complement_abelian;
    if (!order_ok) v.witness["failure"] = "pi-part order mismatch";
    if (!normal_ok) v.witness["failure"] = "K is not normal";
    if (!complement_abelian) v.witness["failure"] = "G/K is not abelian";
  });
}

TheoremVerdict check_kappa1_iff_alpha1(const FiniteGroup& g, const RunCaps&) {
  return run_timed("kappa1_iff_alpha1", [&](TheoremVerdict& v) {
    std::uint32_t p = nonabelian_sylow_prime(g);
    v.witness["nonabelian_sylow_prime"] = p;
    if (!p) return;  // vacuous: all Sylow subgroups abelian
    v.applicable = true;
    MnaReport r = mna_report(g);
    v.witness["kappa1"] = r.kappa1;
    v.witness["alpha1"] = r.alpha1;
    v.passed = (r.kappa1 == 1) == (r.alpha1 == 1);
    if (!v.passed && !r.members.empty())
      v.witness["members0"] = subgroup_witness(r.members.front());
  });
}

TheoremVerdict check_abelian_sylow_structure(const FiniteGroup& g, const RunCaps& caps) {
  return run_timed("abelian_sylow_structure", [&](TheoremVerdict& v) {
    if (g.is_abelian() || nonabelian_sylow_prime(g) != 0) return;
    MnaReport r = mna_report(g);
    if (r.kappa1 != 1) return;
    v.applicable = true;

    Subgroup gp = derived_subgroup(g);
    auto hc = homocyclic_type_of(gp);
    bool homocyclic_ok = hc.has_value();
    v.witness["derived"] = subgroup_witness(gp);
    if (hc) {
      v.witness["homocyclic"] = {{"p", hc->p}, {"e", hc->e}, {"rank", hc->rank}};
    }

    bool min_normal_ok = false;
    Subgroup om = trivial_subgroup(g);
    if (homocyclic_ok) {
      om = omega1_of(gp);
      min_normal_ok = is_minimal_normal(g, om);
      v.witness["omega1_members"] = om.members.to_indices();
      v.witness["omega1_minimal_normal"] = min_normal_ok;
    }

    bool witness_found = false;
    if (homocyclic_ok) {
      std::uint32_t p = hc->p;
      for (std::uint32_t q : primes_of(g.order())) {
        if (q == p) continue;
        Subgroup syl_q = sylow_subgroup(g, q);
        if (!subgroup_is_cyclic(syl_q)) continue;
        Subgroup b = join(gp, syl_q);
        if (static_cast<std::uint64_t>(gp.order) * syl_q.order != b.order) continue;
        // S ranges over subgroups of the center
        Subgroup z = center(g);
        GroupView zv = as_group(z);
        for (const DenseBitset& bits : subgroup_lattice(zv.group, caps.oracle_cap)) {
          Subgroup s = zv.lift(g, bits);
          if (static_cast<std::uint64_t>(b.order) * s.order != g.order()) continue;
          if ((b.members & s.members).count() != 1) continue;
          if (s.order % q == 0) continue;  // S must be a q'-group
          witness_found = true;
          v.witness["q"] = q;
          v.witness["Q"] = subgroup_witness(syl_q);
          v.witness["B_order"] = b.order;
          v.witness["S"] = subgroup_witness(s);
          break;
        }
        if (witness_found) break;
      }
    }
    v.passed = homocyclic_ok && min_normal_ok && witness_found;
    if (!homocyclic_ok) v.witness["failure"] = "derived subgroup is not homocyclic";
    else if (!min_normal_ok) v.witness["failure"] = "omega1 of derived subgroup is not minimal normal";
    else if (!witness_found) v.witness["failure"] = "no (Q,S) witness pair found";
  });
}

TheoremVerdict check_frobenius_quotient(const FiniteGroup& g, const RunCaps&) {
  return run_timed("frobenius_quotient", [&](TheoremVerdict& v) {
    if (g.is_abelian() || nonabelian_sylow_prime(g) != 0) return;
    MnaReport r = mna_report(g);
    if (r.kappa1 != 1) return;
    v.applicable = true;

    CosetQuotient q = quotient(g, center(g));
    const FiniteGroup& gbar = q.group;
    v.witness["center_order"] = q.kernel.order;
    v.witness["quotient_order"] = gbar.order();

    MnaReport rbar = mna_report(gbar);
    bool kappa_ok = rbar.kappa1 == 1;
    v.witness["quotient_kappa1"] = rbar.kappa1;

    Subgroup kbar = derived_subgroup(gbar);
    auto kp = p_group_prime(kbar);
    bool kernel_prime_ok = kp.has_value();
    auto hc = homocyclic_type_of(kbar);
    v.witness["kernel_preimage"] = subgroup_witness(quotient_preimage(q, kbar.members));
    v.witness["kernel_order"] = kbar.order;
    bool frobenius_ok = false;
    std::uint32_t qprime = 0;
    if (kernel_prime_ok) {
      std::uint64_t index = gbar.order() / kbar.order;
      std::uint64_t qp = prime_power_base(index);
      if (qp && qp != *kp) {
        qprime = static_cast<std::uint32_t>(qp);
        Subgroup comp = sylow_subgroup(gbar, qprime);
        bool cyc = subgroup_is_cyclic(comp);
        v.witness["complement_order"] = comp.order;
        v.witness["complement_cyclic"] = cyc;
        v.witness["complement_preimage"] = subgroup_witness(quotient_preimage(q, comp.members));
        if (cyc && comp.order == index) frobenius_ok = is_frobenius(gbar, kbar, comp);
      }
    }
    v.witness["frobenius"] = frobenius_ok;
    v.witness["kernel_homocyclic"] = hc.has_value();

    TransitivityResult tr = action_transitivity(g, r.members);
    const char* tr_name = tr.level == Transitivity::two_transitive
                              ? "two_transitive"
                              : (tr.level == Transitivity::transitive ? "transitive" : "intransitive");
    v.witness["transitivity"] = tr_name;
    v.witness["transitivity_vacuous"] = tr.vacuous;

    bool dichotomy_ok = true;
    if (tr.level == Transitivity::two_transitive && !tr.vacuous && kp) {
      std::uint32_t p = *kp;
      dichotomy_ok = (qprime == 2 && is_fermat_prime(p)) || (p == 2 && is_mersenne_prime(qprime));
      v.witness["dichotomy"] = json{{"p", p}, {"q", qprime}, {"holds", dichotomy_ok}};
    } else {
      v.witness["dichotomy"] = "skipped";
    }

    v.passed = kappa_ok && kernel_prime_ok && hc.has_value() && frobenius_ok && dichotomy_ok;
  });
}

TheoremVerdict check_kappa1_eq_p(const FiniteGroup& g, const RunCaps& caps) {
  return run_timed("kappa1_eq_p", [&](TheoremVerdict& v) {
    auto pp = p_group_prime(g);
    if (!pp || g.is_abelian()) return;
    std::uint32_t p = *pp;
    std::uint32_t t = at_level(g, caps.oracle_cap);
    if (t < 2) return;  // minimal non-abelian is out of scope here
    v.applicable = true;
    v.witness["p"] = p;
    v.witness["t"] = t;

    MnaReport r = mna_report(g);
    bool lhs = r.kappa1 == p;
    v.witness["kappa1"] = r.kappa1;
    v.witness["alpha1"] = r.alpha1;

    bool has_abelian_maximal = false;
    for (const Subgroup& m : maximal_subgroups(g, caps.oracle_cap))
      if (is_abelian(m)) has_abelian_maximal = true;

    bool all_two_generated = true;
    for (const Subgroup& s : all_subgroups_bruteforce(g, caps.oracle_cap)) {
      if (is_abelian(s)) continue;
      if (minimal_generators_of(s) != 2) {
        all_two_generated = false;
        v.witness["not_two_generated"] = subgroup_witness(s);
        break;
      }
    }
    bool rhs = has_abelian_maximal && all_two_generated;
    v.witness["abelian_maximal"] = has_abelian_maximal;
    v.witness["all_nonabelian_two_generated"] = all_two_generated;

    v.passed = lhs == rhs;
    if (lhs) {
      // side conditions pinned by the count arguments
      bool alpha_ok = r.alpha1 == ipow(p, t - 1);
      bool orbits_ok = true;
      std::vector<std::size_t> sizes;
      for (const auto& o : r.classes.orbits) {
        sizes.push_back(o.members.size());
        if (o.members.size() != ipow(p, t - 2)) orbits_ok = false;
      }
      v.witness["orbit_sizes"] = sizes;
      v.witness["alpha1_expected"] = ipow(p, t - 1);
      v.passed = v.passed && alpha_ok && orbits_ok;
    }
  });
}

// ---------------------------------------------------------------------------
// Lemma suite

TheoremVerdict check_coprime_additivity(const FiniteGroup& g, const RunCaps&) {
  return run_timed("coprime_additivity", [&](TheoremVerdict& v) {
    std::vector<std::uint32_t> primes = primes_of(g.order());
    if (primes.size() < 2) return;
    // coprime splits G = K1 x K2 where K_i collects the pi_i-elements
    std::uint32_t splits_checked = 0;
    MnaReport whole = mna_report(g);
    for (std::uint32_t mask = 1; mask + 1 < (1u << primes.size()); ++mask) {
      auto part_of = [&](bool side) {
        DenseBitset bits(g.order());
        for (std::uint32_t x = 0; x < g.order(); ++x) {
          std::uint32_t o = g.element_order(x);
          bool in = true;
          for (std::size_t i = 0; i < primes.size(); ++i) {
            bool selected = ((mask >> i) & 1u) != 0;
            if (selected != side && o % primes[i] == 0) in = false;
          }
          if (in) bits.set(x);
        }
        return bits;
      };
      DenseBitset k1 = part_of(true), k2 = part_of(false);
      auto closed = [&](const DenseBitset& bits) {
        std::vector<std::uint32_t> el = bits.to_indices();
        for (std::uint32_t a : el)
          for (std::uint32_t b : el)
            if (!bits.test(g.mul(a, b))) return false;
        return true;
      };
      if (!closed(k1) || !closed(k2)) continue;
      if (k1.count() * k2.count() != g.order()) continue;
      ++splits_checked;
      GroupView v1 = as_group(make_subgroup(g, k1));
      GroupView v2 = as_group(make_subgroup(g, k2));
      MnaReport r1 = mna_report(v1.group);
      MnaReport r2 = mna_report(v2.group);
      bool ok = whole.alpha1 == r1.alpha1 + r2.alpha1 && whole.kappa1 == r1.kappa1 + r2.kappa1;
      if (!ok) {
        v.applicable = true;
        v.passed = false;
        v.witness["failure"] = json{{"k1_order", k1.count()},
                                    {"k2_order", k2.count()},
                                    {"alpha1", json{whole.alpha1, r1.alpha1, r2.alpha1}},
                                    {"kappa1", json{whole.kappa1, r1.kappa1, r2.kappa1}}};
        return;
      }
    }
    v.witness["splits_checked"] = splits_checked;
    if (splits_checked == 0) return;  // vacuous: no coprime direct factorization
    v.applicable = true;
    v.passed = true;
  });
}

TheoremVerdict check_kappa1_gap(const FiniteGroup& g, const RunCaps&) {
  return run_timed("kappa1_gap", [&](TheoremVerdict& v) {
    auto p = p_group_prime(g);
    if (!p || g.is_abelian()) return;
    v.applicable = true;
    MnaReport r = mna_report(g);
    v.witness["kappa1"] = r.kappa1;
    if (r.kappa1 == 1) {
      // must be minimal non-abelian: the single member is the whole group
      v.passed = r.alpha1 == 1 && r.members[0].order == g.order();
      if (!v.passed) v.witness["member"] = subgroup_witness(r.members[0]);
    } else {
      v.passed = r.kappa1 >= *p;
    }
  });
}

TheoremVerdict check_abelian_maximal_count(const FiniteGroup& g, const RunCaps& caps) {
  return run_timed("abelian_maximal_count", [&](TheoremVerdict& v) {
    auto p = p_group_prime(g);
    if (!p || g.is_abelian()) return;
    v.applicable = true;
    std::uint32_t count = 0;
    for (const Subgroup& m : maximal_subgroups(g, caps.oracle_cap))
      if (is_abelian(m)) ++count;
    v.witness["abelian_maximal_count"] = count;
    v.witness["p"] = *p;
    v.passed = count == 0 || count == 1 || count == *p + 1;
  });
}

TheoremVerdict check_t3_divisibility(const FiniteGroup& g, const RunCaps& caps) {
  return run_timed("t3_divisibility", [&](TheoremVerdict& v) {
    auto p = p_group_prime(g);
    if (!p || g.order() < ipow(*p, 4)) return;
    v.applicable = true;
    std::uint32_t t3 = 0;
    for (const Subgroup& s : all_subgroups_bruteforce(g, caps.oracle_cap))
      if (s.order == ipow(*p, 3) && !is_abelian(s)) ++t3;
    v.witness["t3"] = t3;
    v.witness["p"] = *p;
    v.passed = t3 % *p == 0;
  });
}

TheoremVerdict check_mna_equivalences(const FiniteGroup& g, const RunCaps& caps) {
  return run_timed("mna_equivalences", [&](TheoremVerdict& v) {
    auto p = p_group_prime(g);
    if (!p) return;
    v.applicable = true;
    bool cond1 = !g.is_abelian();
    if (cond1)
      for (const Subgroup& s : all_subgroups_bruteforce(g, caps.oracle_cap))
        if (s.order < g.order() && !is_abelian(s)) cond1 = false;
    bool two_gen = minimal_generators(g) == 2;
    bool cond2 = two_gen && derived_subgroup(g).order == *p;
    bool cond3 = two_gen && frattini(g).members == center(g).members;
    v.witness["minimal_nonabelian"] = cond1;
    v.witness["d2_and_derived_p"] = cond2;
    v.witness["d2_and_frattini_center"] = cond3;
    v.passed = cond1 == cond2 && cond2 == cond3;
  });
}

TheoremVerdict check_cyclic_frattini_p3(const FiniteGroup& g, const RunCaps&) {
  return run_timed("cyclic_frattini_p3", [&](TheoremVerdict& v) {
    auto p = p_group_prime(g);
    if (!p || g.is_abelian()) return;
    bool mna = minimal_generators(g) == 2 && derived_subgroup(g).order == *p;
    if (!mna) return;
    Subgroup phi = frattini(g);
    if (exponent(g) > *p * *p || !subgroup_is_cyclic(phi)) return;
    v.applicable = true;
    v.witness["order"] = g.order();
    v.passed = g.order() == *p * *p * *p;
  });
}

TheoremVerdict check_cyclic_quotient_witness(const FiniteGroup& g, const RunCaps& caps) {
  return run_timed("cyclic_quotient_witness", [&](TheoremVerdict& v) {
    auto p = p_group_prime(g);
    if (!p || !g.is_abelian() || g.order() == 1) return;
    v.applicable = true;
    std::uint32_t tested = 0;
    for (const Subgroup& h : all_subgroups_bruteforce(g, caps.oracle_cap)) {
      if (h.order == 1) continue;
      ++tested;
      try {
        Subgroup n = find_cyclic_quotient_witness(g, h, caps.oracle_cap);
        (void)n;  // the finder re-verifies both conclusions
      } catch (const ContractError& e) {
        v.passed = false;
        v.witness["failure"] = e.what();
        v.witness["h"] = subgroup_witness(h);
        return;
      }
    }
    v.witness["subgroups_tested"] = tested;
    v.passed = true;
  });
}

TheoremVerdict check_coprime_fixed_split(const FiniteGroup& g, const RunCaps& caps) {
  return run_timed("coprime_fixed_split", [&](TheoremVerdict& v) {
    std::vector<Subgroup> subs = all_subgroups_bruteforce(g, caps.oracle_cap);
    std::uint32_t pairs = 0;
    for (const Subgroup& p_sub : subs) {
      if (p_sub.order == 1 || !p_group_prime(p_sub) || !is_abelian(p_sub)) continue;
      for (const Subgroup& a_sub : subs) {
        if (a_sub.order == 1 || std::gcd(p_sub.order, a_sub.order) != 1) continue;
        // A must normalize P
        bool normalizes = true;
        a_sub.members.for_each([&](std::uint32_t a) {
          if (!normalizes) return;
          bool fixes = true;
          p_sub.members.for_each([&](std::uint32_t x) {
            if (fixes && !p_sub.contains(g.conjugate_element(x, a))) fixes = false;
          });
          if (!fixes) normalizes = false;
        });
        if (!normalizes) continue;
        ++pairs;
        try {
          coprime_action_decomposition(g, p_sub, a_sub);
        } catch (const ContractError& e) {
          v.applicable = true;
          v.passed = false;
          v.witness["failure"] = e.what();
          v.witness["P"] = subgroup_witness(p_sub);
          v.witness["A"] = subgroup_witness(a_sub);
          return;
        }
      }
    }
    v.witness["pairs_checked"] = pairs;
    if (pairs == 0) return;
    v.applicable = true;
    v.passed = true;
  });
}

TheoremVerdict check_derived_fixed_point_free(const FiniteGroup& g, const RunCaps& caps) {
  return run_timed("derived_fixed_point_free", [&](TheoremVerdict& v) {
    Subgroup gp = derived_subgroup(g);
    auto p = p_group_prime(gp);
    if (!p || !is_abelian(gp)) return;
    std::uint64_t index = g.order() / gp.order;
    if (std::gcd<std::uint64_t>(index, gp.order) != 1) return;
    // complements from the lattice
    std::uint32_t found = 0;
    for (const Subgroup& a : all_subgroups_bruteforce(g, caps.oracle_cap)) {
      if (a.order != index || (a.members & gp.members).count() != 1) continue;
      ++found;
      DenseBitset comm_seed(g.order());
      gp.members.for_each([&](std::uint32_t x) {
        a.members.for_each([&](std::uint32_t y) { comm_seed.set(g.commutator(x, y)); });
      });
      Subgroup comm = closure_of_set(g, comm_seed);
      Subgroup fix = intersect(gp, centralizer_of_subgroup(g, a));
      bool ok = comm.members == gp.members && fix.order == 1;
      if (!ok) {
        v.applicable = true;
        v.passed = false;
        v.witness["A"] = subgroup_witness(a);
        v.witness["commutator_order"] = comm.order;
        v.witness["fixed_order"] = fix.order;
        return;
      }
    }
    v.witness["complements_checked"] = found;
    if (found == 0) return;
    v.applicable = true;
    v.passed = true;
  });
}

TheoremVerdict check_mna_in_normal_factor(const FiniteGroup& g, const RunCaps& caps) {
  return run_timed("mna_in_normal_factor", [&](TheoremVerdict& v) {
    Subgroup gp = derived_subgroup(g);
    auto p = p_group_prime(gp);
    if (!p || !is_abelian(gp)) return;
    std::uint32_t decomps = 0;
    for (std::uint32_t q : primes_of(g.order())) {
      if (q == *p) continue;
      Subgroup syl_q = sylow_subgroup(g, q);
      if (!is_abelian(syl_q)) continue;
      Subgroup b = join(gp, syl_q);
      if (static_cast<std::uint64_t>(gp.order) * syl_q.order != b.order) continue;
      for (const Subgroup& s : all_subgroups_bruteforce(g, caps.oracle_cap)) {
        if (static_cast<std::uint64_t>(b.order) * s.order != g.order()) continue;
        if ((b.members & s.members).count() != 1) continue;
        if (!is_abelian(s) || s.order % q == 0) continue;
        if (!is_normal(g, s)) continue;
        ++decomps;
        for (const Subgroup& h : enumerate_mna(g)) {
          if (!b.members.contains_all(h.members)) {
            v.applicable = true;
            v.passed = false;
            v.witness["B_order"] = b.order;
            v.witness["S"] = subgroup_witness(s);
            v.witness["escaped_member"] = subgroup_witness(h);
            return;
          }
        }
      }
    }
    v.witness["decompositions_checked"] = decomps;
    if (decomps == 0) return;
    v.applicable = true;
    v.passed = true;
  });
}

TheoremVerdict check_complement_acts_freely(const FiniteGroup& g, const RunCaps&) {
  return run_timed("complement_acts_freely", [&](TheoremVerdict& v) {
    std::vector<std::uint32_t> primes = primes_of(g.order());
    if (primes.size() != 2) return;
    Subgroup z = center(g);
    std::uint32_t configs = 0;
    for (int ord = 0; ord < 2; ++ord) {
      std::uint32_t p = primes[ord], q = primes[1 - ord];
      Subgroup psub = sylow_subgroup(g, p);
      Subgroup qsub = sylow_subgroup(g, q);
      if (!is_abelian(psub) || !is_abelian(qsub) || !is_normal(g, psub)) continue;
      if (!is_minimal_normal(g, omega1_of(psub))) continue;
      ++configs;
      bool ok = true;
      qsub.members.for_each([&](std::uint32_t a) {
        if (!ok || z.contains(a)) return;
        std::uint32_t fixed = 0;
        psub.members.for_each([&](std::uint32_t x) {
          if (g.commutes(x, a)) ++fixed;
        });
        if (fixed != 1) {
          ok = false;
          v.witness["a"] = a;
          v.witness["fixed_count"] = fixed;
        }
      });
      if (!ok) {
        v.applicable = true;
        v.passed = false;
        v.witness["p"] = p;
        return;
      }
    }
    v.witness["configs_checked"] = configs;
    if (configs == 0) return;
    v.applicable = true;
    v.passed = true;
  });
}

// all pairwise intersections of distinct maximal subgroups abelian?
bool maximal_intersections_abelian(const FiniteGroup& g, const RunCaps& caps) {
  std::vector<Subgroup> maxes = maximal_subgroups(g, caps.oracle_cap);
  for (std::size_t i = 0; i < maxes.size(); ++i)
    for (std::size_t j = i + 1; j < maxes.size(); ++j)
      if (!is_abelian(intersect(maxes[i], maxes[j]))) return false;
  return true;
}

TheoremVerdict check_kappa1_ge_beta1(const FiniteGroup& g, const RunCaps& caps) {
  return run_timed("kappa1_ge_beta1", [&](TheoremVerdict& v) {
    auto p = p_group_prime(g);
    if (!p || g.is_abelian()) return;
    if (at_level(g, caps.oracle_cap) < 2) return;
    if (!maximal_intersections_abelian(g, caps)) return;
    v.applicable = true;
    MnaReport r = mna_report(g);
    v.witness["kappa1"] = r.kappa1;
    v.witness["beta1"] = *r.beta1;
    v.passed = r.kappa1 >= *r.beta1;
  });
}

TheoremVerdict check_class_split(const FiniteGroup& g, const RunCaps& caps) {
  return run_timed("class_split", [&](TheoremVerdict& v) {
    auto p = p_group_prime(g);
    if (!p || g.order() == 1) return;
    std::uint32_t engaged = 0;
    for (const Subgroup& m : maximal_subgroups(g, caps.oracle_cap)) {
      for (const Subgroup& h : all_subgroups_bruteforce(g, caps.oracle_cap)) {
        if (!m.members.contains_all(h.members)) continue;
        ClassSplitResult res = conj_class_split_check(g, h, m);
        if (res.applicable) ++engaged;
        if (!res.passed) {
          v.applicable = true;
          v.passed = false;
          v.witness["H"] = subgroup_witness(h);
          v.witness["M"] = subgroup_witness(m);
          v.witness["sizes"] = json{res.size_in_g, res.size_in_m, res.classes_in_m};
          return;
        }
      }
    }
    v.witness["splitting_pairs"] = engaged;
    if (engaged == 0) return;
    v.applicable = true;
    v.passed = true;
  });
}

TheoremVerdict check_beta1_heredity(const FiniteGroup& g, const RunCaps& caps) {
  return run_timed("beta1_heredity", [&](TheoremVerdict& v) {
    auto p = p_group_prime(g);
    if (!p || g.order() == 1) return;
    if (!maximal_intersections_abelian(g, caps)) return;
    MnaReport r = mna_report(g);
    std::uint32_t beta1 = r.beta1 ? *r.beta1 : 0;
    if (r.kappa1 != beta1) return;
    v.applicable = true;
    v.witness["kappa1"] = r.kappa1;
    v.passed = true;
    for (const Subgroup& m : maximal_subgroups(g, caps.oracle_cap)) {
      MnaReport rm = mna_report(as_group(m).group);
      if (rm.kappa1 > *p) {
        v.passed = false;
        v.witness["M"] = subgroup_witness(m);
        v.witness["kappa1_M"] = rm.kappa1;
        return;
      }
    }
  });
}

TheoremVerdict check_kappa1_le_p_heredity(const FiniteGroup& g, const RunCaps& caps) {
  return run_timed("kappa1_le_p_heredity", [&](TheoremVerdict& v) {
    auto p = p_group_prime(g);
    if (!p || g.order() == 1) return;
    MnaReport r = mna_report(g);
    if (r.kappa1 > *p) return;
    v.applicable = true;
    v.witness["kappa1"] = r.kappa1;
    for (const Subgroup& m : maximal_subgroups(g, caps.oracle_cap)) {
      MnaReport rm = mna_report(as_group(m).group);
      if (rm.kappa1 > *p) {
        v.passed = false;
        v.witness["M"] = subgroup_witness(m);
        v.witness["kappa1_M"] = rm.kappa1;
        return;
      }
    }
    v.passed = true;
  });
}

TheoremVerdict check_maximal_class_hereditary(const FiniteGroup& g, const RunCaps& caps) {
  return run_timed("maximal_class_hereditary", [&](TheoremVerdict& v) {
    auto p = p_group_prime(g);
    if (!p || !is_maximal_class(g)) return;
    bool has_abelian_maximal = false;
    for (const Subgroup& m : maximal_subgroups(g, caps.oracle_cap))
      if (is_abelian(m)) has_abelian_maximal = true;
    if (!has_abelian_maximal) return;
    v.applicable = true;
    for (const Subgroup& s : all_subgroups_bruteforce(g, caps.oracle_cap)) {
      if (is_abelian(s)) continue;
      if (!is_maximal_class_of(s)) {
        v.passed = false;
        v.witness["H"] = subgroup_witness(s);
        return;
      }
    }
    v.passed = true;
  });
}

TheoremVerdict check_normalizer_index_p(const FiniteGroup& g, const RunCaps& caps) {
  return run_timed("normalizer_index_p", [&](TheoremVerdict& v) {
    auto p = p_group_prime(g);
    if (!p || !is_maximal_class(g)) return;
    std::vector<Subgroup> abelian_maximals;
    for (const Subgroup& m : maximal_subgroups(g, caps.oracle_cap))
      if (is_abelian(m)) abelian_maximals.push_back(m);
    if (abelian_maximals.empty()) return;
    v.applicable = true;
    std::uint32_t tested = 0;
    for (const Subgroup& a : abelian_maximals) {
      for (const Subgroup& h : all_subgroups_bruteforce(g, caps.oracle_cap)) {
        if (h.order == g.order() || a.members.contains_all(h.members)) continue;
        ++tested;
        Subgroup n = normalizer(g, h);
        if (n.order != h.order * *p) {
          v.passed = false;
          v.witness["H"] = subgroup_witness(h);
          v.witness["normalizer_order"] = n.order;
          return;
        }
      }
    }
    v.witness["subgroups_tested"] = tested;
    v.passed = true;
  });
}

TheoremVerdict check_two_gen_central_quotient(const FiniteGroup& g, const RunCaps& caps) {
  return run_timed("two_gen_central_quotient", [&](TheoremVerdict& v) {
    auto p = p_group_prime(g);
    if (!p || g.is_abelian() || minimal_generators(g) != 2) return;
    std::vector<Subgroup> maxes = maximal_subgroups(g, caps.oracle_cap);
    bool has_abelian_maximal = false;
    for (const Subgroup& m : maxes)
      if (is_abelian(m)) has_abelian_maximal = true;
    if (!has_abelian_maximal) return;
    v.applicable = true;

    CosetQuotient q = quotient(g, center(g));
    bool quot_maximal_class = is_maximal_class(q.group);
    v.witness["central_quotient_order"] = q.group.order();
    v.witness["central_quotient_maximal_class"] = quot_maximal_class;

    bool centers_ok = true;
    Subgroup z = center(g);
    for (const Subgroup& m : maxes) {
      if (is_abelian(m)) continue;
      Subgroup zm = intersect(m, centralizer_of_subgroup(g, m));
      if (!(zm.members == z.members)) {
        centers_ok = false;
        v.witness["M"] = subgroup_witness(m);
        v.witness["Z_M"] = subgroup_witness(zm);
        break;
      }
    }
    v.witness["nonabelian_maximal_centers_match"] = centers_ok;
    v.passed = quot_maximal_class && centers_ok;
  });
}

}  // namespace

TheoremVerdict verify_pi1_decomposition(const FiniteGroup& g, const RunCaps& caps) {
  return check_pi1_hall_split(g, caps);
}
TheoremVerdict verify_kappa1_eq_alpha1(const FiniteGroup& g, const RunCaps& caps) {
  return check_kappa1_iff_alpha1(g, caps);
}
TheoremVerdict verify_structure_abelian_sylow(const FiniteGroup& g, const RunCaps& caps) {
  return check_abelian_sylow_structure(g, caps);
}
TheoremVerdict verify_frobenius_quotient(const FiniteGroup& g, const RunCaps& caps) {
  return check_frobenius_quotient(g, caps);
}
TheoremVerdict verify_kappa1_eq_p(const FiniteGroup& g, const RunCaps& caps) {
  return check_kappa1_eq_p(g, caps);
}

const std::vector<TheoremCheck>& theorem_registry() {
  static const std::vector<TheoremCheck> reg = {
      {"pi1_hall_split", "G splits as a normal pi1-Hall subgroup with abelian complement",
       check_pi1_hall_split},
      {"kappa1_iff_alpha1", "with a non-abelian Sylow subgroup: kappa1=1 iff alpha1=1",
       check_kappa1_iff_alpha1},
      {"abelian_sylow_structure",
       "abelian Sylows and kappa1=1: G = (G' x| Q) x S with homocyclic G'",
       check_abelian_sylow_structure},
      {"frobenius_quotient",
       "abelian Sylows and kappa1=1: G/Z(G) is Frobenius; 2-transitive case forces "
       "Fermat/Mersenne",
       check_frobenius_quotient},
      {"kappa1_eq_p",
       "p-group, level >= 2: kappa1=p iff abelian index-p subgroup and all non-abelian "
       "subgroups 2-generated",
       check_kappa1_eq_p},
      {"coprime_additivity", "alpha1 and kappa1 add over coprime direct factorizations",
       check_coprime_additivity},
      {"kappa1_gap", "p-group: kappa1=1 forces minimal non-abelian, else kappa1 >= p",
       check_kappa1_gap},
      {"abelian_maximal_count", "non-abelian p-group: abelian maximal count is 0, 1 or p+1",
       check_abelian_maximal_count},
      {"t3_divisibility",
       "p-group of order >= p^4: p divides the count of non-abelian order-p^3 subgroups "
       "(divisibility reading of the counting lemma)",
       check_t3_divisibility},
      {"mna_equivalences", "minimal non-abelian iff d=2,|G'|=p iff d=2,Phi=Z",
       check_mna_equivalences},
      {"cyclic_frattini_p3", "minimal non-abelian, exp<=p^2, cyclic Frattini: order is p^3",
       check_cyclic_frattini_p3},
      {"cyclic_quotient_witness",
       "abelian p-group: every nontrivial H admits N with G/N cyclic, |H:H∩N|=p",
       check_cyclic_quotient_witness},
      {"coprime_fixed_split", "abelian P with coprime normalizing A: P = [P,A] x C_P(A)",
       check_coprime_fixed_split},
      {"derived_fixed_point_free",
       "G = G' x| A with abelian coprime G': [G',A] = G' and C_{G'}(A) = 1",
       check_derived_fixed_point_free},
      {"mna_in_normal_factor", "G = B x S with S abelian central factor: A1(G) = A1(B)",
       check_mna_in_normal_factor},
      {"complement_acts_freely",
       "P x| Q with abelian parts and Omega1(P) minimal normal: C_P(a)=1 off the center",
       check_complement_acts_freely},
      {"kappa1_ge_beta1",
       "level >= 2 p-group with abelian maximal intersections: kappa1 >= beta1",
       check_kappa1_ge_beta1},
      {"class_split", "H <= M maximal: distinct classes force |Conj(G,H)| = p|Conj(M,H)|, p parts",
       check_class_split},
      {"beta1_heredity", "kappa1 = beta1 with abelian maximal intersections: kappa1(M) <= p",
       check_beta1_heredity},
      {"kappa1_le_p_heredity", "p-group with kappa1 <= p: every maximal M has kappa1(M) <= p",
       check_kappa1_le_p_heredity},
      {"maximal_class_hereditary",
       "maximal class with abelian index-p subgroup: non-abelian subgroups are maximal class",
       check_maximal_class_hereditary},
      {"normalizer_index_p",
       "maximal class with abelian index-p subgroup A: H not under A has |N_G(H):H| = p",
       check_normalizer_index_p},
      {"two_gen_central_quotient",
       "2-generated with abelian maximal: G/Z(G) maximal class, Z(M) = Z(G)",
       check_two_gen_central_quotient},
  };
  return reg;
}

bool is_known_theorem_id(const std::string& id) {
  for (const TheoremCheck& c : theorem_registry())
    if (id == c.id) return true;
  return false;
}

std::vector<TheoremVerdict> run_lemma_suite(const FiniteGroup& g, const std::vector<std::string>& ids,
                                            const RunCaps& caps) {
  for (const std::string& id : ids)
    if (!is_known_theorem_id(id)) throw InputError("unknown theorem id: " + id);
  std::vector<TheoremVerdict> out;
  for (const TheoremCheck& c : theorem_registry()) {
    if (!ids.empty() && std::find(ids.begin(), ids.end(), c.id) == ids.end()) continue;
    out.push_back(c.run(g, caps));
  }
  return out;
}

}  // namespace kappa
