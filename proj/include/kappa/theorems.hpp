#pragma once

#include <string>
#include <vector>

#include "kappa/group.hpp"
#include "kappa/verdict.hpp"

namespace kappa {

// Structure theorems.
TheoremVerdict verify_pi1_decomposition(const FiniteGroup& g, const RunCaps& caps = {});
TheoremVerdict verify_kappa1_eq_alpha1(const FiniteGroup& g, const RunCaps& caps = {});
TheoremVerdict verify_structure_abelian_sylow(const FiniteGroup& g, const RunCaps& caps = {});
TheoremVerdict verify_frobenius_quotient(const FiniteGroup& g, const RunCaps& caps = {});
TheoremVerdict verify_kappa1_eq_p(const FiniteGroup& g, const RunCaps& caps = {});

struct TheoremCheck {
  const char* id;
  const char* summary;
  TheoremVerdict (*run)(const FiniteGroup&, const RunCaps&);
};

// All 23 checks: the five structure theorems above plus the 18-entry lemma
// suite, in a fixed order. Ids are stable CLI tokens.
const std::vector<TheoremCheck>& theorem_registry();

bool is_known_theorem_id(const std::string& id);

// Run the selected checks (empty = all) against one group.
std::vector<TheoremVerdict> run_lemma_suite(const FiniteGroup& g, const std::vector<std::string>& ids,
                                            const RunCaps& caps = {});

}  // namespace kappa
