// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Runs against the committed default corpus with the default caps.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "kappa/construct.hpp"
#include "kappa/invariants.hpp"
#include "kappa/mna.hpp"
#include "kappa/numutil.hpp"
#include "kappa/parser.hpp"
#include "kappa/runner.hpp"
#include "kappa/theorems.hpp"

using namespace kappa;

namespace {

const std::filesystem::path kSourceDir = KAPPA_SOURCE_DIR;
int g_failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("criterion %d: %s  %s\n", criterion, pass ? "PASS" : "FAIL", detail.c_str());
  if (!pass) ++g_failures;
}

struct NamedGroup {
  std::string name;
  FiniteGroup group;
};

std::vector<NamedGroup> load_default_corpus(const RunCaps& caps) {
  std::vector<NamedGroup> out;
  auto dir = kSourceDir / "corpus";
  for (const CorpusEntry& e : load_corpus(dir / "default.corpus"))
    out.push_back({e.name, parse_group(e.descriptor, caps, dir)});
  return out;
}

std::vector<Subgroup> mna_via_lattice(const FiniteGroup& g, std::uint32_t cap) {
  std::vector<Subgroup> nonab;
  for (const Subgroup& s : all_subgroups_bruteforce(g, cap))
    if (!is_abelian(s)) nonab.push_back(s);
  std::vector<Subgroup> out;
  for (const Subgroup& h : nonab) {
    bool minimal = true;
    for (const Subgroup& k : nonab)
      if (k.order < h.order && h.members.contains_all(k.members)) minimal = false;
    if (minimal) out.push_back(h);
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

void criterion_1() {
  Timer t;
  FiniteGroup a5 = catalog("a5", {});
  MnaReport r = mna_report(a5);
  bool ok = r.kappa1 == 3 && r.pi1 == std::set<std::uint32_t>{2, 3, 5};
  double secs = t.seconds();
  ok = ok && secs < 5.0;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "kappa1(A5)=%u pi1={2,3,5}:%s in %.2fs", r.kappa1,
                r.pi1 == std::set<std::uint32_t>{2, 3, 5} ? "yes" : "no", secs);
  report(1, ok, buf);
}

void criterion_2() {
  FiniteGroup g = catalog("example72", {});
  MnaReport r = mna_report(g);
  std::uint32_t a = 3 * 8;                 // base generator (1,0)
  std::uint32_t c4 = g.power(1, 4);        // c^4
  Subgroup h = closure(g, std::array<std::uint32_t, 2>{a, c4});
  Subgroup n = normalizer(g, h);
  bool self_normalizing = n.members == h.members;
  std::uint32_t index = g.order() / n.order;
  bool ok = r.alpha1 == 12 && r.kappa1 == 1 && self_normalizing && index == 12;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "alpha1=%u kappa1=%u |G:N|=%u self-normalizing=%s", r.alpha1,
                r.kappa1, index, self_normalizing ? "yes" : "no");
  report(2, ok, buf);
}

void criterion_3() {
  bool ok = true;
  std::string detail;
  for (const char* d : {"catalog(fermat_family, 5)", "catalog(mersenne_family, 3, 2)"}) {
    FiniteGroup g = parse_group(d);
    MnaReport r = mna_report(g);
    TransitivityResult tr = action_transitivity(g, r.members);
    TheoremVerdict v = verify_frobenius_quotient(g);
    bool two_trans = tr.level == Transitivity::two_transitive && !tr.vacuous;
    bool dichotomy = v.witness.contains("dichotomy") && v.witness["dichotomy"].is_object() &&
                     v.witness["dichotomy"]["holds"] == true;
    bool this_ok = r.kappa1 == 1 && two_trans && v.applicable && v.passed && dichotomy;
    ok = ok && this_ok;
    detail += std::string(g.label()) + "(kappa1=" + std::to_string(r.kappa1) +
              ",2trans=" + (two_trans ? "y" : "n") + ",frobenius=" + (v.passed ? "y" : "n") +
              ",dichotomy=" + (dichotomy ? "y" : "n") + ") ";
  }
  report(3, ok, detail);
}

void criterion_4(const std::vector<NamedGroup>& corpus, const RunCaps& caps) {
  std::size_t tested = 0;
  std::string bad;
  for (const NamedGroup& ng : corpus) {
    if (ng.group.order() > 100) continue;
    ++tested;
    auto fast = enumerate_mna(ng.group);
    auto oracle = mna_via_lattice(ng.group, caps.oracle_cap);
    bool eq = fast.size() == oracle.size();
    for (std::size_t i = 0; eq && i < fast.size(); ++i)
      eq = fast[i].members == oracle[i].members;
    if (!eq) bad += ng.name + " ";
  }
  report(4, bad.empty() && tested > 0,
         "exact set equality on " + std::to_string(tested) + " groups of order <= 100" +
             (bad.empty() ? "" : "; mismatches: " + bad));
}

void criterion_5(const std::vector<NamedGroup>& corpus, const RunCaps& caps) {
  std::size_t applicable = 0, failed = 0;
  std::set<std::string> seen;
  for (const NamedGroup& ng : corpus) {
    TheoremVerdict v = verify_kappa1_eq_alpha1(ng.group, caps);
    if (!v.applicable) continue;
    ++applicable;
    seen.insert(ng.name);
    if (!v.passed) ++failed;
  }
  bool named_present = true;
  for (const char* want : {"Q8xC3", "D8xC5", "D16", "SD16", "M27", "H27"})
    if (!seen.count(want)) named_present = false;
  bool ok = applicable >= 20 && failed == 0 && named_present;
  report(5, ok,
         std::to_string(applicable) + " groups with a non-abelian Sylow subgroup, " +
             std::to_string(failed) + " failures" +
             (named_present ? "" : "; required named groups missing"));
}

void criterion_6(const std::vector<NamedGroup>& corpus) {
  Timer t;
  RunCaps caps;
  caps.oracle_cap = std::max<std::uint32_t>(caps.oracle_cap, 128);
  std::size_t applicable = 0, failed = 0, side_checked = 0;
  std::set<std::string> scanned;
  for (const NamedGroup& ng : corpus) {
    if (!p_group_prime(ng.group) || ng.group.order() > caps.oracle_cap) continue;
    scanned.insert(ng.name);
    TheoremVerdict v = verify_kappa1_eq_p(ng.group, caps);
    if (v.not_computed || !v.applicable) continue;
    ++applicable;
    if (!v.passed) ++failed;
    // the alpha1/orbit-size side conditions are folded into the verdict when
    // kappa1 = p; count how often they were engaged
    std::uint32_t p = *p_group_prime(ng.group);
    MnaReport r = mna_report(ng.group);
    if (r.kappa1 == p) {
      ++side_checked;
      std::uint32_t tt = at_level(ng.group, caps.oracle_cap);
      if (r.alpha1 != ipow(p, tt - 1)) ++failed;
      for (const auto& o : r.classes.orbits)
        if (o.members.size() != ipow(p, tt - 2)) ++failed;
    }
  }
  // the level-1 modular groups must at least have been scanned
  bool modular_scanned = scanned.count("M16") && scanned.count("M81");
  bool tower_scanned = scanned.count("D128") && scanned.count("Q128") && scanned.count("SD128");
  double secs = t.seconds();
  bool ok = applicable >= 12 && failed == 0 && modular_scanned && tower_scanned && secs < 120.0;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "%zu level>=2 p-groups, %zu kappa1=p side checks, %zu failures, %.1fs",
                applicable, side_checked, failed, secs);
  report(6, ok, buf);
}

void criterion_7(const std::vector<NamedGroup>& corpus, const RunCaps& caps) {
  // the 18 lemma ids = registry minus the five structure theorems
  std::vector<std::string> lemma_ids;
  for (const TheoremCheck& c : theorem_registry()) {
    std::string id = c.id;
    if (id == "pi1_hall_split" || id == "kappa1_iff_alpha1" || id == "abelian_sylow_structure" ||
        id == "frobenius_quotient" || id == "kappa1_eq_p")
      continue;
    lemma_ids.push_back(id);
  }
  bool lemma_count_ok = lemma_ids.size() == 18;

  std::size_t applicable = 0, failed = 0;
  for (const NamedGroup& ng : corpus)
    for (const TheoremVerdict& v : run_lemma_suite(ng.group, lemma_ids, caps)) {
      if (v.not_computed || !v.applicable) continue;
      ++applicable;
      if (!v.passed) ++failed;
    }

  // direct re-assertions of the two counting facts
  std::size_t miller_bad = 0, t3_bad = 0;
  for (const NamedGroup& ng : corpus) {
    auto p = p_group_prime(ng.group);
    if (!p) continue;
    if (!ng.group.is_abelian()) {
      std::uint32_t count = 0;
      for (const Subgroup& m : maximal_subgroups(ng.group, std::max(caps.oracle_cap, 128u)))
        if (is_abelian(m)) ++count;
      if (!(count == 0 || count == 1 || count == *p + 1)) ++miller_bad;
    }
    if (ng.group.order() >= ipow(*p, 4) && ng.group.order() <= std::max(caps.oracle_cap, 128u)) {
      std::uint32_t t3 = 0;
      for (const Subgroup& s : all_subgroups_bruteforce(ng.group, std::max(caps.oracle_cap, 128u)))
        if (s.order == ipow(*p, 3) && !is_abelian(s)) ++t3;
      if (t3 % *p != 0) ++t3_bad;
    }
  }
  bool ok = lemma_count_ok && failed == 0 && miller_bad == 0 && t3_bad == 0;
  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "18 lemma ids, %zu applicable verdicts, %zu failures; miller_bad=%zu t3_bad=%zu",
                applicable, failed, miller_bad, t3_bad);
  report(7, ok, buf);
}

void criterion_8() {
  // fixture values frozen from the brute-force oracle before the build
  FiniteGroup d16 = catalog("dihedral", {16});
  MnaReport r = mna_report(d16);
  std::uint32_t t = at_level(d16);
  bool ok = r.kappa1 == 2 && t == 2;
  report(8, ok, "kappa1(D16)=" + std::to_string(r.kappa1) + " at_level(D16)=" + std::to_string(t));
}

void criterion_9() {
  CorpusSpec spec;
  auto dir = kSourceDir / "corpus";
  spec.entries = load_corpus(dir / "default.corpus");
  RunOutput a = run_corpus(spec, {2, false}, dir);
  RunOutput b = run_corpus(spec, {0, false}, dir);
  std::string da = scrub_timing(a.document).dump();
  std::string db = scrub_timing(b.document).dump();
  bool ok = da == db && a.exit_code == 0 && b.exit_code == 0;
  report(9, ok,
         "two full-corpus runs, " + std::to_string(da.size()) + " bytes each, identical=" +
             (da == db ? "yes" : "no"));
}

}  // namespace

int main() {
  Timer total;
  RunCaps caps;
  std::vector<NamedGroup> corpus = load_default_corpus(caps);

  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4(corpus, caps);
  criterion_5(corpus, caps);
  criterion_6(corpus);
  criterion_7(corpus, caps);
  criterion_8();
  criterion_9();

  std::printf("acceptance: %s (%d failed) in %.1fs\n", g_failures ? "FAIL" : "PASS", g_failures,
              total.seconds());
  return g_failures ? 1 : 0;
}
