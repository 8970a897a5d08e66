#include "kappa/group.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "kappa/errors.hpp"
#include "kappa/numutil.hpp"

namespace kappa {

// ---------------------------------------------------------------------------
// FiniteGroup construction

FiniteGroup FiniteGroup::finish(std::uint32_t n, std::vector<std::uint32_t> mul,
                                std::string label) {
  auto rep = std::make_shared<detail::GroupRep>();
  rep->n = n;
  rep->mul = std::move(mul);
  rep->label = std::move(label);

  // locate the identity: the unique e with e·x = x for all x
  std::uint32_t ident = n;
  for (std::uint32_t e = 0; e < n; ++e) {
    bool ok = true;
    for (std::uint32_t x = 0; x < n && ok; ++x)
      ok = rep->mul[static_cast<std::size_t>(e) * n + x] == x &&
           rep->mul[static_cast<std::size_t>(x) * n + e] == x;
    if (ok) {
      ident = e;
      break;
    }
  }
  if (ident == n) throw InputError("multiplication table has no two-sided identity");
  rep->identity = ident;

  rep->inv.assign(n, n);
  for (std::uint32_t x = 0; x < n; ++x) {
    for (std::uint32_t y = 0; y < n; ++y) {
      if (rep->mul[static_cast<std::size_t>(x) * n + y] == ident) {
        if (rep->mul[static_cast<std::size_t>(y) * n + x] != ident)
          throw InputError("one-sided inverse in multiplication table");
        rep->inv[x] = y;
        break;
      }
    }
    if (rep->inv[x] == n) throw InputError("element without inverse in multiplication table");
  }

  rep->elem_order.assign(n, 0);
  for (std::uint32_t x = 0; x < n; ++x) {
    std::uint32_t k = 1, y = x;
    while (y != ident) {
      y = rep->mul[static_cast<std::size_t>(y) * n + x];
      ++k;
      if (k > n) throw InputError("element order exceeds group order; table is not a group");
    }
    if (n % k != 0) throw InputError("element order does not divide group order");
    rep->elem_order[x] = k;
  }

  FiniteGroup g;
  g.rep_ = std::move(rep);
  return g;
}

FiniteGroup FiniteGroup::from_table_unchecked(std::uint32_t n, std::vector<std::uint32_t> mul,
                                              std::string label) {
  if (n == 0) throw InputError("group order must be positive");
  if (mul.size() != static_cast<std::size_t>(n) * n)
    throw InputError("multiplication table size mismatch");
  return finish(n, std::move(mul), std::move(label));
}

FiniteGroup FiniteGroup::from_table(std::uint32_t n, std::vector<std::uint32_t> mul,
                                    std::string label, const RunCaps& caps) {
  if (n == 0) throw InputError("group order must be positive");
  if (n > caps.max_order) throw CapExceeded("group order", n, caps.max_order);
  if (mul.size() != static_cast<std::size_t>(n) * n)
    throw InputError("multiplication table size mismatch");
  for (std::uint32_t v : mul)
    if (v >= n) throw InputError("table entry out of range");
  // Latin square check: each row and column must be a bijection.
  std::vector<char> seen(n);
  for (std::uint32_t r = 0; r < n; ++r) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::uint32_t c = 0; c < n; ++c) {
      std::uint32_t v = mul[static_cast<std::size_t>(r) * n + c];
      if (seen[v]++) throw InputError("row " + std::to_string(r) + " is not a bijection");
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (std::uint32_t c = 0; c < n; ++c) {
      std::uint32_t v = mul[static_cast<std::size_t>(c) * n + r];
      if (seen[v]++) throw InputError("column " + std::to_string(r) + " is not a bijection");
    }
  }
  FiniteGroup g = finish(n, std::move(mul), std::move(label));
  bool assoc = n <= caps.assoc_cap ? g.check_associativity_full() : g.check_associativity_light();
  if (!assoc) throw InputError("multiplication table is not associative");
  return g;
}

std::uint32_t FiniteGroup::power(std::uint32_t x, long long e) const {
  std::uint32_t ord = element_order(x);
  long long r = e % ord;
  if (r < 0) r += ord;
  std::uint32_t acc = identity();
  for (long long i = 0; i < r; ++i) acc = mul(acc, x);
  return acc;
}

bool FiniteGroup::is_abelian() const {
  std::uint32_t n = order();
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = a + 1; b < n; ++b)
      if (!commutes(a, b)) return false;
  return true;
}

const std::vector<std::uint32_t>& FiniteGroup::generators() const {
  auto& memo = rep_->memo;
  std::scoped_lock lk(memo.m);
  if (!memo.generators) {
    std::vector<std::uint32_t> gens;
    DenseBitset have(order());
    have.set(identity());
    std::uint32_t have_count = 1;
    for (std::uint32_t x = 0; x < order() && have_count < order(); ++x) {
      if (have.test(x)) continue;
      gens.push_back(x);
      // grow the closure with x
      std::vector<std::uint32_t> work = {x};
      std::vector<std::uint32_t> elems = have.to_indices();
      have.set(x);
      elems.push_back(x);
      ++have_count;
      for (std::size_t wi = 0; wi < work.size(); ++wi) {
        std::uint32_t u = work[wi];
        for (std::size_t j = 0; j < elems.size(); ++j) {
          for (std::uint32_t prod : {mul(u, elems[j]), mul(elems[j], u)}) {
            if (!have.test(prod)) {
              have.set(prod);
              ++have_count;
              work.push_back(prod);
              elems.push_back(prod);
            }
          }
        }
      }
    }
    memo.generators = std::move(gens);
  }
  return *memo.generators;
}

bool FiniteGroup::check_associativity_full() const {
  std::uint32_t n = order();
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) {
      std::uint32_t ab = mul(a, b);
      for (std::uint32_t c = 0; c < n; ++c)
        if (mul(ab, c) != mul(a, mul(b, c))) return false;
    }
  return true;
}

bool FiniteGroup::check_associativity_light() const {
  std::uint32_t n = order();
  for (std::uint32_t s : generators())
    for (std::uint32_t a = 0; a < n; ++a) {
      std::uint32_t as = mul(a, s);
      for (std::uint32_t b = 0; b < n; ++b)
        if (mul(as, b) != mul(a, mul(s, b))) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------
// Subgroup basics

Subgroup make_subgroup(const FiniteGroup& g, DenseBitset members) {
  Subgroup h{g, std::move(members), 0};
  h.order = static_cast<std::uint32_t>(h.members.count());
  if (h.order == 0 || g.order() % h.order != 0)
    throw ContractError("subgroup order " + std::to_string(h.order) +
                        " does not divide group order " + std::to_string(g.order()));
  return h;
}

Subgroup make_subgroup_checked(const FiniteGroup& g, DenseBitset members) {
  if (!members.test(g.identity())) throw ContractError("membership set lacks the identity");
  std::vector<std::uint32_t> elems = members.to_indices();
  for (std::uint32_t x : elems) {
    if (!members.test(g.inverse(x))) throw ContractError("membership set not closed under inverse");
    for (std::uint32_t y : elems)
      if (!members.test(g.mul(x, y)))
        throw ContractError("membership set not closed under multiplication");
  }
  return make_subgroup(g, std::move(members));
}

Subgroup trivial_subgroup(const FiniteGroup& g) {
  return make_subgroup(g, DenseBitset::with_bit(g.order(), g.identity()));
}

Subgroup full_subgroup(const FiniteGroup& g) {
  DenseBitset all(g.order());
  for (std::uint32_t i = 0; i < g.order(); ++i) all.set(i);
  return make_subgroup(g, std::move(all));
}

bool is_abelian(const Subgroup& h) {
  std::vector<std::uint32_t> elems = h.members.to_indices();
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = i + 1; j < elems.size(); ++j)
      if (!h.parent.commutes(elems[i], elems[j])) return false;
  return true;
}

std::uint32_t exponent(const Subgroup& h) {
  std::uint32_t e = 1;
  h.members.for_each([&](std::uint32_t x) { e = std::lcm(e, h.parent.element_order(x)); });
  return e;
}

std::uint32_t exponent(const FiniteGroup& g) { return exponent(full_subgroup(g)); }

bool canonical_less(const Subgroup& a, const Subgroup& b) {
  if (a.order != b.order) return a.order < b.order;
  return a.members.compare(b.members) < 0;
}

// ---------------------------------------------------------------------------
// Closure

Subgroup closure_of_set(const FiniteGroup& g, const DenseBitset& seed) {
  DenseBitset mem = seed;
  mem.set(g.identity());
  std::vector<std::uint32_t> elems = mem.to_indices();
  std::vector<std::uint32_t> work = elems;
  for (std::size_t wi = 0; wi < work.size(); ++wi) {
    std::uint32_t x = work[wi];
    for (std::size_t j = 0; j < elems.size(); ++j) {
      std::uint32_t y = elems[j];
      for (std::uint32_t prod : {g.mul(x, y), g.mul(y, x)}) {
        if (!mem.test(prod)) {
          mem.set(prod);
          elems.push_back(prod);
          work.push_back(prod);
        }
      }
    }
    // inverses come for free in a finite group (powers), no separate step
  }
  return make_subgroup(g, std::move(mem));
}

Subgroup closure(const FiniteGroup& g, std::span<const std::uint32_t> seed) {
  if (seed.empty()) throw InputError("closure: empty seed");
  DenseBitset bits(g.order());
  for (std::uint32_t s : seed) {
    if (s >= g.order()) throw InputError("closure: element index out of range");
    bits.set(s);
  }
  return closure_of_set(g, bits);
}

// ---------------------------------------------------------------------------
// Derived subgroup, center, centralizers, normalizer

Subgroup derived_subgroup(const Subgroup& h) {
  const FiniteGroup& g = h.parent;
  DenseBitset comms(g.order());
  std::vector<std::uint32_t> elems = h.members.to_indices();
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = 0; j < elems.size(); ++j)
      comms.set(g.commutator(elems[i], elems[j]));
  return closure_of_set(g, comms);
}

Subgroup derived_subgroup(const FiniteGroup& g) {
  {
    std::scoped_lock lk(g.memo().m);
    if (g.memo().derived) return make_subgroup(g, *g.memo().derived);
  }
  Subgroup d = derived_subgroup(full_subgroup(g));
  std::scoped_lock lk(g.memo().m);
  if (!g.memo().derived) g.memo().derived = d.members;
  return d;
}

Subgroup center(const FiniteGroup& g) {
  {
    std::scoped_lock lk(g.memo().m);
    if (g.memo().center) return make_subgroup(g, *g.memo().center);
  }
  DenseBitset z(g.order());
  for (std::uint32_t x = 0; x < g.order(); ++x) {
    bool central = true;
    for (std::uint32_t y = 0; y < g.order() && central; ++y) central = g.commutes(x, y);
    if (central) z.set(x);
  }
  Subgroup s = make_subgroup(g, z);
  std::scoped_lock lk(g.memo().m);
  if (!g.memo().center) g.memo().center = s.members;
  return s;
}

Subgroup centralizer(const FiniteGroup& g, std::uint32_t x) {
  if (x >= g.order()) throw InputError("centralizer: element index out of range");
  DenseBitset c(g.order());
  for (std::uint32_t y = 0; y < g.order(); ++y)
    if (g.commutes(x, y)) c.set(y);
  return make_subgroup(g, std::move(c));
}

Subgroup centralizer_of_subgroup(const FiniteGroup& g, const Subgroup& h) {
  std::vector<std::uint32_t> elems = h.members.to_indices();
  DenseBitset c(g.order());
  for (std::uint32_t y = 0; y < g.order(); ++y) {
    bool ok = true;
    for (std::uint32_t x : elems)
      if (!g.commutes(x, y)) {
        ok = false;
        break;
      }
    if (ok) c.set(y);
  }
  return make_subgroup(g, std::move(c));
}

namespace {

// H^g == H, tested without building the image set.
bool conjugate_fixes(const FiniteGroup& g, const DenseBitset& members, std::uint32_t by) {
  std::uint32_t byi = g.inverse(by);
  bool ok = true;
  members.for_each([&](std::uint32_t h) {
    if (ok && !members.test(g.mul(g.mul(byi, h), by))) ok = false;
  });
  return ok;
}

}  // namespace

Subgroup normalizer(const FiniteGroup& g, const Subgroup& h) {
  DenseBitset nrm(g.order());
  for (std::uint32_t x = 0; x < g.order(); ++x)
    if (conjugate_fixes(g, h.members, x)) nrm.set(x);
  return make_subgroup(g, std::move(nrm));
}

Subgroup conjugate_subgroup(const FiniteGroup& g, const Subgroup& h, std::uint32_t by) {
  if (by >= g.order()) throw InputError("conjugate_subgroup: element index out of range");
  DenseBitset img(g.order());
  std::uint32_t byi = g.inverse(by);
  h.members.for_each([&](std::uint32_t x) { img.set(g.mul(g.mul(byi, x), by)); });
  return make_subgroup(g, std::move(img));
}

bool is_normal(const FiniteGroup& g, const Subgroup& h) {
  for (std::uint32_t s : g.generators())
    if (!conjugate_fixes(g, h.members, s)) return false;
  return true;
}

Subgroup normal_closure(const FiniteGroup& g, std::uint32_t x) {
  if (x >= g.order()) throw InputError("normal_closure: element index out of range");
  // conjugation orbit of x, then the subgroup it generates, repeated until normal
  DenseBitset seed(g.order());
  std::vector<std::uint32_t> work = {x};
  seed.set(x);
  for (std::size_t wi = 0; wi < work.size(); ++wi)
    for (std::uint32_t s : g.generators()) {
      std::uint32_t y = g.conjugate_element(work[wi], s);
      if (!seed.test(y)) {
        seed.set(y);
        work.push_back(y);
      }
    }
  Subgroup k = closure_of_set(g, seed);
  while (!is_normal(g, k)) {
    DenseBitset grown = k.members;
    k.members.for_each([&](std::uint32_t h) {
      for (std::uint32_t s : g.generators()) grown.set(g.conjugate_element(h, s));
    });
    k = closure_of_set(g, grown);
  }
  return k;
}

Subgroup join(const Subgroup& a, const Subgroup& b) {
  return closure_of_set(a.parent, a.members | b.members);
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  return make_subgroup(a.parent, a.members & b.members);
}

// ---------------------------------------------------------------------------
// Quotient

CosetQuotient quotient(const FiniteGroup& g, const Subgroup& n) {
  if (!is_normal(g, n)) throw ContractError("quotient: subgroup is not normal");
  std::uint32_t order = g.order();
  std::vector<std::uint32_t> coset_min(order, order);
  std::vector<std::uint32_t> nelems = n.members.to_indices();
  // coset of x = x·N; representative = smallest member
  for (std::uint32_t x = 0; x < order; ++x) {
    if (coset_min[x] != order) continue;
    std::uint32_t mn = order;
    std::vector<std::uint32_t> cos;
    cos.reserve(nelems.size());
    for (std::uint32_t k : nelems) {
      std::uint32_t y = g.mul(x, k);
      cos.push_back(y);
      mn = std::min(mn, y);
    }
    for (std::uint32_t y : cos) coset_min[y] = mn;
  }
  std::vector<std::uint32_t> reps;
  for (std::uint32_t x = 0; x < order; ++x)
    if (coset_min[x] == x) reps.push_back(x);
  std::uint32_t q = static_cast<std::uint32_t>(reps.size());

  std::vector<std::uint32_t> rep_index(order);
  for (std::uint32_t i = 0; i < q; ++i) rep_index[reps[i]] = i;
  std::vector<std::uint32_t> proj(order);
  for (std::uint32_t x = 0; x < order; ++x) proj[x] = rep_index[coset_min[x]];

  std::vector<std::uint32_t> table(static_cast<std::size_t>(q) * q);
  for (std::uint32_t i = 0; i < q; ++i)
    for (std::uint32_t j = 0; j < q; ++j)
      table[static_cast<std::size_t>(i) * q + j] = proj[g.mul(reps[i], reps[j])];

  CosetQuotient out{g, n,
                    FiniteGroup::from_table_unchecked(q, std::move(table), g.label() + "/N" +
                                                                            std::to_string(n.order)),
                    std::move(proj), std::move(reps)};
  if (static_cast<std::uint64_t>(out.group.order()) * n.order != g.order())
    throw ContractError("quotient: order bookkeeping failed");
  // kernel of the projection must be exactly n
  for (std::uint32_t x = 0; x < order; ++x) {
    bool in_kernel = out.projection[x] == out.projection[g.identity()];
    if (in_kernel != n.members.test(x)) throw ContractError("quotient: kernel mismatch");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Complete subgroup enumeration (oracle)

const std::vector<DenseBitset>& subgroup_lattice(const FiniteGroup& g, std::uint32_t oracle_cap) {
  if (g.order() > oracle_cap) throw CapExceeded("subgroup enumeration order", g.order(), oracle_cap);
  {
    std::scoped_lock lk(g.memo().m);
    if (g.memo().lattice) return *g.memo().lattice;
  }

  std::vector<DenseBitset> subs;
  std::unordered_set<DenseBitset, DenseBitsetHash> seen;
  auto add = [&](const DenseBitset& s) {
    if (seen.insert(s).second) subs.push_back(s);
  };

  add(trivial_subgroup(g).members);
  for (std::uint32_t x = 0; x < g.order(); ++x)
    add(closure(g, std::array<std::uint32_t, 1>{x}).members);

  // close the set under pairwise join; subs grows while we scan it
  for (std::size_t i = 1; i < subs.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const DenseBitset& a = subs[i];
      const DenseBitset& b = subs[j];
      if (a.contains_all(b) || b.contains_all(a)) continue;
      add(closure_of_set(g, a | b).members);
    }
  }

  std::sort(subs.begin(), subs.end(), [](const DenseBitset& a, const DenseBitset& b) {
    std::size_t ca = a.count(), cb = b.count();
    if (ca != cb) return ca < cb;
    return a.compare(b) < 0;
  });

  std::scoped_lock lk(g.memo().m);
  if (!g.memo().lattice) g.memo().lattice = std::move(subs);
  return *g.memo().lattice;
}

std::vector<Subgroup> all_subgroups_bruteforce(const FiniteGroup& g, std::uint32_t oracle_cap) {
  const auto& bits = subgroup_lattice(g, oracle_cap);
  std::vector<Subgroup> out;
  out.reserve(bits.size());
  for (const auto& b : bits) out.push_back(make_subgroup(g, b));
  return out;
}

// ---------------------------------------------------------------------------
// Materialization

GroupView as_group(const Subgroup& h) {
  std::vector<std::uint32_t> elems = h.members.to_indices();  // ascending
  std::uint32_t m = static_cast<std::uint32_t>(elems.size());
  std::unordered_map<std::uint32_t, std::uint32_t> pos;
  pos.reserve(m * 2);
  for (std::uint32_t i = 0; i < m; ++i) pos[elems[i]] = i;
  std::vector<std::uint32_t> table(static_cast<std::size_t>(m) * m);
  for (std::uint32_t i = 0; i < m; ++i)
    for (std::uint32_t j = 0; j < m; ++j) {
      auto it = pos.find(h.parent.mul(elems[i], elems[j]));
      if (it == pos.end()) throw ContractError("as_group: membership set is not closed");
      table[static_cast<std::size_t>(i) * m + j] = it->second;
    }
  GroupView v;
  v.group = FiniteGroup::from_table_unchecked(
      m, std::move(table), h.parent.label() + "[sub" + std::to_string(m) + "]");
  v.to_parent = std::move(elems);
  return v;
}

Subgroup GroupView::lift(const FiniteGroup& parent, const DenseBitset& sub_bits) const {
  DenseBitset out(parent.order());
  sub_bits.for_each([&](std::uint32_t i) { out.set(to_parent[i]); });
  return make_subgroup(parent, std::move(out));
}

}  // namespace kappa
