#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kappa/bitset.hpp"

namespace kappa {

namespace limits {
inline constexpr std::uint32_t kDefaultMaxOrder = 5000;  // table-backed hard cap
inline constexpr std::uint32_t kDefaultOracleCap = 200;  // full-lattice enumeration cap
inline constexpr std::uint32_t kDefaultAssocCap = 1000;  // full triple-scan cap
}  // namespace limits

struct RunCaps {
  std::uint32_t max_order = limits::kDefaultMaxOrder;
  std::uint32_t oracle_cap = limits::kDefaultOracleCap;
  std::uint32_t assoc_cap = limits::kDefaultAssocCap;
};

class FiniteGroup;
struct Subgroup;

namespace detail {

// Write-once caches attached to a group. Filling is idempotent, so a lost
// race just recomputes the same value; readers always see a completed entry.
struct GroupMemo {
  mutable std::mutex m;
  std::optional<std::vector<std::uint32_t>> generators;
  std::optional<DenseBitset> derived;
  std::optional<DenseBitset> center;
  std::optional<std::vector<DenseBitset>> lattice;  // complete, canonically sorted
  std::optional<std::vector<DenseBitset>> mna;      // minimal non-abelian members
};

struct GroupRep {
  std::uint32_t n = 1;
  std::uint32_t identity = 0;
  std::vector<std::uint32_t> mul;  // n*n row-major, mul[a*n+b] = a·b
  std::vector<std::uint32_t> inv;
  std::vector<std::uint32_t> elem_order;
  std::string label;
  GroupMemo memo;
};

}  // namespace detail

// Immutable, cheaply copyable handle to an explicitly enumerated group.
// Values can be shared freely across threads.
class FiniteGroup {
 public:
  FiniteGroup() = default;

  std::uint32_t order() const { return rep_->n; }
  std::uint32_t identity() const { return rep_->identity; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return rep_->mul[static_cast<std::size_t>(a) * rep_->n + b];
  }
  std::uint32_t inverse(std::uint32_t x) const { return rep_->inv[x]; }
  std::uint32_t element_order(std::uint32_t x) const { return rep_->elem_order[x]; }
  const std::string& label() const { return rep_->label; }

  std::uint32_t power(std::uint32_t x, long long e) const;
  // g^{-1} x g
  std::uint32_t conjugate_element(std::uint32_t x, std::uint32_t g) const {
    return mul(mul(inverse(g), x), g);
  }
  // [x,y] = x^{-1} y^{-1} x y
  std::uint32_t commutator(std::uint32_t x, std::uint32_t y) const {
    return mul(mul(inverse(x), inverse(y)), mul(x, y));
  }
  bool commutes(std::uint32_t a, std::uint32_t b) const { return mul(a, b) == mul(b, a); }
  bool is_abelian() const;

  // Small generating set, grown greedily by ascending element index (memoized).
  const std::vector<std::uint32_t>& generators() const;

  // Exhaustive triple scan.
  bool check_associativity_full() const;
  // Light's test over a generating set: sound and complete given closure,
  // O(n^2 |S|) instead of O(n^3).
  bool check_associativity_light() const;

  bool same_rep(const FiniteGroup& o) const { return rep_ == o.rep_; }

  // Builders validate: square table, identity two-sided at the given index,
  // every row/column a bijection, inverses present. Associativity is checked
  // exhaustively up to assoc_cap and with Light's test above it.
  static FiniteGroup from_table(std::uint32_t n, std::vector<std::uint32_t> mul,
                                std::string label, const RunCaps& caps = {});
  // Trusted path for the structured constructors: skips the associativity
  // check (tables are associative by construction there) but still derives
  // and validates identity/inverses/orders.
  static FiniteGroup from_table_unchecked(std::uint32_t n, std::vector<std::uint32_t> mul,
                                          std::string label);

  detail::GroupMemo& memo() const { return rep_->memo; }

 private:
  static FiniteGroup finish(std::uint32_t n, std::vector<std::uint32_t> mul, std::string label);
  std::shared_ptr<detail::GroupRep> rep_;
};

// Membership bitmap over a parent group's elements with cached order.
// Lagrange divisibility is asserted on every construction path.
struct Subgroup {
  FiniteGroup parent;
  DenseBitset members;
  std::uint32_t order = 0;

  bool contains(std::uint32_t x) const { return members.test(x); }
  bool operator==(const Subgroup& o) const { return members == o.members; }
};

// Wraps a raw membership set; asserts Lagrange only (internal fast path for
// sets already known to be subgroups).
Subgroup make_subgroup(const FiniteGroup& g, DenseBitset members);
// Full validation: identity present, closed under multiplication and inverse.
Subgroup make_subgroup_checked(const FiniteGroup& g, DenseBitset members);

Subgroup trivial_subgroup(const FiniteGroup& g);
Subgroup full_subgroup(const FiniteGroup& g);

bool is_abelian(const Subgroup& h);
std::uint32_t exponent(const Subgroup& h);  // lcm of member orders
std::uint32_t exponent(const FiniteGroup& g);

// (order, canonical membership order) — used for all deterministic listings.
bool canonical_less(const Subgroup& a, const Subgroup& b);

// ⟨seed⟩. Rejects empty seeds and out-of-range indices.
Subgroup closure(const FiniteGroup& g, std::span<const std::uint32_t> seed);
Subgroup closure_of_set(const FiniteGroup& g, const DenseBitset& seed);

Subgroup derived_subgroup(const FiniteGroup& g);  // memoized
Subgroup derived_subgroup(const Subgroup& h);     // H' inside the same parent

Subgroup center(const FiniteGroup& g);  // memoized
Subgroup centralizer(const FiniteGroup& g, std::uint32_t x);
Subgroup centralizer_of_subgroup(const FiniteGroup& g, const Subgroup& h);
Subgroup normalizer(const FiniteGroup& g, const Subgroup& h);

Subgroup conjugate_subgroup(const FiniteGroup& g, const Subgroup& h, std::uint32_t by);
bool is_normal(const FiniteGroup& g, const Subgroup& h);
// Smallest normal subgroup containing x.
Subgroup normal_closure(const FiniteGroup& g, std::uint32_t x);

Subgroup join(const Subgroup& a, const Subgroup& b);
Subgroup intersect(const Subgroup& a, const Subgroup& b);

struct CosetQuotient {
  FiniteGroup parent;
  Subgroup kernel;
  FiniteGroup group;                     // the quotient
  std::vector<std::uint32_t> projection;  // parent element -> coset index
  std::vector<std::uint32_t> coset_rep;   // coset index -> smallest parent element
};

// Requires is_normal(g, n); coset representatives are the smallest element
// index in each coset, cosets numbered by ascending representative.
CosetQuotient quotient(const FiniteGroup& g, const Subgroup& n);

// Complete duplicate-free subgroup list: seeded with all cyclic subgroups and
// closed under pairwise join. Refuses groups above the cap. Memoized.
const std::vector<DenseBitset>& subgroup_lattice(const FiniteGroup& g, std::uint32_t oracle_cap);
std::vector<Subgroup> all_subgroups_bruteforce(const FiniteGroup& g,
                                               std::uint32_t oracle_cap = limits::kDefaultOracleCap);

// Materialized copy of a subgroup as a standalone group. Elements are the
// members in ascending parent index; to_parent maps back.
struct GroupView {
  FiniteGroup group;
  std::vector<std::uint32_t> to_parent;

  // Lift a membership set over `group` back into parent coordinates.
  Subgroup lift(const FiniteGroup& parent, const DenseBitset& sub_bits) const;
};

GroupView as_group(const Subgroup& h);

}  // namespace kappa
