#include "kappa/construct.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <unordered_map>

#include "kappa/errors.hpp"
#include "kappa/numutil.hpp"

namespace kappa {

namespace {

// Mixed-radix coordinate arithmetic for abelian tuples; last coordinate fastest.
struct Radix {
  std::vector<std::uint32_t> k;
  std::uint32_t total = 1;

  explicit Radix(const std::vector<std::uint32_t>& factors) : k(factors) {
    for (std::uint32_t f : k) total *= f;
  }
  std::vector<std::uint32_t> decode(std::uint32_t idx) const {
    std::vector<std::uint32_t> e(k.size());
    for (std::size_t i = k.size(); i-- > 0;) {
      e[i] = idx % k[i];
      idx /= k[i];
    }
    return e;
  }
  std::uint32_t encode(const std::vector<std::uint32_t>& e) const {
    std::uint32_t idx = 0;
    for (std::size_t i = 0; i < k.size(); ++i) idx = idx * k[i] + (e[i] % k[i]);
    return idx;
  }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    auto ea = decode(a), eb = decode(b);
    for (std::size_t i = 0; i < k.size(); ++i) ea[i] = (ea[i] + eb[i]) % k[i];
    return encode(ea);
  }
  std::uint32_t scale(std::uint32_t a, long long c) const {
    auto e = decode(a);
    for (std::size_t i = 0; i < k.size(); ++i) {
      long long v = (static_cast<long long>(e[i]) * c) % k[i];
      if (v < 0) v += k[i];
      e[i] = static_cast<std::uint32_t>(v);
    }
    return encode(e);
  }
  std::uint32_t unit(std::size_t i) const {
    std::vector<std::uint32_t> e(k.size(), 0);
    e[i] = 1 % k[i];
    return encode(e);
  }
};

void validate_abelian_type(const AbelianType& t) {
  if (t.prime_powers.empty()) throw InputError("abelian type must have at least one factor");
  for (std::uint32_t f : t.prime_powers)
    if (f < 2 || prime_power_base(f) == 0)
      throw InputError("abelian type entry " + std::to_string(f) + " is not a prime power >= 2");
}

std::string abelian_label(const std::vector<std::uint32_t>& factors) {
  std::string s;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) s += "x";
    s += "C" + std::to_string(factors[i]);
  }
  return s;
}

FiniteGroup build_abelian(const std::vector<std::uint32_t>& factors, std::string label,
                          std::uint32_t max_order) {
  Radix rx(factors);
  std::uint64_t n64 = 1;
  for (std::uint32_t f : factors) n64 *= f;
  if (n64 > max_order) throw CapExceeded("group order", n64, max_order);
  std::uint32_t n = rx.total;
  std::vector<std::uint32_t> table(static_cast<std::size_t>(n) * n);
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) table[static_cast<std::size_t>(a) * n + b] = rx.add(a, b);
  return FiniteGroup::from_table_unchecked(n, std::move(table), std::move(label));
}

// order of a permutation given as an index map
std::uint32_t perm_order(const std::vector<std::uint32_t>& p) {
  std::uint32_t n = static_cast<std::uint32_t>(p.size());
  std::vector<char> done(n, 0);
  std::uint32_t ord = 1;
  for (std::uint32_t s = 0; s < n; ++s) {
    if (done[s]) continue;
    std::uint32_t len = 0, x = s;
    while (!done[x]) {
      done[x] = 1;
      x = p[x];
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

std::vector<std::uint32_t> perm_inverse(const std::vector<std::uint32_t>& p) {
  std::vector<std::uint32_t> inv(p.size());
  for (std::uint32_t i = 0; i < p.size(); ++i) inv[p[i]] = i;
  return inv;
}

}  // namespace

FiniteGroup cyclic(std::uint32_t n, std::uint32_t max_order) {
  if (n < 1) throw InputError("cyclic: order must be >= 1");
  if (n > max_order) throw CapExceeded("group order", n, max_order);
  std::vector<std::uint32_t> table(static_cast<std::size_t>(n) * n);
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) table[static_cast<std::size_t>(a) * n + b] = (a + b) % n;
  return FiniteGroup::from_table_unchecked(n, std::move(table), "C" + std::to_string(n));
}

FiniteGroup abelian(const AbelianType& t, std::uint32_t max_order) {
  validate_abelian_type(t);
  return build_abelian(t.prime_powers, abelian_label(t.prime_powers), max_order);
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b, std::uint32_t max_order) {
  std::uint64_t n64 = static_cast<std::uint64_t>(a.order()) * b.order();
  if (n64 > max_order) throw CapExceeded("group order", n64, max_order);
  std::uint32_t na = a.order(), nb = b.order(), n = static_cast<std::uint32_t>(n64);
  std::vector<std::uint32_t> table(static_cast<std::size_t>(n) * n);
  for (std::uint32_t a1 = 0; a1 < na; ++a1)
    for (std::uint32_t b1 = 0; b1 < nb; ++b1)
      for (std::uint32_t a2 = 0; a2 < na; ++a2)
        for (std::uint32_t b2 = 0; b2 < nb; ++b2) {
          std::uint32_t x = a1 * nb + b1, y = a2 * nb + b2;
          table[static_cast<std::size_t>(x) * n + y] = a.mul(a1, a2) * nb + b.mul(b1, b2);
        }
  return FiniteGroup::from_table_unchecked(n, std::move(table), a.label() + " x " + b.label());
}

FiniteGroup semidirect(const AbelianType& base, std::uint32_t acting_order, const ActionSpec& act,
                       std::uint32_t max_order) {
  validate_abelian_type(base);
  if (acting_order < 1) throw InputError("semidirect: acting order must be >= 1");
  Radix rx(base.prime_powers);
  std::uint32_t m = rx.total, q = acting_order;
  std::uint64_t n64 = static_cast<std::uint64_t>(m) * q;
  if (n64 > max_order) throw CapExceeded("group order", n64, max_order);
  if (act.images.size() != base.prime_powers.size())
    throw ConstructionError("semidirect: expected " + std::to_string(base.prime_powers.size()) +
                            " generator images, got " + std::to_string(act.images.size()));

  // evaluate the generator images, then check they define an endomorphism:
  // k_i · image_i must vanish or the linear extension is not well-defined
  std::vector<std::uint32_t> img(base.prime_powers.size());
  for (std::size_t i = 0; i < act.images.size(); ++i) {
    std::uint32_t acc = 0;  // identity
    for (auto [gen, exp] : act.images[i]) {
      if (gen >= base.prime_powers.size())
        throw ConstructionError("semidirect: action references generator #" + std::to_string(gen) +
                                " but the base has only " +
                                std::to_string(base.prime_powers.size()));
      acc = rx.add(acc, rx.scale(rx.unit(gen), exp));
    }
    img[i] = acc;
    if (rx.scale(acc, base.prime_powers[i]) != 0)
      throw ConstructionError("semidirect: image of generator #" + std::to_string(i) +
                              " has order not dividing " + std::to_string(base.prime_powers[i]) +
                              "; not a homomorphism");
  }

  std::vector<std::uint32_t> phi(m);
  for (std::uint32_t x = 0; x < m; ++x) {
    auto e = rx.decode(x);
    std::uint32_t acc = 0;
    for (std::size_t i = 0; i < e.size(); ++i) acc = rx.add(acc, rx.scale(img[i], e[i]));
    phi[x] = acc;
  }
  {
    std::vector<char> hit(m, 0);
    for (std::uint32_t v : phi)
      if (hit[v]++) throw ConstructionError("semidirect: action is not a bijection");
  }
  std::uint32_t phi_order = perm_order(phi);
  if (q % phi_order != 0)
    throw ConstructionError("semidirect: automorphism order " + std::to_string(phi_order) +
                            " does not divide acting order " + std::to_string(q));

  // Multiplication rule (x, c^i)(y, c^j) = (x + phi^{-i}(y), c^{i+j}), which
  // makes conjugation come out as c^{-1}·y·c = phi(y).
  std::vector<std::uint32_t> psi = perm_inverse(phi);
  std::vector<std::vector<std::uint32_t>> psi_pow(q);
  psi_pow[0].resize(m);
  std::iota(psi_pow[0].begin(), psi_pow[0].end(), 0);
  for (std::uint32_t i = 1; i < q; ++i) {
    psi_pow[i].resize(m);
    for (std::uint32_t x = 0; x < m; ++x) psi_pow[i][x] = psi[psi_pow[i - 1][x]];
  }

  std::uint32_t n = static_cast<std::uint32_t>(n64);
  std::vector<std::uint32_t> table(static_cast<std::size_t>(n) * n);
  for (std::uint32_t x = 0; x < m; ++x)
    for (std::uint32_t i = 0; i < q; ++i) {
      std::uint32_t lhs = x * q + i;
      for (std::uint32_t y = 0; y < m; ++y)
        for (std::uint32_t j = 0; j < q; ++j)
          table[static_cast<std::size_t>(lhs) * n + (y * q + j)] =
              rx.add(x, psi_pow[i][y]) * q + (i + j) % q;
    }
  std::string label = "(" + abelian_label(base.prime_powers) + "):C" + std::to_string(q);
  return FiniteGroup::from_table_unchecked(n, std::move(table), std::move(label));
}

FiniteGroup from_permutations(std::uint32_t degree,
                              const std::vector<std::vector<std::uint32_t>>& generators,
                              std::uint32_t max_order) {
  if (degree < 1) throw InputError("from_permutations: degree must be >= 1");
  for (const auto& g : generators) {
    if (g.size() != degree) throw InputError("from_permutations: generator has wrong length");
    std::vector<char> hit(degree, 0);
    for (std::uint32_t v : g) {
      if (v >= degree || hit[v]++) throw InputError("from_permutations: generator is not a bijection");
    }
  }

  struct VecHash {
    std::size_t operator()(const std::vector<std::uint32_t>& v) const {
      std::size_t h = 0x9e3779b97f4a7c15ull;
      for (std::uint32_t x : v) h = h * 0x100000001b3ull ^ x;
      return h;
    }
  };

  std::vector<std::vector<std::uint32_t>> elems;
  std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, VecHash> index;
  std::vector<std::uint32_t> ident(degree);
  std::iota(ident.begin(), ident.end(), 0);
  elems.push_back(ident);
  index[ident] = 0;

  auto compose = [degree](const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> p(degree);
    for (std::uint32_t i = 0; i < degree; ++i) p[i] = b[a[i]];
    return p;
  };

  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const auto& s : generators) {
      std::vector<std::uint32_t> p = compose(elems[i], s);
      if (index.emplace(p, static_cast<std::uint32_t>(elems.size())).second) {
        elems.push_back(std::move(p));
        if (elems.size() > max_order)
          throw CapExceeded("generated permutation group order", elems.size(), max_order);
      }
    }
  }

  std::uint32_t n = static_cast<std::uint32_t>(elems.size());
  std::vector<std::uint32_t> table(static_cast<std::size_t>(n) * n);
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      table[static_cast<std::size_t>(a) * n + b] = index.at(compose(elems[a], elems[b]));
  return FiniteGroup::from_table_unchecked(
      n, std::move(table), "perm" + std::to_string(degree) + "[" + std::to_string(n) + "]");
}

// ---------------------------------------------------------------------------
// Catalog

namespace {

FiniteGroup build_two_part(std::uint32_t h, std::uint32_t q, const std::string& label,
                           std::uint32_t (*rule)(std::uint32_t, std::uint32_t, std::uint32_t,
                                                 std::uint32_t, std::uint32_t)) {
  // elements a^i b^j -> index i*q + j
  std::uint32_t n = h * q;
  std::vector<std::uint32_t> table(static_cast<std::size_t>(n) * n);
  for (std::uint32_t i = 0; i < h; ++i)
    for (std::uint32_t j = 0; j < q; ++j)
      for (std::uint32_t k = 0; k < h; ++k)
        for (std::uint32_t l = 0; l < q; ++l)
          table[static_cast<std::size_t>(i * q + j) * n + (k * q + l)] = rule(i, j, k, l, h);
  return FiniteGroup::from_table_unchecked(n, std::move(table), label);
}

FiniteGroup make_dihedral(std::uint32_t order, std::uint32_t max_order) {
  if (order < 2 || order % 2) throw InputError("dihedral: order must be even and >= 2");
  if (order > max_order) throw CapExceeded("group order", order, max_order);
  return build_two_part(order / 2, 2, "D" + std::to_string(order),
                        [](std::uint32_t i, std::uint32_t j, std::uint32_t k, std::uint32_t l,
                           std::uint32_t h) {
                          std::uint32_t rot = j ? (i + h - k) % h : (i + k) % h;
                          return rot * 2 + (j ^ l);
                        });
}

FiniteGroup make_quaternion(std::uint32_t order, std::uint32_t max_order) {
  if (order < 8 || (order & (order - 1)))
    throw InputError("quaternion: order must be a power of two >= 8");
  if (order > max_order) throw CapExceeded("group order", order, max_order);
  // a^(h)=1, b^2 = a^(h/2), a^b = a^{-1}, h = order/2
  return build_two_part(order / 2, 2, "Q" + std::to_string(order),
                        [](std::uint32_t i, std::uint32_t j, std::uint32_t k, std::uint32_t l,
                           std::uint32_t h) {
                          if (!j) return ((i + k) % h) * 2 + l;
                          std::uint32_t rot = (i + h - k) % h;
                          if (!l) return rot * 2 + 1;
                          return ((rot + h / 2) % h) * 2;
                        });
}

FiniteGroup make_semidihedral(std::uint32_t order, std::uint32_t max_order) {
  if (order < 16 || (order & (order - 1)))
    throw InputError("semidihedral: order must be a power of two >= 16");
  if (order > max_order) throw CapExceeded("group order", order, max_order);
  std::uint32_t h = order / 2, t = h / 2 - 1;  // a^b = a^t
  std::uint32_t n = order;
  std::vector<std::uint32_t> table(static_cast<std::size_t>(n) * n);
  for (std::uint32_t i = 0; i < h; ++i)
    for (std::uint32_t j = 0; j < 2; ++j)
      for (std::uint32_t k = 0; k < h; ++k)
        for (std::uint32_t l = 0; l < 2; ++l) {
          std::uint64_t rot = j ? (i + static_cast<std::uint64_t>(k) * t) % h : (i + k) % h;
          table[static_cast<std::size_t>(i * 2 + j) * n + (k * 2 + l)] =
              static_cast<std::uint32_t>(rot) * 2 + (j ^ l);
        }
  return FiniteGroup::from_table_unchecked(n, std::move(table), "SD" + std::to_string(order));
}

FiniteGroup make_modular(std::uint32_t p, std::uint32_t nexp, std::uint32_t max_order) {
  if (!is_prime(p)) throw InputError("modular: p must be prime");
  if ((p == 2 && nexp < 4) || (p != 2 && nexp < 3))
    throw InputError("modular: need n >= 3 (odd p) or n >= 4 (p = 2)");
  std::uint64_t order = ipow(p, nexp);
  if (order > max_order) throw CapExceeded("group order", order, max_order);
  std::uint32_t h = static_cast<std::uint32_t>(ipow(p, nexp - 1));
  std::uint32_t t = 1 + static_cast<std::uint32_t>(ipow(p, nexp - 2));  // a^b = a^t
  std::uint32_t n = static_cast<std::uint32_t>(order);
  std::vector<std::uint32_t> tpow(p);  // t^j mod h
  tpow[0] = 1;
  for (std::uint32_t j = 1; j < p; ++j)
    tpow[j] = static_cast<std::uint32_t>((static_cast<std::uint64_t>(tpow[j - 1]) * t) % h);
  std::vector<std::uint32_t> table(static_cast<std::size_t>(n) * n);
  for (std::uint32_t i = 0; i < h; ++i)
    for (std::uint32_t j = 0; j < p; ++j)
      for (std::uint32_t k = 0; k < h; ++k)
        for (std::uint32_t l = 0; l < p; ++l) {
          std::uint32_t rot =
              static_cast<std::uint32_t>((i + static_cast<std::uint64_t>(k) * tpow[j]) % h);
          table[static_cast<std::size_t>(i * p + j) * n + (k * p + l)] = rot * p + (j + l) % p;
        }
  return FiniteGroup::from_table_unchecked(n, std::move(table), "M" + std::to_string(order));
}

FiniteGroup make_heisenberg(std::uint32_t p, std::uint32_t max_order) {
  if (!is_prime(p) || p == 2) throw InputError("heisenberg: p must be an odd prime");
  std::uint64_t order = static_cast<std::uint64_t>(p) * p * p;
  if (order > max_order) throw CapExceeded("group order", order, max_order);
  std::uint32_t n = static_cast<std::uint32_t>(order);
  // upper unitriangular 3x3 over F_p: (x,y,z)(x',y',z') = (x+x', y+y', z+z'+x*y')
  auto enc = [p](std::uint32_t x, std::uint32_t y, std::uint32_t z) { return (x * p + y) * p + z; };
  std::vector<std::uint32_t> table(static_cast<std::size_t>(n) * n);
  for (std::uint32_t x = 0; x < p; ++x)
    for (std::uint32_t y = 0; y < p; ++y)
      for (std::uint32_t z = 0; z < p; ++z)
        for (std::uint32_t x2 = 0; x2 < p; ++x2)
          for (std::uint32_t y2 = 0; y2 < p; ++y2)
            for (std::uint32_t z2 = 0; z2 < p; ++z2)
              table[static_cast<std::size_t>(enc(x, y, z)) * n + enc(x2, y2, z2)] =
                  enc((x + x2) % p, (y + y2) % p, (z + z2 + x * y2) % p);
  return FiniteGroup::from_table_unchecked(n, std::move(table), "H" + std::to_string(order));
}

FiniteGroup make_fermat_family(std::uint32_t p, std::uint32_t max_order);
FiniteGroup make_mersenne_family(std::uint32_t q, std::uint32_t r, std::uint32_t max_order);

}  // namespace

FiniteGroup catalog(const std::string& name, const std::vector<long long>& params,
                    std::uint32_t max_order) {
  auto want = [&](std::size_t k) {
    if (params.size() != k)
      throw InputError("catalog " + name + ": expected " + std::to_string(k) + " parameter(s), got " +
                       std::to_string(params.size()));
  };
  auto as_u32 = [&](std::size_t i) {
    if (params[i] < 0 || params[i] > 0x7fffffff)
      throw InputError("catalog " + name + ": parameter out of range");
    return static_cast<std::uint32_t>(params[i]);
  };

  if (name == "dihedral") {
    want(1);
    return make_dihedral(as_u32(0), max_order);
  }
  if (name == "quaternion") {
    want(1);
    return make_quaternion(as_u32(0), max_order);
  }
  if (name == "semidihedral") {
    want(1);
    return make_semidihedral(as_u32(0), max_order);
  }
  if (name == "modular") {
    want(2);
    return make_modular(as_u32(0), as_u32(1), max_order);
  }
  if (name == "heisenberg") {
    want(1);
    return make_heisenberg(as_u32(0), max_order);
  }
  if (name == "extraspecial") {
    want(2);
    std::uint32_t p = as_u32(0);
    long long sign = params[1];
    if (sign != 1 && sign != -1) throw InputError("extraspecial: sign must be +1 or -1");
    if (p == 2) return sign == 1 ? make_dihedral(8, max_order) : make_quaternion(8, max_order);
    return sign == 1 ? make_heisenberg(p, max_order) : make_modular(p, 3, max_order);
  }
  if (name == "a5") {
    want(0);
    return from_permutations(5, {{1, 2, 3, 4, 0}, {1, 2, 0, 3, 4}}, max_order);
  }
  if (name == "example72") {
    want(0);
    // ⟨a,b⟩ = C3 x C3 with a^c = b, b^c = a·b, o(c) = 8
    ActionSpec act;
    act.images = {{{1, 1}}, {{0, 1}, {1, 1}}};
    return semidirect(AbelianType{{3, 3}}, 8, act, max_order);
  }
  if (name == "fermat_family") {
    want(1);
    return make_fermat_family(as_u32(0), max_order);
  }
  if (name == "mersenne_family") {
    want(2);
    return make_mersenne_family(as_u32(0), as_u32(1), max_order);
  }
  throw InputError("catalog: unknown entry '" + name + "'");
}

namespace {

FiniteGroup make_fermat_family(std::uint32_t p, std::uint32_t max_order) {
  // p a Fermat prime: C_{p^2} acted on faithfully by the cyclic group of
  // order p-1 inside Aut(C_{p^2}).
  if (!is_prime(p)) throw InputError("fermat_family: p must be prime");
  std::uint32_t e = p - 1;
  if (p < 3 || (e & (e - 1))) throw InputError("fermat_family: p-1 must be a power of two");
  {
    std::uint32_t w = e;
    std::uint32_t lg = 0;
    while (w > 1) w >>= 1, ++lg;
    if (lg != 0 && (lg & (lg - 1)))
      throw InputError("fermat_family: p is not of Fermat form");
  }
  std::uint64_t p2 = static_cast<std::uint64_t>(p) * p;
  if (p2 * e > max_order) throw CapExceeded("group order", p2 * e, max_order);

  // smallest residue of multiplicative order exactly p-1 mod p^2
  std::uint32_t k = 0;
  for (std::uint32_t cand = 2; cand < p2; ++cand) {
    std::uint64_t v = cand % p2;
    std::uint32_t ord = 1;
    while (v != 1) {
      v = (v * cand) % p2;
      if (++ord > e) break;
    }
    if (ord == e && v == 1) {
      k = cand;
      break;
    }
  }
  if (!k) throw ConstructionError("fermat_family: no residue of order p-1 mod p^2");
  ActionSpec act;
  act.images = {{{0, k}}};
  return semidirect(AbelianType{{static_cast<std::uint32_t>(p2)}}, e, act, max_order);
}

// --- small F2[x] helpers on bitmask polynomials (bit i = coefficient of x^i)

std::uint32_t f2_degree(std::uint64_t f) { return 63 - static_cast<std::uint32_t>(__builtin_clzll(f)); }

std::uint64_t f2_mod(std::uint64_t a, std::uint64_t m) {
  std::uint32_t dm = f2_degree(m);
  while (a && f2_degree(a) >= dm) a ^= m << (f2_degree(a) - dm);
  return a;
}

bool f2_irreducible(std::uint64_t f) {
  std::uint32_t d = f2_degree(f);
  if (d == 0) return false;
  for (std::uint64_t g = 2; g < (1ull << (d / 2 + 1)); ++g)
    if (f2_mod(f, g) == 0) return false;
  return true;
}

using Mat = std::vector<std::vector<std::uint32_t>>;  // entries mod 4

Mat mat_mul4(const Mat& a, const Mat& b) {
  std::size_t r = a.size();
  Mat c(r, std::vector<std::uint32_t>(r, 0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < r; ++k) {
      if (!a[i][k]) continue;
      for (std::size_t j = 0; j < r; ++j) c[i][j] = (c[i][j] + a[i][k] * b[k][j]) % 4;
    }
  return c;
}

bool mat_is_identity(const Mat& a) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a[i][j] != (i == j ? 1u : 0u)) return false;
  return true;
}

FiniteGroup make_mersenne_family(std::uint32_t q, std::uint32_t r, std::uint32_t max_order) {
  if (r < 2 || r > 16) throw InputError("mersenne_family: r out of range");
  if (ipow(2, r) - 1 != q || !is_prime(q))
    throw InputError("mersenne_family: q must be the Mersenne prime 2^r - 1");
  std::uint64_t order = ipow(4, r) * q;
  if (order > max_order) throw CapExceeded("group order", order, max_order);

  // lexicographically smallest irreducible monic polynomial of degree r over F2
  std::uint64_t poly = 0;
  for (std::uint64_t low = 1; low < (1ull << r); low += 2) {  // constant term must be 1
    std::uint64_t f = (1ull << r) | low;
    if (f2_irreducible(f)) {
      poly = f;
      break;
    }
  }
  if (!poly) throw ConstructionError("mersenne_family: no irreducible polynomial found");

  // companion matrix, entries lifted to mod 4
  Mat comp(r, std::vector<std::uint32_t>(r, 0));
  for (std::uint32_t i = 0; i + 1 < r; ++i) comp[i + 1][i] = 1;
  for (std::uint32_t i = 0; i < r; ++i)
    if ((poly >> i) & 1) comp[i][r - 1] = 1;  // last column = low coefficients (x^r = sum)

  // The lift has order q·2^s in GL_r(Z/4); the odd-order power has order
  // exactly q and still reduces mod 2 to a matrix acting irreducibly on
  // Omega_1 (a Frobenius power of the companion action).
  std::uint32_t m_order = 0;
  {
    Mat acc = comp;
    for (std::uint32_t t = 1; t <= 8u * q; ++t) {
      if (mat_is_identity(acc)) {
        m_order = t;
        break;
      }
      acc = mat_mul4(acc, comp);
    }
  }
  if (!m_order) throw ConstructionError("mersenne_family: lifted companion matrix order not found");
  std::uint32_t odd = m_order;
  std::uint32_t twos = 1;
  while (odd % 2 == 0) odd /= 2, twos *= 2;
  if (odd != q) throw ConstructionError("mersenne_family: lifted action has wrong odd order");
  Mat action = comp;  // repeated squaring: comp^(2^k) where 2^k = twos
  for (std::uint32_t s = twos; s > 1; s /= 2) action = mat_mul4(action, action);

  ActionSpec act;
  act.images.resize(r);
  for (std::uint32_t j = 0; j < r; ++j)
    for (std::uint32_t i = 0; i < r; ++i)
      if (action[i][j] % 4) act.images[j].push_back({i, action[i][j] % 4});

  AbelianType base;
  base.prime_powers.assign(r, 4);
  return semidirect(base, q, act, max_order);
}

}  // namespace

}  // namespace kappa
