#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "kappa/bitkernels.hpp"
#include "kappa/bitset.hpp"

using namespace kappa;
using bitk::word;

namespace {

std::vector<word> random_words(std::mt19937_64& rng, std::size_t n, int density) {
  std::vector<word> v(n);
  for (auto& w : v) {
    w = rng();
    for (int d = 0; d < density; ++d) w &= rng();  // sparser with higher density arg
  }
  return v;
}

}  // namespace

TEST_CASE("scalar and active kernels agree on every op and size") {
  const bitk::Kernels& ref = bitk::scalar_kernels();
  const bitk::Kernels& act = bitk::kernels();
  std::mt19937_64 rng(0xC0FFEE);

  for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u, 31u, 64u, 79u}) {
    for (int density : {0, 1, 3}) {
      for (int rep = 0; rep < 20; ++rep) {
        std::vector<word> a = random_words(rng, n, density);
        std::vector<word> b = random_words(rng, n, density);
        // sometimes force relations the predicates care about
        if (rep % 5 == 1) b = a;
        if (rep % 5 == 2)
          for (std::size_t i = 0; i < n; ++i) b[i] |= a[i];  // a subset of b
        if (rep % 5 == 3) std::fill(a.begin(), a.end(), word{0});

        std::vector<word> r1(n), r2(n);
        ref.bit_and(r1.data(), a.data(), b.data(), n);
        act.bit_and(r2.data(), a.data(), b.data(), n);
        CHECK(r1 == r2);
        ref.bit_or(r1.data(), a.data(), b.data(), n);
        act.bit_or(r2.data(), a.data(), b.data(), n);
        CHECK(r1 == r2);
        ref.bit_andnot(r1.data(), a.data(), b.data(), n);
        act.bit_andnot(r2.data(), a.data(), b.data(), n);
        CHECK(r1 == r2);
        CHECK(ref.equal(a.data(), b.data(), n) == act.equal(a.data(), b.data(), n));
        CHECK(ref.subset(a.data(), b.data(), n) == act.subset(a.data(), b.data(), n));
        CHECK(ref.subset(b.data(), a.data(), n) == act.subset(b.data(), a.data(), n));
        CHECK(ref.intersects(a.data(), b.data(), n) == act.intersects(a.data(), b.data(), n));
        CHECK(ref.is_zero(a.data(), n) == act.is_zero(a.data(), n));
        CHECK(ref.popcount(a.data(), n) == act.popcount(a.data(), n));
      }
    }
  }
}

TEST_CASE("avx2 table, when present, matches scalar") {
  const bitk::Kernels* v = bitk::avx2_kernels();
  if (!v) return;  // machine without AVX2: dispatch already fell back to scalar
  const bitk::Kernels& ref = bitk::scalar_kernels();
  std::mt19937_64 rng(1234);
  for (int rep = 0; rep < 200; ++rep) {
    std::size_t n = rep % 13;
    std::vector<word> a = random_words(rng, n, rep % 3);
    std::vector<word> b = random_words(rng, n, rep % 2);
    CHECK(ref.equal(a.data(), b.data(), n) == v->equal(a.data(), b.data(), n));
    CHECK(ref.subset(a.data(), b.data(), n) == v->subset(a.data(), b.data(), n));
    CHECK(ref.intersects(a.data(), b.data(), n) == v->intersects(a.data(), b.data(), n));
    CHECK(ref.popcount(a.data(), n) == v->popcount(a.data(), n));
    CHECK(ref.is_zero(a.data(), n) == v->is_zero(a.data(), n));
    std::vector<word> r1(n), r2(n);
    ref.bit_andnot(r1.data(), a.data(), b.data(), n);
    v->bit_andnot(r2.data(), a.data(), b.data(), n);
    CHECK(r1 == r2);
  }
}

TEST_CASE("active dispatch picked a known backend") {
  const char* name = bitk::kernels().name;
  bool known = std::string(name) == "scalar" || std::string(name) == "avx2";
  CHECK(known);
}

TEST_CASE("bitset basics") {
  DenseBitset a(130);
  a.set(0);
  a.set(64);
  a.set(129);
  CHECK(a.count() == 3);
  CHECK(a.test(64));
  CHECK(!a.test(63));
  a.reset(64);
  CHECK(a.count() == 2);

  DenseBitset b(130);
  b.set(0);
  CHECK(a.contains_all(b));
  CHECK(!b.contains_all(a));
  CHECK(a.intersects(b));

  CHECK((a & b).count() == 1);
  CHECK((a | b).count() == 2);
  CHECK(a.and_not(b).count() == 1);

  auto idx = a.to_indices();
  CHECK(idx == std::vector<std::uint32_t>{0, 129});
}

TEST_CASE("canonical bitset order: smallest differing element wins") {
  DenseBitset a(70), b(70);
  a.set(3);
  b.set(5);
  CHECK(a.compare(b) < 0);  // 3 < 5, a contains it
  b.set(3);
  CHECK(a.compare(b) > 0);  // equal at 3, b also has 5 -> b smaller
  a.set(5);
  CHECK(a.compare(b) == 0);
  a.set(69);
  CHECK(a.compare(b) < 0);  // sole difference at 69, a contains it
}
