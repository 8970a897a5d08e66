#pragma once

#include <cstdint>
#include <vector>

#include "kappa/bitkernels.hpp"

namespace kappa {

// Fixed-width bitset used for subgroup membership vectors. Width is the
// parent group's order and never changes after construction; bits past the
// width are kept zero so whole-word kernels can ignore them.
class DenseBitset {
 public:
  DenseBitset() = default;
  explicit DenseBitset(std::uint32_t nbits)
      : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

  static DenseBitset with_bit(std::uint32_t nbits, std::uint32_t i) {
    DenseBitset b(nbits);
    b.set(i);
    return b;
  }

  std::uint32_t size_bits() const { return nbits_; }
  std::size_t word_count() const { return words_.size(); }
  const bitk::word* data() const { return words_.data(); }

  void set(std::uint32_t i) { words_[i >> 6] |= bitk::word{1} << (i & 63); }
  void reset(std::uint32_t i) { words_[i >> 6] &= ~(bitk::word{1} << (i & 63)); }
  bool test(std::uint32_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

  std::size_t count() const;
  bool none() const;
  bool operator==(const DenseBitset& o) const;
  bool operator!=(const DenseBitset& o) const { return !(*this == o); }

  // this ⊇ other
  bool contains_all(const DenseBitset& other) const;
  bool intersects(const DenseBitset& other) const;

  DenseBitset operator&(const DenseBitset& o) const;
  DenseBitset operator|(const DenseBitset& o) const;
  DenseBitset and_not(const DenseBitset& o) const;
  DenseBitset& operator|=(const DenseBitset& o);
  DenseBitset& operator&=(const DenseBitset& o);

  // Canonical total order on membership vectors: at the lowest index where
  // the two differ, the set containing that element compares smaller.
  // Returns <0, 0, >0.
  int compare(const DenseBitset& o) const;

  std::size_t hash() const;

  std::vector<std::uint32_t> to_indices() const;

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      bitk::word x = words_[w];
      while (x) {
        std::uint32_t bit = static_cast<std::uint32_t>(__builtin_ctzll(x));
        f(static_cast<std::uint32_t>(w * 64 + bit));
        x &= x - 1;
      }
    }
  }

 private:
  std::uint32_t nbits_ = 0;
  std::vector<bitk::word> words_;
};

struct DenseBitsetHash {
  std::size_t operator()(const DenseBitset& b) const { return b.hash(); }
};

}  // namespace kappa
