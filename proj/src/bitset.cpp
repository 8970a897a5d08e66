#include "kappa/bitset.hpp"

#include <bit>
#include <cassert>

namespace kappa {

namespace {
const bitk::Kernels& K() { return bitk::kernels(); }
}

std::size_t DenseBitset::count() const { return K().popcount(words_.data(), words_.size()); }

bool DenseBitset::none() const { return K().is_zero(words_.data(), words_.size()); }

bool DenseBitset::operator==(const DenseBitset& o) const {
  return nbits_ == o.nbits_ && K().equal(words_.data(), o.words_.data(), words_.size());
}

bool DenseBitset::contains_all(const DenseBitset& other) const {
  assert(nbits_ == other.nbits_);
  return K().subset(other.words_.data(), words_.data(), words_.size());
}

bool DenseBitset::intersects(const DenseBitset& other) const {
  assert(nbits_ == other.nbits_);
  return K().intersects(words_.data(), other.words_.data(), words_.size());
}

DenseBitset DenseBitset::operator&(const DenseBitset& o) const {
  assert(nbits_ == o.nbits_);
  DenseBitset r(nbits_);
  K().bit_and(r.words_.data(), words_.data(), o.words_.data(), words_.size());
  return r;
}

DenseBitset DenseBitset::operator|(const DenseBitset& o) const {
  assert(nbits_ == o.nbits_);
  DenseBitset r(nbits_);
  K().bit_or(r.words_.data(), words_.data(), o.words_.data(), words_.size());
  return r;
}

DenseBitset DenseBitset::and_not(const DenseBitset& o) const {
  assert(nbits_ == o.nbits_);
  DenseBitset r(nbits_);
  K().bit_andnot(r.words_.data(), words_.data(), o.words_.data(), words_.size());
  return r;
}

DenseBitset& DenseBitset::operator|=(const DenseBitset& o) {
  assert(nbits_ == o.nbits_);
  K().bit_or(words_.data(), words_.data(), o.words_.data(), words_.size());
  return *this;
}

DenseBitset& DenseBitset::operator&=(const DenseBitset& o) {
  assert(nbits_ == o.nbits_);
  K().bit_and(words_.data(), words_.data(), o.words_.data(), words_.size());
  return *this;
}

int DenseBitset::compare(const DenseBitset& o) const {
  assert(nbits_ == o.nbits_);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    bitk::word d = words_[w] ^ o.words_[w];
    if (!d) continue;
    bitk::word low = d & (~d + 1);
    return (words_[w] & low) ? -1 : 1;
  }
  return 0;
}

std::size_t DenseBitset::hash() const {
  // splitmix-style mix over the words
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ nbits_;
  for (bitk::word w : words_) {
    h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 0xbf58476d1ce4e5b9ull;
    h ^= h >> 27;
  }
  return static_cast<std::size_t>(h);
}

std::vector<std::uint32_t> DenseBitset::to_indices() const {
  std::vector<std::uint32_t> out;
  out.reserve(count());
  for_each([&](std::uint32_t i) { out.push_back(i); });
  return out;
}

}  // namespace kappa
