#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace princlab {

// Dynamic bit set sized for small universes (element sets, partition blocks).
class Bits {
 public:
  Bits() = default;
  explicit Bits(size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  size_t universe() const { return n_; }

  bool test(size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(size_t i) { w_[i >> 6] |= uint64_t(1) << (i & 63); }
  void reset(size_t i) { w_[i >> 6] &= ~(uint64_t(1) << (i & 63)); }

  size_t count() const {
    size_t c = 0;
    for (uint64_t w : w_) c += std::popcount(w);
    return c;
  }

  bool any() const {
    for (uint64_t w : w_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  Bits& operator|=(const Bits& o) {
    for (size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
    return *this;
  }
  Bits& operator&=(const Bits& o) {
    for (size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
    return *this;
  }
  friend Bits operator|(Bits a, const Bits& b) { return a |= b; }
  friend Bits operator&(Bits a, const Bits& b) { return a &= b; }

  bool operator==(const Bits& o) const { return n_ == o.n_ && w_ == o.w_; }
  bool operator!=(const Bits& o) const { return !(*this == o); }

  bool subset_of(const Bits& o) const {
    for (size_t k = 0; k < w_.size(); ++k)
      if (w_[k] & ~o.w_[k]) return false;
    return true;
  }

  bool intersects(const Bits& o) const {
    for (size_t k = 0; k < w_.size(); ++k)
      if (w_[k] & o.w_[k]) return true;
    return false;
  }

  // Lowest set bit, or -1 when empty.
  int first() const {
    for (size_t k = 0; k < w_.size(); ++k)
      if (w_[k]) return int(k * 64 + std::countr_zero(w_[k]));
    return -1;
  }

  template <class F>
  void for_each(F f) const {
    for (size_t k = 0; k < w_.size(); ++k) {
      uint64_t w = w_[k];
      while (w) {
        f(size_t(k * 64 + std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  std::vector<size_t> to_vector() const {
    std::vector<size_t> out;
    for_each([&](size_t i) { out.push_back(i); });
    return out;
  }

  uint64_t hash() const {
    uint64_t h = 0xcbf29ce484222325ull ^ n_;
    for (uint64_t w : w_) {
      h ^= w;
      h *= 0x100000001b3ull;
    }
    return h;
  }

 private:
  size_t n_ = 0;
  std::vector<uint64_t> w_;
};

}  // namespace princlab
