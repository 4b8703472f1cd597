#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace typesim {

// Fixed-width bitset sized at construction. Extension tables are stored as
// one bit per assignment tuple, so intersection is a word-wise AND and the
// quantifier projections are stride walks. Word count stays tiny for
// desk-scale structures (|domain|^vars bits).
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t nbits, bool value = false)
      : nbits_(nbits), words_((nbits + 63) / 64, value ? ~0ull : 0ull) {
    trim();
  }

  std::size_t size() const { return nbits_; }

  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { words_[i >> 6] |= 1ull << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(1ull << (i & 63)); }

  std::size_t count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(__builtin_popcountll(w));
    return n;
  }
  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }
  bool all() const {
    Bitset full(nbits_, true);
    return *this == full;
  }

  Bitset& operator&=(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  Bitset& operator|=(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
  friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }

  bool operator==(const Bitset& o) const { return nbits_ == o.nbits_ && words_ == o.words_; }
  bool operator!=(const Bitset& o) const { return !(*this == o); }

  // Subset test; both operands must have equal size.
  bool subset_of(const Bitset& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }

  std::size_t hash() const {
    std::size_t h = nbits_;
    for (auto w : words_) h = h * 1000003ull ^ std::hash<std::uint64_t>{}(w);
    return h;
  }

  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  void trim() {
    if (nbits_ & 63) words_.back() &= (1ull << (nbits_ & 63)) - 1;
  }
  std::size_t nbits_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace typesim
