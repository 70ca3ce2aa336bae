#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace rtlab {

/// Fixed-width dynamic bitset sized once per graph; the clique searches
/// intersect these word by word.
class Bitset {
public:
  Bitset() = default;
  explicit Bitset(int bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

  int size() const noexcept { return bits_; }
  int word_count() const noexcept { return static_cast<int>(words_.size()); }

  void set(int i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(int i) noexcept { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(int i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void clear() noexcept { std::fill(words_.begin(), words_.end(), 0); }

  int count() const noexcept {
    int c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
  }
  bool any() const noexcept {
    for (auto w : words_) {
      if (w) return true;
    }
    return false;
  }
  bool none() const noexcept { return !any(); }

  /// Lowest set index, or -1.
  int first() const noexcept {
    for (int k = 0; k < word_count(); ++k) {
      if (words_[k]) return k * 64 + std::countr_zero(words_[k]);
    }
    return -1;
  }
  /// Lowest set index strictly greater than i, or -1.
  int next(int i) const noexcept {
    ++i;
    if (i >= bits_) return -1;
    int k = i >> 6;
    std::uint64_t w = words_[k] & (~std::uint64_t{0} << (i & 63));
    while (true) {
      if (w) return k * 64 + std::countr_zero(w);
      if (++k >= word_count()) return -1;
      w = words_[k];
    }
  }

  /// Clears every index <= i.
  void clear_through(int i) noexcept {
    const int k = i >> 6;
    for (int j = 0; j < k; ++j) words_[j] = 0;
    if ((i & 63) == 63) {
      words_[k] = 0;
    } else {
      words_[k] &= ~std::uint64_t{0} << ((i & 63) + 1);
    }
  }

  /// this = a & b without reallocating.
  void assign_and(const Bitset& a, const Bitset& b) noexcept {
    for (int k = 0; k < word_count(); ++k) words_[k] = a.words_[k] & b.words_[k];
  }
  int and_count(const Bitset& b) const noexcept {
    int c = 0;
    for (int k = 0; k < word_count(); ++k) c += std::popcount(words_[k] & b.words_[k]);
    return c;
  }

  Bitset& operator&=(const Bitset& b) noexcept {
    for (int k = 0; k < word_count(); ++k) words_[k] &= b.words_[k];
    return *this;
  }
  Bitset& operator|=(const Bitset& b) noexcept {
    for (int k = 0; k < word_count(); ++k) words_[k] |= b.words_[k];
    return *this;
  }
  Bitset& operator-=(const Bitset& b) noexcept {
    for (int k = 0; k < word_count(); ++k) words_[k] &= ~b.words_[k];
    return *this;
  }
  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
  friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
  friend Bitset operator-(Bitset a, const Bitset& b) { return a -= b; }
  friend bool operator==(const Bitset&, const Bitset&) = default;

  template <class F>
  void for_each(F&& f) const {
    for (int k = 0; k < word_count(); ++k) {
      std::uint64_t w = words_[k];
      while (w) {
        f(k * 64 + std::countr_zero(w));
        w &= w - 1;
      }
    }
  }

  static Bitset full(int bits) {
    Bitset b(bits);
    for (int i = 0; i < bits; ++i) b.set(i);
    return b;
  }

private:
  int bits_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace rtlab
