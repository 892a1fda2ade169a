#pragma once

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace prarg {

// Dense bitset over a graph's argument indices 0..size()-1.
class ArgSet {
 public:
  ArgSet() = default;
  explicit ArgSet(std::size_t universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}

  static ArgSet full(std::size_t universe) {
    ArgSet s(universe);
    for (auto& w : s.words_) w = ~std::uint64_t{0};
    s.trim();
    return s;
  }

  // Lowest `universe` bits of `mask`; universe must be <= 64.
  static ArgSet from_mask(std::size_t universe, std::uint64_t mask) {
    assert(universe <= 64);
    ArgSet s(universe);
    if (universe > 0) s.words_[0] = mask;
    s.trim();
    return s;
  }

  std::size_t universe() const noexcept { return universe_; }

  void set(std::size_t i) {
    assert(i < universe_);
    words_[i >> 6] |= bit(i);
  }
  void reset(std::size_t i) {
    assert(i < universe_);
    words_[i >> 6] &= ~bit(i);
  }
  bool test(std::size_t i) const {
    assert(i < universe_);
    return (words_[i >> 6] & bit(i)) != 0;
  }

  bool any() const noexcept {
    return std::any_of(words_.begin(), words_.end(),
                       [](std::uint64_t w) { return w != 0; });
  }
  bool none() const noexcept { return !any(); }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  // Index of the lowest member, or universe() when empty.
  std::size_t lowest() const noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] != 0)
        return k * 64 + static_cast<std::size_t>(std::countr_zero(words_[k]));
    return universe_;
  }

  bool intersects(const ArgSet& o) const {
    assert(o.universe_ == universe_);
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & o.words_[k]) return true;
    return false;
  }

  bool subset_of(const ArgSet& o) const {
    assert(o.universe_ == universe_);
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & ~o.words_[k]) return false;
    return true;
  }

  bool proper_subset_of(const ArgSet& o) const { return subset_of(o) && *this != o; }

  ArgSet& operator&=(const ArgSet& o) {
    assert(o.universe_ == universe_);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
    return *this;
  }
  ArgSet& operator|=(const ArgSet& o) {
    assert(o.universe_ == universe_);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
    return *this;
  }
  // Set difference.
  ArgSet& operator-=(const ArgSet& o) {
    assert(o.universe_ == universe_);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
    return *this;
  }

  friend ArgSet operator&(ArgSet a, const ArgSet& b) { return a &= b; }
  friend ArgSet operator|(ArgSet a, const ArgSet& b) { return a |= b; }
  friend ArgSet operator-(ArgSet a, const ArgSet& b) { return a -= b; }

  ArgSet complement() const {
    ArgSet s(universe_);
    for (std::size_t k = 0; k < words_.size(); ++k) s.words_[k] = ~words_[k];
    s.trim();
    return s;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      std::uint64_t w = words_[k];
      while (w != 0) {
        f(k * 64 + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    out.reserve(count());
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  // First word; meaningful when universe() <= 64.
  std::uint64_t low_word() const noexcept { return words_.empty() ? 0 : words_[0]; }

  friend bool operator==(const ArgSet&, const ArgSet&) = default;
  friend auto operator<=>(const ArgSet& a, const ArgSet& b) {
    // Ordered by universe, then by membership read as a little-endian number.
    if (auto c = a.universe_ <=> b.universe_; c != 0) return c;
    for (std::size_t k = a.words_.size(); k-- > 0;)
      if (auto c = a.words_[k] <=> b.words_[k]; c != 0) return c;
    return std::strong_ordering::equal;
  }

 private:
  static constexpr std::uint64_t bit(std::size_t i) { return std::uint64_t{1} << (i & 63); }

  void trim() {
    if (universe_ % 64 != 0 && !words_.empty())
      words_.back() &= (std::uint64_t{1} << (universe_ % 64)) - 1;
  }

  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

// Single-word set for graphs of at most 64 arguments; same surface as ArgSet
// so the labelling and semantics kernels can be instantiated on either.
class SmallSet {
 public:
  constexpr SmallSet() = default;
  constexpr explicit SmallSet(std::uint64_t mask) : w_(mask) {}

  constexpr void set(std::size_t i) { w_ |= std::uint64_t{1} << i; }
  constexpr void reset(std::size_t i) { w_ &= ~(std::uint64_t{1} << i); }
  constexpr bool test(std::size_t i) const { return (w_ >> i) & 1u; }
  constexpr bool any() const noexcept { return w_ != 0; }
  constexpr bool none() const noexcept { return w_ == 0; }
  std::size_t count() const noexcept { return static_cast<std::size_t>(std::popcount(w_)); }
  std::size_t lowest() const noexcept {
    return w_ == 0 ? 64 : static_cast<std::size_t>(std::countr_zero(w_));
  }
  constexpr bool intersects(SmallSet o) const { return (w_ & o.w_) != 0; }
  constexpr bool subset_of(SmallSet o) const { return (w_ & ~o.w_) == 0; }
  constexpr bool proper_subset_of(SmallSet o) const { return subset_of(o) && w_ != o.w_; }

  constexpr SmallSet& operator&=(SmallSet o) { w_ &= o.w_; return *this; }
  constexpr SmallSet& operator|=(SmallSet o) { w_ |= o.w_; return *this; }
  constexpr SmallSet& operator-=(SmallSet o) { w_ &= ~o.w_; return *this; }
  friend constexpr SmallSet operator&(SmallSet a, SmallSet b) { return a &= b; }
  friend constexpr SmallSet operator|(SmallSet a, SmallSet b) { return a |= b; }
  friend constexpr SmallSet operator-(SmallSet a, SmallSet b) { return a -= b; }

  template <class F>
  void for_each(F&& f) const {
    std::uint64_t w = w_;
    while (w != 0) {
      f(static_cast<std::size_t>(std::countr_zero(w)));
      w &= w - 1;
    }
  }

  constexpr std::uint64_t mask() const noexcept { return w_; }

  friend constexpr bool operator==(SmallSet, SmallSet) = default;

 private:
  std::uint64_t w_ = 0;
};

}  // namespace prarg
