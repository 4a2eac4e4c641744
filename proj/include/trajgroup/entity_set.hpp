#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace trajgroup {

using EntityId = std::uint32_t;

/// Fixed-capacity bitset over entity indices 0..capacity-1.
class EntitySet {
 public:
  EntitySet() = default;
  explicit EntitySet(std::size_t capacity)
      : capacity_(capacity), words_((capacity + 63) / 64, 0) {}

  EntitySet(std::size_t capacity, std::initializer_list<EntityId> members) : EntitySet(capacity) {
    for (EntityId e : members) insert(e);
  }

  static EntitySet full(std::size_t capacity) {
    EntitySet s(capacity);
    for (std::size_t i = 0; i < capacity; ++i) s.insert(static_cast<EntityId>(i));
    return s;
  }

  std::size_t capacity() const noexcept { return capacity_; }

  void insert(EntityId e) { words_[e >> 6] |= std::uint64_t{1} << (e & 63); }
  void erase(EntityId e) { words_[e >> 6] &= ~(std::uint64_t{1} << (e & 63)); }
  bool contains(EntityId e) const {
    return e < capacity_ && (words_[e >> 6] >> (e & 63)) & 1u;
  }

  std::size_t size() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool empty() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
  }

  /// Smallest member; capacity() if empty.
  EntityId first() const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i]) return static_cast<EntityId>(i * 64 + std::countr_zero(words_[i]));
    return static_cast<EntityId>(capacity_);
  }

  bool subset_of(const EntitySet& other) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~other.word(i)) return false;
    return true;
  }
  bool intersects(const EntitySet& other) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & other.word(i)) return true;
    return false;
  }

  EntitySet& operator|=(const EntitySet& o) {
    grow_to(o.capacity_);
    for (std::size_t i = 0; i < o.words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  EntitySet& operator&=(const EntitySet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.word(i);
    return *this;
  }
  EntitySet& operator-=(const EntitySet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.word(i);
    return *this;
  }
  friend EntitySet operator|(EntitySet a, const EntitySet& b) { return a |= b; }
  friend EntitySet operator&(EntitySet a, const EntitySet& b) { return a &= b; }
  friend EntitySet operator-(EntitySet a, const EntitySet& b) { return a -= b; }

  /// Complement within capacity.
  EntitySet complement() const {
    EntitySet c = full(capacity_);
    return c -= *this;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        f(static_cast<EntityId>(i * 64 + std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  std::vector<EntityId> members() const {
    std::vector<EntityId> out;
    out.reserve(size());
    for_each([&](EntityId e) { out.push_back(e); });
    return out;
  }

  friend bool operator==(const EntitySet& a, const EntitySet& b) noexcept {
    const std::size_t n = std::max(a.words_.size(), b.words_.size());
    for (std::size_t i = 0; i < n; ++i)
      if (a.word(i) != b.word(i)) return false;
    return true;
  }

  /// Lexicographic order of the ascending member lists.
  friend bool operator<(const EntitySet& a, const EntitySet& b) {
    const std::size_t n = std::max(a.words_.size(), b.words_.size());
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t x = a.word(i), y = b.word(i);
      if (x == y) continue;
      const std::uint64_t diff = x ^ y;
      const std::uint64_t low = diff & (~diff + 1);
      // The set owning the lowest differing element sorts first, unless the
      // other set has run out of elements below that point.
      const bool a_has = (x & low) != 0;
      const std::uint64_t below = low - 1;
      const bool a_more = ((x & ~below) & ~low) != 0 || later_nonzero(a, i + 1);
      const bool b_more = ((y & ~below) & ~low) != 0 || later_nonzero(b, i + 1);
      if (a_has) return b_more;   // a = prefix + e..., b = prefix + (something > e or nothing)
      return !a_more;              // b has e; a is less only if a ends here
    }
    return false;
  }

  std::size_t hash() const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto w : words_) {
      if (w == 0) continue;
      h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

 private:
  std::uint64_t word(std::size_t i) const noexcept { return i < words_.size() ? words_[i] : 0; }
  static bool later_nonzero(const EntitySet& s, std::size_t from) noexcept {
    for (std::size_t i = from; i < s.words_.size(); ++i)
      if (s.words_[i]) return true;
    return false;
  }
  void grow_to(std::size_t cap) {
    if (cap <= capacity_) return;
    capacity_ = cap;
    words_.resize((cap + 63) / 64, 0);
  }

  std::size_t capacity_ = 0;
  std::vector<std::uint64_t> words_;
};

struct EntitySetHash {
  std::size_t operator()(const EntitySet& s) const noexcept { return s.hash(); }
};

}  // namespace trajgroup
