#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <vector>

namespace codedcache {

using UserIndex = std::uint32_t;
using FileIndex = std::uint32_t;

/// Subset of at most 64 users, stored as a bit mask (bit u = user u).
class UserSet {
 public:
  static constexpr UserIndex kCapacity = 64;

  constexpr UserSet() = default;
  constexpr explicit UserSet(std::uint64_t bits) : bits_(bits) {}

  static constexpr UserSet single(UserIndex u) { return UserSet(std::uint64_t{1} << u); }
  static constexpr UserSet first(UserIndex n) {
    return UserSet(n >= kCapacity ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  constexpr bool contains(UserIndex u) const { return ((bits_ >> u) & 1U) != 0; }
  constexpr UserSet with(UserIndex u) const { return UserSet(bits_ | (std::uint64_t{1} << u)); }
  constexpr UserSet without(UserIndex u) const { return UserSet(bits_ & ~(std::uint64_t{1} << u)); }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint64_t bits() const { return bits_; }
  /// Smallest member; undefined for the empty set.
  constexpr UserIndex lowest() const { return static_cast<UserIndex>(std::countr_zero(bits_)); }

  template <class Fn>
  constexpr void for_each(Fn&& fn) const {
    for (std::uint64_t rest = bits_; rest != 0; rest &= rest - 1) {
      fn(static_cast<UserIndex>(std::countr_zero(rest)));
    }
  }

  std::vector<UserIndex> members() const {
    std::vector<UserIndex> out;
    out.reserve(static_cast<std::size_t>(size()));
    for_each([&](UserIndex u) { out.push_back(u); });
    return out;
  }

  friend constexpr auto operator<=>(UserSet, UserSet) = default;

 private:
  std::uint64_t bits_ = 0;
};

/// Lexicographic order on sorted member lists, for sets of equal size.
constexpr bool lex_less(UserSet a, UserSet b) {
  const std::uint64_t diff = a.bits() ^ b.bits();
  if (diff == 0) return false;
  return (a.bits() & (diff & (~diff + 1))) != 0;
}

}  // namespace codedcache
