#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace sandtorsor {

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

/* Malformed input, unknown ids, or a precondition the caller violated. */
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/* An internal invariant or a proven property failed to hold. */
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/* Set of edge indices of one graph, stored as a 64-bit mask. */
class EdgeSet {
 public:
  static constexpr std::size_t capacity = 64;

  constexpr EdgeSet() = default;
  static constexpr EdgeSet from_bits(std::uint64_t bits) {
    EdgeSet s;
    s.bits_ = bits;
    return s;
  }
  static EdgeSet of(const std::vector<std::size_t>& edges) {
    EdgeSet s;
    for (std::size_t e : edges) s.insert(e);
    return s;
  }
  static constexpr EdgeSet first_n(std::size_t n) {
    return from_bits(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  constexpr bool contains(std::size_t e) const { return e < capacity && ((bits_ >> e) & 1U); }
  constexpr void insert(std::size_t e) { bits_ |= std::uint64_t{1} << e; }
  constexpr void erase(std::size_t e) { bits_ &= ~(std::uint64_t{1} << e); }
  constexpr EdgeSet with(std::size_t e) const {
    EdgeSet s = *this;
    s.insert(e);
    return s;
  }
  constexpr EdgeSet without(std::size_t e) const {
    EdgeSet s = *this;
    s.erase(e);
    return s;
  }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint64_t bits() const { return bits_; }

  std::vector<std::size_t> elements() const {
    std::vector<std::size_t> out;
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
    return out;
  }

  friend constexpr EdgeSet operator|(EdgeSet a, EdgeSet b) { return from_bits(a.bits_ | b.bits_); }
  friend constexpr EdgeSet operator&(EdgeSet a, EdgeSet b) { return from_bits(a.bits_ & b.bits_); }
  friend constexpr EdgeSet operator-(EdgeSet a, EdgeSet b) { return from_bits(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(EdgeSet a, EdgeSet b) = default;
  /* Lexicographic order on the sorted element lists. */
  friend bool operator<(EdgeSet a, EdgeSet b) { return a.elements() < b.elements(); }

 private:
  std::uint64_t bits_ = 0;
};

using SpanningTree = EdgeSet;

struct EdgeSetHash {
  std::size_t operator()(EdgeSet s) const noexcept { return std::hash<std::uint64_t>{}(s.bits()); }
};

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

/* Checked 64-bit chip arithmetic. */
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw InvariantViolation("chip count overflow");
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw InvariantViolation("chip count overflow");
  return r;
}

}  // namespace sandtorsor
