#pragma once

#include <array>
#include <string>
#include <vector>

#include "dyadic.hpp"
#include "error.hpp"

namespace ocposet {

// A: endpoints closed, center closed   [---*---]
// B: endpoints open,   center open     (---o---)
// C: endpoints closed, center open     [---o---]
// D: endpoints open,   center closed   (---*---)
enum class IntervalType : unsigned char { A, B, C, D };

constexpr bool endpoint_open(IntervalType t) {
  return t == IntervalType::B || t == IntervalType::D;
}
constexpr bool center_open(IntervalType t) {
  return t == IntervalType::B || t == IntervalType::C;
}

constexpr char type_letter(IntervalType t) { return "ABCD"[static_cast<int>(t)]; }

inline IntervalType type_from_letter(char c) {
  switch (c) {
    case 'A': return IntervalType::A;
    case 'B': return IntervalType::B;
    case 'C': return IntervalType::C;
    case 'D': return IntervalType::D;
    default: fail(Errc::parse_error, std::string("invalid interval type '") + c + "'");
  }
}

// Non-empty subset of {A,B,C,D}.
class TypeSet {
public:
  TypeSet() = default;
  explicit TypeSet(unsigned mask) : mask_(mask & 0xFu) {}

  static TypeSet parse(const std::string& s) {
    if (s.empty()) fail(Errc::empty_type_set, "type set must be non-empty");
    unsigned mask = 0;
    for (char c : s) {
      unsigned bit = 1u << static_cast<int>(type_from_letter(c));
      if (mask & bit) fail(Errc::parse_error, "repeated letter in type set '" + s + "'");
      mask |= bit;
    }
    return TypeSet(mask);
  }

  static TypeSet all() { return TypeSet(0xFu); }

  unsigned mask() const { return mask_; }
  bool empty() const { return mask_ == 0; }
  int size() const { return __builtin_popcount(mask_); }
  bool contains(IntervalType t) const { return (mask_ >> static_cast<int>(t)) & 1u; }
  bool subset_of(TypeSet o) const { return (mask_ & ~o.mask_) == 0; }

  TypeSet swap_cd() const {
    unsigned ab = mask_ & 0b0011u;
    unsigned c = (mask_ >> 2) & 1u, d = (mask_ >> 3) & 1u;
    return TypeSet(ab | (d << 2) | (c << 3));
  }

  std::vector<IntervalType> types() const {  // ascending A < B < C < D
    std::vector<IntervalType> out;
    for (int t = 0; t < 4; ++t)
      if ((mask_ >> t) & 1u) out.push_back(static_cast<IntervalType>(t));
    return out;
  }

  std::string str() const {
    std::string s;
    for (auto t : types()) s.push_back(type_letter(t));
    return s;
  }

  // The 15 non-empty subsets ordered by size then alphabetically:
  // A B C D AB AC AD BC BD CD ABC ABD ACD BCD ABCD.
  static const std::array<TypeSet, 15>& all_nonempty() {  // by size, then lexicographic
    static const std::array<TypeSet, 15> sets = [] {
      std::array<TypeSet, 15> out;
      int k = 0;
      for (const char* s : {"A", "B", "C", "D", "AB", "AC", "AD", "BC", "BD", "CD", "ABC", "ABD",
                            "ACD", "BCD", "ABCD"})
        out[k++] = TypeSet::parse(s);
      return out;
    }();
    return sets;
  }

  friend bool operator==(TypeSet a, TypeSet b) { return a.mask_ == b.mask_; }
  friend bool operator!=(TypeSet a, TypeSet b) { return a.mask_ != b.mask_; }

private:
  unsigned mask_ = 0;
};

struct PlacedInterval {
  Dyadic center;
  IntervalType type = IntervalType::A;
  friend bool operator==(const PlacedInterval& a, const PlacedInterval& b) {
    return a.center == b.center && a.type == b.type;
  }
};

// Comparability predicate: with unit length 2, L = c-1 and R = c+1.
// x comes before y iff R(x) < c(y), or R(x) = c(y) with (R(x) open or c(y)
// open) and (L(y) open or c(x) open).
inline bool precedes(const PlacedInterval& x, const PlacedInterval& y) {
  Dyadic rx = x.center + 1;
  if (rx < y.center) return true;
  if (rx == y.center)
    return (endpoint_open(x.type) || center_open(y.type)) &&
           (endpoint_open(y.type) || center_open(x.type));
  return false;
}

// At center gap exactly 1, x comes before y iff one of them is type B, or
// both are C, or both are D.
constexpr bool gap_one_before(IntervalType a, IntervalType b) {
  return a == IntervalType::B || b == IntervalType::B ||
         (a == b && (a == IntervalType::C || a == IntervalType::D));
}

// The same relation phrased through center gaps; must agree with precedes.
inline bool center_rule(const PlacedInterval& x, const PlacedInterval& y) {
  Dyadic gap = y.center - x.center;
  if (gap > Dyadic(1)) return true;
  if (gap == Dyadic(1)) return gap_one_before(x.type, y.type);
  return false;
}

}  // namespace ocposet
