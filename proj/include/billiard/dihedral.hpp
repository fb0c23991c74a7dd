#pragma once

#include <array>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "billiard/errors.hpp"

namespace billiard {

using Int = std::int64_t;

/// Largest modulus accepted for group arithmetic. Keeps every index
/// computation comfortably inside 64-bit integers.
inline constexpr Int kMaxModulus = 1'000'000;

// ---------------------------------------------------------------------------
// Generator labels
// ---------------------------------------------------------------------------

/// The three reflection generators. Label a is the reflection across the
/// line parallel to the side opposite the first angle, and so on.
enum class Gen : std::uint8_t { a = 0, b = 1, c = 2 };

inline constexpr std::array<Gen, 3> kAllGens = {Gen::a, Gen::b, Gen::c};

constexpr char to_char(Gen g) { return static_cast<char>('a' + static_cast<int>(g)); }

constexpr int gen_index(Gen g) { return static_cast<int>(g); }

/// Successor in the fixed cyclic order a -> b -> c -> a.
constexpr Gen cyclic_next(Gen g) { return static_cast<Gen>((gen_index(g) + 1) % 3); }

constexpr Gen cyclic_prev(Gen g) { return static_cast<Gen>((gen_index(g) + 2) % 3); }

inline Gen gen_from_char(char ch) {
  if (ch < 'a' || ch > 'c') {
    throw validation_error(std::string("generator label must be one of a,b,c; got '") + ch + "'");
  }
  return static_cast<Gen>(ch - 'a');
}

inline std::vector<Gen> parse_word(std::string_view s) {
  std::vector<Gen> word;
  word.reserve(s.size());
  for (char ch : s) word.push_back(gen_from_char(ch));
  return word;
}

inline std::string word_to_string(std::span<const Gen> word) {
  std::string s;
  s.reserve(word.size());
  for (Gen g : word) s.push_back(to_char(g));
  return s;
}

// ---------------------------------------------------------------------------
// Triangles
// ---------------------------------------------------------------------------

/// A rational triangle with angles p1*pi/n, p2*pi/n, p3*pi/n where
/// n = p1+p2+p3 and gcd(p1,p2,p3) = 1. Inputs are kept in the order given;
/// constructions that need a normalized order record their permutation.
struct TriangleTriple {
  Int p1 = 0;
  Int p2 = 0;
  Int p3 = 0;
  Int n = 0;

  TriangleTriple(Int q1, Int q2, Int q3) : p1(q1), p2(q2), p3(q3), n(q1 + q2 + q3) {
    if (p1 < 1 || p2 < 1 || p3 < 1) {
      throw validation_error("all of p1,p2,p3 must be >= 1");
    }
    if (std::gcd(p1, std::gcd(p2, p3)) != 1) {
      throw validation_error("gcd(p1,p2,p3) must be 1");
    }
    if (n > kMaxModulus) {
      throw validation_error("n = p1+p2+p3 exceeds the modulus cap " + std::to_string(kMaxModulus));
    }
    // n >= 3 follows from the p_i >= 1 checks.
  }

  /// 1-based access: p(1), p(2), p(3).
  Int p(int i) const {
    switch (i) {
      case 1: return p1;
      case 2: return p2;
      case 3: return p3;
      default: throw validation_error("triple index must be 1, 2 or 3");
    }
  }

  bool isosceles() const { return p1 == p2 || p1 == p3 || p2 == p3; }

  /// True when some angle equals pi/2, i.e. some p_i = n/2.
  bool right() const { return n % 2 == 0 && (2 * p1 == n || 2 * p2 == n || 2 * p3 == n); }

  /// 1-based index of the right angle, or 0 when there is none.
  int right_index() const {
    if (n % 2 != 0) return 0;
    for (int i = 1; i <= 3; ++i) {
      if (2 * p(i) == n) return i;
    }
    return 0;
  }

  /// First equal pair (i,j), i<j, or (0,0) when scalene.
  std::array<int, 2> equal_pair() const {
    if (p1 == p2) return {1, 2};
    if (p1 == p3) return {1, 3};
    if (p2 == p3) return {2, 3};
    return {0, 0};
  }

  friend bool operator==(const TriangleTriple&, const TriangleTriple&) = default;
};

// ---------------------------------------------------------------------------
// Dihedral elements
// ---------------------------------------------------------------------------

/// An element of D_n as an exact Euclidean isometry fixing the origin:
/// rotation(k) is rotation by 2k*pi/n, reflection(k) is the reflection across
/// the line at angle k*pi/n. Indices are always reduced mod n.
struct DihedralElement {
  enum class Kind : std::uint8_t { rotation, reflection };

  Kind kind = Kind::rotation;
  Int index = 0;
  Int modulus = 1;

  static DihedralElement rotation(Int k, Int n) { return make(Kind::rotation, k, n); }
  static DihedralElement reflection(Int k, Int n) { return make(Kind::reflection, k, n); }
  static DihedralElement identity(Int n) { return rotation(0, n); }

  bool is_rotation() const { return kind == Kind::rotation; }
  bool is_reflection() const { return kind == Kind::reflection; }
  bool is_identity() const { return is_rotation() && index == 0; }

  /// "Rk" for rotations, "Fk" for reflections; used in DOT and JSON output.
  std::string name() const {
    return (is_rotation() ? "R" : "F") + std::to_string(index);
  }

  friend bool operator==(const DihedralElement&, const DihedralElement&) = default;

 private:
  static DihedralElement make(Kind kind, Int k, Int n) {
    if (n < 1 || n > kMaxModulus) {
      throw validation_error("modulus out of range [1, " + std::to_string(kMaxModulus) + "]");
    }
    DihedralElement e;
    e.kind = kind;
    e.index = ((k % n) + n) % n;
    e.modulus = n;
    return e;
  }
};

/// Group law, translated to integer indices:
///   Ref(k1)Ref(k2) = Rot(k1-k2)   Ref(k1)Rot(k)  = Ref(k1-k)
///   Rot(k)Ref(k2)  = Ref(k2+k)    Rot(k1)Rot(k2) = Rot(k1+k2)
/// The product x*y acts by applying y first.
inline DihedralElement compose(const DihedralElement& x, const DihedralElement& y) {
  if (x.modulus != y.modulus) {
    throw validation_error("cannot compose elements with different moduli (" +
                           std::to_string(x.modulus) + " vs " + std::to_string(y.modulus) + ")");
  }
  const Int n = x.modulus;
  if (x.is_reflection() && y.is_reflection()) {
    return DihedralElement::rotation(x.index - y.index, n);
  }
  if (x.is_reflection()) {
    return DihedralElement::reflection(x.index - y.index, n);
  }
  if (y.is_reflection()) {
    return DihedralElement::reflection(y.index + x.index, n);
  }
  return DihedralElement::rotation(x.index + y.index, n);
}

inline DihedralElement inverse(const DihedralElement& x) {
  if (x.is_reflection()) return x;
  return DihedralElement::rotation(-x.index, x.modulus);
}

/// The reflections attached to the triangle's sides:
///   a = Ref(0), b = Ref(n - p3), c = Ref(p2).
/// This is the unique assignment (up to a global conjugation, fixed here)
/// with a*b = Rot(p3), a*c = Rot(-p2) and a*b*a = Ref(p3).
inline DihedralElement generator_element(Gen label, const TriangleTriple& t) {
  switch (label) {
    case Gen::a: return DihedralElement::reflection(0, t.n);
    case Gen::b: return DihedralElement::reflection(t.n - t.p3, t.n);
    case Gen::c: return DihedralElement::reflection(t.p2, t.n);
  }
  throw validation_error("invalid generator label");
}

/// Left-to-right product of the word's generators; the empty word is Rot(0).
inline DihedralElement evaluate_word(std::span<const Gen> word, const TriangleTriple& t) {
  DihedralElement acc = DihedralElement::identity(t.n);
  for (Gen g : word) acc = compose(acc, generator_element(g, t));
  return acc;
}

inline DihedralElement evaluate_word(std::string_view word, const TriangleTriple& t) {
  const std::vector<Gen> parsed = parse_word(word);
  return evaluate_word(std::span<const Gen>(parsed), t);
}

/// Smallest k >= 1 with x^k = Rot(0): 1 for the identity, 2 for reflections,
/// n/gcd(n,k) for Rot(k).
inline Int element_order(const DihedralElement& x) {
  if (x.is_reflection()) return 2;
  if (x.index == 0) return 1;
  return x.modulus / std::gcd(x.modulus, x.index);
}

/// True when the two labelled reflections generate all of D_n, i.e. their
/// product rotation has order n.
inline bool pair_generates(Gen l1, Gen l2, const TriangleTriple& t) {
  if (l1 == l2) {
    throw validation_error("pair_generates requires two distinct labels");
  }
  const DihedralElement rot = compose(generator_element(l1, t), generator_element(l2, t));
  return element_order(rot) == t.n;
}

}  // namespace billiard
