#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "billiard/dihedral.hpp"
#include "billiard/errors.hpp"

namespace billiard {

using Vertex = std::int32_t;

// ---------------------------------------------------------------------------
// The graph G(p1,p2,p3) = Cay({a,b,c}, D_n)
// ---------------------------------------------------------------------------

/// Undirected, 3-regular, edge-labelled graph on the 2n elements of D_n.
/// Vertex v and neighbor(v, g) are joined by the edge labelled g; since each
/// generator is an involution this relation is symmetric.
///
/// Vertex indexing is fixed: Rot(k) at index k for k in [0,n), Ref(k) at
/// index n+k. All exports and traces rely on this order being stable.
struct CayleyGraph {
  TriangleTriple triple;
  std::vector<std::array<Vertex, 3>> adjacency;  // [vertex][label]

  Int n() const { return triple.n; }
  Vertex vertex_count() const { return static_cast<Vertex>(adjacency.size()); }
  Int edge_count() const { return 3 * n(); }

  Vertex neighbor(Vertex v, Gen g) const { return adjacency[static_cast<size_t>(v)][gen_index(g)]; }

  DihedralElement element_of(Vertex v) const {
    return v < n() ? DihedralElement::rotation(v, n())
                   : DihedralElement::reflection(v - n(), n());
  }

  Vertex index_of(const DihedralElement& e) const {
    return static_cast<Vertex>(e.is_rotation() ? e.index : n() + e.index);
  }

  std::string vertex_name(Vertex v) const { return element_of(v).name(); }

  bool is_rotation_vertex(Vertex v) const { return v < n(); }

  /// Label of the edge joining u and v, if any.
  std::optional<Gen> edge_label(Vertex u, Vertex v) const {
    for (Gen g : kAllGens) {
      if (neighbor(u, g) == v) return g;
    }
    return std::nullopt;
  }
};

/// Builds the Cayley graph with edges given by left multiplication:
/// neighbor(v, g) = g * v.
inline CayleyGraph build_cayley(const TriangleTriple& t) {
  CayleyGraph g{t, {}};
  const Int n = t.n;
  g.adjacency.resize(static_cast<size_t>(2 * n));
  const std::array<DihedralElement, 3> gens = {
      generator_element(Gen::a, t), generator_element(Gen::b, t), generator_element(Gen::c, t)};
  for (Vertex v = 0; v < 2 * n; ++v) {
    const DihedralElement x = g.element_of(v);
    for (Gen lbl : kAllGens) {
      g.adjacency[static_cast<size_t>(v)][gen_index(lbl)] = g.index_of(compose(gens[gen_index(lbl)], x));
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Circuits
// ---------------------------------------------------------------------------

/// A closed walk given by a start vertex and a word with no immediate letter
/// repeat. Closed means the word evaluates to Rot(0).
struct Circuit {
  Vertex start = 0;
  std::vector<Gen> word;
};

inline bool circuit_is_closed(const CayleyGraph& g, const Circuit& c) {
  for (size_t i = 0; i + 1 < c.word.size(); ++i) {
    if (c.word[i] == c.word[i + 1]) return false;
  }
  return evaluate_word(std::span<const Gen>(c.word), g.triple).is_identity();
}

// ---------------------------------------------------------------------------
// Girth
// ---------------------------------------------------------------------------

/// Length of the shortest circuit, by breadth-first search from each vertex.
/// Always even (the graph is bipartite) and at least 4.
inline int girth(const CayleyGraph& g) {
  const Vertex vc = g.vertex_count();
  int best = std::numeric_limits<int>::max();
  std::vector<int> dist(static_cast<size_t>(vc));
  std::vector<Vertex> parent(static_cast<size_t>(vc));
  std::vector<Vertex> queue(static_cast<size_t>(vc));
  for (Vertex root = 0; root < vc && best > 4; ++root) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[static_cast<size_t>(root)] = 0;
    parent[static_cast<size_t>(root)] = -1;
    size_t head = 0, tail = 0;
    queue[tail++] = root;
    while (head < tail) {
      const Vertex u = queue[head++];
      const int du = dist[static_cast<size_t>(u)];
      if (2 * du + 1 >= best) break;  // no shorter cycle reachable
      for (Gen lbl : kAllGens) {
        const Vertex v = g.neighbor(u, lbl);
        if (dist[static_cast<size_t>(v)] < 0) {
          dist[static_cast<size_t>(v)] = du + 1;
          parent[static_cast<size_t>(v)] = u;
          queue[tail++] = v;
        } else if (v != parent[static_cast<size_t>(u)]) {
          best = std::min(best, du + dist[static_cast<size_t>(v)] + 1);
        }
      }
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Length-4 circuits
// ---------------------------------------------------------------------------

struct Length4Circuit {
  bool found = false;
  std::vector<Gen> word;  // empty unless found
};

namespace detail {

/// Generator with index k in 1..3 (g_1 = a, g_2 = b, g_3 = c).
inline Gen gen_at(int k) { return static_cast<Gen>(k - 1); }

}  // namespace detail

/// A length-4 circuit exists iff the triangle is isosceles or right.
/// Right triangle with p_r = n/2: the two other generators x,y give the
/// circuit xyxy. Isosceles with p_i = p_j: with z the remaining generator,
/// z g_i z g_j closes up. The returned word always evaluates to Rot(0).
inline Length4Circuit has_length4_circuit(const TriangleTriple& t) {
  Length4Circuit result;
  if (const int r = t.right_index(); r != 0) {
    std::vector<int> legs;
    for (int i = 1; i <= 3; ++i) {
      if (i != r) legs.push_back(i);
    }
    const Gen x = detail::gen_at(legs[0]);
    const Gen y = detail::gen_at(legs[1]);
    result.found = true;
    result.word = {x, y, x, y};
  } else if (const auto [i, j] = t.equal_pair(); i != 0) {
    const int k = 6 - i - j;
    const Gen z = detail::gen_at(k);
    result.found = true;
    result.word = {z, detail::gen_at(i), z, detail::gen_at(j)};
  }
  if (result.found && !evaluate_word(std::span<const Gen>(result.word), t).is_identity()) {
    throw internal_error("constructed length-4 word does not close");
  }
  return result;
}

// ---------------------------------------------------------------------------
// Identity-word enumeration
// ---------------------------------------------------------------------------

namespace detail {

/// Smallest representative of a word class under cyclic rotation and
/// reversal. `valid_only` restricts candidates to strings without adjacent
/// equal letters (so the representative is itself a usable word).
inline std::string word_class_min(const std::string& w, bool valid_only) {
  auto has_adjacent_repeat = [](const std::string& s) {
    for (size_t i = 0; i + 1 < s.size(); ++i) {
      if (s[i] == s[i + 1]) return true;
    }
    return false;
  };
  std::string best;
  std::string rev(w.rbegin(), w.rend());
  for (const std::string* base : {&w, &rev}) {
    std::string rot = *base;
    for (size_t i = 0; i < w.size(); ++i) {
      std::rotate(rot.begin(), rot.begin() + 1, rot.end());
      if (valid_only && has_adjacent_repeat(rot)) continue;
      if (best.empty() || rot < best) best = rot;
    }
  }
  return best;
}

}  // namespace detail

/// All words over {a,b,c} of length in [1, max_len] without immediate letter
/// repeats that evaluate to Rot(0), deduplicated up to cyclic rotation and
/// reversal. Each class is reported by its smallest valid member; output is
/// sorted by length, then lexicographically.
inline std::vector<std::string> enumerate_identity_words(const TriangleTriple& t, int max_len) {
  constexpr int kMaxEnumerationLength = 16;
  if (max_len > kMaxEnumerationLength) {
    throw resource_error("enumerate_identity_words: max_len " + std::to_string(max_len) +
                         " exceeds the guard " + std::to_string(kMaxEnumerationLength));
  }
  const std::array<DihedralElement, 3> gens = {
      generator_element(Gen::a, t), generator_element(Gen::b, t), generator_element(Gen::c, t)};

  std::map<std::string, std::string> classes;  // class key -> representative
  std::string word;
  std::vector<DihedralElement> stack = {DihedralElement::identity(t.n)};

  auto record = [&]() {
    const std::string key = detail::word_class_min(word, /*valid_only=*/false);
    const std::string rep = detail::word_class_min(word, /*valid_only=*/true);
    auto it = classes.find(key);
    if (it == classes.end()) {
      classes.emplace(key, rep);
    } else if (rep < it->second) {
      it->second = rep;
    }
  };

  // Iterative depth-first enumeration of repeat-free words.
  auto dfs = [&](auto&& self, int depth) -> void {
    if (depth > 0 && stack.back().is_identity()) record();
    if (depth == max_len) return;
    for (Gen g : kAllGens) {
      if (!word.empty() && word.back() == to_char(g)) continue;
      word.push_back(to_char(g));
      stack.push_back(compose(stack.back(), gens[gen_index(g)]));
      self(self, depth + 1);
      stack.pop_back();
      word.pop_back();
    }
  };
  dfs(dfs, 0);

  std::vector<std::string> out;
  out.reserve(classes.size());
  for (auto& [key, rep] : classes) out.push_back(rep);
  std::sort(out.begin(), out.end(), [](const std::string& x, const std::string& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  return out;
}

}  // namespace billiard
