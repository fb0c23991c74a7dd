#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "billiard/cayley.hpp"
#include "billiard/dihedral.hpp"
#include "billiard/errors.hpp"
#include "billiard/rotation.hpp"

namespace billiard {

// ---------------------------------------------------------------------------
// K33 witnesses
// ---------------------------------------------------------------------------

/// A subdivision of K_{3,3} inside a Cayley graph: two branch triples and
/// nine connecting paths, one per (part_one[i], part_two[j]) pair, internally
/// disjoint from each other and from all branch vertices.
struct K33Witness {
  std::array<Vertex, 3> part_one{};
  std::array<Vertex, 3> part_two{};
  std::array<std::array<std::vector<Vertex>, 3>, 3> paths;  // [i][j], endpoints included
  std::array<Gen, 3> normalized_labels{Gen::a, Gen::b, Gen::c};  // (A,B,C) used
  std::string kind;
};

struct WitnessCheck {
  bool ok = false;
  std::string diagnostic;  // first violated condition, empty when ok
  explicit operator bool() const { return ok; }
};

/// Checks every witness invariant against the actual edges of `g` and names
/// the first violated condition.
inline WitnessCheck verify_k33_subdivision(const CayleyGraph& g, const K33Witness& w) {
  auto fail = [](std::string msg) { return WitnessCheck{false, std::move(msg)}; };

  std::set<Vertex> branch;
  for (Vertex v : w.part_one) branch.insert(v);
  for (Vertex v : w.part_two) branch.insert(v);
  if (branch.size() != 6) return fail("branch vertices not six distinct vertices");
  for (Vertex v : branch) {
    if (v < 0 || v >= g.vertex_count()) return fail("branch vertex out of range");
  }

  std::set<Vertex> internals;
  std::set<std::pair<Vertex, Vertex>> edges;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const auto& path = w.paths[i][j];
      if (path.empty()) return fail("missing path");
      if (path.front() != w.part_one[i] || path.back() != w.part_two[j]) {
        return fail("path endpoints do not match its branch pair");
      }
      std::set<Vertex> seen_here;
      for (size_t s = 0; s < path.size(); ++s) {
        if (!seen_here.insert(path[s]).second) return fail("path revisits a vertex");
        if (s + 1 < path.size()) {
          if (!g.edge_label(path[s], path[s + 1])) return fail("path step is not an edge");
          auto e = std::minmax(path[s], path[s + 1]);
          if (!edges.insert({e.first, e.second}).second) return fail("edge used twice");
        }
        if (s > 0 && s + 1 < path.size()) {
          if (branch.count(path[s]) != 0) return fail("path passes through a branch vertex");
          if (!internals.insert(path[s]).second) return fail("paths not internally disjoint");
        }
      }
    }
  }

  // Degree bookkeeping: 3 witness edges at each branch vertex, 2 at each
  // internal vertex.
  std::map<Vertex, int> degree;
  for (const auto& e : edges) {
    ++degree[e.first];
    ++degree[e.second];
  }
  for (Vertex v : branch) {
    if (degree[v] != 3) return fail("branch vertex degree is not 3");
  }
  for (Vertex v : internals) {
    if (degree[v] != 2) return fail("internal vertex degree is not 2");
  }
  return WitnessCheck{true, {}};
}

// ---------------------------------------------------------------------------
// Normalized label frames
// ---------------------------------------------------------------------------

/// Relabelling (A,B,C) of (a,b,c) for an isosceles triple with equal pair
/// (p_i, p_j): A is the generator opposite the apex angle, B = g_i, C = g_j.
/// In this frame A*B is a rotation of order n and C = A*B*A.
inline std::array<Gen, 3> isosceles_label_frame(const TriangleTriple& t) {
  const auto [i, j] = t.equal_pair();
  if (i == 0) throw validation_error("triangle is not isosceles");
  const int k = 6 - i - j;
  return {detail::gen_at(k), detail::gen_at(i), detail::gen_at(j)};
}

/// Relabelling (A,B,C) for a right triple with p_r = n/2: B = g_r, C is a
/// leg generator with odd numerator (so A*B has order n) and A the other
/// leg. In this frame C = A (B A)^{n/2}.
inline std::array<Gen, 3> right_label_frame(const TriangleTriple& t) {
  const int r = t.right_index();
  if (r == 0) throw validation_error("triangle has no right angle");
  std::array<int, 2> legs{};
  int idx = 0;
  for (int i = 1; i <= 3; ++i) {
    if (i != r) legs[idx++] = i;
  }
  const int c_idx = (t.p(legs[0]) % 2 == 1) ? legs[0] : legs[1];
  const int a_idx = legs[0] + legs[1] - c_idx;
  return {detail::gen_at(a_idx), detail::gen_at(r), detail::gen_at(c_idx)};
}

namespace detail {

/// The 2n-cycle on {A,B}-edges: position 2k holds (BA)^k, position 2k+1
/// holds A(BA)^k. Requires the pair to generate D_n.
inline std::vector<Vertex> two_generator_cycle(const CayleyGraph& g, Gen A, Gen B) {
  const Vertex count = g.vertex_count();
  std::vector<Vertex> cycle;
  cycle.reserve(static_cast<size_t>(count));
  std::vector<bool> seen(static_cast<size_t>(count), false);
  Vertex v = g.index_of(DihedralElement::identity(g.n()));
  for (Vertex j = 0; j < count; ++j) {
    if (seen[static_cast<size_t>(v)]) {
      throw internal_error("generator pair does not trace a single cycle");
    }
    seen[static_cast<size_t>(v)] = true;
    cycle.push_back(v);
    v = g.neighbor(v, j % 2 == 0 ? A : B);
  }
  if (v != cycle.front()) throw internal_error("two-generator cycle does not close");
  return cycle;
}

/// Follow edges labelled first, second, first, ... from `start` until
/// `target` is reached; returns all visited vertices including endpoints.
inline std::vector<Vertex> walk_alternating(const CayleyGraph& g, Vertex start, Gen first,
                                            Gen second, Vertex target) {
  std::vector<Vertex> path{start};
  Vertex v = start;
  for (Vertex step = 0; v != target; ++step) {
    if (step > 2 * g.vertex_count()) {
      throw internal_error("alternating walk failed to reach its target");
    }
    v = g.neighbor(v, step % 2 == 0 ? first : second);
    path.push_back(v);
  }
  return path;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Constructed witnesses
// ---------------------------------------------------------------------------

/// K33 witness for an isosceles triple with odd n. Branch sets are the first
/// six vertices of the {A,B}-cycle; seven pairs are joined by single edges
/// (five cycle edges and two C-chords) and the remaining two by long
/// alternating chord/cycle paths around the far side of the cycle. For n = 3
/// the walks collapse to single edges and the witness is the whole graph,
/// which is itself K_{3,3}.
inline K33Witness isosceles_odd_witness(const TriangleTriple& t) {
  if (!t.isosceles()) throw validation_error("triangle is not isosceles");
  if (t.n % 2 == 0) {
    throw validation_error("isosceles witness requires odd n; even n is the planar case");
  }
  const auto frame = isosceles_label_frame(t);
  const Gen A = frame[0], B = frame[1], C = frame[2];
  const CayleyGraph g = build_cayley(t);
  const std::vector<Vertex> cycle = detail::two_generator_cycle(g, A, B);

  K33Witness w;
  w.normalized_labels = frame;
  w.kind = (t.n == 3) ? "identity" : "isosceles-odd";
  w.part_one = {cycle[0], cycle[2], cycle[4]};
  w.part_two = {cycle[1], cycle[3], cycle[5]};

  auto edge_path = [&](int u, int v) { return std::vector<Vertex>{cycle[u], cycle[v]}; };
  w.paths[0][0] = edge_path(0, 1);                                         // A-edge
  w.paths[0][1] = edge_path(0, 3);                                         // C-chord
  w.paths[1][0] = edge_path(2, 1);                                         // B-edge
  w.paths[1][1] = edge_path(2, 3);                                         // A-edge
  w.paths[1][2] = edge_path(2, 5);                                         // C-chord
  w.paths[2][1] = edge_path(4, 3);                                         // B-edge
  w.paths[2][2] = edge_path(4, 5);                                         // A-edge
  w.paths[0][2] = detail::walk_alternating(g, cycle[0], B, C, cycle[5]);   // long path
  std::vector<Vertex> long2 = detail::walk_alternating(g, cycle[1], C, B, cycle[4]);
  std::reverse(long2.begin(), long2.end());
  w.paths[2][0] = std::move(long2);
  return w;
}

/// K33 witness for a right triple with p_r = n/2 and n > 4. Branch sets sit
/// at cycle positions {0, 4, n+2} and {3, n+1, n+5}; C-chords join positions
/// j and j+n+1, and the remaining pairs are connected along disjoint arcs of
/// the cycle.
inline K33Witness right_triangle_witness(const TriangleTriple& t) {
  if (!t.right()) throw validation_error("triangle has no right angle");
  if (t.n == 4) {
    throw validation_error(
        "n = 4 right triangle is isosceles; use the isosceles construction instead");
  }
  const auto frame = right_label_frame(t);
  const CayleyGraph g = build_cayley(t);
  const std::vector<Vertex> cycle = detail::two_generator_cycle(g, frame[0], frame[1]);
  const Int n = t.n;

  K33Witness w;
  w.normalized_labels = frame;
  w.kind = "right";
  w.part_one = {cycle[0], cycle[4], cycle[static_cast<size_t>(n + 2)]};
  w.part_two = {cycle[3], cycle[static_cast<size_t>(n + 1)], cycle[static_cast<size_t>(n + 5)]};

  auto arc = [&](Int from, Int to, int dir) {
    std::vector<Vertex> path;
    for (Int j = from;; j += dir) {
      const Int wrapped = ((j % (2 * n)) + 2 * n) % (2 * n);
      path.push_back(cycle[static_cast<size_t>(wrapped)]);
      if (wrapped == to) break;
    }
    return path;
  };
  w.paths[0][0] = arc(0, 3, +1);              // cycle arc 0..3
  w.paths[0][1] = {cycle[0], cycle[static_cast<size_t>(n + 1)]};   // C-chord
  w.paths[0][2] = arc(0, static_cast<Int>(n + 5), -1);             // arc 0,2n-1,..,n+5
  w.paths[1][0] = {cycle[4], cycle[3]};                            // B-edge
  w.paths[1][1] = arc(4, static_cast<Int>(n + 1), +1);             // arc 4..n+1
  w.paths[1][2] = {cycle[4], cycle[static_cast<size_t>(n + 5)]};   // C-chord
  w.paths[2][0] = {cycle[static_cast<size_t>(n + 2)], cycle[3]};   // C-chord
  w.paths[2][1] = {cycle[static_cast<size_t>(n + 2)], cycle[static_cast<size_t>(n + 1)]};
  w.paths[2][2] = arc(static_cast<Int>(n + 2), static_cast<Int>(n + 5), +1);
  return w;
}

// ---------------------------------------------------------------------------
// Planar embedding for even isosceles triples
// ---------------------------------------------------------------------------

namespace detail {

/// 0 when (l0,l1,l2) is a cyclic rotation of (a,b,c), 1 otherwise. Labels
/// must be distinct.
inline std::uint8_t cycle_bit(Gen l0, Gen l1, Gen /*l2*/) {
  return cyclic_next(l0) == l1 ? 0 : 1;
}

}  // namespace detail

/// Rotation system realizing the planar drawing for isosceles triples with
/// even n: the 2n-cycle on {A,B}-edges drawn as a circle, with the C-chords
/// attached alternately inside and outside. Tracing it yields exactly n+2
/// faces, hence genus 0.
inline RotationSystem isosceles_even_embedding(const TriangleTriple& t) {
  if (!t.isosceles()) throw validation_error("triangle is not isosceles");
  if (t.n % 2 != 0) {
    throw validation_error("planar embedding requires even n; odd n is the torus case");
  }
  const auto frame = isosceles_label_frame(t);
  const Gen A = frame[0], B = frame[1], C = frame[2];
  const CayleyGraph g = build_cayley(t);
  const std::vector<Vertex> cycle = detail::two_generator_cycle(g, A, B);

  RotationSystem rho = RotationSystem::all_zero(static_cast<size_t>(g.vertex_count()));
  const Int count = 2 * t.n;
  for (Int j = 0; j < count; ++j) {
    // Counterclockwise order of the three incident edges in the drawing.
    // Chords at positions 0 mod 4 run inside the circle, 2 mod 4 outside.
    std::array<Gen, 3> order{};
    switch (j % 4) {
      case 0: order = {A, C, B}; break;
      case 1: order = {B, A, C}; break;
      case 2: order = {A, B, C}; break;
      case 3: order = {B, C, A}; break;
    }
    rho.bits[static_cast<size_t>(cycle[static_cast<size_t>(j)])] =
        detail::cycle_bit(order[0], order[1], order[2]);
  }
  return rho;
}

// ---------------------------------------------------------------------------
// Brute-force witness search
// ---------------------------------------------------------------------------

inline constexpr Int kDefaultWitnessSearchBudget = Int{1} << 28;

namespace detail {

struct K33SearchState {
  const CayleyGraph* graph = nullptr;
  std::array<Vertex, 3> v1{}, v2{};
  std::vector<bool> blocked;  // branch vertices and committed internals
  std::array<std::array<std::vector<Vertex>, 3>, 3> paths;
  Int steps = 0;
  Int budget = 0;

  bool extend(int pair, std::vector<Vertex>& path, Vertex target);
  bool solve(int pair);
};

inline bool K33SearchState::extend(int pair, std::vector<Vertex>& path, Vertex target) {
  if (++steps > budget) {
    throw resource_error("K33 search exceeded budget " + std::to_string(budget));
  }
  const Vertex u = path.back();
  if (u == target) {
    paths[pair / 3][pair % 3] = path;
    for (size_t s = 1; s + 1 < path.size(); ++s) blocked[static_cast<size_t>(path[s])] = true;
    if (solve(pair + 1)) return true;
    for (size_t s = 1; s + 1 < path.size(); ++s) blocked[static_cast<size_t>(path[s])] = false;
    return false;
  }
  for (Gen lbl : kAllGens) {
    const Vertex next = graph->neighbor(u, lbl);
    if (next == target) {
      path.push_back(next);
      if (extend(pair, path, target)) return true;
      path.pop_back();
      continue;
    }
    if (blocked[static_cast<size_t>(next)]) continue;
    blocked[static_cast<size_t>(next)] = true;
    path.push_back(next);
    if (extend(pair, path, target)) return true;
    path.pop_back();
    blocked[static_cast<size_t>(next)] = false;
  }
  return false;
}

inline bool K33SearchState::solve(int pair) {
  if (pair == 9) return true;
  const Vertex from = v1[static_cast<size_t>(pair / 3)];
  const Vertex to = v2[static_cast<size_t>(pair % 3)];
  std::vector<Vertex> path{from};
  return extend(pair, path, to);
}

}  // namespace detail

/// Exhaustive search for a K33 subdivision: all branch 6-sets in canonical
/// order, then backtracking disjoint-path completion with neighbors tried in
/// label order. Returns the first witness found, or nothing if the graph is
/// planar. Guarded to 2n <= 24 vertices.
inline std::optional<K33Witness> generic_k33_search(const CayleyGraph& g,
                                                    Int budget = kDefaultWitnessSearchBudget) {
  const Vertex count = g.vertex_count();
  if (count > 24) {
    throw resource_error("generic K33 search limited to graphs with at most 24 vertices");
  }
  detail::K33SearchState state;
  state.graph = &g;
  state.budget = budget;

  std::array<Vertex, 6> pick{};
  // Branch sets in lexicographic order; (V1,V2) and (V2,V1) give the same
  // subdivision, so require min(V1) < min(V2).
  for (pick[0] = 0; pick[0] < count; ++pick[0])
    for (pick[1] = pick[0] + 1; pick[1] < count; ++pick[1])
      for (pick[2] = pick[1] + 1; pick[2] < count; ++pick[2])
        for (pick[3] = pick[0] + 1; pick[3] < count; ++pick[3]) {
          if (pick[3] == pick[1] || pick[3] == pick[2]) continue;
          for (pick[4] = pick[3] + 1; pick[4] < count; ++pick[4]) {
            if (pick[4] == pick[1] || pick[4] == pick[2]) continue;
            for (pick[5] = pick[4] + 1; pick[5] < count; ++pick[5]) {
              if (pick[5] == pick[1] || pick[5] == pick[2]) continue;
              state.v1 = {pick[0], pick[1], pick[2]};
              state.v2 = {pick[3], pick[4], pick[5]};
              state.blocked.assign(static_cast<size_t>(count), false);
              for (Vertex v : state.v1) state.blocked[static_cast<size_t>(v)] = true;
              for (Vertex v : state.v2) state.blocked[static_cast<size_t>(v)] = true;
              if (state.solve(0)) {
                K33Witness w;
                w.part_one = state.v1;
                w.part_two = state.v2;
                w.paths = state.paths;
                w.kind = "search";
                const WitnessCheck check = verify_k33_subdivision(g, w);
                if (!check.ok) {
                  throw internal_error("search produced an invalid witness: " + check.diagnostic);
                }
                return w;
              }
            }
          }
        }
  return std::nullopt;
}

}  // namespace billiard
