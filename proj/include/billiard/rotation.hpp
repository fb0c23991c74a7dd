#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include "billiard/cayley.hpp"
#include "billiard/dihedral.hpp"
#include "billiard/errors.hpp"

namespace billiard {

/// Default cap on the number of rotation systems an exhaustive search may
/// enumerate (2^30). Overridable per call and via the CLI.
inline constexpr Int kDefaultRotationBudget = Int{1} << 30;

// ---------------------------------------------------------------------------
// Rotation systems
// ---------------------------------------------------------------------------

/// A dart is half an edge: "leave `vertex` along the edge labelled `label`".
struct Dart {
  Vertex vertex = 0;
  Gen label = Gen::a;
  friend bool operator==(const Dart&, const Dart&) = default;
};

/// Cyclic order of the three incident edge labels at every vertex. Because
/// the graph is cubic there are only two cyclic orders, so one bit per
/// vertex suffices: 0 means (a,b,c), 1 means (a,c,b).
struct RotationSystem {
  std::vector<std::uint8_t> bits;

  static RotationSystem all_zero(size_t vertex_count) {
    return RotationSystem{std::vector<std::uint8_t>(vertex_count, 0)};
  }

  /// Decode vertex v from bit v of `encoding` (vertex 0 = least significant).
  static RotationSystem from_encoding(std::uint64_t encoding, size_t vertex_count) {
    RotationSystem rho{std::vector<std::uint8_t>(vertex_count, 0)};
    for (size_t v = 0; v < vertex_count; ++v) {
      rho.bits[v] = static_cast<std::uint8_t>((encoding >> v) & 1);
    }
    return rho;
  }

  std::uint64_t encoding() const {
    if (bits.size() > 64) {
      throw resource_error("rotation encoding only defined for at most 64 vertices");
    }
    std::uint64_t e = 0;
    for (size_t v = 0; v < bits.size(); ++v) e |= static_cast<std::uint64_t>(bits[v]) << v;
    return e;
  }

  /// Label following g in the cyclic order at v.
  Gen next_label(Vertex v, Gen g) const {
    return bits[static_cast<size_t>(v)] == 0 ? cyclic_next(g) : cyclic_prev(g);
  }
};

/// The canonical rotation: order (a,b,c) at every vertex. Its face trace
/// always produces n hexagonal faces, which pins the graph genus at <= 1.
inline RotationSystem canonical_rotation(const CayleyGraph& g) {
  return RotationSystem::all_zero(static_cast<size_t>(g.vertex_count()));
}

// ---------------------------------------------------------------------------
// Face tracing
// ---------------------------------------------------------------------------

/// Faces induced by a rotation system; every one of the 6n darts appears in
/// exactly one face, exactly once.
struct FaceTrace {
  std::vector<std::vector<Dart>> faces;

  size_t face_count() const { return faces.size(); }

  size_t dart_count() const {
    size_t total = 0;
    for (const auto& f : faces) total += f.size();
    return total;
  }

  /// Edge labels read around face `i`.
  std::string face_word(size_t i) const {
    std::string w;
    for (const Dart& d : faces[i]) w.push_back(to_char(d.label));
    return w;
  }

  /// Vertices visited around face `i` (the source of each dart).
  std::vector<Vertex> face_vertices(size_t i) const {
    std::vector<Vertex> vs;
    vs.reserve(faces[i].size());
    for (const Dart& d : faces[i]) vs.push_back(d.vertex);
    return vs;
  }
};

namespace detail {

inline size_t dart_id(Vertex v, Gen g) { return 3 * static_cast<size_t>(v) + gen_index(g); }

/// Successor of dart (u,g): land at v = neighbor(u,g), continue along the
/// label following g in the rotation at v. This is the rule "the circuit
/// containing ..v_i v_j continues with the vertex after v_i in the rotation
/// of v_j", phrased on darts.
inline Dart next_dart(const CayleyGraph& g, const RotationSystem& rho, const Dart& d) {
  const Vertex v = g.neighbor(d.vertex, d.label);
  return Dart{v, rho.next_label(v, d.label)};
}

}  // namespace detail

/// Splits all 6n darts into the closed circuits induced by `rho`. Faces are
/// discovered in canonical dart order (vertex index, then label a < b < c),
/// and each face starts at its lowest dart, so output is deterministic.
inline FaceTrace trace_faces(const CayleyGraph& g, const RotationSystem& rho) {
  if (rho.bits.size() != static_cast<size_t>(g.vertex_count())) {
    throw validation_error("rotation system does not cover every vertex");
  }
  const size_t total_darts = 3 * static_cast<size_t>(g.vertex_count());
  std::vector<bool> used(total_darts, false);
  FaceTrace trace;
  for (size_t start = 0; start < total_darts; ++start) {
    if (used[start]) continue;
    std::vector<Dart> face;
    Dart d{static_cast<Vertex>(start / 3), static_cast<Gen>(start % 3)};
    do {
      used[detail::dart_id(d.vertex, d.label)] = true;
      face.push_back(d);
      d = detail::next_dart(g, rho, d);
    } while (detail::dart_id(d.vertex, d.label) != start);
    trace.faces.push_back(std::move(face));
  }
  return trace;
}

// ---------------------------------------------------------------------------
// Genus
// ---------------------------------------------------------------------------

/// Euler data of one embedded rotation: p - q + r = 2 - 2g.
struct GenusReport {
  Int p = 0;  // vertices
  Int q = 0;  // edges
  Int r = 0;  // faces
  Int g = 0;  // genus of the induced embedding
};

inline GenusReport genus_from_counts(Int p, Int q, Int r) {
  const Int chi = p - q + r;
  if ((2 - chi) % 2 != 0 || chi > 2) {
    throw internal_error("Euler characteristic " + std::to_string(chi) +
                         " is not of the form 2-2g with g >= 0");
  }
  return GenusReport{p, q, r, (2 - chi) / 2};
}

/// Genus of the embedding induced by `rho` (an upper bound for the graph
/// genus; the graph genus is the minimum over all rotations).
inline GenusReport genus_of_rotation(const CayleyGraph& g, const RotationSystem& rho) {
  const FaceTrace trace = trace_faces(g, rho);
  return genus_from_counts(2 * g.n(), 3 * g.n(), static_cast<Int>(trace.face_count()));
}

// ---------------------------------------------------------------------------
// Exhaustive maximal-rotation search
// ---------------------------------------------------------------------------

namespace detail {

/// Flat tables for the search inner loop: for each dart, the two possible
/// successors depending on the head vertex's rotation bit.
struct DartTables {
  std::vector<std::uint8_t> head;   // head vertex of each dart
  std::vector<std::uint8_t> succ0;  // successor when head bit = 0
  std::vector<std::uint8_t> succ1;  // successor when head bit = 1
};

inline DartTables build_dart_tables(const CayleyGraph& g) {
  const size_t total = 3 * static_cast<size_t>(g.vertex_count());
  DartTables t;
  t.head.resize(total);
  t.succ0.resize(total);
  t.succ1.resize(total);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    for (Gen lbl : kAllGens) {
      const size_t d = dart_id(v, lbl);
      const Vertex head = g.neighbor(v, lbl);
      t.head[d] = static_cast<std::uint8_t>(head);
      t.succ0[d] = static_cast<std::uint8_t>(dart_id(head, cyclic_next(lbl)));
      t.succ1[d] = static_cast<std::uint8_t>(dart_id(head, cyclic_prev(lbl)));
    }
  }
  return t;
}

/// Number of dart orbits under the rotation encoded in `bits`.
inline int count_faces(const DartTables& t, std::uint64_t bits, size_t total_darts) {
  // 6n <= 128 darts for any searchable graph, so two 64-bit masks suffice.
  std::uint64_t seen_lo = 0, seen_hi = 0;
  int faces = 0;
  for (size_t d = 0; d < total_darts; ++d) {
    const std::uint64_t bit = std::uint64_t{1} << (d & 63);
    if (((d < 64 ? seen_lo : seen_hi) & bit) != 0) continue;
    ++faces;
    std::uint8_t cur = static_cast<std::uint8_t>(d);
    do {
      if (cur < 64) {
        seen_lo |= std::uint64_t{1} << cur;
      } else {
        seen_hi |= std::uint64_t{1} << (cur & 63);
      }
      cur = ((bits >> t.head[cur]) & 1) ? t.succ1[cur] : t.succ0[cur];
    } while (cur != d);
  }
  return faces;
}

struct SearchBest {
  int faces = -1;
  std::uint64_t encoding = 0;

  /// Reduction: highest face count wins, ties broken by smallest encoding.
  /// Associative and commutative, so chunked execution order is irrelevant.
  void merge(const SearchBest& other) {
    if (other.faces > faces || (other.faces == faces && other.encoding < encoding)) {
      *this = other;
    }
  }
};

inline SearchBest search_range(const DartTables& t, size_t total_darts, std::uint64_t begin,
                               std::uint64_t end) {
  SearchBest best;
  for (std::uint64_t enc = begin; enc < end; ++enc) {
    const int faces = count_faces(t, enc, total_darts);
    if (faces > best.faces) best = SearchBest{faces, enc};
  }
  return best;
}

}  // namespace detail

struct MaxRotationResult {
  RotationSystem rotation;
  GenusReport report;
};

/// Enumerates all 2^(2n) rotation systems and returns one with the most
/// faces; ties go to the smallest bit encoding. Work is split across threads
/// over disjoint encoding ranges with an order-independent reduction, so the
/// result does not depend on scheduling.
inline MaxRotationResult maximal_rotation_search(const CayleyGraph& g,
                                                 Int budget = kDefaultRotationBudget) {
  const Int vertex_count = 2 * g.n();
  if (vertex_count > 42) {
    // 6n darts must fit the 128-bit visited mask; beyond this the encoding
    // space is out of reach for any budget anyway.
    throw resource_error("rotation search limited to graphs with at most 42 vertices");
  }
  const std::uint64_t space = std::uint64_t{1} << vertex_count;
  if (budget < 0 || space > static_cast<std::uint64_t>(budget)) {
    throw resource_error("rotation search over " + std::to_string(space) +
                         " systems exceeds budget " + std::to_string(budget) +
                         "; required budget >= " + std::to_string(space));
  }

  const detail::DartTables tables = detail::build_dart_tables(g);
  const size_t total_darts = 3 * static_cast<size_t>(vertex_count);

  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  const std::uint64_t min_chunk = 1u << 12;
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(1, space / min_chunk)));

  detail::SearchBest best;
  if (workers <= 1) {
    best = detail::search_range(tables, total_darts, 0, space);
  } else {
    std::vector<detail::SearchBest> partial(workers);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    const std::uint64_t per = space / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t begin = w * per;
      const std::uint64_t end = (w + 1 == workers) ? space : begin + per;
      threads.emplace_back([&, w, begin, end] {
        partial[w] = detail::search_range(tables, total_darts, begin, end);
      });
    }
    for (auto& th : threads) th.join();
    for (const auto& p : partial) best.merge(p);
  }

  MaxRotationResult result{
      RotationSystem::from_encoding(best.encoding, static_cast<size_t>(vertex_count)),
      genus_from_counts(vertex_count, 3 * g.n(), best.faces)};
  return result;
}

// ---------------------------------------------------------------------------
// Predicted genus
// ---------------------------------------------------------------------------

/// Closed form for the graph genus: 0 iff the triangle is isosceles and n is
/// even, 1 otherwise.
inline int predicted_genus(const TriangleTriple& t) {
  return (t.isosceles() && t.n % 2 == 0) ? 0 : 1;
}

}  // namespace billiard
