#pragma once

/*
  Combinatorial model for real dessins on compact surfaces with boundary.

  A dessin is stored as a half-edge (dart) structure:
    - every edge consists of two paired darts, one at each endpoint;
    - each vertex owns a rotation: the sequence of its darts, swept through
      the surface interior.  For an inner vertex the rotation is cyclic; for
      a real (boundary) vertex it is linear, starting with the dart toward
      the boundary predecessor and ending with the dart toward the boundary
      successor.
    - boundary circles are derived: walking r_succ -> pair -> r_succ ...

  Conventions, fixed once and used everywhere (moves, tracer, cover):
    - the surface interior lies to the LEFT of the boundary walk;
    - rotations are listed clockwise when drawn with the interior up, i.e.
      for a real vertex on a left-to-right boundary walk the rotation reads
      [toward predecessor, inner darts swept through the interior, toward
      successor];
    - region walks (faces) follow next(d) = rotation-successor of pair(d),
      which traverses every region counterclockwise with the region on the
      left.  Boundary edges are traversed only in the walk direction.

  Edge directions are not stored; they are recomputed from the region
  two-coloring, which is unique on each connected dessin.
*/

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace dessin {

enum class VertexColor : uint8_t { Black, White, Cross, Mono };
enum class EdgeColor : uint8_t { Solid, Bold, Dotted };

inline const char* to_string(VertexColor c) {
  switch (c) {
    case VertexColor::Black: return "black";
    case VertexColor::White: return "white";
    case VertexColor::Cross: return "cross";
    case VertexColor::Mono: return "mono";
  }
  return "?";
}

inline const char* to_string(EdgeColor c) {
  switch (c) {
    case EdgeColor::Solid: return "solid";
    case EdgeColor::Bold: return "bold";
    case EdgeColor::Dotted: return "dotted";
  }
  return "?";
}

inline std::optional<VertexColor> vertex_color_from(const std::string& s) {
  if (s == "black") return VertexColor::Black;
  if (s == "white") return VertexColor::White;
  if (s == "cross") return VertexColor::Cross;
  if (s == "mono" || s == "monochrome") return VertexColor::Mono;
  return std::nullopt;
}

inline std::optional<EdgeColor> edge_color_from(const std::string& s) {
  if (s == "solid") return EdgeColor::Solid;
  if (s == "bold") return EdgeColor::Bold;
  if (s == "dotted") return EdgeColor::Dotted;
  return std::nullopt;
}

struct DomainError : std::runtime_error {
  std::string code;
  DomainError(std::string c, const std::string& what)
      : std::runtime_error(what), code(std::move(c)) {}
};

struct SurfaceSpec {
  bool orientable = true;
  int genus = 0;
  int boundary_circles = 1;

  int euler_characteristic() const {
    return orientable ? 2 - 2 * genus - boundary_circles
                      : 2 - genus - boundary_circles;
  }
  bool operator==(const SurfaceSpec&) const = default;
};

inline SurfaceSpec disk() { return SurfaceSpec{true, 0, 1}; }
inline SurfaceSpec sphere() { return SurfaceSpec{true, 0, 0}; }

struct Vertex {
  VertexColor color = VertexColor::Mono;
  bool real = false;
  std::vector<int> rot;  // dart ids; linear for real vertices, cyclic otherwise
  bool alive = true;
};

struct Dart {
  int vertex = -1;
  EdgeColor color = EdgeColor::Solid;
  int pair = -1;
  bool real = false;  // lies on a boundary circle
  bool alive = true;
};

struct Dessin {
  SurfaceSpec surface = disk();
  std::vector<Vertex> verts;
  std::vector<Dart> darts;
  // Cached boundary circles: per circle, the list of darts in walk order;
  // dart boundary[c][i] belongs to the i-th vertex and its pair belongs to
  // the (i+1)-th.  Rebuilt by finalize().
  std::vector<std::vector<int>> boundary;
  uint64_t version = 0;

  // Signed region assignment pinned by the file, if any: dart id -> '+'.
  std::optional<int> orient_pin;

  int add_vertex(VertexColor c, bool real) {
    verts.push_back(Vertex{c, real, {}, true});
    return int(verts.size()) - 1;
  }
  int add_dart(int v, EdgeColor c, bool real) {
    darts.push_back(Dart{v, c, -1, real, true});
    return int(darts.size()) - 1;
  }
  void pair_darts(int a, int b) {
    darts[a].pair = b;
    darts[b].pair = a;
  }

  int vertex_of(int d) const { return darts[d].vertex; }
  int pair_of(int d) const { return darts[d].pair; }

  int rot_index(int d) const {
    const auto& r = verts[darts[d].vertex].rot;
    for (size_t i = 0; i < r.size(); ++i)
      if (r[i] == d) return int(i);
    throw DomainError("Corrupt", "dart missing from its rotation");
  }

  // Rotation successor; real vertices wrap only through the interior, so a
  // wrap past the last entry is a structural error for region walks.
  int rot_next(int d, bool* wrapped = nullptr) const {
    const auto& v = verts[darts[d].vertex];
    int i = rot_index(d);
    int j = (i + 1) % int(v.rot.size());
    if (wrapped) *wrapped = (j == 0);
    return v.rot[j];
  }

  int prev_real_dart(int v) const {  // dart toward boundary predecessor
    const auto& r = verts[v].rot;
    if (!verts[v].real || r.empty())
      throw DomainError("Corrupt", "prev_real_dart on non-real vertex");
    return r.front();
  }
  int succ_real_dart(int v) const {
    const auto& r = verts[v].rot;
    if (!verts[v].real || r.empty())
      throw DomainError("Corrupt", "succ_real_dart on non-real vertex");
    return r.back();
  }

  int inner_dart_count(int v) const {
    int n = 0;
    for (int d : verts[v].rot)
      if (!darts[d].real) ++n;
    return n;
  }

  // Ind(v): half the dart count of a lift in the orientation double cover.
  int index_of(int v) const {
    const auto& vx = verts[v];
    if (vx.real) return inner_dart_count(v) + 1;
    if (vx.rot.size() % 2 != 0)
      throw DomainError("Corrupt", "odd dart count at inner vertex");
    return int(vx.rot.size()) / 2;
  }

  bool is_node(int v) const {
    return verts[v].color == VertexColor::Cross && index_of(v) == 2;
  }

  // Rebuild boundary circles from real darts.  Throws on inconsistency.
  void finalize() {
    boundary.clear();
    std::vector<char> seen(darts.size(), 0);
    for (int v = 0; v < int(verts.size()); ++v) {
      if (!verts[v].alive || !verts[v].real) continue;
      int d0 = succ_real_dart(v);
      if (seen[d0]) continue;
      std::vector<int> circle;
      int d = d0;
      int guard = 0;
      do {
        if (!darts[d].real)
          throw DomainError("Corrupt", "boundary walk hit inner dart");
        seen[d] = 1;
        circle.push_back(d);
        int w = darts[darts[d].pair].vertex;
        if (darts[d].pair != prev_real_dart(w))
          throw DomainError("Corrupt",
                            "boundary successor does not land on predecessor dart");
        d = succ_real_dart(w);
        if (++guard > int(darts.size()) + 1)
          throw DomainError("Corrupt", "boundary walk does not close");
      } while (d != d0);
      boundary.push_back(std::move(circle));
    }
    // Deterministic circle order: by smallest dart id.
    std::sort(boundary.begin(), boundary.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) {
                return *std::min_element(a.begin(), a.end()) <
                       *std::min_element(b.begin(), b.end());
              });
    ++version;
  }

  int circle_of_vertex(int v) const {
    for (int c = 0; c < int(boundary.size()); ++c)
      for (int d : boundary[c])
        if (darts[d].vertex == v) return c;
    return -1;
  }

  int live_vertex_count() const {
    int n = 0;
    for (const auto& v : verts) n += v.alive ? 1 : 0;
    return n;
  }
  int live_dart_count() const {
    int n = 0;
    for (const auto& d : darts) n += d.alive ? 1 : 0;
    return n;
  }
  int edge_count() const { return live_dart_count() / 2; }

  // Remove dead vertices/darts and renumber densely; returns the dart remap
  // (old id -> new id, -1 for removed darts).
  std::vector<int> compact() {
    std::vector<int> vmap(verts.size(), -1), dmap(darts.size(), -1);
    std::vector<Vertex> nv;
    std::vector<Dart> nd;
    for (int i = 0; i < int(verts.size()); ++i)
      if (verts[i].alive) {
        vmap[i] = int(nv.size());
        nv.push_back(verts[i]);
      }
    for (int i = 0; i < int(darts.size()); ++i)
      if (darts[i].alive) {
        dmap[i] = int(nd.size());
        nd.push_back(darts[i]);
      }
    for (auto& d : nd) {
      d.vertex = vmap[d.vertex];
      d.pair = dmap[d.pair];
      if (d.vertex < 0 || d.pair < 0)
        throw DomainError("Corrupt", "dangling reference after compact");
    }
    for (auto& v : nv) {
      for (auto& d : v.rot) {
        d = dmap[d];
        if (d < 0) throw DomainError("Corrupt", "dead dart in rotation");
      }
    }
    verts = std::move(nv);
    darts = std::move(nd);
    orient_pin.reset();
    finalize();
    return dmap;
  }

  // Mirror image: reverse every rotation and hence the boundary walks.
  Dessin mirrored() const {
    Dessin m = *this;
    for (auto& v : m.verts) std::reverse(v.rot.begin(), v.rot.end());
    m.orient_pin.reset();
    m.finalize();
    return m;
  }
};

// ---------------------------------------------------------------------------
// Census helpers

struct ColorSums {
  // Weighted index sums per essential color: real vertices weigh 1, inner 2.
  long long black = 0, white = 0, cross = 0;
};

inline ColorSums weighted_index_sums(const Dessin& d) {
  ColorSums s;
  for (int v = 0; v < int(d.verts.size()); ++v) {
    if (!d.verts[v].alive) continue;
    long long w = (d.verts[v].real ? 1 : 2) * (long long)d.index_of(v);
    switch (d.verts[v].color) {
      case VertexColor::Black: s.black += w; break;
      case VertexColor::White: s.white += w; break;
      case VertexColor::Cross: s.cross += w; break;
      case VertexColor::Mono: break;
    }
  }
  return s;
}

// deg(D) = 3n for a dessin realized by a j-map of degree 6n.  All three
// essential colors are full preimage divisors, so their weighted sums must
// agree; a mismatch means the map is not realizable at this degree.
inline int degree(const Dessin& d) {
  ColorSums s = weighted_index_sums(d);
  if (s.black != s.white || s.white != s.cross || s.cross % 2 != 0)
    throw DomainError("ColorSumMismatch",
                      "weighted index sums differ: black=" + std::to_string(s.black) +
                          " white=" + std::to_string(s.white) +
                          " cross=" + std::to_string(s.cross));
  return int(s.cross / 2);
}

inline std::vector<int> singular_vertices(const Dessin& d) {
  std::vector<int> out;
  for (int v = 0; v < int(d.verts.size()); ++v) {
    if (!d.verts[v].alive) continue;
    int ind = d.index_of(v);
    switch (d.verts[v].color) {
      case VertexColor::Black:
        if (ind % 3 != 0) out.push_back(v);
        break;
      case VertexColor::White:
        if (ind % 2 != 0) out.push_back(v);
        break;
      case VertexColor::Cross:
        if (ind >= 2) out.push_back(v);
        break;
      case VertexColor::Mono: break;
    }
  }
  return out;
}

inline bool is_nonsingular(const Dessin& d) { return singular_vertices(d).empty(); }

inline bool is_uninodal(const Dessin& d) {
  auto s = singular_vertices(d);
  return s.size() == 1 && d.is_node(s[0]);
}

inline std::optional<int> nodal_vertex(const Dessin& d) {
  for (int v = 0; v < int(d.verts.size()); ++v)
    if (d.verts[v].alive && d.is_node(v)) return v;
  return std::nullopt;
}

// Reduced: black index <= 3, white index <= 2, monochrome vertices real of
// index 2 (transient states inside move rewrites may be non-reduced).
inline bool is_reduced(const Dessin& d) {
  for (int v = 0; v < int(d.verts.size()); ++v) {
    if (!d.verts[v].alive) continue;
    int ind = d.index_of(v);
    switch (d.verts[v].color) {
      case VertexColor::Black:
        if (ind > 3) return false;
        break;
      case VertexColor::White:
        if (ind > 2) return false;
        break;
      case VertexColor::Mono:
        if (!d.verts[v].real || ind != 2) return false;
        break;
      case VertexColor::Cross: break;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Boundary profile: maximal monochrome boundary segments and circles.

struct BoundarySegment {
  EdgeColor color;
  bool whole_circle = false;
  int circle = 0;
  std::vector<int> interior;   // vertices strictly inside the run
  int end_a = -1, end_b = -1;  // essential transition vertices (if a segment)
  int white_count = 0;
  bool contains_even_cross = false;  // an interior x-vertex of even index

  enum class Kind { Oval, Zigzag, Hyperbolic, Nodal, Plain };
  Kind kind = Kind::Plain;
};

struct BoundaryProfile {
  std::vector<BoundarySegment> segments;
  int oval_count = 0;
  int zigzag_count = 0;
  int hyperbolic_count = 0;
};

// A vertex interrupts a same-color boundary run exactly when its two real
// darts have different colors (blacks and simple crosses; singular index-1
// whites as well).
inline BoundaryProfile boundary_profile(const Dessin& d) {
  BoundaryProfile out;
  for (int c = 0; c < int(d.boundary.size()); ++c) {
    const auto& circ = d.boundary[c];
    int n = int(circ.size());
    // Transition positions: vertex i where incoming color != outgoing color.
    std::vector<int> trans;
    for (int i = 0; i < n; ++i) {
      EdgeColor inc = d.darts[circ[(i + n - 1) % n]].color;
      EdgeColor outc = d.darts[circ[i]].color;
      if (inc != outc) trans.push_back(i);
    }
    if (trans.empty()) {
      BoundarySegment s;
      s.color = d.darts[circ[0]].color;
      s.whole_circle = true;
      s.circle = c;
      for (int i = 0; i < n; ++i) {
        int v = d.darts[circ[i]].vertex;
        s.interior.push_back(v);
        if (d.verts[v].color == VertexColor::White) ++s.white_count;
        if (d.verts[v].color == VertexColor::Cross && d.index_of(v) % 2 == 0)
          s.contains_even_cross = true;
      }
      s.kind = (s.color == EdgeColor::Dotted) ? BoundarySegment::Kind::Hyperbolic
                                              : BoundarySegment::Kind::Plain;
      out.segments.push_back(std::move(s));
      continue;
    }
    for (size_t t = 0; t < trans.size(); ++t) {
      int a = trans[t];
      int b = trans[(t + 1) % trans.size()];
      BoundarySegment s;
      s.circle = c;
      s.color = d.darts[circ[a]].color;
      s.end_a = d.darts[circ[a]].vertex;
      s.end_b = d.darts[circ[b]].vertex;
      for (int i = (a + 1) % n; i != b; i = (i + 1) % n) {
        int v = d.darts[circ[i]].vertex;
        s.interior.push_back(v);
        if (d.verts[v].color == VertexColor::White) ++s.white_count;
        if (d.verts[v].color == VertexColor::Cross && d.index_of(v) % 2 == 0)
          s.contains_even_cross = true;
      }
      if (s.color == EdgeColor::Dotted) {
        if (s.contains_even_cross)
          s.kind = BoundarySegment::Kind::Nodal;
        else
          s.kind = (s.white_count % 2 == 0) ? BoundarySegment::Kind::Oval
                                            : BoundarySegment::Kind::Zigzag;
      }
      out.segments.push_back(std::move(s));
    }
  }
  for (const auto& s : out.segments) {
    if (s.kind == BoundarySegment::Kind::Oval) ++out.oval_count;
    if (s.kind == BoundarySegment::Kind::Zigzag) ++out.zigzag_count;
    if (s.kind == BoundarySegment::Kind::Hyperbolic) ++out.hyperbolic_count;
  }
  return out;
}

inline int zigzag_count(const Dessin& d) { return boundary_profile(d).zigzag_count; }

inline int inner_simple_cross_count(const Dessin& d) {
  int n = 0;
  for (int v = 0; v < int(d.verts.size()); ++v)
    if (d.verts[v].alive && !d.verts[v].real &&
        d.verts[v].color == VertexColor::Cross && d.index_of(v) == 1)
      ++n;
  return n;
}

}  // namespace dessin
