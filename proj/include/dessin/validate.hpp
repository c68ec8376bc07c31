#pragma once

/*
  Region extraction and the dessin axioms.

  Regions are orbits of d -> rot_next(pair(d)); boundary edges are traversed
  in the walk direction only.  Every region is walked counterclockwise with
  the region on the left.

  Orientation is not stored: a region is positive when its walk reads the
  color pattern  • -bold-> ∘ -dotted-> × -solid-> •  forward, negative when
  it reads the reverse.  Edge directions are derived from the positive side.
*/

#include <functional>
#include <sstream>

#include "core.hpp"

namespace dessin {

struct Region {
  std::vector<int> walk;          // darts in traversal order
  std::vector<int> essentials;    // essential vertices in walk order
  int sign = 0;                   // +1 / -1 / 0 (undetermined)
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  void add(const std::string& s) { violations.push_back(s); }
  std::string str() const {
    std::ostringstream os;
    for (const auto& v : violations) os << v << "\n";
    return os.str();
  }
};

namespace detail {

// Trace all region walks.  Returns false into `broken` when a walk would
// leave the surface (corrupt rotation/boundary data).
inline std::vector<Region> trace_regions(const Dessin& d, bool* broken = nullptr) {
  std::vector<Region> regions;
  std::vector<int> region_of(d.darts.size(), -1);
  if (broken) *broken = false;
  for (int start = 0; start < int(d.darts.size()); ++start) {
    if (!d.darts[start].alive || region_of[start] >= 0) continue;
    if (d.darts[start].real) {
      // Real darts are traversed only in the boundary-walk direction, i.e.
      // when they are some vertex's successor dart.
      if (start != d.succ_real_dart(d.darts[start].vertex)) continue;
    }
    Region r;
    int dart = start;
    int guard = 0;
    bool bad = false;
    do {
      region_of[dart] = int(regions.size());
      r.walk.push_back(dart);
      int p = d.pair_of(dart);
      bool wrapped = false;
      int nxt = d.rot_next(p, &wrapped);
      if (wrapped && d.verts[d.darts[p].vertex].real) {
        bad = true;  // walk tried to cross the boundary from outside
        break;
      }
      dart = nxt;
      if (++guard > int(d.darts.size()) + 2) {
        bad = true;
        break;
      }
    } while (dart != start);
    if (bad) {
      if (broken) *broken = true;
      return {};
    }
    for (int dd : r.walk) {
      int v = d.darts[dd].vertex;
      if (d.verts[v].color != VertexColor::Mono) r.essentials.push_back(v);
    }
    regions.push_back(std::move(r));
  }
  return regions;
}

// Forward corner evidence: at an essential vertex, the outgoing edge color
// on a positive walk.
inline int corner_sign(VertexColor v, EdgeColor out) {
  switch (v) {
    case VertexColor::Black:
      if (out == EdgeColor::Bold) return +1;
      if (out == EdgeColor::Solid) return -1;
      return 0;
    case VertexColor::White:
      if (out == EdgeColor::Dotted) return +1;
      if (out == EdgeColor::Bold) return -1;
      return 0;
    case VertexColor::Cross:
      if (out == EdgeColor::Solid) return +1;
      if (out == EdgeColor::Dotted) return -1;
      return 0;
    case VertexColor::Mono: return 0;
  }
  return 0;
}

inline bool assign_signs(const Dessin& d, std::vector<Region>& regions,
                         std::string* why) {
  for (auto& r : regions) {
    int sign = 0;
    for (int dart : r.walk) {
      int v = d.darts[dart].vertex;
      int s = corner_sign(d.verts[v].color, d.darts[dart].color);
      if (s == 0) continue;
      if (sign == 0) sign = s;
      else if (sign != s) {
        if (why) *why = "region walk mixes forward and reverse color pattern";
        return false;
      }
    }
    if (sign == 0) {
      if (why) *why = "region without essential vertices cannot be oriented";
      return false;
    }
    r.sign = sign;
  }
  return true;
}

}  // namespace detail

// Regions with signs; throws if the structure is too corrupt to walk.
inline std::vector<Region> regions(const Dessin& d) {
  bool broken = false;
  auto rs = detail::trace_regions(d, &broken);
  if (broken) throw DomainError("Corrupt", "region walk left the surface");
  std::string why;
  if (!detail::assign_signs(d, rs, &why))
    throw DomainError("Orientation", why);
  return rs;
}

// Directed edge view derived from the region signs.  Returns, per dart, 1
// when the dart sits at its edge's source vertex: the positive region
// traverses the edge in its direction; for a boundary edge the single
// traversed dart gives the direction when its region is positive and the
// reverse otherwise.
inline std::vector<char> direction_darts(const Dessin& d,
                                         const std::vector<Region>& rs) {
  std::vector<int> sign_at(d.darts.size(), 0);
  for (const auto& r : rs)
    for (int dart : r.walk) sign_at[dart] = r.sign;
  std::vector<char> src(d.darts.size(), 0);
  for (int dd = 0; dd < int(d.darts.size()); ++dd) {
    if (!d.darts[dd].alive) continue;
    int pp = d.pair_of(dd);
    if (dd > pp) continue;
    if (!d.darts[dd].real) {
      src[sign_at[dd] > 0 ? dd : pp] = 1;
    } else {
      int t = (d.succ_real_dart(d.darts[dd].vertex) == dd) ? dd : pp;
      src[sign_at[t] > 0 ? t : d.pair_of(t)] = 1;
    }
  }
  return src;
}

inline ValidationReport validate(const Dessin& d) {
  ValidationReport rep;
  const int nd = d.live_dart_count();
  const int nv = d.live_vertex_count();
  if (nv == 0 || nd == 0) {
    rep.add("boundary circle uncovered: dessin has no real structure");
    return rep;
  }

  // -- pairing is a fixed-point-free involution preserving edge color
  for (int i = 0; i < int(d.darts.size()); ++i) {
    if (!d.darts[i].alive) continue;
    int p = d.darts[i].pair;
    if (p < 0 || p >= int(d.darts.size()) || !d.darts[p].alive) {
      rep.add("pairing: dangling dart reference at dart " + std::to_string(i));
      return rep;
    }
    if (p == i) rep.add("pairing: fixed point at dart " + std::to_string(i));
    if (d.darts[p].pair != i)
      rep.add("pairing: not an involution at dart " + std::to_string(i));
    if (d.darts[p].color != d.darts[i].color)
      rep.add("pairing: paired darts disagree on edge color at dart " +
              std::to_string(i));
  }
  if (!rep.ok()) return rep;

  // -- rotations are consistent with dart ownership
  for (int v = 0; v < int(d.verts.size()); ++v) {
    if (!d.verts[v].alive) continue;
    if (d.verts[v].rot.empty()) {
      rep.add("vertex " + std::to_string(v) + " has no darts");
      continue;
    }
    for (int dd : d.verts[v].rot)
      if (dd < 0 || dd >= int(d.darts.size()) || !d.darts[dd].alive ||
          d.darts[dd].vertex != v)
        rep.add("rotation of vertex " + std::to_string(v) +
                " references foreign dart");
  }
  if (!rep.ok()) return rep;

  // -- axiom 1: every boundary circle is covered by real edges and vertices
  const bool closed = d.surface.boundary_circles == 0;
  int real_vertices = 0;
  for (int v = 0; v < int(d.verts.size()); ++v) {
    if (!d.verts[v].alive) continue;
    if (d.verts[v].real) {
      ++real_vertices;
      int nreal = 0;
      for (int dd : d.verts[v].rot) nreal += d.darts[dd].real ? 1 : 0;
      if (nreal != 2)
        rep.add("boundary coverage: real vertex " + std::to_string(v) +
                " must carry exactly two real darts");
      else {
        if (!d.darts[d.verts[v].rot.front()].real ||
            !d.darts[d.verts[v].rot.back()].real)
          rep.add("rotation order inconsistent with boundary order at vertex " +
                  std::to_string(v));
      }
    } else {
      for (int dd : d.verts[v].rot)
        if (d.darts[dd].real)
          rep.add("boundary coverage: inner vertex " + std::to_string(v) +
                  " owns a real dart");
    }
  }
  if (real_vertices == 0 && !closed)
    rep.add("boundary circle uncovered: no real vertices (axiom 1 requires "
            "the boundary inside the graph)");
  if (real_vertices > 0 && closed)
    rep.add("closed surface carries real vertices");
  if (!rep.ok()) return rep;

  Dessin dc = d;  // finalize needs non-const; cheap at these sizes
  try {
    dc.finalize();
  } catch (const DomainError& e) {
    rep.add(std::string("boundary walk: ") + e.what());
    return rep;
  }
  if (int(dc.boundary.size()) != d.surface.boundary_circles)
    rep.add("boundary coverage: found " + std::to_string(dc.boundary.size()) +
            " circles, surface declares " +
            std::to_string(d.surface.boundary_circles));

  // -- axioms 2-3: valences
  for (int v = 0; v < int(d.verts.size()); ++v) {
    if (!d.verts[v].alive) continue;
    size_t deg = d.verts[v].rot.size();
    if (d.verts[v].color == VertexColor::Mono) {
      if (deg < 3)
        rep.add("monochrome vertex incident to at least 3 edges: vertex " +
                std::to_string(v) + " has " + std::to_string(deg));
    } else if (deg < 2) {
      rep.add("essential vertex incident to at least 2 edges: vertex " +
              std::to_string(v) + " has " + std::to_string(deg));
    }
    if (!d.verts[v].real && deg % 2 != 0)
      rep.add("index integrality: inner vertex " + std::to_string(v) +
              " has odd dart count");
  }

  // -- axiom 5 and color incidence/alternation (axioms 6-8)
  for (int v = 0; v < int(d.verts.size()); ++v) {
    if (!d.verts[v].alive) continue;
    const auto& rot = d.verts[v].rot;
    auto colors_ok = [&](EdgeColor a, EdgeColor b) {
      for (int dd : rot)
        if (d.darts[dd].color != a && d.darts[dd].color != b) return false;
      return true;
    };
    switch (d.verts[v].color) {
      case VertexColor::Mono: {
        EdgeColor c0 = d.darts[rot[0]].color;
        for (int dd : rot)
          if (d.darts[dd].color != c0)
            rep.add("monochrome color: vertex " + std::to_string(v) +
                    " mixes edge colors (axiom 5)");
        break;
      }
      case VertexColor::Cross:
        if (!colors_ok(EdgeColor::Dotted, EdgeColor::Solid))
          rep.add("color incidence: cross vertex " + std::to_string(v) +
                  " touches a bold edge");
        break;
      case VertexColor::Black:
        if (!colors_ok(EdgeColor::Solid, EdgeColor::Bold))
          rep.add("color incidence: black vertex " + std::to_string(v) +
                  " touches a dotted edge");
        break;
      case VertexColor::White:
        if (!colors_ok(EdgeColor::Bold, EdgeColor::Dotted))
          rep.add("color incidence: white vertex " + std::to_string(v) +
                  " touches a solid edge");
        break;
    }
    if (d.verts[v].color != VertexColor::Mono) {
      int n = int(rot.size());
      int limit = d.verts[v].real ? n - 1 : n;  // cyclic only for inner
      for (int i = 0; i < limit; ++i)
        if (d.darts[rot[i]].color == d.darts[rot[(i + 1) % n]].color)
          rep.add("color alternation: consecutive darts share color at "
                  "essential vertex " + std::to_string(v));
    }
  }
  if (!rep.ok()) return rep;

  // -- regions: walkable, orientable (axiom 4), disks (Euler), 3k essentials
  bool broken = false;
  auto rs = detail::trace_regions(dc, &broken);
  if (broken) {
    rep.add("region walk left the surface (corrupt rotation data)");
    return rep;
  }
  std::string why;
  if (!detail::assign_signs(dc, rs, &why)) {
    rep.add("orientation: " + why + " (axiom 4)");
    return rep;
  }
  // Each edge must be traversed by exactly one positive and one negative side.
  {
    std::vector<int> sign_at(dc.darts.size(), 0);
    for (const auto& r : rs)
      for (int dart : r.walk) sign_at[dart] = r.sign;
    for (int dd = 0; dd < int(dc.darts.size()); ++dd) {
      if (!dc.darts[dd].alive || dc.darts[dd].real) continue;
      if (sign_at[dd] != 0 && sign_at[dd] == sign_at[dc.pair_of(dd)])
        rep.add("orientation: edge bounded twice by regions of equal sign "
                "(axiom 4)");
    }
    if (dc.orient_pin) {
      int pin = *dc.orient_pin;
      for (const auto& r : rs)
        for (int dart : r.walk)
          if (dart == pin && r.sign < 0)
            rep.add("orientation: pinned region sign contradicts derived "
                    "orientation");
    }
  }
  if (!rep.ok()) return rep;

  const int V = dc.live_vertex_count();
  const int E = dc.edge_count();
  const int F = int(rs.size());
  if (V - E + F != d.surface.euler_characteristic())
    rep.add("region disk: Euler count V-E+F = " + std::to_string(V - E + F) +
            " differs from chi = " +
            std::to_string(d.surface.euler_characteristic()));

  for (const auto& r : rs) {
    if (r.essentials.empty() || r.essentials.size() % 3 != 0)
      rep.add("region pattern: boundary carries " +
              std::to_string(r.essentials.size()) +
              " essential vertices, not 3k (k>=1)");
    else {
      // colors repeat (., o, x) in order along the walk
      for (size_t i = 0; i < r.essentials.size(); ++i) {
        VertexColor expect;
        VertexColor first = dc.verts[r.essentials[0]].color;
        // the cycle starting wherever the walk starts; verify successive
        // essential colors follow the 3-cycle determined by the sign
        VertexColor cur = dc.verts[r.essentials[i]].color;
        VertexColor nxt = dc.verts[r.essentials[(i + 1) % r.essentials.size()]].color;
        auto follows = [&](VertexColor a, VertexColor b) {
          if (r.sign > 0)  // • -> ∘ -> × -> •
            return (a == VertexColor::Black && b == VertexColor::White) ||
                   (a == VertexColor::White && b == VertexColor::Cross) ||
                   (a == VertexColor::Cross && b == VertexColor::Black);
          return (a == VertexColor::Black && b == VertexColor::Cross) ||
                 (a == VertexColor::Cross && b == VertexColor::White) ||
                 (a == VertexColor::White && b == VertexColor::Black);
        };
        (void)expect; (void)first;
        if (!follows(cur, nxt)) {
          rep.add("region pattern: essential colors do not cycle (.,o,x)");
          break;
        }
      }
    }
  }

  // -- admissibility: no directed monochrome cycles.  Nodes are monochrome
  // vertices of one color; arcs are same-color edges between them, directed
  // by the positive-region traversal.
  {
    auto src = direction_darts(dc, rs);
    for (EdgeColor col : {EdgeColor::Solid, EdgeColor::Bold, EdgeColor::Dotted}) {
      std::map<int, std::vector<int>> adj;
      for (int dd = 0; dd < int(dc.darts.size()); ++dd) {
        if (!dc.darts[dd].alive || dc.darts[dd].color != col || !src[dd])
          continue;
        int u = dc.darts[dd].vertex, w = dc.darts[dc.pair_of(dd)].vertex;
        if (dc.verts[u].color == VertexColor::Mono &&
            dc.verts[w].color == VertexColor::Mono)
          adj[u].push_back(w);
      }
      std::map<int, int> state;  // 0 unseen, 1 active, 2 done
      bool cyc = false;
      std::function<void(int)> dfs = [&](int u) {
        state[u] = 1;
        for (int w : adj[u]) {
          if (state[w] == 1) { cyc = true; return; }
          if (state[w] == 0) dfs(w);
          if (cyc) return;
        }
        state[u] = 2;
      };
      for (auto& [u, _] : adj) {
        if (state[u] == 0) dfs(u);
        if (cyc) break;
      }
      if (cyc)
        rep.add(std::string("admissibility: directed ") + to_string(col) +
                " monochrome cycle");
    }
  }

  return rep;
}

inline void require_valid(const Dessin& d, const char* who) {
  auto rep = validate(d);
  if (!rep.ok())
    throw DomainError("ValidityBroken",
                      std::string(who) + ": " + rep.violations.front());
}

}  // namespace dessin
