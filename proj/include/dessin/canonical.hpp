#pragma once

/*
  Canonical byte codes for dessins.  Two dessins receive equal codes exactly
  when they are related by a decoration-preserving homeomorphism of the
  underlying surface; quotient dessins live on non-oriented quotients, so
  reflections are allowed.

  Rooted encoding: fix a starting boundary dart; breadth-first discovery
  assigns vertex and dart numbers; the code lists, per vertex, its colors and
  degree and, per dart in rotation order, the edge color and the paired
  dart's number.  That reconstructs the map, so the minimum over all roots
  (both boundary orientations, all circles) is a complete invariant.
  Tie-breaking orders: solid < bold < dotted, black < white < cross < mono.
*/

#include "core.hpp"

namespace dessin {

using Code = std::string;

namespace canonical_detail {

inline Code encode_rooted(const Dessin& d, int root_dart) {
  std::vector<int> vid(d.verts.size(), -1);
  std::vector<int> vorder;
  std::vector<int> start_dart(d.verts.size(), -1);

  auto discover = [&](int v, int via_dart) {
    if (vid[v] >= 0) return;
    vid[v] = int(vorder.size());
    vorder.push_back(v);
    start_dart[v] = via_dart;
  };

  int root_v = d.darts[root_dart].vertex;
  discover(root_v, root_dart);
  // BFS in emission order: process vertices in id order and emit darts in
  // rotation order starting from the discovery dart (real vertices keep the
  // stored linear order).
  std::vector<std::vector<int>> rot_order(d.verts.size());
  std::vector<int> dart_id(d.darts.size(), -1);
  int next_dart_id = 0;
  for (size_t qi = 0; qi < vorder.size(); ++qi) {
    int v = vorder[qi];
    const auto& rot = d.verts[v].rot;
    std::vector<int> order;
    if (d.verts[v].real) {
      order = rot;
    } else {
      int k = 0;
      for (size_t i = 0; i < rot.size(); ++i)
        if (rot[i] == start_dart[v]) k = int(i);
      for (size_t i = 0; i < rot.size(); ++i)
        order.push_back(rot[(k + i) % rot.size()]);
    }
    rot_order[v] = order;
    for (int dd : order) {
      dart_id[dd] = next_dart_id++;
      int w = d.darts[d.pair_of(dd)].vertex;
      discover(w, d.pair_of(dd));
    }
  }
  if (int(vorder.size()) != d.live_vertex_count())
    throw DomainError("Corrupt", "canonical code on disconnected dessin");

  Code code;
  code.reserve(d.darts.size() * 3 + d.verts.size() * 3);
  auto put = [&](int x) {
    // compact varint-ish: values here are small
    if (x < 250) code.push_back(char(uint8_t(x)));
    else {
      code.push_back(char(250));
      code.push_back(char(uint8_t(x & 0xff)));
      code.push_back(char(uint8_t((x >> 8) & 0xff)));
    }
  };
  for (int v : vorder) {
    put(int(d.verts[v].color));
    put(d.verts[v].real ? 1 : 0);
    put(int(rot_order[v].size()));
    for (int dd : rot_order[v]) {
      put(int(d.darts[dd].color));
      put(dart_id[d.pair_of(dd)]);
    }
  }
  return code;
}

inline void best_over_roots(const Dessin& d, Code& best) {
  for (const auto& circ : d.boundary)
    for (int dart : circ) {
      Code c = encode_rooted(d, dart);
      if (best.empty() || c < best) best = std::move(c);
    }
  if (d.boundary.empty()) {
    // closed dessin (double covers): root at every dart
    for (int dd = 0; dd < int(d.darts.size()); ++dd)
      if (d.darts[dd].alive) {
        Code c = encode_rooted(d, dd);
        if (best.empty() || c < best) best = std::move(c);
      }
  }
}

}  // namespace canonical_detail

inline Code canonical_code(const Dessin& d, bool allow_reflection = true) {
  Code best;
  canonical_detail::best_over_roots(d, best);
  if (allow_reflection) {
    Dessin m = d.mirrored();
    canonical_detail::best_over_roots(m, best);
  }
  if (best.empty()) throw DomainError("Corrupt", "empty dessin has no code");
  return best;
}

inline bool same_class_as_maps(const Dessin& a, const Dessin& b) {
  return canonical_code(a) == canonical_code(b);
}

// ---------------------------------------------------------------------------
// Orientation double cover: inner vertices and edges are duplicated, real
// ones lift once.  The result is a dessin on the closed double.

inline Dessin double_cover(const Dessin& d) {
  Dessin c;
  int chi2 = 2 * d.surface.euler_characteristic();
  c.surface = SurfaceSpec{true, (2 - chi2) / 2, 0};
  c.verts.clear();
  c.darts.clear();

  std::vector<int> vup(d.verts.size(), -1), vdn(d.verts.size(), -1);
  std::vector<int> dup(d.darts.size(), -1), ddn(d.darts.size(), -1);

  for (int v = 0; v < int(d.verts.size()); ++v) {
    if (!d.verts[v].alive) continue;
    vup[v] = c.add_vertex(d.verts[v].color, false);
    if (!d.verts[v].real) vdn[v] = c.add_vertex(d.verts[v].color, false);
  }
  for (int dd = 0; dd < int(d.darts.size()); ++dd) {
    if (!d.darts[dd].alive) continue;
    int v = d.darts[dd].vertex;
    if (d.darts[dd].real) {
      dup[dd] = c.add_dart(vup[v], d.darts[dd].color, false);
    } else {
      dup[dd] = c.add_dart(vup[v], d.darts[dd].color, false);
      int owner = d.verts[v].real ? vup[v] : vdn[v];
      ddn[dd] = c.add_dart(owner, d.darts[dd].color, false);
    }
  }
  for (int dd = 0; dd < int(d.darts.size()); ++dd) {
    if (!d.darts[dd].alive || d.pair_of(dd) < dd) continue;
    int pp = d.pair_of(dd);
    if (d.darts[dd].real) {
      c.pair_darts(dup[dd], dup[pp]);
    } else {
      c.pair_darts(dup[dd], dup[pp]);
      c.pair_darts(ddn[dd], ddn[pp]);
    }
  }
  for (int v = 0; v < int(d.verts.size()); ++v) {
    if (!d.verts[v].alive) continue;
    const auto& rot = d.verts[v].rot;
    if (d.verts[v].real) {
      // [r_prev, i_1..i_k, r_succ]  ->  cyclic [r_prev, i.., r_succ, i-bar rev]
      auto& r = c.verts[vup[v]].rot;
      for (int dd : rot) r.push_back(dup[dd]);
      for (int i = int(rot.size()) - 2; i >= 1; --i) r.push_back(ddn[rot[i]]);
    } else {
      for (int dd : rot) c.verts[vup[v]].rot.push_back(dup[dd]);
      for (auto it = rot.rbegin(); it != rot.rend(); ++it)
        c.verts[vdn[v]].rot.push_back(ddn[*it]);
    }
  }
  c.finalize();
  return c;
}

}  // namespace dessin
