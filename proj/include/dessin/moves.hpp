#pragma once

/*
  Elementary and weak moves on reduced dessins.

  Every move is a local rewrite anchored at darts of the host dessin.  The
  elementary kinds cross the equisingular walls of the j-map family:

    monochrome_modification  two same-colored inner edges on one region are
                             reconnected the unique other planar way (the
                             transient state is a 4-valent inner monochrome
                             vertex);
    create/destroy_bridge    an inner edge touches down on a real edge of the
                             same color, leaving two real monochrome vertices
                             joined by a bridge;
    white_in/white_out       two real white vertices flanking a monochrome
                             vertex merge into one inner white of index 2
                             (a g3 double root leaving the real axis), and
                             back;
    black_in/black_out       two real black vertices flanking a monochrome
                             vertex merge into one inner black of index 3
                             (a g2 double root leaving the axis), and back.

  The weak kinds exchange a minimal zigzag with an inner x-vertex.  The
  local fragment is rigid: in the universal family a zigzag
      M -solid- x1 -dotted- w -dotted- x2 -solid- b
  with inner edges w-b (bold) and M-b (solid) straightens to
      b -bold- w -bold- M'
  with inner edges w-xi (dotted), xi-b (solid), b-M' (bold), where xi is a
  new inner x-vertex of index 1 and the monochrome vertex migrates from the
  solid to the bold side of the black vertex b.  Both mirror images exist.

  apply() validates its result; sites listed by applicable_moves() always
  apply cleanly.
*/

#include "canonical.hpp"
#include "validate.hpp"

namespace dessin {

enum class MoveKind : uint8_t {
  MonochromeModification,
  CreateBridge,
  DestroyBridge,
  WhiteIn,
  WhiteOut,
  BlackIn,
  BlackOut,
  StraightenZigzag,
  CreateZigzag,
};

inline const char* to_string(MoveKind k) {
  switch (k) {
    case MoveKind::MonochromeModification: return "monochrome_modification";
    case MoveKind::CreateBridge: return "create_bridge";
    case MoveKind::DestroyBridge: return "destroy_bridge";
    case MoveKind::WhiteIn: return "white_in";
    case MoveKind::WhiteOut: return "white_out";
    case MoveKind::BlackIn: return "black_in";
    case MoveKind::BlackOut: return "black_out";
    case MoveKind::StraightenZigzag: return "straighten_zigzag";
    case MoveKind::CreateZigzag: return "create_zigzag";
  }
  return "?";
}

inline std::optional<MoveKind> move_kind_from(const std::string& s) {
  for (MoveKind k :
       {MoveKind::MonochromeModification, MoveKind::CreateBridge,
        MoveKind::DestroyBridge, MoveKind::WhiteIn, MoveKind::WhiteOut,
        MoveKind::BlackIn, MoveKind::BlackOut, MoveKind::StraightenZigzag,
        MoveKind::CreateZigzag})
    if (s == to_string(k)) return k;
  return std::nullopt;
}

inline bool is_weak_kind(MoveKind k) {
  return k == MoveKind::StraightenZigzag || k == MoveKind::CreateZigzag;
}

struct MoveSite {
  MoveKind kind;
  std::vector<int> anchors;  // dart ids, kind-specific arity
  uint64_t version = 0;      // stale-site stamp

  bool operator==(const MoveSite& o) const {
    return kind == o.kind && anchors == o.anchors;
  }
  bool operator<(const MoveSite& o) const {
    return std::tie(kind, anchors) < std::tie(o.kind, o.anchors);
  }
  std::string str() const {
    std::string s = to_string(kind);
    for (int a : anchors) s += " " + std::to_string(a);
    return s;
  }
};

struct MoveResult {
  Dessin dessin;
  MoveSite inverse;
};

namespace movedetail {

inline EdgeColor other_bd(EdgeColor c) {
  return c == EdgeColor::Bold ? EdgeColor::Dotted : EdgeColor::Bold;
}
inline EdgeColor other_sb(EdgeColor c) {
  return c == EdgeColor::Solid ? EdgeColor::Bold : EdgeColor::Solid;
}

// Real dart on the walk side: +1 successor, -1 predecessor.
inline int real_dart(const Dessin& d, int v, int side) {
  return side > 0 ? d.verts[v].rot.back() : d.verts[v].rot.front();
}
inline int neighbor(const Dessin& d, int v, int side) {
  return d.darts[d.pair_of(real_dart(d, v, side))].vertex;
}
inline bool is_real_mono(const Dessin& d, int v, EdgeColor c) {
  return d.verts[v].alive && d.verts[v].real &&
         d.verts[v].color == VertexColor::Mono && d.verts[v].rot.size() == 3 &&
         d.darts[d.verts[v].rot[0]].color == c;
}
inline bool is_real_white2(const Dessin& d, int v) {
  return d.verts[v].alive && d.verts[v].real &&
         d.verts[v].color == VertexColor::White && d.verts[v].rot.size() == 3;
}
inline bool is_real_black3(const Dessin& d, int v) {
  return d.verts[v].alive && d.verts[v].real &&
         d.verts[v].color == VertexColor::Black && d.verts[v].rot.size() == 4;
}
inline bool is_real_cross1(const Dessin& d, int v) {
  return d.verts[v].alive && d.verts[v].real &&
         d.verts[v].color == VertexColor::Cross && d.verts[v].rot.size() == 2;
}
inline bool is_inner_cross1(const Dessin& d, int v) {
  return d.verts[v].alive && !d.verts[v].real &&
         d.verts[v].color == VertexColor::Cross && d.verts[v].rot.size() == 2;
}

inline void kill_vertex(Dessin& d, int v) {
  for (int dd : d.verts[v].rot) d.darts[dd].alive = false;
  d.verts[v].alive = false;
}

struct PatternFail : DomainError {
  explicit PatternFail(const std::string& w) : DomainError("PatternMismatch", w) {}
};

inline void need(bool cond, const char* what) {
  if (!cond) throw PatternFail(what);
}

// ---- monochrome modification ----------------------------------------------

inline MoveResult apply_mono_mod(const Dessin& in, int d1, int d2) {
  need(d1 >= 0 && d2 >= 0 && d1 < int(in.darts.size()) &&
           d2 < int(in.darts.size()) && in.darts[d1].alive && in.darts[d2].alive,
       "monochrome modification: dead anchor");
  need(!in.darts[d1].real && !in.darts[d2].real,
       "monochrome modification: anchors must be inner darts");
  need(in.darts[d1].color == in.darts[d2].color,
       "monochrome modification: colors differ");
  need(d1 != d2 && in.pair_of(d1) != d2,
       "monochrome modification: anchors on one edge");
  // both darts traversed by one region walk
  auto rs = detail::trace_regions(in);
  int r1 = -1, r2 = -1;
  for (int i = 0; i < int(rs.size()); ++i)
    for (int dd : rs[i].walk) {
      if (dd == d1) r1 = i;
      if (dd == d2) r2 = i;
    }
  need(r1 >= 0 && r1 == r2, "monochrome modification: no common region");

  Dessin out = in;
  int p1 = out.pair_of(d1), p2 = out.pair_of(d2);
  out.pair_darts(p1, d2);
  out.pair_darts(d1, p2);
  out.finalize();
  MoveSite inv{MoveKind::MonochromeModification,
               {std::min(d1, d2), std::max(d1, d2)}, out.version};
  return MoveResult{std::move(out), inv};
}

// ---- bridges ---------------------------------------------------------------

inline MoveResult apply_create_bridge(const Dessin& in, int di, int dr) {
  need(di >= 0 && dr >= 0 && di < int(in.darts.size()) &&
           dr < int(in.darts.size()) && in.darts[di].alive && in.darts[dr].alive,
       "create_bridge: dead anchor");
  need(!in.darts[di].real && in.darts[dr].real,
       "create_bridge: need one inner and one real dart");
  need(in.darts[di].color == in.darts[dr].color, "create_bridge: colors differ");
  int u = in.darts[dr].vertex;
  need(dr == in.succ_real_dart(u), "create_bridge: real anchor must follow the walk");
  auto rs = detail::trace_regions(in);
  int r1 = -1, r2 = -1;
  for (int i = 0; i < int(rs.size()); ++i)
    for (int dd : rs[i].walk) {
      if (dd == di) r1 = i;
      if (dd == dr) r2 = i;
    }
  need(r1 >= 0 && r1 == r2, "create_bridge: no common region");

  Dessin out = in;
  EdgeColor c = out.darts[di].color;
  int pi = out.pair_of(di);  // dart at b
  int pr = out.pair_of(dr);  // dart at w
  int m1 = out.add_vertex(VertexColor::Mono, true);
  int m2 = out.add_vertex(VertexColor::Mono, true);
  int m1u = out.add_dart(m1, c, true);
  int m1b = out.add_dart(m1, c, false);
  int m1m2 = out.add_dart(m1, c, true);
  int m2m1 = out.add_dart(m2, c, true);
  int m2a = out.add_dart(m2, c, false);
  int m2w = out.add_dart(m2, c, true);
  out.verts[m1].rot = {m1u, m1b, m1m2};
  out.verts[m2].rot = {m2m1, m2a, m2w};
  out.pair_darts(dr, m1u);
  out.pair_darts(m1m2, m2m1);
  out.pair_darts(m2w, pr);
  out.pair_darts(di, m2a);
  out.pair_darts(pi, m1b);
  out.finalize();
  MoveSite inv{MoveKind::DestroyBridge, {m1m2}, out.version};
  return MoveResult{std::move(out), inv};
}

inline MoveResult apply_destroy_bridge(const Dessin& in, int dbr) {
  need(dbr >= 0 && dbr < int(in.darts.size()) && in.darts[dbr].alive &&
           in.darts[dbr].real,
       "destroy_bridge: need a live real dart");
  int m1 = in.darts[dbr].vertex;
  int m2 = in.darts[in.pair_of(dbr)].vertex;
  need(dbr == in.succ_real_dart(m1), "destroy_bridge: anchor against the walk");
  EdgeColor c = in.darts[dbr].color;
  need(is_real_mono(in, m1, c) && is_real_mono(in, m2, c) && m1 != m2,
       "destroy_bridge: endpoints must be monochrome of index 2");
  // bridge definition: boundary component with more than two vertices
  int circle = in.circle_of_vertex(m1);
  need(circle >= 0 && int(in.boundary[circle].size()) > 2,
       "destroy_bridge: boundary component too small");

  Dessin out = in;
  int pa = out.pair_of(out.verts[m1].rot[1]);  // partner of m1's inner dart
  int pb = out.pair_of(out.verts[m2].rot[1]);
  int u_succ = out.pair_of(out.verts[m1].rot[0]);
  int w_prev = out.pair_of(out.verts[m2].rot[2]);
  kill_vertex(out, m1);
  kill_vertex(out, m2);
  out.pair_darts(pa, pb);
  out.pair_darts(u_succ, w_prev);
  auto remap = out.compact();
  MoveSite inv{MoveKind::CreateBridge, {remap[pb], remap[u_succ]}, out.version};
  return MoveResult{std::move(out), inv};
}

// ---- white_in / white_out --------------------------------------------------

inline MoveResult apply_white_in(const Dessin& in, int anchor) {
  need(anchor >= 0 && anchor < int(in.darts.size()) && in.darts[anchor].alive,
       "white_in: dead anchor");
  int u = in.darts[anchor].vertex;
  EdgeColor c = in.darts[anchor].color;
  need((c == EdgeColor::Bold || c == EdgeColor::Dotted) && is_real_mono(in, u, c),
       "white_in: anchor must be the inner dart of a bold or dotted real "
       "monochrome vertex");
  need(anchor == in.verts[u].rot[1], "white_in: anchor must be the inner dart");
  int w1 = neighbor(in, u, -1), w2 = neighbor(in, u, +1);
  need(is_real_white2(in, w1) && is_real_white2(in, w2) && w1 != w2,
       "white_in: flanking vertices must be real whites of index 2");

  Dessin out = in;
  EdgeColor cp = other_bd(c);
  int B1 = out.pair_of(out.verts[w1].rot[1]);
  int A = out.pair_of(anchor);
  int B2 = out.pair_of(out.verts[w2].rot[1]);
  int xs = out.pair_of(out.verts[w1].rot[0]);  // x's successor dart
  int yp = out.pair_of(out.verts[w2].rot[2]);  // y's predecessor dart
  bool wrap = (out.darts[xs].vertex == w2);    // circle was exactly [w1,u,w2]
  if (wrap)
    need(out.darts[yp].vertex == w1, "white_in: corrupt three-vertex circle");

  int m = out.add_vertex(VertexColor::Mono, true);
  int mx = out.add_dart(m, c, true);
  int mi = out.add_dart(m, c, false);
  int my = out.add_dart(m, c, true);
  out.verts[m].rot = {mx, mi, my};
  int w = out.add_vertex(VertexColor::White, false);
  int wm = out.add_dart(w, c, false);
  int wb1 = out.add_dart(w, cp, false);
  int wa = out.add_dart(w, c, false);
  int wb2 = out.add_dart(w, cp, false);
  out.verts[w].rot = {wm, wb1, wa, wb2};

  kill_vertex(out, w1);
  kill_vertex(out, u);
  kill_vertex(out, w2);
  if (wrap) {
    out.pair_darts(mx, my);
  } else {
    out.pair_darts(mx, xs);
    out.pair_darts(my, yp);
  }
  out.pair_darts(mi, wm);
  out.pair_darts(wb1, B1);
  out.pair_darts(wa, A);
  out.pair_darts(wb2, B2);
  auto remap = out.compact();
  MoveSite inv{MoveKind::WhiteOut, {remap[mi]}, out.version};
  return MoveResult{std::move(out), inv};
}

inline MoveResult apply_white_out(const Dessin& in, int anchor) {
  need(anchor >= 0 && anchor < int(in.darts.size()) && in.darts[anchor].alive,
       "white_out: dead anchor");
  int m = in.darts[anchor].vertex;
  EdgeColor c = in.darts[anchor].color;
  need((c == EdgeColor::Bold || c == EdgeColor::Dotted) && is_real_mono(in, m, c),
       "white_out: anchor must be the inner dart of a bold or dotted real "
       "monochrome vertex");
  need(anchor == in.verts[m].rot[1], "white_out: anchor must be the inner dart");
  int wm = in.pair_of(anchor);
  int w = in.darts[wm].vertex;
  need(!in.verts[w].real && in.verts[w].color == VertexColor::White &&
           in.verts[w].rot.size() == 4,
       "white_out: monochrome vertex must attach to an inner white of index 2");

  Dessin out = in;
  EdgeColor cp = other_bd(c);
  // rotation of w starting at its dart toward m
  const auto& rot = out.verts[w].rot;
  int k = out.rot_index(wm);
  int q1 = rot[(k + 1) % 4], q2 = rot[(k + 2) % 4], q3 = rot[(k + 3) % 4];
  need(out.darts[q1].color == cp && out.darts[q2].color == c &&
           out.darts[q3].color == cp,
       "white_out: inner white rotation colors inconsistent");
  int B1 = out.pair_of(q1), A = out.pair_of(q2), B2 = out.pair_of(q3);
  int xs = out.pair_of(out.verts[m].rot[0]);
  int yp = out.pair_of(out.verts[m].rot[2]);
  bool wrap = (out.darts[xs].vertex == m);  // one-vertex circle [m]

  int w1 = out.add_vertex(VertexColor::White, true);
  int u = out.add_vertex(VertexColor::Mono, true);
  int w2 = out.add_vertex(VertexColor::White, true);
  int w1x = out.add_dart(w1, c, true);
  int w1i = out.add_dart(w1, cp, false);
  int w1u = out.add_dart(w1, c, true);
  int uw1 = out.add_dart(u, c, true);
  int ui = out.add_dart(u, c, false);
  int uw2 = out.add_dart(u, c, true);
  int w2u = out.add_dart(w2, c, true);
  int w2i = out.add_dart(w2, cp, false);
  int w2y = out.add_dart(w2, c, true);
  out.verts[w1].rot = {w1x, w1i, w1u};
  out.verts[u].rot = {uw1, ui, uw2};
  out.verts[w2].rot = {w2u, w2i, w2y};

  kill_vertex(out, m);
  kill_vertex(out, w);
  if (wrap) {
    out.pair_darts(w1x, w2y);
  } else {
    out.pair_darts(w1x, xs);
    out.pair_darts(w2y, yp);
  }
  out.pair_darts(w1u, uw1);
  out.pair_darts(uw2, w2u);
  out.pair_darts(w1i, B1);
  out.pair_darts(ui, A);
  out.pair_darts(w2i, B2);
  auto remap = out.compact();
  MoveSite inv{MoveKind::WhiteIn, {remap[ui]}, out.version};
  return MoveResult{std::move(out), inv};
}

// ---- black_in / black_out --------------------------------------------------

inline MoveResult apply_black_in(const Dessin& in, int anchor) {
  need(anchor >= 0 && anchor < int(in.darts.size()) && in.darts[anchor].alive,
       "black_in: dead anchor");
  int u = in.darts[anchor].vertex;
  EdgeColor c = in.darts[anchor].color;
  need((c == EdgeColor::Solid || c == EdgeColor::Bold) && is_real_mono(in, u, c),
       "black_in: anchor must be the inner dart of a solid or bold real "
       "monochrome vertex");
  need(anchor == in.verts[u].rot[1], "black_in: anchor must be the inner dart");
  int b1 = neighbor(in, u, -1), b2 = neighbor(in, u, +1);
  need(is_real_black3(in, b1) && is_real_black3(in, b2) && b1 != b2,
       "black_in: flanking vertices must be real blacks of index 3");

  Dessin out = in;
  EdgeColor cpp = other_sb(c);
  int P1 = out.pair_of(out.verts[b1].rot[1]);
  int P2 = out.pair_of(out.verts[b1].rot[2]);
  EdgeColor c1 = out.darts[out.verts[b1].rot[1]].color;
  EdgeColor c2 = out.darts[out.verts[b1].rot[2]].color;
  int A = out.pair_of(anchor);
  int P1p = out.pair_of(out.verts[b2].rot[1]);
  int P2p = out.pair_of(out.verts[b2].rot[2]);
  EdgeColor c1p = out.darts[out.verts[b2].rot[1]].color;
  EdgeColor c2p = out.darts[out.verts[b2].rot[2]].color;
  int xs = out.pair_of(out.verts[b1].rot[0]);
  int yp = out.pair_of(out.verts[b2].rot[3]);
  bool wrap = (out.darts[xs].vertex == b2);

  int m = out.add_vertex(VertexColor::Mono, true);
  int mx = out.add_dart(m, cpp, true);
  int mi = out.add_dart(m, cpp, false);
  int my = out.add_dart(m, cpp, true);
  out.verts[m].rot = {mx, mi, my};
  int B = out.add_vertex(VertexColor::Black, false);
  int Bm = out.add_dart(B, cpp, false);
  int Bi1 = out.add_dart(B, c1, false);
  int Bi2 = out.add_dart(B, c2, false);
  int Ba = out.add_dart(B, c, false);
  int Bi1p = out.add_dart(B, c1p, false);
  int Bi2p = out.add_dart(B, c2p, false);
  out.verts[B].rot = {Bm, Bi1, Bi2, Ba, Bi1p, Bi2p};

  kill_vertex(out, b1);
  kill_vertex(out, u);
  kill_vertex(out, b2);
  if (wrap) {
    out.pair_darts(mx, my);
  } else {
    out.pair_darts(mx, xs);
    out.pair_darts(my, yp);
  }
  out.pair_darts(mi, Bm);
  out.pair_darts(Bi1, P1);
  out.pair_darts(Bi2, P2);
  out.pair_darts(Ba, A);
  out.pair_darts(Bi1p, P1p);
  out.pair_darts(Bi2p, P2p);
  auto remap = out.compact();
  MoveSite inv{MoveKind::BlackOut, {remap[mi]}, out.version};
  return MoveResult{std::move(out), inv};
}

inline MoveResult apply_black_out(const Dessin& in, int anchor) {
  need(anchor >= 0 && anchor < int(in.darts.size()) && in.darts[anchor].alive,
       "black_out: dead anchor");
  int m = in.darts[anchor].vertex;
  EdgeColor cpp = in.darts[anchor].color;
  need((cpp == EdgeColor::Solid || cpp == EdgeColor::Bold) &&
           is_real_mono(in, m, cpp),
       "black_out: anchor must be the inner dart of a solid or bold real "
       "monochrome vertex");
  need(anchor == in.verts[m].rot[1], "black_out: anchor must be the inner dart");
  int Bm = in.pair_of(anchor);
  int B = in.darts[Bm].vertex;
  need(!in.verts[B].real && in.verts[B].color == VertexColor::Black &&
           in.verts[B].rot.size() == 6,
       "black_out: monochrome vertex must attach to an inner black of index 3");

  Dessin out = in;
  const auto& rot = out.verts[B].rot;
  int k = out.rot_index(Bm);
  int e1 = rot[(k + 1) % 6], e2 = rot[(k + 2) % 6], e3 = rot[(k + 3) % 6],
      e4 = rot[(k + 4) % 6], e5 = rot[(k + 5) % 6];
  EdgeColor c = out.darts[e3].color;
  need(c == other_sb(cpp), "black_out: inner black rotation colors inconsistent");
  int P1 = out.pair_of(e1), P2 = out.pair_of(e2), A = out.pair_of(e3),
      P1p = out.pair_of(e4), P2p = out.pair_of(e5);
  EdgeColor ce1 = out.darts[e1].color, ce2 = out.darts[e2].color,
            ce4 = out.darts[e4].color, ce5 = out.darts[e5].color;
  int xs = out.pair_of(out.verts[m].rot[0]);
  int yp = out.pair_of(out.verts[m].rot[2]);
  bool wrap = (out.darts[xs].vertex == m);

  int b1 = out.add_vertex(VertexColor::Black, true);
  int u = out.add_vertex(VertexColor::Mono, true);
  int b2 = out.add_vertex(VertexColor::Black, true);
  int b1x = out.add_dart(b1, cpp, true);
  int b1i1 = out.add_dart(b1, ce1, false);
  int b1i2 = out.add_dart(b1, ce2, false);
  int b1u = out.add_dart(b1, c, true);
  int ub1 = out.add_dart(u, c, true);
  int ui = out.add_dart(u, c, false);
  int ub2 = out.add_dart(u, c, true);
  int b2u = out.add_dart(b2, c, true);
  int b2i1 = out.add_dart(b2, ce4, false);
  int b2i2 = out.add_dart(b2, ce5, false);
  int b2y = out.add_dart(b2, cpp, true);
  out.verts[b1].rot = {b1x, b1i1, b1i2, b1u};
  out.verts[u].rot = {ub1, ui, ub2};
  out.verts[b2].rot = {b2u, b2i1, b2i2, b2y};

  kill_vertex(out, m);
  kill_vertex(out, B);
  if (wrap) {
    out.pair_darts(b1x, b2y);
  } else {
    out.pair_darts(b1x, xs);
    out.pair_darts(b2y, yp);
  }
  out.pair_darts(b1u, ub1);
  out.pair_darts(ub2, b2u);
  out.pair_darts(b1i1, P1);
  out.pair_darts(b1i2, P2);
  out.pair_darts(ui, A);
  out.pair_darts(b2i1, P1p);
  out.pair_darts(b2i2, P2p);
  auto remap = out.compact();
  MoveSite inv{MoveKind::BlackIn, {remap[ui]}, out.version};
  return MoveResult{std::move(out), inv};
}

// ---- zigzag moves -----------------------------------------------------------

// side = +1: the black vertex sits on the successor side of the white;
// side = -1: mirror image.
struct ZigzagFrame {
  int w, x1, x2, b, M;  // vertices; x1 adjacent to M, x2 adjacent to b
  int side;
};

inline std::optional<ZigzagFrame> match_straighten(const Dessin& d, int anchor) {
  if (anchor < 0 || anchor >= int(d.darts.size()) || !d.darts[anchor].alive)
    return std::nullopt;
  int w = d.darts[anchor].vertex;
  if (!is_real_white2(d, w) || anchor != d.verts[w].rot[1]) return std::nullopt;
  if (d.darts[anchor].color != EdgeColor::Bold) return std::nullopt;
  if (d.darts[d.verts[w].rot[0]].color != EdgeColor::Dotted) return std::nullopt;
  for (int side : {+1, -1}) {
    int x2 = neighbor(d, w, side);
    int x1 = neighbor(d, w, -side);
    if (!is_real_cross1(d, x2) || !is_real_cross1(d, x1)) continue;
    int b = neighbor(d, x2, side);
    int M = neighbor(d, x1, -side);
    if (!is_real_black3(d, b)) continue;
    if (!is_real_mono(d, M, EdgeColor::Solid)) continue;
    if (b == M || b == w || M == w) continue;
    // inner edges: w-b bold, M-b solid, landing on the matching b darts
    int b_bold = side > 0 ? d.verts[b].rot[1] : d.verts[b].rot[2];
    int b_solid = side > 0 ? d.verts[b].rot[2] : d.verts[b].rot[1];
    if (d.darts[b_bold].color != EdgeColor::Bold ||
        d.darts[b_solid].color != EdgeColor::Solid)
      continue;
    if (d.pair_of(anchor) != b_bold) continue;
    if (d.pair_of(d.verts[M].rot[1]) != b_solid) continue;
    // context edges must be distinct: the vertex beyond M must not be b
    if (d.darts[d.pair_of(real_dart(d, M, -side))].vertex == b) continue;
    return ZigzagFrame{w, x1, x2, b, M, side};
  }
  return std::nullopt;
}

inline MoveResult apply_straighten_zigzag(const Dessin& in, int anchor,
                                          int side_hint_dart) {
  auto fr = match_straighten(in, anchor);
  need(fr.has_value(), "straighten_zigzag: local fragment does not match");
  // disambiguate chirality when both sides match
  if (side_hint_dart >= 0) {
    int b_hint = in.darts[side_hint_dart].vertex;
    if (b_hint != fr->b) {
      auto alt = ZigzagFrame{};
      bool found = false;
      // try the mirrored side explicitly
      for (int side : {+1, -1}) {
        if (side == fr->side) continue;
        int x2 = neighbor(in, fr->w, side);
        int x1 = neighbor(in, fr->w, -side);
        if (!is_real_cross1(in, x2) || !is_real_cross1(in, x1)) continue;
        int b = neighbor(in, x2, side);
        int M = neighbor(in, x1, -side);
        if (b != b_hint) continue;
        alt = ZigzagFrame{fr->w, x1, x2, b, M, side};
        found = true;
      }
      need(found, "straighten_zigzag: hint dart does not select a fragment");
      fr = alt;
    }
  }
  const int side = fr->side;
  Dessin out = in;
  int w = fr->w, x1 = fr->x1, x2 = fr->x2, b = fr->b, M = fr->M;

  int b_bold = side > 0 ? out.verts[b].rot[1] : out.verts[b].rot[2];
  int b_solid = side > 0 ? out.verts[b].rot[2] : out.verts[b].rot[1];
  int ctx_M = out.pair_of(real_dart(out, M, -side));  // x's dart toward M
  int ctx_b = out.pair_of(real_dart(out, b, side));   // y's dart toward b
  bool wrap = (out.darts[ctx_M].vertex == b);
  need(!wrap, "straighten_zigzag: context edges coincide");

  // new inner x-vertex
  int xi = out.add_vertex(VertexColor::Cross, false);
  int xid = out.add_dart(xi, EdgeColor::Dotted, false);
  int xis = out.add_dart(xi, EdgeColor::Solid, false);
  out.verts[xi].rot = side > 0 ? std::vector<int>{xid, xis}
                               : std::vector<int>{xis, xid};

  kill_vertex(out, x1);
  kill_vertex(out, x2);

  // recolor the migrating monochrome vertex and the white vertex
  for (int dd : out.verts[M].rot) out.darts[dd].color = EdgeColor::Bold;
  out.darts[out.verts[w].rot[0]].color = EdgeColor::Bold;
  out.darts[out.verts[w].rot[2]].color = EdgeColor::Bold;
  out.darts[out.verts[w].rot[1]].color = EdgeColor::Dotted;

  // boundary: [x] -s- b -b- w -b- M' -b- [y]   (side = +1 orientation)
  out.pair_darts(real_dart(out, b, -side), ctx_M);
  out.pair_darts(real_dart(out, b, side), real_dart(out, w, -side));
  out.pair_darts(real_dart(out, w, side), real_dart(out, M, -side));
  out.pair_darts(real_dart(out, M, side), ctx_b);
  // inner edges
  out.pair_darts(out.verts[w].rot[1], xid);
  out.pair_darts(xis, b_solid);
  out.pair_darts(b_bold, out.verts[M].rot[1]);

  int w_inner = out.verts[w].rot[1];
  auto remap = out.compact();
  MoveSite inv{MoveKind::CreateZigzag, {remap[w_inner]}, out.version};
  return MoveResult{std::move(out), inv};
}

inline std::optional<ZigzagFrame> match_create(const Dessin& d, int anchor) {
  // Pattern (side = +1):  [x] -s- b -b- w -b- M' -b- [y]  with inner edges
  // w-xi (dotted), xi-b (solid), b-M' (bold); xi an inner simple x-vertex.
  if (anchor < 0 || anchor >= int(d.darts.size()) || !d.darts[anchor].alive)
    return std::nullopt;
  int w = d.darts[anchor].vertex;
  if (!is_real_white2(d, w) || anchor != d.verts[w].rot[1]) return std::nullopt;
  if (d.darts[anchor].color != EdgeColor::Dotted) return std::nullopt;
  if (d.darts[d.verts[w].rot[0]].color != EdgeColor::Bold) return std::nullopt;
  int xi = d.darts[d.pair_of(anchor)].vertex;
  if (!is_inner_cross1(d, xi)) return std::nullopt;
  int xis = d.verts[xi].rot[0];
  if (d.darts[xis].color != EdgeColor::Solid) xis = d.verts[xi].rot[1];
  if (d.darts[xis].color != EdgeColor::Solid) return std::nullopt;
  int b = d.darts[d.pair_of(xis)].vertex;
  if (!is_real_black3(d, b)) return std::nullopt;
  for (int side : {+1, -1}) {
    if (neighbor(d, w, -side) != b) continue;
    int M = neighbor(d, w, side);
    if (!is_real_mono(d, M, EdgeColor::Bold)) continue;
    if (M == b) continue;
    int b_bold = side > 0 ? d.verts[b].rot[1] : d.verts[b].rot[2];
    int b_solid = side > 0 ? d.verts[b].rot[2] : d.verts[b].rot[1];
    if (d.darts[b_bold].color != EdgeColor::Bold ||
        d.darts[b_solid].color != EdgeColor::Solid)
      continue;
    if (d.pair_of(xis) != b_solid) continue;
    if (d.pair_of(b_bold) != d.verts[M].rot[1]) continue;
    if (d.pair_of(real_dart(d, w, -side)) != real_dart(d, b, side)) continue;
    if (d.pair_of(real_dart(d, w, side)) != real_dart(d, M, -side)) continue;
    // context edges must be distinct
    if (d.darts[d.pair_of(real_dart(d, b, -side))].vertex == M) continue;
    return ZigzagFrame{w, /*x1*/ -1, /*x2*/ -1, b, M, side};
  }
  return std::nullopt;
}

inline MoveResult apply_create_zigzag(const Dessin& in, int anchor) {
  auto fr = match_create(in, anchor);
  need(fr.has_value(), "create_zigzag: local fragment does not match");
  const int side = fr->side;
  Dessin out = in;
  int w = fr->w, b = fr->b, M = fr->M;
  int xi = out.darts[out.pair_of(out.verts[w].rot[1])].vertex;

  int b_bold = side > 0 ? out.verts[b].rot[1] : out.verts[b].rot[2];
  int b_solid = side > 0 ? out.verts[b].rot[2] : out.verts[b].rot[1];
  int ctx_b = out.pair_of(real_dart(out, b, -side));  // x's dart toward b
  int ctx_M = out.pair_of(real_dart(out, M, side));   // y's dart toward M'

  kill_vertex(out, xi);

  // new real x-vertices; rotation [prev, succ] following the walk direction
  int x1 = out.add_vertex(VertexColor::Cross, true);
  int x2 = out.add_vertex(VertexColor::Cross, true);
  int x1s = out.add_dart(x1, EdgeColor::Solid, true);   // toward M
  int x1d = out.add_dart(x1, EdgeColor::Dotted, true);  // toward w
  int x2d = out.add_dart(x2, EdgeColor::Dotted, true);  // toward w
  int x2s = out.add_dart(x2, EdgeColor::Solid, true);   // toward b
  out.verts[x1].rot = side > 0 ? std::vector<int>{x1s, x1d}
                               : std::vector<int>{x1d, x1s};
  out.verts[x2].rot = side > 0 ? std::vector<int>{x2d, x2s}
                               : std::vector<int>{x2s, x2d};

  // recolor: M' becomes a solid monochrome vertex, w a dotted-type white
  for (int dd : out.verts[M].rot) out.darts[dd].color = EdgeColor::Solid;
  out.darts[out.verts[w].rot[0]].color = EdgeColor::Dotted;
  out.darts[out.verts[w].rot[2]].color = EdgeColor::Dotted;
  out.darts[out.verts[w].rot[1]].color = EdgeColor::Bold;

  bool wrap = (out.darts[ctx_b].vertex == M);
  // boundary: [x] -s- M -s- x1 -d- w -d- x2 -s- b -b- [y]  (side = +1)
  if (wrap) {
    out.pair_darts(real_dart(out, M, -side), real_dart(out, b, side));
  } else {
    out.pair_darts(real_dart(out, M, -side), ctx_b);
    out.pair_darts(real_dart(out, b, side), ctx_M);
  }
  out.pair_darts(real_dart(out, M, side), side > 0 ? x1s : x1s);
  out.pair_darts(x1d, real_dart(out, w, -side));
  out.pair_darts(real_dart(out, w, side), x2d);
  out.pair_darts(x2s, real_dart(out, b, -side));
  // inner edges
  out.pair_darts(out.verts[M].rot[1], b_solid);
  out.pair_darts(out.verts[w].rot[1], b_bold);

  int w_inner = out.verts[w].rot[1];
  int b_first = out.verts[b].rot[0];
  auto remap = out.compact();
  MoveSite inv{MoveKind::StraightenZigzag, {remap[w_inner], remap[b_first]},
               out.version};
  return MoveResult{std::move(out), inv};
}

}  // namespace movedetail

// ---------------------------------------------------------------------------

inline MoveResult apply_unchecked(const Dessin& d, const MoveSite& m) {
  using namespace movedetail;
  auto a = [&](size_t i) -> int {
    if (i >= m.anchors.size())
      throw PatternFail("missing anchor for " + std::string(to_string(m.kind)));
    return m.anchors[i];
  };
  switch (m.kind) {
    case MoveKind::MonochromeModification: return apply_mono_mod(d, a(0), a(1));
    case MoveKind::CreateBridge: return apply_create_bridge(d, a(0), a(1));
    case MoveKind::DestroyBridge: return apply_destroy_bridge(d, a(0));
    case MoveKind::WhiteIn: return apply_white_in(d, a(0));
    case MoveKind::WhiteOut: return apply_white_out(d, a(0));
    case MoveKind::BlackIn: return apply_black_in(d, a(0));
    case MoveKind::BlackOut: return apply_black_out(d, a(0));
    case MoveKind::StraightenZigzag:
      return apply_straighten_zigzag(d, a(0),
                                     m.anchors.size() > 1 ? a(1) : -1);
    case MoveKind::CreateZigzag: return apply_create_zigzag(d, a(0));
  }
  throw PatternFail("unknown move kind");
}

// Apply a move; the result is validated.  Stale sites (version mismatch)
// raise PatternMismatch; a rewrite that leaves the dessin axioms broken
// raises ValidityBroken.
inline MoveResult apply(const Dessin& d, const MoveSite& m,
                        bool check_version = true) {
  if (check_version && m.version != 0 && m.version != d.version)
    throw DomainError("PatternMismatch", "stale move site (version stamp)");
  MoveResult res = apply_unchecked(d, m);
  auto rep = validate(res.dessin);
  if (!rep.ok())
    throw DomainError("ValidityBroken",
                      "move " + m.str() + " broke validity: " +
                          rep.violations.front());
  return res;
}

// Complete deterministic list of applicable sites: structural matches whose
// application validates.
inline std::vector<MoveSite> applicable_moves(const Dessin& d,
                                              bool include_weak = true) {
  using namespace movedetail;
  std::vector<MoveSite> candidates;
  auto rs = detail::trace_regions(d);

  for (const auto& r : rs) {
    const auto& walk = r.walk;
    for (size_t i = 0; i < walk.size(); ++i)
      for (size_t j = i + 1; j < walk.size(); ++j) {
        int d1 = walk[i], d2 = walk[j];
        if (d.darts[d1].color != d.darts[d2].color) continue;
        bool r1 = d.darts[d1].real, r2 = d.darts[d2].real;
        if (!r1 && !r2) {
          if (d.pair_of(d1) == d2) continue;
          candidates.push_back(MoveSite{MoveKind::MonochromeModification,
                                        {std::min(d1, d2), std::max(d1, d2)},
                                        d.version});
        } else if (r1 != r2) {
          int di = r1 ? d2 : d1;
          int dr = r1 ? d1 : d2;
          candidates.push_back(
              MoveSite{MoveKind::CreateBridge, {di, dr}, d.version});
        }
      }
  }
  for (int dd = 0; dd < int(d.darts.size()); ++dd) {
    if (!d.darts[dd].alive || !d.darts[dd].real) continue;
    int v = d.darts[dd].vertex;
    if (dd != d.succ_real_dart(v)) continue;
    int w = d.darts[d.pair_of(dd)].vertex;
    EdgeColor c = d.darts[dd].color;
    if (is_real_mono(d, v, c) && is_real_mono(d, w, c) && v != w) {
      int circ = d.circle_of_vertex(v);
      if (circ >= 0 && int(d.boundary[circ].size()) > 2)
        candidates.push_back(MoveSite{MoveKind::DestroyBridge, {dd}, d.version});
    }
  }
  for (int v = 0; v < int(d.verts.size()); ++v) {
    if (!d.verts[v].alive || !d.verts[v].real ||
        d.verts[v].color != VertexColor::Mono || d.verts[v].rot.size() != 3)
      continue;
    int anchor = d.verts[v].rot[1];
    EdgeColor c = d.darts[anchor].color;
    int n1 = neighbor(d, v, -1), n2 = neighbor(d, v, +1);
    if ((c == EdgeColor::Bold || c == EdgeColor::Dotted)) {
      if (is_real_white2(d, n1) && is_real_white2(d, n2) && n1 != n2)
        candidates.push_back(MoveSite{MoveKind::WhiteIn, {anchor}, d.version});
      int w = d.darts[d.pair_of(anchor)].vertex;
      if (!d.verts[w].real && d.verts[w].color == VertexColor::White &&
          d.verts[w].rot.size() == 4)
        candidates.push_back(MoveSite{MoveKind::WhiteOut, {anchor}, d.version});
    }
    if ((c == EdgeColor::Solid || c == EdgeColor::Bold)) {
      if (is_real_black3(d, n1) && is_real_black3(d, n2) && n1 != n2)
        candidates.push_back(MoveSite{MoveKind::BlackIn, {anchor}, d.version});
      int B = d.darts[d.pair_of(anchor)].vertex;
      if (!d.verts[B].real && d.verts[B].color == VertexColor::Black &&
          d.verts[B].rot.size() == 6)
        candidates.push_back(MoveSite{MoveKind::BlackOut, {anchor}, d.version});
    }
  }
  if (include_weak) {
    for (int v = 0; v < int(d.verts.size()); ++v) {
      if (!is_real_white2(d, v)) continue;
      int anchor = d.verts[v].rot[1];
      if (auto fr = match_straighten(d, anchor)) {
        candidates.push_back(
            MoveSite{MoveKind::StraightenZigzag,
                     {anchor, d.verts[fr->b].rot[0]},
                     d.version});
        // mirrored fragment at the same white, when both sides match
        for (int side : {-fr->side}) {
          int x2 = neighbor(d, v, side), x1 = neighbor(d, v, -side);
          if (!is_real_cross1(d, x2) || !is_real_cross1(d, x1)) continue;
          int b = neighbor(d, x2, side);
          if (!is_real_black3(d, b) || b == fr->b) continue;
          MoveSite alt{MoveKind::StraightenZigzag,
                       {anchor, d.verts[b].rot[0]},
                       d.version};
          try {
            apply_unchecked(d, alt);
            candidates.push_back(alt);
          } catch (const DomainError&) {
          }
        }
      }
      if (match_create(d, anchor))
        candidates.push_back(
            MoveSite{MoveKind::CreateZigzag, {anchor}, d.version});
    }
  }

  std::vector<MoveSite> out;
  for (auto& site : candidates) {
    try {
      MoveResult res = apply_unchecked(d, site);
      auto rep = validate(res.dessin);
      if (rep.ok() && is_reduced(res.dessin)) out.push_back(site);
    } catch (const DomainError&) {
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline MoveKind inverse_kind(MoveKind k) {
  switch (k) {
    case MoveKind::MonochromeModification: return MoveKind::MonochromeModification;
    case MoveKind::CreateBridge: return MoveKind::DestroyBridge;
    case MoveKind::DestroyBridge: return MoveKind::CreateBridge;
    case MoveKind::WhiteIn: return MoveKind::WhiteOut;
    case MoveKind::WhiteOut: return MoveKind::WhiteIn;
    case MoveKind::BlackIn: return MoveKind::BlackOut;
    case MoveKind::BlackOut: return MoveKind::BlackIn;
    case MoveKind::StraightenZigzag: return MoveKind::CreateZigzag;
    case MoveKind::CreateZigzag: return MoveKind::StraightenZigzag;
  }
  return k;
}

}  // namespace dessin
