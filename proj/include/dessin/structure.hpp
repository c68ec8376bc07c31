#pragma once

/*
  Cuts, axes, gluing surgery, type-I labeling, and the invariants read off a
  uninodal dessin.

  A dotted cut is an inner dotted edge joining two real monochrome vertices;
  an axe is an inner edge joining the node (a real x-vertex of index 2) to a
  real monochrome vertex.  On the disk every cut separates; cutting yields
  two dessins, each carrying a copy of the cut arc on its boundary.  The
  monochrome endpoints dissolve into plain edge points; the node descends to
  a simple x-vertex in each piece.  Gluing is the exact inverse.
*/

#include "canonical.hpp"
#include "validate.hpp"

namespace dessin {

struct CutSite {
  enum class Kind { DottedCut, Axe } kind;
  int dart;  // smaller dart id of the inner edge

  bool operator<(const CutSite& o) const {
    return std::tie(kind, dart) < std::tie(o.kind, o.dart);
  }
};

inline std::vector<CutSite> find_cut_sites(const Dessin& d) {
  std::vector<CutSite> out;
  for (int dd = 0; dd < int(d.darts.size()); ++dd) {
    if (!d.darts[dd].alive || d.darts[dd].real) continue;
    int pp = d.pair_of(dd);
    if (pp < dd) continue;
    int a = d.darts[dd].vertex, b = d.darts[pp].vertex;
    auto real_mono2 = [&](int v) {
      return d.verts[v].real && d.verts[v].color == VertexColor::Mono &&
             d.verts[v].rot.size() == 3;
    };
    auto real_node = [&](int v) { return d.verts[v].real && d.is_node(v); };
    if (d.darts[dd].color == EdgeColor::Dotted && real_mono2(a) && real_mono2(b))
      out.push_back(CutSite{CutSite::Kind::DottedCut, dd});
    else if ((real_node(a) && real_mono2(b)) || (real_node(b) && real_mono2(a)))
      out.push_back(CutSite{CutSite::Kind::Axe, dd});
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace structdetail {

// Split the single boundary circle at two real vertices va, vb; returns the
// walk sections strictly between them: after va up to vb, and after vb up
// to va, as lists of boundary darts.
inline void split_circle(const Dessin& d, int va, int vb,
                         std::vector<int>& secA, std::vector<int>& secB) {
  if (d.boundary.size() != 1)
    throw DomainError("NotACutSite", "cut surgery implemented on the disk");
  const auto& circ = d.boundary[0];
  int n = int(circ.size());
  int ia = -1, ib = -1;
  for (int i = 0; i < n; ++i) {
    int v = d.darts[circ[i]].vertex;
    if (v == va) ia = i;
    if (v == vb) ib = i;
  }
  if (ia < 0 || ib < 0)
    throw DomainError("NotACutSite", "cut endpoints not on the boundary");
  for (int i = ia; (i % n) != ib; ++i) secA.push_back(circ[i % n]);
  for (int i = ib; (i % n) != ia; ++i) secB.push_back(circ[i % n]);
  // sections currently begin with the dart leaving va (resp. vb)
}

// Build one piece: `section` is the boundary dart walk beginning with the
// dart leaving the first endpoint and ending with the dart entering the
// second endpoint.  first_node/second_node say whether that endpoint is the
// node (kept as a simple x) or a monochrome vertex (dissolved).
inline Dessin extract_piece(const Dessin& d, const std::vector<int>& section,
                            int v_first, int v_second, bool first_node,
                            bool second_node, EdgeColor cut_color) {
  Dessin p;
  p.surface = disk();
  p.verts.clear();
  p.darts.clear();

  // vertices strictly inside the section
  std::vector<int> vmap(d.verts.size(), -1);
  std::vector<int> inner_vs;
  for (size_t i = 1; i < section.size(); ++i) {
    int v = d.darts[section[i]].vertex;
    vmap[v] = p.add_vertex(d.verts[v].color, true);
  }
  // flood inner structure reachable from section vertices
  std::vector<int> stack;
  for (size_t i = 1; i < section.size(); ++i)
    stack.push_back(d.darts[section[i]].vertex);
  std::set<int> seen(stack.begin(), stack.end());
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int dd : d.verts[v].rot) {
      if (d.darts[dd].real) continue;
      int w = d.darts[d.pair_of(dd)].vertex;
      if (w == v_first || w == v_second) continue;  // only via the cut edge
      if (seen.insert(w).second) {
        vmap[w] = p.add_vertex(d.verts[w].color, false);
        stack.push_back(w);
      }
    }
  }

  // endpoint handling
  int xfirst = -1, xsecond = -1;
  if (first_node) xfirst = p.add_vertex(VertexColor::Cross, true);
  if (second_node) xsecond = p.add_vertex(VertexColor::Cross, true);

  // copy darts owned by copied vertices; boundary darts of the section keep
  // their real flag, the cut edge is re-created as a real closing edge.
  std::vector<int> dmap(d.darts.size(), -1);
  for (int v = 0; v < int(d.verts.size()); ++v) {
    if (vmap[v] < 0) continue;
    for (int dd : d.verts[v].rot)
      dmap[dd] = p.add_dart(vmap[v], d.darts[dd].color, d.darts[dd].real);
    for (int dd : d.verts[v].rot) p.verts[vmap[v]].rot.push_back(dmap[dd]);
  }
  // pair copied inner edges and interior boundary edges
  for (int dd = 0; dd < int(d.darts.size()); ++dd) {
    if (dmap[dd] < 0 || d.pair_of(dd) < dd) continue;
    int pp = d.pair_of(dd);
    if (dmap[pp] >= 0) p.pair_darts(dmap[dd], dmap[pp]);
  }

  // boundary closure
  int first_out = section.front();          // dart leaving v_first into section
  int second_in = section.back();           // dart entering v_second
  int vq = d.darts[d.pair_of(first_out)].vertex;   // first interior vertex
  int vr = d.darts[second_in].vertex;              // last interior vertex
  EdgeColor col_first = d.darts[first_out].color;  // v_first -> q edge color
  // q's predecessor dart / r's successor dart in the piece
  int q_prev = dmap[d.prev_real_dart(vq)];
  int r_succ = dmap[d.succ_real_dart(vr)];
  if (section.size() == 1) {
    // single edge from v_first to v_second: q == r belongs to... impossible,
    // section always has >= 1 interior vertex on a valid cut piece
    throw DomainError("NotACutSite", "cut piece has empty interior");
  }

  if (first_node) {
    // simple x: rotation [prev (cut copy), succ (toward q)]
    int xd_prev = p.add_dart(xfirst, cut_color, true);
    int xd_succ = p.add_dart(xfirst, col_first, true);
    p.verts[xfirst].rot = {xd_prev, xd_succ};
    p.pair_darts(xd_succ, q_prev);
    if (second_node) {
      int yd_prev = p.add_dart(xsecond, d.darts[second_in].color, true);
      int yd_succ = p.add_dart(xsecond, cut_color, true);
      p.verts[xsecond].rot = {yd_prev, yd_succ};
      p.pair_darts(yd_prev, r_succ);
      p.pair_darts(yd_succ, xd_prev);
    } else {
      // second endpoint dissolves: r's successor edge merges with the cut
      p.darts[r_succ].color = cut_color;
      p.pair_darts(r_succ, xd_prev);
    }
  } else if (second_node) {
    int yd_prev = p.add_dart(xsecond, d.darts[second_in].color, true);
    int yd_succ = p.add_dart(xsecond, cut_color, true);
    p.verts[xsecond].rot = {yd_prev, yd_succ};
    p.pair_darts(yd_prev, r_succ);
    p.darts[q_prev].color = cut_color;
    p.pair_darts(yd_succ, q_prev);
  } else {
    // both dissolve: single closing edge r -> q of the cut color
    p.darts[r_succ].color = cut_color;
    p.darts[q_prev].color = cut_color;
    p.pair_darts(r_succ, q_prev);
  }
  p.finalize();
  return p;
}

}  // namespace structdetail

// Cut along a dotted cut or an axe.  On the disk this always separates and
// returns two validated pieces whose degrees sum to degree(d).
inline std::vector<Dessin> cut_along(const Dessin& d, const CutSite& s) {
  using namespace structdetail;
  auto sites = find_cut_sites(d);
  if (std::find_if(sites.begin(), sites.end(), [&](const CutSite& t) {
        return t.kind == s.kind && t.dart == s.dart;
      }) == sites.end())
    throw DomainError("NotACutSite", "edge is not a cut or axe");
  int dd = s.dart, pp = d.pair_of(dd);
  int va = d.darts[dd].vertex, vb = d.darts[pp].vertex;
  EdgeColor cut_color = d.darts[dd].color;
  bool a_node = d.is_node(va), b_node = d.is_node(vb);

  std::vector<int> secA, secB;
  split_circle(d, va, vb, secA, secB);
  Dessin p1 = extract_piece(d, secA, va, vb, a_node, b_node, cut_color);
  Dessin p2 = extract_piece(d, secB, vb, va, b_node, a_node, cut_color);
  for (Dessin* p : {&p1, &p2}) {
    auto rep = validate(*p);
    if (!rep.ok())
      throw DomainError("ResultInvalid",
                        "cut piece fails validation: " + rep.violations.front());
  }
  return {p1, p2};
}

// ---------------------------------------------------------------------------
// Gluing (inverse surgery)

namespace structdetail {

// Append a disjoint copy of `src` into `dst`; returns dart remap.
inline std::vector<int> absorb(Dessin& dst, const Dessin& src) {
  std::vector<int> vmap(src.verts.size(), -1), dmap(src.darts.size(), -1);
  for (int v = 0; v < int(src.verts.size()); ++v)
    if (src.verts[v].alive)
      vmap[v] = dst.add_vertex(src.verts[v].color, src.verts[v].real);
  for (int dd = 0; dd < int(src.darts.size()); ++dd)
    if (src.darts[dd].alive)
      dmap[dd] = dst.add_dart(vmap[src.darts[dd].vertex], src.darts[dd].color,
                              src.darts[dd].real);
  for (int dd = 0; dd < int(src.darts.size()); ++dd)
    if (src.darts[dd].alive && src.pair_of(dd) > dd)
      dst.pair_darts(dmap[dd], dmap[src.pair_of(dd)]);
  for (int v = 0; v < int(src.verts.size()); ++v)
    if (src.verts[v].alive)
      for (int dd : src.verts[v].rot)
        dst.verts[vmap[v]].rot.push_back(dmap[dd]);
  return dmap;
}

}  // namespace structdetail

// Glue two dessins along arcs anchored at simple real x-vertices; the two
// crosses merge into a node of index 2 and the far arc ends into a real
// monochrome vertex, joined by the new inner edge (the axe).  `dart1`,
// `dart2` select the real edges to absorb; their colors must agree.
inline Dessin glue_axe(const Dessin& d1_in, int dart1, const Dessin& d2_in,
                       int dart2) {
  using namespace structdetail;
  Dessin d1 = d1_in, d2 = d2_in;
  if (!d1.darts[dart1].alive || !d2.darts[dart2].alive)
    throw DomainError("ArcMismatch", "dead arc dart");
  int v1 = d1.darts[dart1].vertex, v2 = d2.darts[dart2].vertex;
  auto simple_cross = [](const Dessin& d, int v) {
    return d.verts[v].real && d.verts[v].color == VertexColor::Cross &&
           d.verts[v].rot.size() == 2;
  };
  if (!simple_cross(d1, v1) || !simple_cross(d2, v2))
    throw DomainError("ArcMismatch", "axe gluing needs simple real x-vertices");
  EdgeColor c = d1.darts[dart1].color;
  if (d2.darts[dart2].color != c)
    throw DomainError("ArcMismatch", "arc edge colors differ");
  // normalize: absorb v1's successor edge and v2's predecessor edge
  if (dart1 != d1.succ_real_dart(v1)) {
    d1 = d1.mirrored();
  }
  if (dart2 != d2.prev_real_dart(v2)) {
    d2 = d2.mirrored();
  }
  if (d1.darts[dart1].color != c || d1.succ_real_dart(v1) != dart1 ||
      d2.prev_real_dart(v2) != dart2)
    throw DomainError("ArcMismatch", "arc normalization failed");

  Dessin g = d1;
  auto dmap = absorb(g, d2);
  int a1succ = g.pair_of(g.prev_real_dart(v1));
  int b1prev = g.pair_of(g.succ_real_dart(v1));
  int b2prev = g.pair_of(dmap[d2.succ_real_dart(v2)]);
  int a2succ = g.pair_of(dmap[d2.prev_real_dart(v2)]);
  EdgeColor ct = g.darts[g.prev_real_dart(v1)].color;  // node's real color
  int v2g = g.darts[dmap[d2.prev_real_dart(v2)]].vertex;

  // fresh node and monochrome vertex
  int n = g.add_vertex(VertexColor::Cross, true);
  int n_prev = g.add_dart(n, ct, true);
  int n_T = g.add_dart(n, c, false);
  int n_succ = g.add_dart(n, ct, true);
  g.verts[n].rot = {n_prev, n_T, n_succ};
  int M = g.add_vertex(VertexColor::Mono, true);
  int M_prev = g.add_dart(M, c, true);
  int M_T = g.add_dart(M, c, false);
  int M_succ = g.add_dart(M, c, true);
  g.verts[M].rot = {M_prev, M_T, M_succ};

  // retire the two crosses
  for (int dd : g.verts[v1].rot) g.darts[dd].alive = false;
  g.verts[v1].alive = false;
  for (int dd : g.verts[v2g].rot) g.darts[dd].alive = false;
  g.verts[v2g].alive = false;

  g.pair_darts(n_prev, a1succ);
  g.pair_darts(n_succ, b2prev);
  g.pair_darts(M_prev, a2succ);
  g.pair_darts(M_succ, b1prev);
  g.pair_darts(n_T, M_T);
  g.compact();
  auto rep = validate(g);
  if (!rep.ok())
    throw DomainError("ResultInvalid",
                      "axe gluing fails validation: " + rep.violations.front());
  return g;
}

// Glue along interior points of two real edges of equal color; the glued
// points become two real monochrome vertices joined by the new inner edge
// (a cut).
inline Dessin glue_cut(const Dessin& d1_in, int rdart1, const Dessin& d2_in,
                       int rdart2) {
  using namespace structdetail;
  Dessin d1 = d1_in, d2 = d2_in;
  if (!d1.darts[rdart1].alive || !d1.darts[rdart1].real ||
      !d2.darts[rdart2].alive || !d2.darts[rdart2].real)
    throw DomainError("ArcMismatch", "cut gluing needs real edges");
  EdgeColor c = d1.darts[rdart1].color;
  if (d2.darts[rdart2].color != c)
    throw DomainError("ArcMismatch", "arc edge colors differ");
  if (rdart1 != d1.succ_real_dart(d1.darts[rdart1].vertex)) d1 = d1.mirrored();
  if (rdart2 != d2.succ_real_dart(d2.darts[rdart2].vertex)) d2 = d2.mirrored();
  if (rdart1 != d1.succ_real_dart(d1.darts[rdart1].vertex) ||
      rdart2 != d2.succ_real_dart(d2.darts[rdart2].vertex))
    throw DomainError("ArcMismatch", "arc normalization failed");

  Dessin g = d1;
  auto dmap = absorb(g, d2);
  int e2 = dmap[rdart2];
  int p1 = g.pair_of(rdart1);
  int p2 = g.pair_of(e2);

  int m1 = g.add_vertex(VertexColor::Mono, true);
  int m1_prev = g.add_dart(m1, c, true);
  int m1_T = g.add_dart(m1, c, false);
  int m1_succ = g.add_dart(m1, c, true);
  g.verts[m1].rot = {m1_prev, m1_T, m1_succ};
  int m2 = g.add_vertex(VertexColor::Mono, true);
  int m2_prev = g.add_dart(m2, c, true);
  int m2_T = g.add_dart(m2, c, false);
  int m2_succ = g.add_dart(m2, c, true);
  g.verts[m2].rot = {m2_prev, m2_T, m2_succ};

  g.pair_darts(rdart1, m1_prev);
  g.pair_darts(m1_succ, p2);
  g.pair_darts(e2, m2_prev);
  g.pair_darts(m2_succ, p1);
  g.pair_darts(m1_T, m2_T);
  g.compact();
  auto rep = validate(g);
  if (!rep.ok())
    throw DomainError("ResultInvalid",
                      "cut gluing fails validation: " + rep.violations.front());
  return g;
}

// Arc designated by a real dart; x-vertex endpoints select axe gluing.
inline Dessin glue_along_arc(const Dessin& d1, int dart1, const Dessin& d2,
                             int dart2) {
  bool x1 = d1.verts[d1.darts[dart1].vertex].color == VertexColor::Cross;
  bool x2 = d2.verts[d2.darts[dart2].vertex].color == VertexColor::Cross;
  if (x1 != x2)
    throw DomainError("ArcMismatch", "arc endpoint colors do not match pairwise");
  return x1 ? glue_axe(d1, dart1, d2, dart2) : glue_cut(d1, dart1, d2, dart2);
}

// Gluing two real edges of one dessin (the non-separating case) changes the
// surface; it cannot produce a dessin on the disk.
inline Dessin self_glue(const Dessin& d, int, int) {
  if (d.surface == disk())
    throw DomainError("ArcMismatch",
                      "self-gluing on the disk would need a connected "
                      "complement");
  throw DomainError("ArcMismatch", "self-gluing: unsupported surface");
}

// ---------------------------------------------------------------------------
// Type-I labeling: region labels in {1,2,3}; inner solid edges join {1,1} or
// {2,3}, inner bold edges {3,3} or {1,2}, dotted edges equal labels; the
// region at a real solid edge is never 1, at a real bold edge never 3.

struct TypeLabeling {
  std::vector<int> label;  // per region index
};

enum class CurveType { I, II, Hyperbolic };

inline bool is_hyperbolic_dessin(const Dessin& d) {
  auto prof = boundary_profile(d);
  // hyperbolic = every boundary component is a dotted monochrome circle
  int circles = int(d.boundary.size());
  return prof.hyperbolic_count == circles && circles > 0;
}

namespace structdetail {

struct LabelProblem {
  int nregions = 0;
  // constraints: (region a, region b, edge color) for inner edges,
  // (region, forbidden label) for real edges
  std::vector<std::array<int, 3>> pair_cons;
  std::vector<std::pair<int, int>> forbid;
};

inline LabelProblem label_problem(const Dessin& d) {
  auto rs = regions(d);
  std::vector<int> region_of(d.darts.size(), -1);
  for (int i = 0; i < int(rs.size()); ++i)
    for (int dart : rs[i].walk) region_of[dart] = i;
  LabelProblem lp;
  lp.nregions = int(rs.size());
  for (int dd = 0; dd < int(d.darts.size()); ++dd) {
    if (!d.darts[dd].alive || d.pair_of(dd) < dd) continue;
    int pp = d.pair_of(dd);
    if (!d.darts[dd].real) {
      lp.pair_cons.push_back(
          {region_of[dd], region_of[pp], int(d.darts[dd].color)});
    } else {
      int t = (d.succ_real_dart(d.darts[dd].vertex) == dd) ? dd : pp;
      int r = region_of[t];
      if (d.darts[dd].color == EdgeColor::Solid) lp.forbid.push_back({r, 1});
      if (d.darts[dd].color == EdgeColor::Bold) lp.forbid.push_back({r, 3});
    }
  }
  return lp;
}

inline bool edge_rule_ok(EdgeColor c, int la, int lb) {
  switch (c) {
    case EdgeColor::Solid:
      return (la == 1 && lb == 1) || (la == 2 && lb == 3) ||
             (la == 3 && lb == 2);
    case EdgeColor::Bold:
      return (la == 3 && lb == 3) || (la == 1 && lb == 2) ||
             (la == 2 && lb == 1);
    case EdgeColor::Dotted: return la == lb;
  }
  return false;
}

inline void solve_labels(const LabelProblem& lp, std::vector<int>& cur, int k,
                         std::vector<std::vector<int>>& out, size_t cap) {
  if (out.size() >= cap) return;
  if (k == lp.nregions) {
    out.push_back(cur);
    return;
  }
  for (int l = 1; l <= 3; ++l) {
    cur[k] = l;
    bool ok = true;
    for (auto& f : lp.forbid)
      if (f.first == k && f.second == l) { ok = false; break; }
    if (ok)
      for (auto& pc : lp.pair_cons) {
        // check a pair constraint as soon as both regions are assigned
        if (std::max(pc[0], pc[1]) != k) continue;
        int la = (pc[0] == k) ? l : cur[pc[0]];
        int lb = (pc[1] == k) ? l : cur[pc[1]];
        if (la == 0 || lb == 0) continue;
        if (!edge_rule_ok(EdgeColor(pc[2]), la, lb)) {
          ok = false;
          break;
        }
      }
    if (ok) solve_labels(lp, cur, k + 1, out, cap);
  }
  cur[k] = 0;
}

}  // namespace structdetail

inline std::vector<std::vector<int>> all_type_labelings(const Dessin& d,
                                                        size_t cap = 100000) {
  if (is_hyperbolic_dessin(d))
    throw DomainError("Hyperbolic", "type labeling excludes hyperbolic dessins");
  auto lp = structdetail::label_problem(d);
  std::vector<std::vector<int>> out;
  std::vector<int> cur(lp.nregions, 0);
  structdetail::solve_labels(lp, cur, 0, out, cap);
  return out;
}

inline std::optional<TypeLabeling> type_labeling(const Dessin& d) {
  auto ls = all_type_labelings(d, 1);
  if (ls.empty()) return std::nullopt;
  return TypeLabeling{ls.front()};
}

// Independent re-check of a labeling (used as the verifier oracle in tests
// and by the acceptance suite).
inline bool check_type_labeling(const Dessin& d, const TypeLabeling& tl) {
  auto rs = regions(d);
  std::vector<int> region_of(d.darts.size(), -1);
  for (int i = 0; i < int(rs.size()); ++i)
    for (int dart : rs[i].walk) region_of[dart] = i;
  for (int dd = 0; dd < int(d.darts.size()); ++dd) {
    if (!d.darts[dd].alive || d.pair_of(dd) < dd) continue;
    int pp = d.pair_of(dd);
    if (!d.darts[dd].real) {
      if (!structdetail::edge_rule_ok(d.darts[dd].color,
                                      tl.label[region_of[dd]],
                                      tl.label[region_of[pp]]))
        return false;
    } else {
      int t = (d.succ_real_dart(d.darts[dd].vertex) == dd) ? dd : pp;
      int l = tl.label[region_of[t]];
      if (d.darts[dd].color == EdgeColor::Solid && l == 1) return false;
      if (d.darts[dd].color == EdgeColor::Bold && l == 3) return false;
    }
  }
  return true;
}

inline CurveType curve_type(const Dessin& d) {
  if (is_hyperbolic_dessin(d)) return CurveType::Hyperbolic;
  return type_labeling(d).has_value() ? CurveType::I : CurveType::II;
}

// ---------------------------------------------------------------------------
// Node profile

struct NodeProfile {
  enum class Kind { Isolated, NonIsolated } kind;
  EdgeColor segment_color;  // solid for isolated, dotted for non-isolated
  bool on_monochrome_circle = false;
  // unordered parity pair of white counts on the two components of the
  // node's segment minus the node (dotted case; single component on a
  // monochrome circle is stored twice)
  std::pair<int, int> white_parities{-1, -1};
  std::string node_label;  // canonical type-I label data at the node
};

inline NodeProfile node_profile(const Dessin& d) {
  auto nv = nodal_vertex(d);
  if (!nv || !is_uninodal(d))
    throw DomainError("NotUninodal", "node profile needs a uninodal dessin");
  int v = *nv;
  if (!d.verts[v].real)
    throw DomainError("NotUninodal", "inner node unsupported on real dessins");
  NodeProfile np;
  EdgeColor creal = d.darts[d.verts[v].rot[0]].color;
  np.segment_color = creal;
  np.kind = (creal == EdgeColor::Solid) ? NodeProfile::Kind::Isolated
                                        : NodeProfile::Kind::NonIsolated;
  if (np.kind == NodeProfile::Kind::NonIsolated) {
    // the maximal dotted run containing the node
    auto prof = boundary_profile(d);
    for (const auto& s : prof.segments) {
      if (s.color != EdgeColor::Dotted) continue;
      bool has_node = false;
      for (int u : s.interior) has_node |= (u == v);
      if (!has_node) continue;
      np.on_monochrome_circle = s.whole_circle;
      int w1 = 0, w2 = 0;
      bool before = true;
      for (int u : s.interior) {
        if (u == v) { before = false; continue; }
        if (d.verts[u].color == VertexColor::White) (before ? w1 : w2)++;
      }
      if (s.whole_circle) {
        // single component: the walk starts at an arbitrary vertex, so the
        // two counters describe one arc
        int w = w1 + w2;
        np.white_parities = {w % 2, w % 2};
      } else {
        int a = w1 % 2, b = w2 % 2;
        np.white_parities = {std::min(a, b), std::max(a, b)};
      }
      break;
    }
  }
  // type-I label data at the node: the set of labels carried by the node's
  // inner edge over all labelings (regions on both sides for the inner edge)
  if (!is_hyperbolic_dessin(d)) {
    auto ls = all_type_labelings(d);
    if (!ls.empty()) {
      auto rs = regions(d);
      std::vector<int> region_of(d.darts.size(), -1);
      for (int i = 0; i < int(rs.size()); ++i)
        for (int dart : rs[i].walk) region_of[dart] = i;
      int tdart = d.verts[v].rot[1];  // node's inner dart
      int r1 = region_of[tdart], r2 = region_of[d.pair_of(tdart)];
      std::set<std::string> pats;
      for (auto& l : ls) {
        int a = l[r1], b = l[r2];
        if (a > b) std::swap(a, b);
        pats.insert(std::to_string(a) + std::to_string(b));
      }
      std::string s;
      for (auto& p : pats) s += (s.empty() ? "" : "|") + p;
      np.node_label = s;
    } else {
      np.node_label = "II";
    }
  } else {
    np.node_label = "hyperbolic";
  }
  return np;
}

inline std::string profile_str(const NodeProfile& np) {
  std::string s =
      np.kind == NodeProfile::Kind::Isolated ? "isolated" : "non-isolated";
  if (np.kind == NodeProfile::Kind::NonIsolated) {
    if (np.on_monochrome_circle) s += ",circle";
    s += ",par{" + std::to_string(np.white_parities.first) + "," +
         std::to_string(np.white_parities.second) + "}";
  }
  s += ",label:" + np.node_label;
  return s;
}

// ---------------------------------------------------------------------------
// Pointed-quartic interpretation of a degree-6 uninodal dessin on the disk

struct QuarticClass {
  int b0 = 0;                      // connected components of the real quartic
  bool p_oval_odd = false;         // marked point on the inner nested oval
  int tangent_meets = 0;           // ovals met by the tangent line at p
  std::string adjacency;           // components of A minus the tangent at p
  int closeable_ovals = 0;         // ovals that can approach the long component
  std::optional<bool> convex;      // maximal case only
};

namespace structdetail {

// An oval of the dessin can come arbitrarily close to the long component
// when a zigzag shares a solid monochrome neighbor with its simple
// x-vertices, or an inner simple x-vertex attached to a dotted monochrome
// vertex splits the oval with an odd-white side.
inline int closeable_oval_count(const Dessin& d, const BoundaryProfile& prof) {
  int count = 0;
  for (const auto& ov : prof.segments) {
    if (ov.kind != BoundarySegment::Kind::Oval) continue;
    bool closeable = false;
    // criterion 1: oval endpoint x and zigzag endpoint x adjacent to one
    // solid monochrome vertex
    for (int end : {ov.end_a, ov.end_b}) {
      if (closeable) break;
      if (d.verts[end].color != VertexColor::Cross) continue;
      for (int side : {0, 1}) {
        int rd = side ? d.succ_real_dart(end) : d.prev_real_dart(end);
        if (d.darts[rd].color != EdgeColor::Solid) continue;
        int m = d.darts[d.pair_of(rd)].vertex;
        if (d.verts[m].color != VertexColor::Mono) continue;
        // m's other real neighbor
        for (int rd2 : {d.prev_real_dart(m), d.succ_real_dart(m)}) {
          int x2 = d.darts[d.pair_of(rd2)].vertex;
          if (x2 == end) continue;
          if (d.verts[x2].color != VertexColor::Cross || d.index_of(x2) != 1)
            continue;
          for (const auto& zz : prof.segments)
            if (zz.kind == BoundarySegment::Kind::Zigzag &&
                (zz.end_a == x2 || zz.end_b == x2))
              closeable = true;
        }
      }
    }
    // criterion 2: inner simple x attached to a dotted monochrome vertex
    // splitting the oval with an odd-white side
    if (!closeable) {
      int before = 0;
      int total = ov.white_count;
      for (int u : ov.interior) {
        if (d.verts[u].color == VertexColor::White) ++before;
        if (d.verts[u].color == VertexColor::Mono) {
          int partner = d.darts[d.pair_of(d.verts[u].rot[1])].vertex;
          if (!d.verts[partner].real &&
              d.verts[partner].color == VertexColor::Cross &&
              d.index_of(partner) == 1) {
            int after = total - before;
            if (before % 2 == 1 || after % 2 == 1) closeable = true;
          }
        }
      }
    }
    if (closeable) ++count;
  }
  return count;
}

}  // namespace structdetail

inline QuarticClass quartic_interpretation(const Dessin& d) {
  if (degree(d) != 6 || !is_uninodal(d) || !(d.surface == disk()))
    throw DomainError("NotAToile",
                      "quartic interpretation needs a degree-6 uninodal "
                      "dessin on the disk");
  QuarticClass qc;
  auto prof = boundary_profile(d);
  if (is_hyperbolic_dessin(d)) {
    qc.b0 = 2;
    qc.p_oval_odd = true;
    qc.tangent_meets = 2;
    qc.adjacency = "hyperbolic: two nested ovals, p on the odd oval";
    return qc;
  }
  auto np = node_profile(d);
  bool node_oval = np.kind == NodeProfile::Kind::NonIsolated &&
                   !np.on_monochrome_circle &&
                   np.white_parities == std::make_pair(0, 0);
  qc.b0 = 1 + prof.oval_count + (node_oval ? 1 : 0);
  qc.p_oval_odd = false;
  qc.tangent_meets = 1 + (node_oval ? 1 : 0);
  if (np.kind == NodeProfile::Kind::Isolated)
    qc.adjacency = "tangent meets two complex conjugate points";
  else if (node_oval)
    qc.adjacency = "tangent crosses one further oval";
  else
    qc.adjacency =
        "parities{" + std::to_string(np.white_parities.first) + "," +
        std::to_string(np.white_parities.second) +
        "}: odd components adjacent to p stay four-to-one over lines";
  qc.closeable_ovals = structdetail::closeable_oval_count(d, prof);
  if (qc.b0 == 4) qc.convex = (qc.closeable_ovals >= 2);
  return qc;
}

}  // namespace dessin
