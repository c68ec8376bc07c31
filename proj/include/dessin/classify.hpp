#pragma once

/*
  Catalogs and the degree-6 atlas.

  The cubic catalog is generated numerically: deterministic samples of
  Weierstrass pairs (deg g2 <= 2, deg g3 <= 3) are traced to dessins, and the
  found set is saturated by move closure, so that every elementary class of
  generic cubic dessins inside the vertex budget is reached.  Classes are
  named by their type and zigzag count (H for the hyperbolic one).

  Uninodal cubics are produced by node-forming degenerations: merging two
  real simple x-vertices across a one-monochrome segment (the node inherits
  the monochrome vertex's inner edge) or collapsing an inner simple x-vertex
  onto a boundary monochrome vertex it is attached to.

  Degree-6 uninodal dessins are enumerated as gluings: nonsingular x
  nonsingular cubics along axes at marked x-vertices, nonsingular x uninodal
  cubics along dotted cuts, both sides also in mirror image.  Gluings are
  validated, canonicalized, deduplicated and grouped into weak equivalence
  classes; the expected answer is twenty classes.
*/

#include <functional>
#include <map>

#include "jinv.hpp"
#include "search.hpp"
#include "structure.hpp"
#include "trace.hpp"

namespace dessin {

struct ClassRecord {
  std::string name;
  Dessin representative;
  Code code;
  EquivalenceInvariants invariants;
  std::optional<QuarticClass> quartic;
  std::string provenance;
  std::vector<Code> members;
  int table = 0, cell = 0;  // atlas coordinates, degree-6 only
};

// ---------------------------------------------------------------------------
// Cubic catalog

namespace classifydetail {

inline std::vector<WeierstrassPair> cubic_samples() {
  std::vector<WeierstrassPair> out;
  std::mt19937 rng(987654321);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  auto push = [&](std::vector<double> g2, std::vector<double> g3) {
    out.push_back(WeierstrassPair{RealPolynomial(std::move(g2)),
                                  RealPolynomial(std::move(g3)), 1});
  };
  // structured families around the known chambers
  push({-1.0, 0.0, 1.0}, {-8.0, 0.0, 0.0, 1.0});
  push({-3.0, 0.2, 0.05}, {0.0, -1.0, 0.0, 0.02});
  push({-3.0, 0.0, -0.4}, {0.1, 1.0, 0.0, 0.0});   // hyperbolic-leaning
  push({-2.0, 0.0, -1.0}, {0.0, 0.3, 0.0, 0.1});
  for (int k = 0; k < 2600; ++k) {
    double s2 = std::pow(3.0, U(rng) * 2.0);
    double s3 = std::pow(3.0, U(rng) * 2.0);
    std::vector<double> g2{s2 * U(rng), s2 * U(rng), s2 * U(rng)};
    std::vector<double> g3{s3 * U(rng), s3 * U(rng), s3 * U(rng), s3 * U(rng)};
    if (k % 3 == 0) g2[0] -= s2;  // bias toward dotted-rich pictures
    if (k % 7 == 0) {
      g2 = {-s2 * (1.2 + U(rng)), s2 * 0.2 * U(rng), -s2 * 0.2 * std::abs(U(rng))};
      g3 = {0.3 * s3 * U(rng), s3 * U(rng), 0.1 * s3 * U(rng), 0.05 * s3 * U(rng)};
    }
    push(std::move(g2), std::move(g3));
  }
  return out;
}

struct Found {
  std::map<Code, Dessin> by_code;
};

inline void saturate_by_moves(Found& found, int vertex_cap, long state_cap) {
  std::vector<Code> queue;
  for (auto& [c, _] : found.by_code) queue.push_back(c);
  size_t qi = 0;
  while (qi < queue.size() && long(found.by_code.size()) < state_cap) {
    Dessin d = found.by_code.at(queue[qi++]);
    for (auto& site : applicable_moves(d, true)) {
      MoveResult mr;
      try {
        mr = apply_unchecked(d, site);
      } catch (const DomainError&) {
        continue;
      }
      if (mr.dessin.live_vertex_count() > vertex_cap) continue;
      Code c = canonical_code(mr.dessin);
      if (found.by_code.count(c)) continue;
      found.by_code.emplace(c, std::move(mr.dessin));
      queue.push_back(c);
      if (long(found.by_code.size()) >= state_cap) break;
    }
  }
}

inline std::string cubic_class_name(const EquivalenceInvariants& iv) {
  if (iv.type == 0) return "H";
  std::string base = iv.type == 1 ? "I" : "II";
  return base + std::to_string(iv.zigzags);
}

}  // namespace classifydetail

struct CubicCatalog {
  std::vector<ClassRecord> elementary;  // per elementary class
  int weak_class_count = 0;
  // weak classes as index sets into `elementary`
  std::vector<std::vector<int>> weak_classes;
  // every dessin reached during saturation, keyed by canonical code
  std::map<Code, Dessin> all_members;
};

inline CubicCatalog cubic_catalog(int vertex_cap = 15,
                                  long state_cap = 40000) {
  using namespace classifydetail;
  Found found;
  for (auto& w : cubic_samples()) {
    try {
      Dessin d = trace_dessin(w);
      if (degree(d) != 3 || !is_nonsingular(d) || !is_reduced(d)) continue;
      Code c = canonical_code(d);
      found.by_code.emplace(c, std::move(d));
    } catch (const DomainError&) {
      continue;
    }
  }
  if (found.by_code.empty())
    throw DomainError("FixtureCorrupt", "no generic cubic dessin traced");
  saturate_by_moves(found, vertex_cap, state_cap);

  // group by elementary invariants
  std::map<std::string, std::vector<Code>> groups;
  std::map<std::string, EquivalenceInvariants> group_iv;
  for (auto& [c, d] : found.by_code) {
    auto iv = equivalence_invariants(d);
    std::string key = iv.str();
    groups[key].push_back(c);
    group_iv[key] = iv;
  }
  CubicCatalog cat;
  for (auto& [key, codes] : groups) {
    ClassRecord rec;
    rec.code = *std::min_element(codes.begin(), codes.end());
    rec.representative = found.by_code.at(rec.code);
    rec.invariants = group_iv[key];
    rec.members = codes;
    rec.name = cubic_class_name(rec.invariants);
    rec.provenance = "traced from sampled Weierstrass data";
    cat.elementary.push_back(std::move(rec));
  }
  std::sort(cat.elementary.begin(), cat.elementary.end(),
            [](const ClassRecord& a, const ClassRecord& b) {
              return std::tie(a.name, a.code) < std::tie(b.name, b.code);
            });
  // weak grouping: hyperbolic / type I / type II
  std::map<int, std::vector<int>> wk;
  for (int i = 0; i < int(cat.elementary.size()); ++i)
    wk[cat.elementary[i].invariants.type].push_back(i);
  for (auto& [_, ix] : wk) cat.weak_classes.push_back(ix);
  cat.weak_class_count = int(cat.weak_classes.size());
  cat.all_members = std::move(found.by_code);
  return cat;
}

// Certify the cubic catalog: pairwise separation of weak classes by
// invariants and connectivity inside each weak class by replayable moves.
struct CubicCertification {
  bool ok = true;
  std::vector<std::string> notes;
  // witnesses: per weak class, a chain of (from elementary class, move list)
  std::vector<std::vector<std::pair<int, std::vector<MoveSite>>>> chains;
};

inline CubicCertification certify_cubic_catalog(const CubicCatalog& cat,
                                                EquivalenceBudget budget = {}) {
  CubicCertification cert;
  for (auto& wc : cat.weak_classes) {
    std::vector<std::pair<int, std::vector<MoveSite>>> chain;
    for (size_t k = 0; k + 1 < wc.size(); ++k) {
      const auto& a = cat.elementary[wc[k]];
      const auto& b = cat.elementary[wc[k + 1]];
      auto r = equivalent(a.representative, b.representative, true, budget);
      if (r.verdict != EquivalenceResult::Verdict::Yes) {
        cert.ok = false;
        cert.notes.push_back("no weak path " + a.name + " -> " + b.name);
      } else {
        chain.push_back({wc[k], r.witness});
      }
    }
    cert.chains.push_back(std::move(chain));
  }
  // elementary classes are pairwise separated by elementary invariants by
  // construction (grouped on the invariant string); verify distinctness
  std::set<std::string> keys;
  for (auto& rec : cat.elementary)
    if (!keys.insert(rec.invariants.str()).second) {
      cert.ok = false;
      cert.notes.push_back("duplicate invariant vector in catalog");
    }
  return cert;
}

// ---------------------------------------------------------------------------
// Uninodal cubics by node-forming degenerations

namespace classifydetail {

// merge [x1 -c- M -c- x2] (monochrome M between two simple real crosses)
// into a node that inherits M's inner edge
inline std::optional<Dessin> merge_cross_pair(const Dessin& d, int m) {
  using namespace movedetail;
  if (!d.verts[m].alive || d.verts[m].color != VertexColor::Mono ||
      !d.verts[m].real || d.verts[m].rot.size() != 3)
    return std::nullopt;
  int x1 = neighbor(d, m, -1), x2 = neighbor(d, m, +1);
  if (!is_real_cross1(d, x1) || !is_real_cross1(d, x2) || x1 == x2)
    return std::nullopt;
  Dessin out = d;
  EdgeColor c = out.darts[out.verts[m].rot[0]].color;
  EdgeColor creal = c == EdgeColor::Solid ? EdgeColor::Dotted : EdgeColor::Solid;
  int left = out.pair_of(out.verts[x1].rot[0]);
  int right = out.pair_of(out.verts[x2].rot[1]);
  if (out.darts[out.verts[x1].rot[0]].color != creal ||
      out.darts[out.verts[x2].rot[1]].color != creal)
    return std::nullopt;
  int inner_partner = out.pair_of(out.verts[m].rot[1]);
  int n = out.add_vertex(VertexColor::Cross, true);
  int na = out.add_dart(n, creal, true);
  int nb = out.add_dart(n, c, false);
  int nc = out.add_dart(n, creal, true);
  out.verts[n].rot = {na, nb, nc};
  kill_vertex(out, x1);
  kill_vertex(out, m);
  kill_vertex(out, x2);
  out.pair_darts(na, left);
  out.pair_darts(nb, inner_partner);
  out.pair_darts(nc, right);
  out.compact();
  return out;
}

// collapse an inner simple x attached to a boundary monochrome vertex onto
// that vertex, forming a node that inherits the cross's other edge
inline std::optional<Dessin> collapse_inner_cross(const Dessin& d, int m) {
  using namespace movedetail;
  if (!d.verts[m].alive || d.verts[m].color != VertexColor::Mono ||
      !d.verts[m].real || d.verts[m].rot.size() != 3)
    return std::nullopt;
  int xi = d.darts[d.pair_of(d.verts[m].rot[1])].vertex;
  if (!is_inner_cross1(d, xi)) return std::nullopt;
  Dessin out = d;
  EdgeColor c = out.darts[out.verts[m].rot[0]].color;  // boundary color
  // xi's other dart (the one not attached to m)
  int to_m = out.pair_of(out.verts[m].rot[1]);
  int other = out.verts[xi].rot[0] == to_m ? out.verts[xi].rot[1]
                                           : out.verts[xi].rot[0];
  EdgeColor oc = out.darts[other].color;
  if (oc == c) return std::nullopt;  // the inherited edge crosses colors
  int partner = out.pair_of(other);
  int left = out.pair_of(out.verts[m].rot[0]);
  int right = out.pair_of(out.verts[m].rot[2]);
  int n = out.add_vertex(VertexColor::Cross, true);
  int na = out.add_dart(n, c, true);
  int nb = out.add_dart(n, oc, false);
  int nc = out.add_dart(n, c, true);
  out.verts[n].rot = {na, nb, nc};
  kill_vertex(out, m);
  kill_vertex(out, xi);
  out.pair_darts(na, left);
  out.pair_darts(nb, partner);
  out.pair_darts(nc, right);
  out.compact();
  return out;
}

}  // namespace classifydetail

struct UninodalCatalog {
  std::vector<ClassRecord> weak_classes;
  std::map<Code, Dessin> all_members;  // saturated by move closure
};

inline UninodalCatalog uninodal_cubic_catalog(const CubicCatalog& cubics,
                                              EquivalenceBudget budget = {}) {
  using namespace classifydetail;
  std::map<Code, Dessin> found;
  auto consider = [&](std::optional<Dessin> od, const std::string&) {
    if (!od) return;
    Dessin& d = *od;
    auto rep = validate(d);
    if (!rep.ok()) return;
    if (!is_uninodal(d) || !is_reduced(d)) return;
    try {
      if (degree(d) != 3) return;
    } catch (const DomainError&) {
      return;
    }
    Code c = canonical_code(d);
    found.emplace(c, std::move(d));
  };
  // degenerate every dessin reached during catalog saturation, plus one
  // ring of move neighbors of the class representatives
  std::vector<const Dessin*> sources;
  for (auto& [_, d] : cubics.all_members) sources.push_back(&d);
  std::vector<Dessin> extra;
  for (auto& rec : cubics.elementary)
    for (auto& site : applicable_moves(rec.representative, true)) {
      try {
        extra.push_back(apply_unchecked(rec.representative, site).dessin);
      } catch (const DomainError&) {
      }
    }
  for (auto& d : extra) sources.push_back(&d);
  for (const Dessin* src : sources) {
    for (int v = 0; v < int(src->verts.size()); ++v) {
      if (!src->verts[v].alive) continue;
      consider(merge_cross_pair(*src, v), "merge");
      consider(collapse_inner_cross(*src, v), "collapse");
    }
    // descents of an inner x-vertex onto a boundary edge: a bridge first
    // attaches the cross to a fresh boundary monochrome vertex, which then
    // collapses with it into the node
    for (int xi = 0; xi < int(src->verts.size()); ++xi) {
      if (!movedetail::is_inner_cross1(*src, xi)) continue;
      for (int xd : src->verts[xi].rot) {
        int di = src->pair_of(xd);  // far end of the incident inner edge
        for (int dr = 0; dr < int(src->darts.size()); ++dr) {
          if (!src->darts[dr].alive || !src->darts[dr].real) continue;
          if (src->darts[dr].color != src->darts[xd].color) continue;
          if (dr != src->succ_real_dart(src->darts[dr].vertex)) continue;
          for (int anchor : {xd, di}) {
            Dessin bridged;
            try {
              bridged = movedetail::apply_create_bridge(*src, anchor, dr).dessin;
              if (!validate(bridged).ok()) continue;
            } catch (const DomainError&) {
              continue;
            }
            for (int m = 0; m < int(bridged.verts.size()); ++m)
              consider(collapse_inner_cross(bridged, m), "descent");
          }
        }
      }
    }
  }
  if (found.empty())
    throw DomainError("FixtureCorrupt", "no uninodal cubic generated");

  // saturate by move closure: gluing needs members in every useful local
  // arrangement (in particular zigzag-carrying variants)
  {
    Found sat;
    sat.by_code = found;
    int cap = 0;
    for (auto& [c, d] : found) cap = std::max(cap, d.live_vertex_count());
    saturate_by_moves(sat, cap + 4, 4000);
    found = std::move(sat.by_code);
  }

  // group into weak classes: bucket by weak invariants, then certify by
  // search within each bucket (union-find)
  UninodalCatalog out;
  std::map<std::string, std::vector<Code>> buckets;
  for (auto& [c, d] : found) {
    auto iv = equivalence_invariants(d);
    EquivalenceInvariants weak = iv;
    weak.zigzags = -1;  // not a weak invariant
    buckets[weak.str()].push_back(c);
  }
  for (auto& [key, codes] : buckets) {
    std::sort(codes.begin(), codes.end());
    // union-find within the bucket
    std::map<Code, Code> parent;
    std::function<Code(Code)> find = [&](Code c) {
      while (parent[c] != c) c = parent[c] = parent[parent[c]];
      return c;
    };
    for (auto& c : codes) parent[c] = c;
    for (size_t i = 1; i < codes.size(); ++i) {
      if (find(codes[i]) == find(codes[0])) continue;
      auto r = equivalent(found.at(codes[0]), found.at(codes[i]), true, budget);
      if (r.verdict == EquivalenceResult::Verdict::Yes)
        parent[find(codes[i])] = find(codes[0]);
    }
    std::map<Code, std::vector<Code>> classes;
    for (auto& c : codes) classes[find(c)].push_back(c);
    for (auto& [root, members] : classes) {
      ClassRecord rec;
      rec.code = *std::min_element(members.begin(), members.end());
      rec.representative = found.at(rec.code);
      rec.invariants = equivalence_invariants(rec.representative);
      rec.members = members;
      rec.provenance = "node-forming degeneration of a cubic";
      out.weak_classes.push_back(std::move(rec));
    }
  }
  for (size_t i = 0; i < out.weak_classes.size(); ++i)
    out.weak_classes[i].name = "N" + std::to_string(i + 1);
  out.all_members = std::move(found);
  return out;
}

// ---------------------------------------------------------------------------
// Degree-6 atlas

struct Atlas {
  std::vector<ClassRecord> classes;  // exactly 20 when certified
  // caption layout: b0=1, b0=2 type II, b0=3, b0=2 type I, b0=4
  std::array<int, 5> caption_counts{};
  std::vector<std::string> notes;
};

namespace classifydetail {

inline int caption_of(const QuarticClass& qc, const EquivalenceInvariants& iv) {
  if (qc.b0 == 1) return 0;
  if (qc.b0 == 2 && iv.type == 2) return 1;
  if (qc.b0 == 3) return 2;
  if (qc.b0 == 2 && iv.type != 2) return 3;  // type I incl. the hyperbolic one
  if (qc.b0 == 4) return 4;
  return -1;
}

inline std::vector<int> simple_real_crosses(const Dessin& d) {
  std::vector<int> out;
  for (int v = 0; v < int(d.verts.size()); ++v)
    if (d.verts[v].alive && d.verts[v].real &&
        d.verts[v].color == VertexColor::Cross && d.verts[v].rot.size() == 2)
      out.push_back(v);
  return out;
}

inline std::vector<int> real_dotted_edge_darts(const Dessin& d) {
  std::vector<int> out;
  for (int dd = 0; dd < int(d.darts.size()); ++dd) {
    if (!d.darts[dd].alive || !d.darts[dd].real) continue;
    if (d.darts[dd].color != EdgeColor::Dotted) continue;
    if (dd != d.succ_real_dart(d.darts[dd].vertex)) continue;
    out.push_back(dd);
  }
  return out;
}

}  // namespace classifydetail

inline Atlas enumerate_toiles_deg6(const CubicCatalog& cubics,
                                   const UninodalCatalog& uninodal,
                                   EquivalenceBudget budget = {},
                                   int threads = 1) {
  using namespace classifydetail;
  (void)threads;
  std::map<Code, Dessin> found;
  std::map<Code, std::string> provenance;

  auto consider = [&](const Dessin& g, std::string prov) {
    if (!is_uninodal(g)) return;
    try {
      if (degree(g) != 6) return;
    } catch (const DomainError&) {
      return;
    }
    Code c = canonical_code(g);
    if (found.count(c)) return;
    found.emplace(c, g);
    provenance.emplace(c, std::move(prov));
  };

  // operand pools: every dessin reached while building the catalogs
  struct Operand {
    const Dessin* d;
    std::string name;
  };
  std::vector<Operand> nonsingular_pool, uninodal_pool;
  for (auto& [c, d] : cubics.all_members)
    nonsingular_pool.push_back({&d, "member"});
  for (auto& rec : cubics.elementary)
    nonsingular_pool.push_back({&rec.representative, rec.name});
  for (auto& rec : uninodal.weak_classes)
    uninodal_pool.push_back({&rec.representative, rec.name});
  for (auto& [c, d] : uninodal.all_members)
    uninodal_pool.push_back({&d, "variant"});

  // axe gluings: nonsingular x nonsingular over all marked x-vertices and
  // both absorbed-edge colors, with the second operand also mirrored
  for (auto& o1 : nonsingular_pool) {
    const Dessin& d1 = *o1.d;
    for (auto& o2 : nonsingular_pool) {
      for (int mirror = 0; mirror < 2; ++mirror) {
        Dessin d2 = mirror ? o2.d->mirrored() : *o2.d;
        for (int v1 : simple_real_crosses(d1))
          for (int v2 : simple_real_crosses(d2))
            for (int s1 : {0, 1})
              for (int s2 : {0, 1}) {
                int dart1 = d1.verts[v1].rot[s1];
                int dart2 = d2.verts[v2].rot[s2];
                if (d1.darts[dart1].color != d2.darts[dart2].color) continue;
                try {
                  Dessin g = glue_axe(d1, dart1, d2, dart2);
                  consider(g, "axe: " + o1.name + " x " + o2.name +
                                  (mirror ? " (mirrored)" : ""));
                } catch (const DomainError&) {
                }
              }
      }
    }
  }
  // dotted-cut gluings: nonsingular x uninodal
  for (auto& o1 : nonsingular_pool) {
    const Dessin& d1 = *o1.d;
    for (auto& o2 : uninodal_pool) {
      for (int mirror = 0; mirror < 2; ++mirror) {
        Dessin d2 = mirror ? o2.d->mirrored() : *o2.d;
        for (int e1 : real_dotted_edge_darts(d1))
          for (int e2 : real_dotted_edge_darts(d2)) {
            try {
              Dessin g = glue_cut(d1, e1, d2, e2);
              consider(g, "cut: " + o1.name + " x " + o2.name +
                              (mirror ? " (mirrored)" : ""));
            } catch (const DomainError&) {
            }
          }
      }
    }
  }

  // weak grouping: bucket by weak invariants, then closure-assisted
  // union-find inside each bucket (most gluings are a move or two apart, so
  // a bounded move closure of each group absorbs members instantly)
  Atlas atlas;
  std::map<std::string, std::vector<Code>> buckets;
  for (auto& [c, d] : found) {
    auto iv = equivalence_invariants(d);
    EquivalenceInvariants weak = iv;
    weak.zigzags = -1;
    buckets[weak.str()].push_back(c);
  }
  ExpansionCache cache;
  cache.allow_weak = true;
  int max_verts = 0;
  for (auto& [c, d] : found)
    max_verts = std::max(max_verts, d.live_vertex_count());
  cache.vertex_cap = max_verts + 6;
  long search_states = budget.max_states > 0 ? budget.max_states : 120000;

  for (auto& [key, codes] : buckets) {
    std::sort(codes.begin(), codes.end());
    struct Group {
      Code root;
      std::vector<Code> members;
    };
    std::vector<Group> groups;
    for (auto& c : codes) {
      bool placed = false;
      for (auto& g : groups) {
        if (connected(cache, g.root, found.at(g.root), c, found.at(c),
                      search_states / 10)) {
          g.members.push_back(c);
          placed = true;
          break;
        }
      }
      if (!placed) groups.push_back(Group{c, {c}});
    }
    // a second pass with the full budget before declaring a split
    if (groups.size() > 1) {
      std::vector<Group> merged;
      for (auto& g : groups) {
        bool joined = false;
        for (auto& m : merged)
          if (connected(cache, m.root, found.at(m.root), g.root,
                        found.at(g.root), search_states)) {
            for (auto& c : g.members) m.members.push_back(c);
            joined = true;
            break;
          }
        if (!joined) merged.push_back(std::move(g));
      }
      groups = std::move(merged);
    }
    if (groups.size() > 1)
      atlas.notes.push_back("bucket '" + key + "' splits into " +
                            std::to_string(groups.size()) +
                            " unconnected groups");
    for (auto& g : groups) {
      ClassRecord rec;
      rec.code = *std::min_element(g.members.begin(), g.members.end());
      rec.representative = found.at(rec.code);
      rec.invariants = equivalence_invariants(rec.representative);
      rec.quartic = quartic_interpretation(rec.representative);
      // the closeable-oval detector is monotone: report the best witness
      // seen across the class members
      for (auto& m : g.members) {
        auto qc = quartic_interpretation(found.at(m));
        if (qc.closeable_ovals > rec.quartic->closeable_ovals)
          rec.quartic->closeable_ovals = qc.closeable_ovals;
      }
      if (rec.quartic->b0 == 4)
        rec.quartic->convex = (rec.quartic->closeable_ovals >= 2);
      rec.members = g.members;
      rec.provenance = provenance.at(rec.code);
      atlas.classes.push_back(std::move(rec));
    }
  }

  // caption layout and names
  std::sort(atlas.classes.begin(), atlas.classes.end(),
            [](const ClassRecord& a, const ClassRecord& b) {
              int ca = classifydetail::caption_of(*a.quartic, a.invariants);
              int cb = classifydetail::caption_of(*b.quartic, b.invariants);
              return std::tie(ca, a.code) < std::tie(cb, b.code);
            });
  atlas.caption_counts = {0, 0, 0, 0, 0};
  int last_caption = -1, cell = 0;
  for (auto& rec : atlas.classes) {
    int cap = caption_of(*rec.quartic, rec.invariants);
    if (cap < 0) {
      atlas.notes.push_back("class outside the caption layout: " +
                            rec.invariants.str());
      continue;
    }
    if (cap != last_caption) {
      cell = 0;
      last_caption = cap;
    }
    ++cell;
    rec.table = cap + 1;
    rec.cell = cell;
    rec.name = "T" + std::to_string(rec.table) + "." + std::to_string(rec.cell);
    atlas.caption_counts[cap]++;
  }
  return atlas;
}

// Classify a degree-6 uninodal dessin against the atlas.
inline const ClassRecord& classify_dessin(const Dessin& d, const Atlas& atlas,
                                          EquivalenceBudget budget = {}) {
  require_valid(d, "classify_dessin");
  if (!is_uninodal(d) || degree(d) != 6)
    throw DomainError("NotAToile", "classification needs a degree-6 uninodal "
                                   "dessin");
  auto iv = equivalence_invariants(d);
  EquivalenceInvariants weak = iv;
  weak.zigzags = -1;
  Code c = canonical_code(d);
  std::vector<const ClassRecord*> candidates;
  for (auto& rec : atlas.classes) {
    for (auto& m : rec.members)
      if (m == c) return rec;
    EquivalenceInvariants rw = rec.invariants;
    rw.zigzags = -1;
    if (rw.str() == weak.str()) candidates.push_back(&rec);
  }
  for (auto* rec : candidates) {
    auto r = equivalent(d, rec->representative, true, budget);
    if (r.verdict == EquivalenceResult::Verdict::Yes) return *rec;
  }
  throw DomainError("Unclassified",
                    "no atlas class matched within the search budget");
}

// Decompose a uninodal dessin of degree > 3 into a weakly equivalent dessin
// carrying a dotted cut or an axe, plus its pieces.
struct Decomposition {
  std::vector<MoveSite> witness;
  Dessin carrier;
  CutSite site;
  std::vector<Dessin> pieces;
};

inline std::optional<Decomposition> decompose_uninodal(
    const Dessin& d, EquivalenceBudget budget = {}) {
  require_valid(d, "decompose_uninodal");
  if (!is_uninodal(d))
    throw DomainError("NotUninodal", "decomposition needs a uninodal dessin");
  if (degree(d) <= 3)
    throw DomainError("NotUninodal", "decomposition needs degree higher than 3");
  if (budget.max_vertices <= 0)
    budget.max_vertices = 3 * d.live_vertex_count();

  using namespace searchdetail;
  Code c0 = canonical_code(d);
  Visited vis;
  vis[c0] = Node{c0, {}, {}, {}, 0};
  std::vector<std::pair<Code, Dessin>> frontier{{c0, d}};
  long states = 1;
  while (!frontier.empty() && states < budget.max_states) {
    std::vector<std::pair<Code, Dessin>> next;
    for (auto& [code, des] : frontier) {
      auto sites = find_cut_sites(des);
      if (!sites.empty()) {
        Decomposition out;
        out.witness = path_from_root(vis, code);
        out.carrier = des;
        out.site = sites.front();
        out.pieces = cut_along(des, sites.front());
        return out;
      }
      for (auto& site : applicable_moves(des, true)) {
        if (states >= budget.max_states) break;
        MoveResult mr;
        try {
          mr = apply_unchecked(des, site);
        } catch (const DomainError&) {
          continue;
        }
        if (mr.dessin.live_vertex_count() > budget.max_vertices) continue;
        Code nc = canonical_code(mr.dessin);
        if (vis.count(nc)) continue;
        ++states;
        Node node;
        node.code = nc;
        node.parent = code;
        node.from_parent = site;
        node.to_parent = mr.inverse;
        vis[nc] = node;
        next.push_back({nc, std::move(mr.dessin)});
      }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

}  // namespace dessin
