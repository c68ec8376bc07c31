#pragma once

/*
  Equivalence of reduced dessins by bounded bidirectional search over
  canonical codes, with an invariant pre-filter.

  Elementary moves preserve degree, zigzag count, oval count, hyperbolic
  component count, the node profile and the type; weak moves additionally
  trade a zigzag against an inner simple x-vertex.  The pre-filter turns most
  negative answers into O(1); the search supplies replayable witnesses.
*/

#include <queue>
#include <unordered_map>
#include <unordered_set>

#include "moves.hpp"
#include "structure.hpp"

namespace dessin {

struct EquivalenceBudget {
  int max_vertices = 0;   // 0: derive as 3x the initial vertex count
  long max_states = 120000;
  int max_depth = 24;
};

struct EquivalenceInvariants {
  int degree = 0;
  int ovals = 0;
  int zigzags = 0;
  int hyperbolic = 0;
  int type = 0;  // 0 hyperbolic, 1 type I, 2 type II
  std::string node;

  bool operator==(const EquivalenceInvariants&) const = default;
  std::string str() const {
    return "deg=" + std::to_string(degree) + " ovals=" + std::to_string(ovals) +
           " zigzags=" + std::to_string(zigzags) +
           " hyp=" + std::to_string(hyperbolic) +
           " type=" + std::to_string(type) + " node=" + node;
  }
};

inline EquivalenceInvariants equivalence_invariants(const Dessin& d) {
  EquivalenceInvariants iv;
  iv.degree = degree(d);
  auto prof = boundary_profile(d);
  iv.ovals = prof.oval_count;
  iv.zigzags = prof.zigzag_count;
  iv.hyperbolic = prof.hyperbolic_count;
  switch (curve_type(d)) {
    case CurveType::Hyperbolic: iv.type = 0; break;
    case CurveType::I: iv.type = 1; break;
    case CurveType::II: iv.type = 2; break;
  }
  if (is_uninodal(d)) iv.node = profile_str(node_profile(d));
  return iv;
}

// Which invariant separates two dessins under the requested equivalence;
// empty when none does.
inline std::string separating_invariant(const EquivalenceInvariants& a,
                                        const EquivalenceInvariants& b,
                                        bool allow_weak) {
  if (a.degree != b.degree) return "degree";
  if (a.hyperbolic != b.hyperbolic) return "hyperbolic components";
  if (a.ovals != b.ovals) return "oval count";
  if (!allow_weak && a.zigzags != b.zigzags) return "zigzag count";
  if (a.type != b.type) return "type";
  if (a.node != b.node) return "node profile";
  return "";
}

struct EquivalenceResult {
  enum class Verdict { Yes, No, Unknown } verdict;
  std::vector<MoveSite> witness;     // replayable on the first dessin
  std::string separating;            // named invariant for No
  long states_explored = 0;
};

namespace searchdetail {

struct Node {
  Code code;
  Code parent;
  MoveSite from_parent;   // applied to the parent's dessin
  MoveSite to_parent;     // inverse, applied to this node's dessin
  int depth = 0;
};

using Visited = std::unordered_map<std::string, Node>;

// Reconstruct the move list from the root to `code` by walking parents and
// replaying from the root dessin.
inline std::vector<MoveSite> path_from_root(const Visited& vis, const Code& code) {
  std::vector<MoveSite> rev;
  Code cur = code;
  while (true) {
    auto it = vis.find(cur);
    if (it == vis.end() || it->second.parent.empty()) break;
    rev.push_back(it->second.from_parent);
    cur = it->second.parent;
  }
  std::reverse(rev.begin(), rev.end());
  return rev;
}

inline std::vector<MoveSite> path_to_root(const Visited& vis, const Code& code) {
  std::vector<MoveSite> out;
  Code cur = code;
  while (true) {
    auto it = vis.find(cur);
    if (it == vis.end() || it->second.parent.empty()) break;
    out.push_back(it->second.to_parent);
    cur = it->second.parent;
  }
  return out;
}

}  // namespace searchdetail

// Replay a move list from `start`; throws on a stale or invalid step.
inline Dessin replay(const Dessin& start, const std::vector<MoveSite>& script) {
  Dessin d = start;
  for (const auto& m : script) {
    MoveSite fixed = m;
    fixed.version = d.version;
    d = apply(d, fixed).dessin;
  }
  return d;
}

inline EquivalenceResult equivalent(const Dessin& d1, const Dessin& d2,
                                    bool allow_weak,
                                    EquivalenceBudget budget = {}) {
  using namespace searchdetail;
  require_valid(d1, "equivalent(d1)");
  require_valid(d2, "equivalent(d2)");
  EquivalenceResult res{EquivalenceResult::Verdict::Unknown, {}, "", 0};

  auto iv1 = equivalence_invariants(d1), iv2 = equivalence_invariants(d2);
  std::string sep = separating_invariant(iv1, iv2, allow_weak);
  if (!sep.empty()) {
    res.verdict = EquivalenceResult::Verdict::No;
    res.separating = sep;
    return res;
  }

  Code c1 = canonical_code(d1), c2 = canonical_code(d2);
  if (c1 == c2) {
    res.verdict = EquivalenceResult::Verdict::Yes;
    return res;
  }
  if (budget.max_vertices <= 0)
    budget.max_vertices =
        3 * std::max(d1.live_vertex_count(), d2.live_vertex_count());

  // Bidirectional breadth-first search; frontiers carry concrete dessins,
  // the visited maps only parent pointers.
  Visited vis1, vis2;
  vis1[c1] = Node{c1, {}, {}, {}, 0};
  vis2[c2] = Node{c2, {}, {}, {}, 0};
  std::vector<std::pair<Code, Dessin>> front1{{c1, d1}}, front2{{c2, d2}};
  long states = 2;
  int depth = 0;

  auto expand = [&](std::vector<std::pair<Code, Dessin>>& front, Visited& vis,
                    const Visited& other,
                    std::optional<Code>& meet) {
    std::vector<std::pair<Code, Dessin>> next;
    for (auto& [code, des] : front) {
      auto sites = applicable_moves(des, allow_weak);
      for (auto& site : sites) {
        if (states >= budget.max_states) return next;
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
        node.depth = vis.at(code).depth + 1;
        vis[nc] = node;
        if (other.count(nc)) {
          meet = nc;
          return next;
        }
        next.push_back({nc, std::move(mr.dessin)});
      }
    }
    return next;
  };

  std::optional<Code> meet;
  while (!front1.empty() && !front2.empty() && states < budget.max_states &&
         depth < budget.max_depth && !meet) {
    if (front1.size() <= front2.size())
      front1 = expand(front1, vis1, vis2, meet);
    else
      front2 = expand(front2, vis2, vis1, meet);
    ++depth;
  }
  res.states_explored = states;
  if (meet) {
    res.verdict = EquivalenceResult::Verdict::Yes;
    auto part1 = path_from_root(vis1, *meet);
    auto part2 = path_to_root(vis2, *meet);
    res.witness = part1;
    for (auto& m : part2) res.witness.push_back(m);
    return res;
  }
  return res;
}

// ---------------------------------------------------------------------------
// Witness-free connectivity with a global expansion cache.  Every canonical
// code is expanded exactly once (against the first dessin seen for it), so
// repeated searches over one state space amortize to graph traversals.

struct ExpansionCache {
  int vertex_cap = 0;
  bool allow_weak = true;
  std::unordered_map<Code, std::vector<Code>> neighbors;
  std::unordered_map<Code, Dessin> reps;

  const Dessin& rep(const Code& c, const Dessin& fallback) {
    auto it = reps.find(c);
    if (it == reps.end()) it = reps.emplace(c, fallback).first;
    return it->second;
  }

  const std::vector<Code>& expand(const Code& c, const Dessin& d) {
    auto it = neighbors.find(c);
    if (it != neighbors.end()) return it->second;
    const Dessin& base = rep(c, d);
    std::vector<Code> out;
    for (auto& site : applicable_moves(base, allow_weak)) {
      MoveResult mr;
      try {
        mr = apply_unchecked(base, site);
      } catch (const DomainError&) {
        continue;
      }
      if (vertex_cap > 0 && mr.dessin.live_vertex_count() > vertex_cap)
        continue;
      Code nc = canonical_code(mr.dessin);
      rep(nc, mr.dessin);
      out.push_back(std::move(nc));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return neighbors.emplace(c, std::move(out)).first->second;
  }
};

// Bidirectional reachability over the cached move graph.
inline bool connected(ExpansionCache& cache, const Code& c1, const Dessin& d1,
                      const Code& c2, const Dessin& d2, long max_states) {
  if (c1 == c2) return true;
  cache.rep(c1, d1);
  cache.rep(c2, d2);
  std::set<Code> v1{c1}, v2{c2};
  std::vector<Code> f1{c1}, f2{c2};
  long states = 2;
  while (!f1.empty() && !f2.empty() && states < max_states) {
    bool expand_first = f1.size() <= f2.size();
    auto& front = expand_first ? f1 : f2;
    auto& mine = expand_first ? v1 : v2;
    auto& other = expand_first ? v2 : v1;
    std::vector<Code> next;
    for (auto& c : front) {
      for (auto& nc : cache.expand(c, cache.reps.at(c))) {
        if (mine.count(nc)) continue;
        if (other.count(nc)) return true;
        mine.insert(nc);
        next.push_back(nc);
        if (++states >= max_states) break;
      }
      if (states >= max_states) break;
    }
    front = std::move(next);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Normal forms

inline bool has_bridge(const Dessin& d) {
  for (int c = 0; c < int(d.boundary.size()); ++c) {
    if (d.boundary[c].size() <= 2) continue;
    for (int dd : d.boundary[c]) {
      int u = d.darts[dd].vertex, w = d.darts[d.pair_of(dd)].vertex;
      if (d.verts[u].color == VertexColor::Mono &&
          d.verts[w].color == VertexColor::Mono)
        return true;
    }
  }
  return false;
}

struct NormalizeResult {
  Dessin dessin;
  std::vector<MoveSite> witness;
};

// Destroy bridges until none remain.  Bridge destruction never changes the
// essential vertex census.
inline NormalizeResult bridge_free_normalize(const Dessin& din) {
  NormalizeResult out{din, {}};
  require_valid(din, "bridge_free_normalize");
  int guard = 0;
  while (has_bridge(out.dessin)) {
    auto sites = applicable_moves(out.dessin, false);
    bool advanced = false;
    for (auto& s : sites) {
      if (s.kind != MoveKind::DestroyBridge) continue;
      auto mr = apply(out.dessin, s);
      out.witness.push_back(s);
      out.dessin = std::move(mr.dessin);
      advanced = true;
      break;
    }
    if (!advanced)
      throw DomainError("Corrupt",
                        "bridge present but no admissible destruction");
    if (++guard > 1000)
      throw DomainError("Corrupt", "bridge normalization does not terminate");
  }
  return out;
}

inline int inner_essential_count(const Dessin& d) {
  int n = 0;
  for (int v = 0; v < int(d.verts.size()); ++v)
    if (d.verts[v].alive && !d.verts[v].real &&
        (d.verts[v].color == VertexColor::Black ||
         d.verts[v].color == VertexColor::White))
      ++n;
  return n;
}

struct PeripheralResult {
  enum class Status { Done, Unknown } status;
  Dessin dessin;
  std::vector<MoveSite> witness;
  long states_explored = 0;
};

// Best-first search for an elementary-equivalent dessin with no inner black
// or white vertices.
inline PeripheralResult peripheral_normalize(const Dessin& din,
                                             EquivalenceBudget budget = {}) {
  require_valid(din, "peripheral_normalize");
  if (budget.max_vertices <= 0)
    budget.max_vertices = 3 * din.live_vertex_count() + 6;
  Code c0 = canonical_code(din);
  if (inner_essential_count(din) == 0)
    return PeripheralResult{PeripheralResult::Status::Done, din, {}, 0};

  using namespace searchdetail;
  Visited vis;
  vis[c0] = Node{c0, {}, {}, {}, 0};
  // priority: fewer inner essentials first, then fewer vertices
  auto key = [](const Dessin& d) {
    return std::make_pair(inner_essential_count(d), d.live_vertex_count());
  };
  std::map<std::pair<int, int>, std::vector<std::pair<Code, Dessin>>> pq;
  pq[key(din)].push_back({c0, din});
  long states = 1;
  while (!pq.empty() && states < budget.max_states) {
    auto it = pq.begin();
    if (it->second.empty()) {
      pq.erase(it);
      continue;
    }
    auto [code, des] = it->second.back();
    it->second.pop_back();
    for (auto& site : applicable_moves(des, false)) {
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
      node.depth = vis.at(code).depth + 1;
      vis[nc] = node;
      if (inner_essential_count(mr.dessin) == 0) {
        PeripheralResult out{PeripheralResult::Status::Done,
                             std::move(mr.dessin), path_from_root(vis, nc),
                             states};
        return out;
      }
      pq[key(mr.dessin)].push_back({nc, std::move(mr.dessin)});
    }
  }
  return PeripheralResult{PeripheralResult::Status::Unknown, din, {}, states};
}

}  // namespace dessin
