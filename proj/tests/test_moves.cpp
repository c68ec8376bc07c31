#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "dessin/io.hpp"
#include "dessin/search.hpp"
#include "fixtures_path.hpp"

using namespace dessin;

static const char* kThreeZigzagCubic = R"(dessin v1 surface=orientable:0:1
boundary 1: v1(cross) -dotted- v2(white) -dotted- v3(cross) -solid- v4(mono) -solid- v5(cross) -dotted- v6(white) -dotted- v7(cross) -solid- v8(mono) -solid- v9(cross) -dotted- v10(white) -dotted- v11(cross) -solid- v12(mono) -solid- (close)
edge bold v2@1 v13@0
edge solid v12@1 v13@1
edge bold v10@1 v13@2
edge solid v8@1 v13@3
edge bold v6@1 v13@4
edge solid v4@1 v13@5
)";

TEST_CASE("move closure: every listed site applies and validates") {
  Dessin d = parse_dessin(kThreeZigzagCubic);
  auto sites = applicable_moves(d);
  REQUIRE(!sites.empty());
  for (auto& s : sites) {
    auto mr = apply(d, s);
    auto rep = validate(mr.dessin);
    INFO(s.str());
    CHECK(rep.ok());
    CHECK(is_reduced(mr.dessin));
    CHECK(degree(mr.dessin) == 3);
  }
}

TEST_CASE("apply then inverse restores the canonical code") {
  Dessin d = parse_dessin(kThreeZigzagCubic);
  Code c0 = canonical_code(d);
  auto sites = applicable_moves(d);
  for (auto& s : sites) {
    auto mr = apply(d, s);
    INFO("site " << s.str() << " inverse " << mr.inverse.str());
    auto back = apply(mr.dessin, mr.inverse);
    CHECK(canonical_code(back.dessin) == c0);
  }
}

TEST_CASE("fuzz: random move walks preserve the conservation laws") {
  Dessin d = parse_dessin(kThreeZigzagCubic);
  std::mt19937 rng(11);
  ColorSums sums0 = weighted_index_sums(d);
  int walk_zigzags = zigzag_count(d);
  int walk_inner_x = inner_simple_cross_count(d);
  int applied = 0;
  for (int step = 0; step < 400 && applied < 400; ++step) {
    auto sites = applicable_moves(d);
    if (sites.empty()) break;
    auto& s = sites[rng() % sites.size()];
    auto mr = apply(d, s);
    ++applied;
    auto sums = weighted_index_sums(mr.dessin);
    CHECK(sums.black == sums0.black);
    CHECK(sums.white == sums0.white);
    CHECK(sums.cross == sums0.cross);
    CHECK(degree(mr.dessin) == 3);
    int zz = zigzag_count(mr.dessin);
    int ix = inner_simple_cross_count(mr.dessin);
    if (is_weak_kind(s.kind)) {
      CHECK(std::abs(zz - walk_zigzags) == 1);
      CHECK(ix - walk_inner_x == -(zz - walk_zigzags));
    } else {
      CHECK(zz == walk_zigzags);
      CHECK(ix == walk_inner_x);
    }
    walk_zigzags = zz;
    walk_inner_x = ix;
    if (mr.dessin.live_vertex_count() > 26) {
      d = parse_dessin(kThreeZigzagCubic);
      walk_zigzags = zigzag_count(d);
      walk_inner_x = inner_simple_cross_count(d);
    } else {
      d = std::move(mr.dessin);
    }
  }
  CHECK(applied >= 100);
}

TEST_CASE("bridge round trip and normalization") {
  // breadth-first over a few move levels until two bridges exist
  Dessin d = parse_dessin(kThreeZigzagCubic);
  std::vector<Dessin> layer{d};
  Dessin b2 = d;
  int bridges_found = 0;
  for (int depth = 0; depth < 4 && bridges_found < 2; ++depth) {
    std::vector<Dessin> next;
    for (auto& x : layer) {
      for (auto& s : applicable_moves(x)) {
        Dessin y = apply(x, s).dessin;
        int nb = 0;
        for (int c = 0; c < int(y.boundary.size()); ++c)
          for (int dd : y.boundary[c]) {
            int u = y.darts[dd].vertex, w = y.darts[y.pair_of(dd)].vertex;
            if (y.verts[u].color == VertexColor::Mono &&
                y.verts[w].color == VertexColor::Mono &&
                y.boundary[c].size() > 2)
              ++nb;
          }
        if (nb > bridges_found) {
          bridges_found = nb;
          b2 = y;
        }
        if (bridges_found >= 2) break;
        next.push_back(std::move(y));
      }
      if (bridges_found >= 2) break;
    }
    layer = std::move(next);
  }
  REQUIRE(bridges_found >= 2);
  CHECK(has_bridge(b2));

  auto norm = bridge_free_normalize(b2);
  CHECK_FALSE(has_bridge(norm.dessin));
  // essential census unchanged (only monochrome vertices move)
  auto census = [](const Dessin& x) {
    int r = 0, i = 0;
    for (int v = 0; v < int(x.verts.size()); ++v) {
      if (!x.verts[v].alive || x.verts[v].color == VertexColor::Mono) continue;
      (x.verts[v].real ? r : i)++;
    }
    return std::pair<int, int>{r, i};
  };
  CHECK(census(norm.dessin) == census(b2));
  Dessin replayed = replay(b2, norm.witness);
  CHECK(canonical_code(replayed) == canonical_code(norm.dessin));
  auto norm2 = bridge_free_normalize(norm.dessin);
  CHECK(norm2.witness.empty());
}

TEST_CASE("equivalence: reflexive") {
  Dessin d = parse_dessin(kThreeZigzagCubic);
  auto r = equivalent(d, d, false);
  CHECK(r.verdict == EquivalenceResult::Verdict::Yes);
  CHECK(r.witness.empty());
}

TEST_CASE("equivalence symmetric on a one-move pair; witnesses replay") {
  Dessin d = parse_dessin(kThreeZigzagCubic);
  auto sites = applicable_moves(d, false);
  REQUIRE(!sites.empty());
  Dessin e = apply(d, sites[0]).dessin;
  auto r1 = equivalent(d, e, false);
  auto r2 = equivalent(e, d, false);
  CHECK(r1.verdict == EquivalenceResult::Verdict::Yes);
  CHECK(r2.verdict == EquivalenceResult::Verdict::Yes);
  Dessin w = replay(d, r1.witness);
  CHECK(canonical_code(w) == canonical_code(e));
}
