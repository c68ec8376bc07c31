#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "dessin/classify.hpp"
#include "dessin/io.hpp"
#include "dessin/render.hpp"
#include "dessin/search.hpp"
#include "fixtures_path.hpp"

using namespace dessin;

static Dessin load(const std::string& name) { return load_dessin(fixture(name)); }

TEST_CASE("fixture corpus validates") {
  for (const char* f :
       {"cubic_H.dss", "cubic_I0.dss", "cubic_I1.dss", "cubic_I2.dss",
        "cubic_II0.dss", "cubic_II1.dss", "cubic_II2.dss", "cubic_II3.dss",
        "uninodal_N1.dss", "toile_T1_1.dss", "toile_T4_4.dss",
        "toile_T5_5.dss"}) {
    Dessin d = load(f);
    auto rep = validate(d);
    INFO(f << ": " << rep.str());
    CHECK(rep.ok());
  }
}

TEST_CASE("boundary profiles of the named cubics") {
  CHECK(zigzag_count(load("cubic_I2.dss")) == 2);
  auto h = boundary_profile(load("cubic_H.dss"));
  CHECK(h.hyperbolic_count >= 1);
  CHECK(h.zigzag_count == 0);
  CHECK(boundary_profile(load("cubic_I1.dss")).oval_count == 1);
}

TEST_CASE("degrees and singular sets") {
  CHECK(degree(load("cubic_H.dss")) == 3);
  CHECK(singular_vertices(load("cubic_I1.dss")).empty());
  Dessin t = load("toile_T1_1.dss");
  CHECK(degree(t) == 6);
  auto sums = weighted_index_sums(t);
  CHECK(sums.black == 12);
  CHECK(sums.white == 12);
  CHECK(sums.cross == 12);
  auto sv = singular_vertices(t);
  REQUIRE(sv.size() == 1);
  CHECK(t.is_node(sv[0]));
}

TEST_CASE("validation catches a starving monochrome vertex") {
  // a monochrome vertex with only two incident edges
  const char* bad = R"(dessin v1 surface=orientable:0:1
boundary 1: v1(white) -dotted- v2(mono) -dotted- (close)
)";
  auto rep = validate(parse_dessin(bad));
  REQUIRE_FALSE(rep.ok());
  bool found = false;
  for (auto& v : rep.violations)
    if (v.find("monochrome vertex incident to at least 3 edges") !=
        std::string::npos)
      found = true;
  CHECK(found);
}

TEST_CASE("admissibility rejects a directed monochrome cycle") {
  // splice a monochrome triangle into the dotted edges feeding the three
  // inner x-vertices of the II0 cubic; one triangle orientation produces a
  // directed dotted cycle
  Dessin base = load("cubic_II0.dss");
  std::vector<std::pair<int, int>> feeds;  // (source dart, x-side dart)
  for (int dd = 0; dd < int(base.darts.size()); ++dd) {
    if (!base.darts[dd].alive || base.darts[dd].real) continue;
    if (base.darts[dd].color != EdgeColor::Dotted) continue;
    int xi = base.darts[dd].vertex;
    if (base.verts[xi].color == VertexColor::Cross && !base.verts[xi].real)
      feeds.push_back({base.pair_of(dd), dd});
  }
  REQUIRE(feeds.size() == 3);
  bool admissibility_hit = false;
  for (int orient = 0; orient < 2 && !admissibility_hit; ++orient) {
    Dessin d = base;
    int m[3], into[3], out[3], t_in[3], t_out[3];
    for (int i = 0; i < 3; ++i) {
      m[i] = d.add_vertex(VertexColor::Mono, false);
      into[i] = d.add_dart(m[i], EdgeColor::Dotted, false);
      out[i] = d.add_dart(m[i], EdgeColor::Dotted, false);
      t_in[i] = d.add_dart(m[i], EdgeColor::Dotted, false);
      t_out[i] = d.add_dart(m[i], EdgeColor::Dotted, false);
    }
    for (int i = 0; i < 3; ++i) {
      auto [src, xd] = feeds[i];
      d.pair_darts(src, into[i]);
      d.pair_darts(out[i], xd);
      d.pair_darts(t_out[i], t_in[(i + 1) % 3]);
      if (orient == 0)
        d.verts[m[i]].rot = {into[i], t_in[i], out[i], t_out[i]};
      else
        d.verts[m[i]].rot = {into[i], t_out[i], out[i], t_in[i]};
    }
    d.finalize();
    auto rep = validate(d);
    for (auto& v : rep.violations)
      if (v.find("admissibility") != std::string::npos) {
        admissibility_hit = true;
        // independent oracle: follow the triangle's derived directions
        auto rs = regions(d);
        auto src_dart = direction_darts(d, rs);
        int directed = 0;
        for (int i = 0; i < 3; ++i)
          if (src_dart[t_out[i]] || src_dart[t_in[(i + 1) % 3]]) ++directed;
        CHECK(directed == 3);
      }
  }
  CHECK(admissibility_hit);
}

TEST_CASE("regions satisfy the color-cycle law on fixtures") {
  for (const char* f : {"cubic_I1.dss", "toile_T3_2.dss"}) {
    Dessin d = load(f);
    auto rs = regions(d);
    int V = d.live_vertex_count(), E = d.edge_count();
    CHECK(V - E + int(rs.size()) == 1);
    for (auto& r : rs) CHECK(r.essentials.size() % 3 == 0);
  }
}

TEST_CASE("double cover validates both ways") {
  for (const char* f : {"cubic_I1.dss", "cubic_H.dss", "toile_T2_1.dss"}) {
    Dessin d = load(f);
    Dessin c = double_cover(d);
    CHECK(validate(c).ok());
    // index of the quotient = half the dart count of a lift
    for (int v = 0; v < int(d.verts.size()); ++v) {
      if (!d.verts[v].alive) continue;
      int lift_darts = d.verts[v].real
                           ? 2 * d.inner_dart_count(v) + 2
                           : int(d.verts[v].rot.size());
      CHECK(d.index_of(v) == lift_darts / 2);
    }
  }
}

TEST_CASE("cut sites and the cut/glue round trip") {
  Dessin t = load("toile_T1_2.dss");
  auto sites = find_cut_sites(t);
  // atlas representatives are glued dessins: the axe or cut is present
  REQUIRE(!sites.empty());
  auto pieces = cut_along(t, sites.front());
  REQUIRE(pieces.size() == 2);
  CHECK(degree(pieces[0]) + degree(pieces[1]) == 6);
  for (auto& p : pieces) CHECK(validate(p).ok());

  // nonsingular dessins have no axes
  for (auto& s : find_cut_sites(load("cubic_I1.dss")))
    CHECK(s.kind != CutSite::Kind::Axe);
}

TEST_CASE("glue then cut recovers the pieces") {
  Dessin c1 = load("cubic_I1.dss");
  Dessin c2 = load("cubic_II1.dss");
  // axe gluing at marked x-vertices
  auto crosses = [&](const Dessin& d) {
    std::vector<int> out;
    for (int v = 0; v < int(d.verts.size()); ++v)
      if (d.verts[v].alive && d.verts[v].real &&
          d.verts[v].color == VertexColor::Cross && d.verts[v].rot.size() == 2)
        out.push_back(v);
    return out;
  };
  auto x1 = crosses(c1), x2 = crosses(c2);
  REQUIRE(x1.size() >= 2);
  REQUIRE(x2.size() >= 2);
  bool glued = false;
  for (int v1 : x1)
    for (int v2 : x2)
      for (int s1 : {0, 1})
        for (int s2 : {0, 1}) {
          int d1 = c1.verts[v1].rot[s1], d2 = c2.verts[v2].rot[s2];
          if (c1.darts[d1].color != c2.darts[d2].color) continue;
          try {
            Dessin g = glue_axe(c1, d1, c2, d2);
            CHECK(degree(g) == 6);
            CHECK(is_uninodal(g));
            glued = true;
            // cutting at the axe returns two degree-3 pieces
            auto sites = find_cut_sites(g);
            bool axe_found = false;
            for (auto& s : sites)
              if (s.kind == CutSite::Kind::Axe) {
                auto pieces = cut_along(g, s);
                REQUIRE(pieces.size() == 2);
                CHECK(degree(pieces[0]) == 3);
                CHECK(degree(pieces[1]) == 3);
                CHECK(is_nonsingular(pieces[0]));
                CHECK(is_nonsingular(pieces[1]));
                axe_found = true;
                break;
              }
            CHECK(axe_found);
          } catch (const DomainError&) {
          }
        }
  CHECK(glued);
}

TEST_CASE("self-gluing on the disk is rejected") {
  Dessin d = load("cubic_I1.dss");
  CHECK_THROWS_AS(self_glue(d, 0, 1), DomainError);
}

TEST_CASE("type labeling: type I cubics admit one, type II do not") {
  for (const char* f : {"cubic_I0.dss", "cubic_I1.dss", "cubic_I2.dss"}) {
    Dessin d = load(f);
    auto tl = type_labeling(d);
    REQUIRE(tl.has_value());
    CHECK(check_type_labeling(d, *tl));
  }
  for (const char* f : {"cubic_II0.dss", "cubic_II1.dss", "cubic_II2.dss",
                        "cubic_II3.dss"})
    CHECK_FALSE(type_labeling(load(f)).has_value());
  CHECK_THROWS_AS(type_labeling(load("cubic_H.dss")), DomainError);
}

TEST_CASE("node profile kinds and fuzz invariance") {
  auto np1 = node_profile(load("uninodal_N1.dss"));
  CHECK(np1.kind == NodeProfile::Kind::Isolated);
  auto np3 = node_profile(load("uninodal_N3.dss"));
  CHECK(np3.kind == NodeProfile::Kind::NonIsolated);
  CHECK(np3.white_parities == std::make_pair(1, 1));

  // parities stay put under random elementary moves
  Dessin d = load("toile_T2_1.dss");
  std::string base = profile_str(node_profile(d));
  std::mt19937 rng(3);
  int applied = 0;
  for (int step = 0; step < 60 && applied < 60; ++step) {
    auto sites = applicable_moves(d, false);
    if (sites.empty()) break;
    d = apply(d, sites[rng() % sites.size()]).dessin;
    ++applied;
    CHECK(profile_str(node_profile(d)) == base);
    if (d.live_vertex_count() > 40) break;
  }
  CHECK(applied >= 20);
}

TEST_CASE("quartic interpretation of atlas fixtures") {
  auto qh = quartic_interpretation(load("toile_T4_4.dss"));
  CHECK(qh.b0 == 2);
  CHECK(qh.p_oval_odd);   // hyperbolic: nested ovals, p on the odd oval
  CHECK(qh.tangent_meets == 2);

  auto q1 = quartic_interpretation(load("toile_T1_2.dss"));
  CHECK(q1.b0 == 1);
  CHECK(q1.adjacency.find("complex") != std::string::npos);

  CHECK_THROWS_AS(quartic_interpretation(load("cubic_I1.dss")), DomainError);
}

TEST_CASE("rendering formats") {
  Dessin d = load("toile_T1_1.dss");
  std::string dot = render_dot(d);
  CHECK(dot.find("graph dessin {") == 0);
  CHECK(dot.find("subgraph boundary_1") != std::string::npos);
  std::string svg = render_svg(d);
  CHECK(svg.find("<svg") == 0);
  auto j = render_json(d);
  Dessin back = parse_dessin(j["file"].get<std::string>());
  CHECK(canonical_code(back) == canonical_code(d));
}

TEST_CASE("fixture round trip through the text format") {
  for (const char* f : {"cubic_H.dss", "cubic_II3.dss", "toile_T5_5.dss",
                        "uninodal_N2.dss"}) {
    Dessin d = load(f);
    std::string text = serialize_dessin(d);
    Dessin d2 = parse_dessin(text);
    CHECK(canonical_code(d) == canonical_code(d2));
    CHECK(serialize_dessin(d2) == text);
  }
}
