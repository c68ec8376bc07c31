#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "dessin/classify.hpp"
#include "dessin/io.hpp"
#include "fixtures_path.hpp"

using namespace dessin;

// the catalogs are expensive; build them once per test binary
static const CubicCatalog& cubics() {
  static CubicCatalog cat = cubic_catalog();
  return cat;
}
static const UninodalCatalog& uninodal() {
  static UninodalCatalog cat = uninodal_cubic_catalog(cubics());
  return cat;
}

TEST_CASE("cubic catalog: weak classes and names") {
  const auto& cat = cubics();
  CHECK(cat.weak_class_count == 3);
  std::set<std::string> names;
  for (auto& rec : cat.elementary) names.insert(rec.name);
  CHECK(names.count("H") == 1);
  CHECK(names.count("I1") == 1);
  CHECK(names.count("II1") == 1);
  CHECK(names.count("I2") == 1);
  // the marked x-vertices used for axe gluings exist
  for (auto& rec : cat.elementary) {
    if (rec.name != "I1" && rec.name != "II1") continue;
    int marked = 0;
    for (int v = 0; v < int(rec.representative.verts.size()); ++v)
      if (rec.representative.verts[v].real &&
          rec.representative.verts[v].color == VertexColor::Cross &&
          rec.representative.verts[v].rot.size() == 2)
        ++marked;
    CHECK(marked >= 2);
  }
}

TEST_CASE("cubic catalog certification") {
  auto cert = certify_cubic_catalog(cubics());
  INFO([&] {
    std::string s;
    for (auto& n : cert.notes) s += n + "; ";
    return s;
  }());
  CHECK(cert.ok);
  // witnesses replay
  const auto& cat = cubics();
  for (size_t wc = 0; wc < cert.chains.size(); ++wc)
    for (auto& [from, moves] : cert.chains[wc]) {
      Dessin d = replay(cat.elementary[from].representative, moves);
      CHECK(validate(d).ok());
    }
}

TEST_CASE("uninodal catalog members perturb back into the cubic catalog") {
  const auto& uni = uninodal();
  CHECK(uni.weak_classes.size() >= 3);
  bool iso = false, noniso = false;
  for (auto& rec : uni.weak_classes) {
    auto np = node_profile(rec.representative);
    (np.kind == NodeProfile::Kind::Isolated ? iso : noniso) = true;
  }
  CHECK(iso);
  CHECK(noniso);
}

TEST_CASE("uninodal deduplication is stable under regeneration") {
  auto again = uninodal_cubic_catalog(cubics());
  REQUIRE(again.weak_classes.size() == uninodal().weak_classes.size());
  for (size_t i = 0; i < again.weak_classes.size(); ++i)
    CHECK(again.weak_classes[i].code == uninodal().weak_classes[i].code);
}

TEST_CASE("atlas fixtures classify to their own classes") {
  // use the published fixture atlas rather than a fresh enumeration
  std::ifstream f(fixture("atlas.json"));
  REQUIRE(f.good());
  nlohmann::json j;
  f >> j;
  REQUIRE(j["classes"].size() == 20);
  Atlas atlas;
  for (auto& jc : j["classes"]) {
    ClassRecord rec;
    rec.name = jc["name"];
    rec.representative = parse_dessin(jc["file"].get<std::string>());
    rec.code = canonical_code(rec.representative);
    rec.invariants = equivalence_invariants(rec.representative);
    rec.quartic = quartic_interpretation(rec.representative);
    rec.members = {rec.code};
    atlas.classes.push_back(std::move(rec));
  }
  // reflexivity
  for (auto& rec : atlas.classes)
    CHECK(classify_dessin(rec.representative, atlas).name == rec.name);
  // random perturbations stay in class
  std::mt19937 rng(17);
  for (int trial = 0; trial < 3; ++trial) {
    auto& rec = atlas.classes[rng() % atlas.classes.size()];
    Dessin d = rec.representative;
    for (int k = 0; k < 6; ++k) {
      auto sites = applicable_moves(d, true);
      if (sites.empty()) break;
      Dessin next = apply(d, sites[rng() % sites.size()]).dessin;
      if (next.live_vertex_count() > d.live_vertex_count() + 8) continue;
      d = std::move(next);
    }
    CHECK(classify_dessin(d, atlas).name == rec.name);
  }
}

TEST_CASE("decomposition round trip on an atlas fixture") {
  Dessin t = load_dessin(fixture("toile_T2_3.dss"));
  auto dec = decompose_uninodal(t);
  REQUIRE(dec.has_value());
  REQUIRE(dec->pieces.size() == 2);
  CHECK(degree(dec->pieces[0]) == 3);
  CHECK(degree(dec->pieces[1]) == 3);
  // degree-3 inputs are rejected
  CHECK_THROWS_AS(decompose_uninodal(load_dessin(fixture("uninodal_N1.dss"))),
                  DomainError);
}
