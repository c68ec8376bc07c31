#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "dessin/jinv.hpp"
#include "dessin/structure.hpp"
#include "dessin/trace.hpp"

using namespace dessin;

static cplx I{0.0, 1.0};

TEST_CASE("cross-ratio limits and direct evaluation") {
  auto l = cross_ratio(SphereValue::inf(), SphereValue::at(0.0),
                       SphereValue::at(1.0), SphereValue::at(cplx(3.0)));
  REQUIRE_FALSE(l.infinite);
  // lambda = (z2-z4)/(z2-z3) = (0-3)/(0-1) = 3
  CHECK(std::abs(l.z - cplx(3.0)) < 1e-12);

  auto l2 = cross_ratio(SphereValue::at(0.0), SphereValue::at(1.0),
                        SphereValue::at(2.0), SphereValue::at(3.0));
  cplx direct = ((cplx(0) - 2.0) / (cplx(1) - 2.0)) /
                ((cplx(0) - 3.0) / (cplx(1) - 3.0));
  CHECK(std::abs(l2.z - direct) < 1e-12);

  CHECK_THROWS_AS(cross_ratio(SphereValue::at(0.0), SphereValue::at(0.0),
                              SphereValue::at(0.0), SphereValue::at(1.0)),
                  DomainError);
}

TEST_CASE("j-invariant symmetric values") {
  cplx w1 = std::polar(1.0, 2.0 * M_PI / 3.0);
  cplx w2 = std::polar(1.0, -2.0 * M_PI / 3.0);
  auto j3 = j_invariant(cplx(1.0), w1, w2);
  REQUIRE_FALSE(j3.infinite);
  CHECK(std::abs(j3.z) < 1e-9);

  auto j2 = j_invariant(cplx(-1.0), cplx(0.0), cplx(1.0));
  REQUIRE_FALSE(j2.infinite);
  CHECK(std::abs(j2.z - 1.0) < 1e-9);

  auto ji = j_invariant(cplx(2.0), cplx(2.0), cplx(0.0), cplx(5.0));
  CHECK(ji.infinite);

  cplx z3(2.0, 1.0);
  cplx lam = (cplx(0.0) - z3) / (cplx(1.0) - z3);
  cplx q = lam * lam - lam + 1.0;
  cplx expect = 4.0 * q * q * q / (27.0 * lam * lam * (lam - 1.0) * (lam - 1.0));
  auto got = j_invariant(cplx(0.0), cplx(1.0), z3);
  CHECK(std::abs(got.z - expect) < 1e-10 * std::abs(expect));
}

TEST_CASE("j-invariant is a symmetric function of its four arguments") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::array<cplx, 4> z;
    for (auto& v : z) v = cplx(U(rng), U(rng));
    auto ref = j_invariant(z[0], z[1], z[2], z[3]);
    std::array<int, 4> p{0, 1, 2, 3};
    do {
      auto jj = j_invariant(z[p[0]], z[p[1]], z[p[2]], z[p[3]]);
      REQUIRE_FALSE(jj.infinite);
      CHECK(std::abs(jj.z - ref.z) <= 1e-9 * (1.0 + std::abs(ref.z)));
    } while (std::next_permutation(p.begin(), p.end()));
  }
}

TEST_CASE("Moebius invariance over 1000 samples") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> U(-3.0, 3.0);
  int checked = 0;
  while (checked < 1000) {
    std::array<cplx, 4> z;
    for (auto& v : z) v = cplx(U(rng), U(rng));
    cplx a(U(rng), U(rng)), b(U(rng), U(rng)), c(U(rng), U(rng)),
        dd(U(rng), U(rng));
    if (std::abs(a * dd - b * c) < 0.1) continue;
    auto mob = [&](cplx t) { return (a * t + b) / (c * t + dd); };
    bool pole = false;
    for (auto& v : z)
      if (std::abs(c * v + dd) < 0.05) pole = true;
    if (pole) continue;
    auto j0 = j_invariant(z[0], z[1], z[2], z[3]);
    auto j1 = j_invariant(mob(z[0]), mob(z[1]), mob(z[2]), mob(z[3]));
    if (j0.infinite || j1.infinite) continue;
    CHECK(std::abs(j0.z - j1.z) <= 1e-8 * (1.0 + std::abs(j0.z)));
    ++checked;
  }
}

TEST_CASE("conjugation-stable triples have real j") {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  for (int t = 0; t < 200; ++t) {
    double r = U(rng);
    cplx zz(U(rng), 0.3 + std::abs(U(rng)));
    auto j = j_invariant(cplx(r), zz, std::conj(zz));
    if (j.infinite) continue;
    CHECK(std::abs(j.z.imag()) < 1e-9 * (1.0 + std::abs(j.z)));
  }
}

TEST_CASE("triangle predicates") {
  for (double h : {0.2, 0.7, 1.9}) {
    auto rep = triangle_predicates(cplx(0.0), cplx(1.0), cplx(0.5, h));
    CHECK(rep.shape == TriangleReport::Shape::Isosceles);
    REQUIRE_FALSE(rep.j.infinite);
    CHECK(rep.j.z.real() < 1.0);
  }
  auto repc = triangle_predicates(cplx(0.0), cplx(1.0), cplx(3.0));
  CHECK(repc.shape == TriangleReport::Shape::Collinear);
  auto reps = triangle_predicates(I * 0.5, cplx(0.0), cplx(1.0));
  REQUIRE(reps.shape == TriangleReport::Shape::Scalene);
  CHECK(std::abs(reps.ordered[0] - cplx(1.0)) < 1e-12);
  CHECK(std::abs(reps.ordered[1] - I * 0.5) < 1e-12);
  CHECK(std::abs(reps.ordered[2] - cplx(0.0)) < 1e-12);
  CHECK(reps.clockwise == (reps.j.z.imag() > 0));
}

TEST_CASE("polynomial roots via companion matrix") {
  RealPolynomial p{-6.0, 11.0, -6.0, 1.0};
  auto r = roots(p);
  REQUIRE(r.size() == 3);
  CHECK(std::abs(r[0] - cplx(1.0)) < 1e-10);
  CHECK(std::abs(r[1] - cplx(2.0)) < 1e-10);
  CHECK(std::abs(r[2] - cplx(3.0)) < 1e-10);
}

TEST_CASE("j from Weierstrass data") {
  WeierstrassPair w0{RealPolynomial{0.0}, RealPolynomial{1.0, 2.0, 0.0, 1.0}, 1};
  auto j0 = j_from_weierstrass(w0, cplx(0.7, 0.2));
  CHECK(std::abs(j0.z) < 1e-12);
  WeierstrassPair w1{RealPolynomial{1.0, -2.0, 1.0}, RealPolynomial{0.0}, 1};
  auto j1 = j_from_weierstrass(w1, cplx(0.3, 0.4));
  CHECK(std::abs(j1.z - 1.0) < 1e-12);

  std::mt19937 rng(23);
  std::uniform_real_distribution<double> U(-1.5, 1.5);
  int done = 0;
  while (done < 200) {
    WeierstrassPair w;
    w.n = 1;
    w.g2 = RealPolynomial{U(rng), U(rng), U(rng)};
    w.g3 = RealPolynomial{U(rng), U(rng), U(rng), U(rng)};
    cplx z(U(rng), U(rng));
    RealPolynomial disc = discriminant_poly(w);
    if (std::abs(disc(z)) < 1e-3) continue;
    cplx g2v = w.g2(z), g3v = w.g3(z);
    Eigen::Matrix3cd comp = Eigen::Matrix3cd::Zero();
    comp(0, 2) = -g3v;
    comp(1, 2) = -g2v;
    comp(1, 0) = comp(2, 1) = 1.0;
    Eigen::ComplexEigenSolver<Eigen::Matrix3cd> es(comp);
    auto jw = j_from_weierstrass(w, z);
    auto jr = j_invariant(es.eigenvalues()[0], es.eigenvalues()[1],
                          es.eigenvalues()[2]);
    if (jw.infinite || jr.infinite) continue;
    CHECK(std::abs(jw.z - jr.z) <= 1e-8 * (1.0 + std::abs(jr.z)));
    ++done;
  }
}

TEST_CASE("scaling invariance (g2,g3) -> (s^2 g2, s^3 g3)") {
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> U(-1.5, 1.5);
  int done = 0;
  while (done < 1000) {
    WeierstrassPair w;
    w.n = 1;
    w.g2 = RealPolynomial{U(rng), U(rng), U(rng)};
    w.g3 = RealPolynomial{U(rng), U(rng), U(rng), U(rng)};
    double s = U(rng);
    if (std::abs(s) < 0.1) continue;
    WeierstrassPair ws{(s * s) * w.g2, (s * s * s) * w.g3, 1};
    cplx z(U(rng), U(rng));
    SphereValue a, b;
    try {
      a = j_from_weierstrass(w, z);
      b = j_from_weierstrass(ws, z);
    } catch (const DomainError&) {
      continue;
    }
    if (a.infinite || b.infinite) continue;
    CHECK(std::abs(a.z - b.z) <= 1e-8 * (1.0 + std::abs(a.z)));
    ++done;
  }
}

TEST_CASE("weierstrass_from_cubic: scaling and discriminant identity") {
  RealPolynomial one{1.0}, zero{}, c{0.4, -1.0, 0.3}, dd{-0.2, 0.7, 0.0, 1.1};
  auto w = weierstrass_from_cubic(one, zero, c, dd);
  for (size_t k = 0; k < w.g2.c.size(); ++k)
    CHECK(w.g2.c[k] == Catch::Approx(9.0 * c.c[k]));
  for (size_t k = 0; k < w.g3.c.size(); ++k)
    CHECK(w.g3.c[k] == Catch::Approx(27.0 * dd.c[k]));
  WeierstrassPair plain{c, dd, 1};
  cplx z(0.3, 0.6);
  auto ja = j_from_weierstrass(w, z);
  auto jb = j_from_weierstrass(plain, z);
  CHECK(std::abs(ja.z - jb.z) < 1e-10 * (1.0 + std::abs(jb.z)));

  std::mt19937 rng(31);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    RealPolynomial A{U(rng), U(rng)}, B{U(rng), U(rng), U(rng)},
        C{U(rng), U(rng), U(rng)}, D{U(rng), U(rng), U(rng), U(rng)};
    auto ww = weierstrass_from_cubic(A, B, C, D);
    auto delta = discriminant_poly(ww);
    double x = U(rng) * 2.0;
    double a = A(x), b = B(x), cc = C(x), d = D(x);
    double disc_cubic = 18 * a * b * cc * d - 4 * b * b * b * d +
                        b * b * cc * cc - 4 * a * cc * cc * cc -
                        27 * a * a * d * d;
    CHECK(delta(x) ==
          Catch::Approx(729.0 * a * a * disc_cubic).margin(1e-6).epsilon(1e-8));
  }
}

TEST_CASE("trace: explicit generic cubic gives a valid degree-3 dessin") {
  WeierstrassPair w;
  w.n = 1;
  w.g2 = RealPolynomial{-1.0, 0.0, 1.0};
  w.g3 = RealPolynomial{-8.0, 0.0, 0.0, 1.0};
  Dessin d = trace_dessin(w);
  auto rep = validate(d);
  INFO(rep.str());
  REQUIRE(rep.ok());
  CHECK(degree(d) == 3);
  CHECK(is_nonsingular(d));
  auto prof = boundary_profile(d);
  CHECK(prof.zigzag_count == 0);
  CHECK(prof.oval_count == 0);
  CHECK(inner_simple_cross_count(d) == 3);
}

TEST_CASE("trace: wiggly pencil cubic shows a zigzag") {
  WeierstrassPair w;
  w.n = 1;
  w.g2 = RealPolynomial{-0.9, 0.35, 0.05};
  w.g3 = RealPolynomial{0.0, -1.0, 0.0, 0.02};
  Dessin d = trace_dessin(w);
  REQUIRE(validate(d).ok());
  CHECK(degree(d) == 3);
  CHECK(zigzag_count(d) >= 1);
}

TEST_CASE("trace rejects isotrivial input") {
  WeierstrassPair w{RealPolynomial{2.0}, RealPolynomial{1.0}, 1};
  CHECK_THROWS_WITH(trace_dessin(w),
                    Catch::Matchers::ContainsSubstring("isotrivial"));
}

TEST_CASE("pointed quartic reduction: Fermat-type curve") {
  PointedQuartic q{};
  q.coeff[0] = 1.0;
  q.coeff[10] = 1.0;
  q.coeff[14] = -1.0;
  double px = 0.9;
  double py = std::pow(1.0 - std::pow(px, 4.0), 0.25);
  q.point = {px, py, 1.0};
  auto w = trigonal_from_quartic(q);
  CHECK(w.n == 2);
  CHECK(w.g2.degree() <= 4);
  CHECK(w.g3.degree() <= 6);
  auto disc = discriminant_poly(w);
  auto rr = roots(disc);
  int close_pairs = 0;
  for (size_t i = 0; i < rr.size(); ++i)
    for (size_t j = i + 1; j < rr.size(); ++j)
      if (std::abs(rr[i] - rr[j]) < 1e-4) ++close_pairs;
  CHECK(close_pairs == 1);

  Dessin d = trace_dessin(w);
  REQUIRE(validate(d).ok());
  CHECK(degree(d) == 6);
  CHECK(is_uninodal(d));
}

TEST_CASE("off-curve point rejected") {
  PointedQuartic q{};
  q.coeff[0] = 1.0;
  q.coeff[10] = 1.0;
  q.coeff[14] = -1.0;
  q.point = {0.3, 0.4, 1.0};
  CHECK_THROWS_WITH(trigonal_from_quartic(q),
                    Catch::Matchers::ContainsSubstring("does not lie"));
}
