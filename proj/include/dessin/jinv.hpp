#pragma once

/*
  Numerics: j-invariants of point quadruples, real polynomials with
  companion-matrix root finding, Weierstrass data for trigonal curves, and
  the reduction from a pointed quartic to its proper trigonal model.

  Conventions:
    j(z1,z2,z3,z4) = 4(l^2-l+1)^3 / (27 l^2 (l-1)^2),  l the cross-ratio;
    j(z1,z2,z3)    = j(z1,z2,z3,inf);
    for x^3 + g2 x + g3:  j = -4 g2^3 / D,  D = -4 g2^3 - 27 g3^2.
*/

#include <array>
#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "core.hpp"

namespace dessin {

using cplx = std::complex<double>;

struct ToleranceConfig {
  double root_coincidence = 1e-7;  // relative to coefficient scale
  double branch_collision = 1e-6;
  double real_axis = 1e-7;
  double j_match = 1e-8;
};

// ---------------------------------------------------------------------------
// Values on the Riemann sphere

struct SphereValue {
  bool infinite = false;
  cplx z{};

  static SphereValue inf() { return SphereValue{true, {}}; }
  static SphereValue at(cplx v) { return SphereValue{false, v}; }
  bool is_real(double tol) const { return infinite || std::abs(z.imag()) < tol; }
};

// Cross-ratio (z1-z3)/(z2-z3) : (z1-z4)/(z2-z4) with the standard limits
// when one argument is infinite.
inline SphereValue cross_ratio(const SphereValue& z1, const SphereValue& z2,
                               const SphereValue& z3, const SphereValue& z4) {
  int ninf = z1.infinite + z2.infinite + z3.infinite + z4.infinite;
  if (ninf > 1) throw DomainError("DegenerateQuadruple", "two points at infinity");
  auto coincide = [](const SphereValue& a, const SphereValue& b) {
    if (a.infinite || b.infinite) return a.infinite && b.infinite;
    return a.z == b.z;
  };
  int pairs = 0;
  const SphereValue* pts[4] = {&z1, &z2, &z3, &z4};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) pairs += coincide(*pts[i], *pts[j]);
  if (pairs > 1)
    throw DomainError("DegenerateQuadruple", "three or more points coincide");

  // Mobius-transport: with one infinite argument take the defining limit.
  if (z1.infinite) {  // (z2-z4)/(z2-z3) -> lambda = (z2-z4)/(z2-z3)
    cplx num = z2.z - z4.z, den = z2.z - z3.z;
    if (den == 0.0) return SphereValue::inf();
    return SphereValue::at(num / den);
  }
  if (z2.infinite) {
    cplx num = z1.z - z3.z, den = z1.z - z4.z;
    if (den == 0.0) return SphereValue::inf();
    return SphereValue::at(num / den);
  }
  if (z3.infinite) {
    cplx num = z2.z - z4.z, den = z1.z - z4.z;
    if (den == 0.0) return SphereValue::inf();
    return SphereValue::at(num / den);
  }
  if (z4.infinite) {
    cplx num = z1.z - z3.z, den = z2.z - z3.z;
    if (den == 0.0) return SphereValue::inf();
    return SphereValue::at(num / den);
  }
  cplx a = (z1.z - z3.z) * (z2.z - z4.z);
  cplx b = (z2.z - z3.z) * (z1.z - z4.z);
  if (b == 0.0) return SphereValue::inf();
  return SphereValue::at(a / b);
}

inline SphereValue j_of_lambda(const SphereValue& l) {
  if (l.infinite) return SphereValue::inf();
  cplx lam = l.z;
  cplx den = 27.0 * lam * lam * (lam - 1.0) * (lam - 1.0);
  if (den == 0.0) return SphereValue::inf();
  cplx q = lam * lam - lam + 1.0;
  return SphereValue::at(4.0 * q * q * q / den);
}

inline SphereValue j_invariant(const SphereValue& z1, const SphereValue& z2,
                               const SphereValue& z3, const SphereValue& z4) {
  return j_of_lambda(cross_ratio(z1, z2, z3, z4));
}

inline SphereValue j_invariant(cplx z1, cplx z2, cplx z3, cplx z4) {
  return j_invariant(SphereValue::at(z1), SphereValue::at(z2),
                     SphereValue::at(z3), SphereValue::at(z4));
}

// Triple form: j(z1,z2,z3) := j(z1,z2,z3,inf).
inline SphereValue j_invariant(cplx z1, cplx z2, cplx z3) {
  return j_invariant(SphereValue::at(z1), SphereValue::at(z2),
                     SphereValue::at(z3), SphereValue::inf());
}

// ---------------------------------------------------------------------------
// Triangle geometry of a triple

struct TriangleReport {
  enum class Shape { Isosceles, Collinear, Scalene } shape;
  SphereValue j;
  // for the scalene case: the points ordered by increasing opposite side
  // length, and the rotational sense of that order
  std::array<cplx, 3> ordered{};
  bool clockwise = false;
};

inline TriangleReport triangle_predicates(cplx z1, cplx z2, cplx z3,
                                          double tol = 1e-9) {
  TriangleReport rep{};
  rep.j = j_invariant(z1, z2, z3);
  if (rep.j.infinite || std::abs(rep.j.z.imag()) < tol) {
    double jr = rep.j.infinite ? std::numeric_limits<double>::infinity()
                               : rep.j.z.real();
    rep.shape = (jr < 1.0) ? TriangleReport::Shape::Isosceles
                           : TriangleReport::Shape::Collinear;
    return rep;
  }
  rep.shape = TriangleReport::Shape::Scalene;
  std::array<cplx, 3> pts{z1, z2, z3};
  std::array<double, 3> opp{std::abs(z2 - z3), std::abs(z1 - z3),
                            std::abs(z1 - z2)};
  std::array<int, 3> ix{0, 1, 2};
  std::sort(ix.begin(), ix.end(), [&](int a, int b) { return opp[a] < opp[b]; });
  for (int k = 0; k < 3; ++k) rep.ordered[k] = pts[ix[k]];
  // Rotational sense of the length order, named for the fiber orientation:
  // positive signed area goes with Im(j) > 0 and is reported as clockwise.
  cplx u = rep.ordered[1] - rep.ordered[0];
  cplx v = rep.ordered[2] - rep.ordered[1];
  double cross = u.real() * v.imag() - u.imag() * v.real();
  rep.clockwise = cross > 0.0;
  return rep;
}

// ---------------------------------------------------------------------------
// Real polynomials

struct RealPolynomial {
  std::vector<double> c;  // ascending degree

  RealPolynomial() = default;
  RealPolynomial(std::initializer_list<double> v) : c(v) {}
  explicit RealPolynomial(std::vector<double> v) : c(std::move(v)) {}

  double scale() const {
    double s = 0;
    for (double a : c) s = std::max(s, std::abs(a));
    return s;
  }
  RealPolynomial trimmed(double tol = 1e-12) const {
    RealPolynomial p = *this;
    double cutoff = tol * std::max(1.0, scale());
    while (!p.c.empty() && std::abs(p.c.back()) <= cutoff) p.c.pop_back();
    return p;
  }
  int degree() const {
    return int(c.size()) - 1;  // -1 for the zero polynomial
  }
  bool zero() const { return trimmed().c.empty(); }

  cplx operator()(cplx z) const {
    cplx r = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * z + *it;
    return r;
  }
  double operator()(double x) const {
    double r = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
    return r;
  }
  RealPolynomial derivative() const {
    RealPolynomial d;
    for (size_t k = 1; k < c.size(); ++k) d.c.push_back(double(k) * c[k]);
    return d;
  }
};

inline RealPolynomial operator+(const RealPolynomial& a, const RealPolynomial& b) {
  RealPolynomial r;
  r.c.resize(std::max(a.c.size(), b.c.size()), 0.0);
  for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r.c[i] += b.c[i];
  return r;
}
inline RealPolynomial operator-(const RealPolynomial& a, const RealPolynomial& b) {
  RealPolynomial r;
  r.c.resize(std::max(a.c.size(), b.c.size()), 0.0);
  for (size_t i = 0; i < a.c.size(); ++i) r.c[i] += a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r.c[i] -= b.c[i];
  return r;
}
inline RealPolynomial operator*(const RealPolynomial& a, const RealPolynomial& b) {
  if (a.c.empty() || b.c.empty()) return RealPolynomial{};
  RealPolynomial r;
  r.c.resize(a.c.size() + b.c.size() - 1, 0.0);
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
  return r;
}
inline RealPolynomial operator*(double s, const RealPolynomial& a) {
  RealPolynomial r = a;
  for (double& x : r.c) x *= s;
  return r;
}

// Roots via balanced companion-matrix eigenvalues with Newton polishing.
inline std::vector<cplx> roots(const RealPolynomial& pin) {
  RealPolynomial p = pin.trimmed();
  if (p.c.size() <= 1) return {};
  int n = p.degree();
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  double lead = p.c.back();
  for (int i = 0; i < n; ++i) {
    comp(i, n - 1) = -p.c[i] / lead;
    if (i > 0) comp(i, i - 1) = 1.0;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, /*computeEigenvectors=*/false);
  std::vector<cplx> out;
  RealPolynomial dp = p.derivative();
  for (int i = 0; i < n; ++i) {
    cplx z(es.eigenvalues()[i].real(), es.eigenvalues()[i].imag());
    for (int it = 0; it < 8; ++it) {  // Newton polish
      cplx f = p(z), df = dp(z);
      if (std::abs(df) < 1e-300) break;
      cplx step = f / df;
      z -= step;
      if (std::abs(step) < 1e-15 * (1.0 + std::abs(z))) break;
    }
    out.push_back(z);
  }
  std::sort(out.begin(), out.end(), [](cplx a, cplx b) {
    return std::make_pair(a.real(), a.imag()) <
           std::make_pair(b.real(), b.imag());
  });
  return out;
}

// ---------------------------------------------------------------------------
// Weierstrass data

struct WeierstrassPair {
  RealPolynomial g2, g3;
  int n = 1;  // degree bounds deg g2 <= 2n, deg g3 <= 3n
};

inline RealPolynomial discriminant_poly(const WeierstrassPair& w) {
  return (-4.0) * (w.g2 * w.g2 * w.g2) + (-27.0) * (w.g3 * w.g3);
}

inline void check_weierstrass(const WeierstrassPair& w) {
  if (w.g2.degree() > 2 * w.n || w.g3.degree() > 3 * w.n)
    throw DomainError("NonGenericInput", "degree bounds violated");
  if (discriminant_poly(w).zero())
    throw DomainError("NonGenericInput",
                      "discriminant vanishes identically (non-reduced curve)");
}

inline SphereValue j_from_weierstrass(const WeierstrassPair& w, cplx z,
                                      const ToleranceConfig& tol = {}) {
  cplx g2v = w.g2(z);
  RealPolynomial disc = discriminant_poly(w);
  cplx dv = disc(z);
  double s2 = std::max(1.0, w.g2.scale());
  double sd = std::max(1.0, disc.scale());
  double zm = std::pow(std::max(1.0, std::abs(z)), std::max(1, w.g2.degree()));
  double zd = std::pow(std::max(1.0, std::abs(z)), std::max(1, disc.degree()));
  if (std::abs(g2v) < tol.root_coincidence * s2 * zm &&
      std::abs(dv) < tol.root_coincidence * sd * zd)
    throw DomainError("Indeterminate",
                      "common zero of g2 and the discriminant");
  if (dv == 0.0) return SphereValue::inf();
  return SphereValue::at(-4.0 * g2v * g2v * g2v / dv);
}

// Depressed-cubic data for a w-cubic with polynomial coefficients, with the
// denominators cleared by the j-preserving rescaling (g2,g3) ->
// (s^2 g2, s^3 g3), s = 3a:
//   g2 = 9ac - 3b^2,  g3 = 2b^3 - 9abc + 27 a^2 d.
inline WeierstrassPair weierstrass_from_cubic(const RealPolynomial& a,
                                              const RealPolynomial& b,
                                              const RealPolynomial& c,
                                              const RealPolynomial& d) {
  if (a.zero())
    throw DomainError("NonGenericInput", "leading coefficient identically zero");
  WeierstrassPair w;
  w.g2 = (9.0 * (a * c) - 3.0 * (b * b)).trimmed();
  w.g3 = (2.0 * (b * b * b) - 9.0 * (a * (b * c)) + 27.0 * ((a * a) * d)).trimmed();
  int deg = std::max((w.g2.degree() + 1) / 2, (w.g3.degree() + 2) / 3);
  w.n = std::max(1, deg);
  return w;
}

// ---------------------------------------------------------------------------
// Pointed quartics

// Homogeneous quartic coefficients in the documented monomial order:
//   x^4, x^3 y, x^3 z, x^2 y^2, x^2 y z, x^2 z^2,
//   x y^3, x y^2 z, x y z^2, x z^3, y^4, y^3 z, y^2 z^2, y z^3, z^4.
struct PointedQuartic {
  std::array<double, 15> coeff{};
  std::array<double, 3> point{};
};

namespace jinvdetail {

inline const std::array<std::array<int, 3>, 15>& quartic_monomials() {
  static const std::array<std::array<int, 3>, 15> M = {{{4, 0, 0},
                                                        {3, 1, 0},
                                                        {3, 0, 1},
                                                        {2, 2, 0},
                                                        {2, 1, 1},
                                                        {2, 0, 2},
                                                        {1, 3, 0},
                                                        {1, 2, 1},
                                                        {1, 1, 2},
                                                        {1, 0, 3},
                                                        {0, 4, 0},
                                                        {0, 3, 1},
                                                        {0, 2, 2},
                                                        {0, 1, 3},
                                                        {0, 0, 4}}};
  return M;
}

inline double eval_quartic(const std::array<double, 15>& q, double x, double y,
                           double z) {
  const auto& M = quartic_monomials();
  double s = 0;
  for (int k = 0; k < 15; ++k)
    s += q[k] * std::pow(x, M[k][0]) * std::pow(y, M[k][1]) *
         std::pow(z, M[k][2]);
  return s;
}

inline std::array<double, 3> quartic_gradient(const std::array<double, 15>& q,
                                              double x, double y, double z) {
  const auto& M = quartic_monomials();
  std::array<double, 3> g{0, 0, 0};
  for (int k = 0; k < 15; ++k) {
    const auto& m = M[k];
    if (m[0] > 0)
      g[0] += q[k] * m[0] * std::pow(x, m[0] - 1) * std::pow(y, m[1]) *
              std::pow(z, m[2]);
    if (m[1] > 0)
      g[1] += q[k] * m[1] * std::pow(x, m[0]) * std::pow(y, m[1] - 1) *
              std::pow(z, m[2]);
    if (m[2] > 0)
      g[2] += q[k] * m[2] * std::pow(x, m[0]) * std::pow(y, m[1]) *
              std::pow(z, m[2] - 1);
  }
  return g;
}

// Coefficients of F(T(x,y,z)) for a linear substitution T (columns are the
// images of the basis vectors).
inline std::array<double, 15> transform_quartic(
    const std::array<double, 15>& q, const Eigen::Matrix3d& T) {
  // expand symbolically: each variable maps to a linear form
  // represent polynomials as maps from exponent triples to coefficients
  const auto& M = quartic_monomials();
  std::map<std::array<int, 3>, double> acc;
  // linear forms for x, y, z after substitution
  std::array<std::array<double, 3>, 3> L;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) L[i][j] = T(i, j);
  // multiply out q_k * (L0)^a (L1)^b (L2)^c
  auto mul = [](const std::map<std::array<int, 3>, double>& p,
                const std::array<double, 3>& lin) {
    std::map<std::array<int, 3>, double> r;
    for (auto& [e, v] : p)
      for (int t = 0; t < 3; ++t) {
        if (lin[t] == 0.0) continue;
        std::array<int, 3> e2 = e;
        e2[t]++;
        r[e2] += v * lin[t];
      }
    return r;
  };
  for (int k = 0; k < 15; ++k) {
    if (q[k] == 0.0) continue;
    std::map<std::array<int, 3>, double> p{{{0, 0, 0}, q[k]}};
    // x -> row 0 coefficients of T applied to new variables:
    // old x = T(0,0) x' + T(0,1) y' + T(0,2) z'
    for (int rep = 0; rep < M[k][0]; ++rep) p = mul(p, {L[0][0], L[0][1], L[0][2]});
    for (int rep = 0; rep < M[k][1]; ++rep) p = mul(p, {L[1][0], L[1][1], L[1][2]});
    for (int rep = 0; rep < M[k][2]; ++rep) p = mul(p, {L[2][0], L[2][1], L[2][2]});
    for (auto& [e, v] : p) acc[e] += v;
  }
  std::array<double, 15> out{};
  for (int k = 0; k < 15; ++k) {
    auto it = acc.find(M[k]);
    out[k] = (it == acc.end()) ? 0.0 : it->second;
  }
  return out;
}

}  // namespace jinvdetail

// Reduce a generic pointed quartic to the Weierstrass data of its proper
// trigonal model on Sigma_2: move the marked point to [0:0:1], write the
// quartic as z^3 f1 + z^2 f2 + z f3 + f4 with f1 the tangent-line form, and
// clear denominators via weierstrass_from_cubic on the pencil coordinate.
inline WeierstrassPair trigonal_from_quartic(const PointedQuartic& q,
                                             const ToleranceConfig& tol = {}) {
  using namespace jinvdetail;
  double scale = 0;
  for (double v : q.coeff) scale = std::max(scale, std::abs(v));
  if (scale == 0) throw DomainError("NonGenericInput", "zero quartic");
  double pnorm = std::hypot(q.point[0], std::hypot(q.point[1], q.point[2]));
  if (pnorm == 0) throw DomainError("NonGenericInput", "zero point");
  double fval = eval_quartic(q.coeff, q.point[0], q.point[1], q.point[2]);
  if (std::abs(fval) > 1e-6 * scale * std::pow(pnorm, 4))
    throw DomainError("NonGenericPoint", "point does not lie on the curve");
  auto grad = quartic_gradient(q.coeff, q.point[0], q.point[1], q.point[2]);
  double gnorm = std::hypot(grad[0], std::hypot(grad[1], grad[2]));
  if (gnorm < 1e-9 * scale * std::pow(pnorm, 3))
    throw DomainError("NonGenericPoint", "singular point of the curve");

  std::mt19937 rng(20240923);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int attempt = 0; attempt < 32; ++attempt) {
    // orthonormal-ish basis with p as the last column
    Eigen::Vector3d p3(q.point[0], q.point[1], q.point[2]);
    Eigen::Vector3d r1(U(rng), U(rng), U(rng));
    Eigen::Vector3d col0 = p3.cross(r1);
    if (col0.norm() < 0.05 * p3.norm()) continue;
    col0.normalize();
    Eigen::Vector3d col1 = p3.normalized().cross(col0);
    Eigen::Matrix3d T;
    T.col(0) = col0;
    T.col(1) = col1;
    T.col(2) = p3;
    if (std::abs(T.determinant()) < 0.05) continue;
    auto qc = transform_quartic(q.coeff, T);
    // extract f_k(x,y): coefficient of z^(4-k)
    // f1: z^3 terms: monomials with m2 == 3
    const auto& M = quartic_monomials();
    RealPolynomial a, b, c, d;  // in t = y/x on the chart x = 1
    a.c.assign(2, 0.0);
    b.c.assign(3, 0.0);
    c.c.assign(4, 0.0);
    d.c.assign(5, 0.0);
    double z4 = 0;
    for (int k = 0; k < 15; ++k) {
      int zx = M[k][2];
      int ydeg = M[k][1];
      if (zx == 4) z4 = qc[k];
      if (zx == 3) a.c[ydeg] += qc[k];
      if (zx == 2) b.c[ydeg] += qc[k];
      if (zx == 1) c.c[ydeg] += qc[k];
      if (zx == 0) d.c[ydeg] += qc[k];
    }
    if (std::abs(z4) > 1e-7 * scale) continue;  // p not exactly on the curve
    RealPolynomial at = a.trimmed(1e-9);
    if (at.degree() != 1) continue;  // tangent direction at t = infinity
    double t0 = -at.c[0] / at.c[1];
    if (std::abs(t0) > 8.0) continue;  // keep the marked fiber well-placed
    double b0 = b(t0), c0 = c(t0), d0 = d(t0);
    double bs = std::max(1.0, b.scale());
    if (std::abs(b0) < 1e-6 * bs)
      throw DomainError("NonGenericPoint",
                        "inflection point: tangent meets the curve triply");
    double disc2 = c0 * c0 - 4.0 * b0 * d0;
    if (std::abs(disc2) < 1e-8 * bs * bs)
      throw DomainError("NonGenericPoint",
                        "bitangent: tangent line touches the curve twice");
    WeierstrassPair w = weierstrass_from_cubic(a, b, c, d);
    w.n = 2;
    check_weierstrass(w);
    // recentre and rescale the base so the singular fibers spread over a
    // unit-size box: affine substitutions keep the j-invariant pointwise
    auto dr = roots(discriminant_poly(w));
    double lo = 1e18, hi = -1e18;
    for (cplx z : dr) {
      lo = std::min(lo, z.real());
      hi = std::max(hi, z.real());
    }
    double beta = 0.5 * (lo + hi);
    double alpha = std::max(1e-6, 0.5 * (hi - lo));
    auto substitute = [&](const RealPolynomial& g) {
      // g(alpha s + beta)
      RealPolynomial out{0.0}, pw{1.0};
      RealPolynomial lin{beta, alpha};
      for (int k = 0; k <= g.degree(); ++k) {
        out = out + (g.c[k] * pw);
        pw = pw * lin;
      }
      return out.trimmed(1e-13);
    };
    w.g2 = substitute(w.g2);
    w.g3 = substitute(w.g3);
    double s2 = std::max(w.g2.scale(), 1e-12);
    double s3 = std::max(w.g3.scale(), 1e-12);
    // scalar (s^2 g2, s^3 g3) normalization toward unit magnitudes
    double s = std::min(std::pow(s2, -0.5), std::pow(s3, -1.0 / 3.0));
    w.g2 = (s * s) * w.g2;
    w.g3 = (s * s * s) * w.g3;
    return w;
  }
  throw DomainError("NonGenericPoint",
                    "no admissible chart found for the pointed quartic");

}

}  // namespace dessin
