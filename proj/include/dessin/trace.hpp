#pragma once

/*
  Numeric extraction of the dessin of a real Weierstrass pair: the dessin is
  j^-1(RP^1) on the conjugation quotient of the base sphere, realized as the
  closed upper half-plane.

  Vertices: black at roots of g2, white at roots of g3, x at roots of the
  discriminant (a real double root is the node), monochrome at real critical
  points of j with real critical value.  Edges are the connected arcs of
  j^-1(RP^1); inner arcs are traced by predictor-corrector continuation of
  j(z) = v along each critical-value-free interval, launched from the
  interval midpoint fiber.

  The base coordinate is first normalized by a real Mobius transformation so
  that every special point is finite and well separated from infinity; the
  point at infinity is then an ordinary boundary point.
*/

#include "jinv.hpp"
#include "validate.hpp"

namespace dessin {

namespace tracedetail {

inline RealPolynomial binom_power(double p, double q, int k) {
  // (p z + q)^k
  RealPolynomial r{1.0};
  RealPolynomial lin{q, p};
  for (int i = 0; i < k; ++i) r = r * lin;
  return r;
}

// g(z) -> (c z + d)^w * g((a z + b)/(c z + d)), a polynomial when deg g <= w.
inline RealPolynomial mobius_twist(const RealPolynomial& g, int w, double a,
                                   double b, double c, double d) {
  RealPolynomial out;
  out.c.assign(size_t(w) + 1, 0.0);
  for (int k = 0; k <= g.degree(); ++k) {
    if (k >= int(g.c.size())) break;
    RealPolynomial term = g.c[k] * (binom_power(a, b, k) * binom_power(c, d, w - k));
    out = out + term;
  }
  return out.trimmed(1e-14);
}

struct SpecialPoints {
  std::vector<cplx> blacks, whites, crosses;  // upper-half + real only
  std::optional<cplx> node;
  std::vector<double> monos;        // real positions
  std::vector<double> mono_values;  // j at the monos
};

inline bool near(cplx a, cplx b, double eps) { return std::abs(a - b) < eps; }

}  // namespace tracedetail

struct TraceLog {
  std::vector<std::string> lines;
  void add(std::string s) { lines.push_back(std::move(s)); }
};

inline Dessin trace_dessin(const WeierstrassPair& win,
                           ToleranceConfig tol = {}, TraceLog* log = nullptr) {
  using namespace tracedetail;
  check_weierstrass(win);
  const int n = win.n;

  // isotriviality: g2^3 and g3^2 proportional (includes either being zero)
  {
    RealPolynomial a = (win.g2 * win.g2 * win.g2).trimmed();
    RealPolynomial b = (win.g3 * win.g3).trimmed();
    bool iso = a.zero() || b.zero();
    if (!iso && a.degree() == b.degree()) {
      RealPolynomial diff = (b.c.back() * a) - (a.c.back() * b);
      iso = diff.trimmed(1e-9).zero();
    }
    if (iso)
      throw DomainError("NonGenericInput", "isotrivial: constant j-invariant");
  }

  // ---- Mobius normalization
  WeierstrassPair w = win;
  auto degrees_full = [&](const WeierstrassPair& x) {
    RealPolynomial disc = discriminant_poly(x).trimmed(1e-11);
    return x.g2.trimmed(1e-11).degree() == 2 * n &&
           x.g3.trimmed(1e-11).degree() == 3 * n && disc.degree() == 6 * n;
  };
  {
    std::vector<std::array<double, 4>> candidates{{1, 0, 0, 1}};
    for (int k = 1; k <= 40; ++k) {
      double t = 0.37 * k;
      candidates.push_back({std::cos(t), -std::sin(t), std::sin(t), std::cos(t)});
      candidates.push_back({1, 0, 0.11 * k, 1});
    }
    bool ok = false;
    for (auto& m : candidates) {
      WeierstrassPair x;
      x.n = n;
      x.g2 = mobius_twist(win.g2, 2 * n, m[0], m[1], m[2], m[3]);
      x.g3 = mobius_twist(win.g3, 3 * n, m[0], m[1], m[2], m[3]);
      if (!degrees_full(x)) continue;
      RealPolynomial disc = discriminant_poly(x);
      RealPolynomial K =
          ((3.0 * (x.g2.derivative() * disc)) - (x.g2 * disc.derivative()))
              .trimmed(1e-11);
      // the leading terms of K always cancel once; any further drop means
      // infinity is a critical point of j
      if (K.degree() != 8 * n - 2) continue;
      bool good = true;
      for (auto& p : {x.g2, x.g3, disc, K}) {
        for (cplx r : roots(p))
          if (std::abs(r) > 40.0) good = false;
      }
      if (!good) continue;
      // j at infinity must clear 0, 1 and every real critical value
      double jinf = -4.0 * std::pow(x.g2.c.back(), 3) / disc.c.back();
      if (std::abs(jinf) < 1e-3 || std::abs(jinf - 1.0) < 1e-3) continue;
      for (cplx r : roots(K)) {
        if (std::abs(r.imag()) > 1e-5 * (1.0 + std::abs(r))) continue;
        cplx g2v = x.g2(r);
        cplx cv = -4.0 * g2v * g2v * g2v / disc(r);
        if (std::abs(jinf - cv.real()) < 1e-3 * (1.0 + std::abs(cv)))
          good = false;
      }
      if (!good) continue;
      w = x;
      ok = true;
      break;
    }
    if (!ok)
      throw DomainError("NonGenericInput",
                        "no base coordinate places all structure in a box");
  }

  RealPolynomial disc = discriminant_poly(w);
  RealPolynomial K =
      ((3.0 * (w.g2.derivative() * disc)) - (w.g2 * disc.derivative()))
          .trimmed(1e-11);

  auto rd = roots(disc);
  auto rb = roots(w.g2);
  auto rw = roots(w.g3);
  auto rk = roots(K);

  double box = 1.0;
  for (auto& v : {rd, rb, rw, rk})
    for (cplx z : v) box = std::max(box, std::abs(z));
  const double ctol = tol.root_coincidence * 10.0 * box;
  const double rtol = tol.real_axis * 100.0 * box;

  // ---- classify the discriminant roots: simple crosses plus at most one
  // real double root, the node.  A numerically double root of a degree-12
  // polynomial splits by roughly the square root of the coefficient noise,
  // so the pairing tolerance is much wider than the coincidence tolerance.
  const double ntol = std::max(ctol, 3e-4 * box);
  SpecialPoints sp;
  {
    std::vector<char> used(rd.size(), 0);
    for (size_t i = 0; i < rd.size(); ++i) {
      if (used[i]) continue;
      std::vector<size_t> cluster{i};
      for (size_t j = i + 1; j < rd.size(); ++j)
        if (!used[j] && near(rd[i], rd[j], ntol)) cluster.push_back(j);
      for (size_t j : cluster) used[j] = 1;
      if (cluster.size() == 1) {
        sp.crosses.push_back(rd[i]);
      } else if (cluster.size() == 2) {
        cplx mean = (rd[cluster[0]] + rd[cluster[1]]) / 2.0;
        if (std::abs(mean.imag()) > rtol)
          throw DomainError("NonGenericInput",
                            "complex double point of the discriminant");
        if (sp.node)
          throw DomainError("NonGenericInput", "more than one nodal fiber");
        sp.node = cplx(mean.real(), 0.0);
      } else {
        throw DomainError("NonGenericInput",
                          "discriminant root of multiplicity > 2");
      }
    }
  }
  sp.blacks = rb;
  // Whites: a real double root of g3 is a white vertex of index 4 sitting on
  // the reduction wall; it is kept as one vertex here and split into two
  // index-2 whites flanking a monochrome vertex after assembly (the
  // equisingular perturbation every nearby generic curve realizes).
  {
    std::vector<char> used(rw.size(), 0);
    for (size_t i = 0; i < rw.size(); ++i) {
      if (used[i]) continue;
      std::vector<size_t> cluster{i};
      for (size_t j = i + 1; j < rw.size(); ++j)
        if (!used[j] && near(rw[i], rw[j], ntol)) cluster.push_back(j);
      for (size_t j : cluster) used[j] = 1;
      if (cluster.size() == 1) {
        sp.whites.push_back(rw[i]);
      } else if (cluster.size() == 2) {
        cplx mean = (rw[cluster[0]] + rw[cluster[1]]) / 2.0;
        if (std::abs(mean.imag()) > rtol)
          throw DomainError("NonGenericInput", "double complex root of g3");
        sp.whites.push_back(cplx(mean.real(), 0.0));
      } else {
        throw DomainError("NonGenericInput", "g3 root of multiplicity > 2");
      }
    }
  }
  for (auto* v : {&sp.blacks, &sp.whites, &sp.crosses}) {
    for (auto& z : *v)
      if (std::abs(z.imag()) < rtol) z = cplx(z.real(), 0.0);
  }
  // genericity: g2 roots simple, g2/g3 roots away from disc roots
  auto all_simple = [&](const std::vector<cplx>& v) {
    for (size_t i = 0; i < v.size(); ++i)
      for (size_t j = i + 1; j < v.size(); ++j)
        if (near(v[i], v[j], ntol)) return false;
    return true;
  };
  if (!all_simple(sp.blacks))
    throw DomainError("NonGenericInput", "multiple roots of g2");
  for (cplx zb : sp.blacks)
    for (cplx zd : rd)
      if (near(zb, zd, ctol))
        throw DomainError("NonGenericInput", "g2 root on a singular fiber");
  for (cplx zw : sp.whites)
    for (cplx zd : rd)
      if (near(zw, zd, ctol))
        throw DomainError("NonGenericInput", "g3 root on a singular fiber");

  // ---- monochrome vertices: critical points apart from the whites
  auto jval = [&](cplx z) -> cplx {
    cplx g2v = w.g2(z);
    return -4.0 * g2v * g2v * g2v / disc(z);
  };
  for (cplx z : rk) {
    // whites are critical; so is the nodal fiber (a double root of the
    // discriminant); neither is a monochrome vertex
    bool taken = false;
    for (cplx zw2 : sp.whites)
      if (near(z, zw2, std::max(ctol * 10, ntol * 3))) taken = true;
    for (cplx zd : rd)
      if (near(z, zd, std::max(ctol * 10, ntol * 3))) taken = true;
    if (taken) continue;
    if (std::abs(z.imag()) < rtol) {
      double x = z.real();
      cplx v = jval(cplx(x, 0.0));
      sp.monos.push_back(x);
      sp.mono_values.push_back(v.real());
    } else {
      cplx v = jval(z);
      if (std::abs(v.imag()) < 1e-9 * (1.0 + std::abs(v)))
        throw DomainError("NonGenericInput",
                          "inner critical point with real critical value");
    }
  }
  for (size_t i = 0; i < sp.mono_values.size(); ++i) {
    double v = sp.mono_values[i];
    if (std::abs(v) < 1e-7 || std::abs(v - 1.0) < 1e-7)
      throw DomainError("NonGenericInput",
                        "monochrome critical value collides with 0 or 1");
    for (size_t j = i + 1; j < sp.mono_values.size(); ++j)
      if (std::abs(v - sp.mono_values[j]) < 1e-9 * (1.0 + std::abs(v)))
        throw DomainError("NonGenericInput",
                          "coinciding monochrome critical values");
  }

  // ---- vertex table
  struct TV {
    cplx z;
    VertexColor color;
    bool real;
    bool is_node = false;
  };
  std::vector<TV> vtab;
  auto add_point = [&](cplx z, VertexColor c, bool node_flag = false) {
    if (z.imag() < -rtol) return;             // mirror copy
    bool real = std::abs(z.imag()) < rtol;
    vtab.push_back(TV{real ? cplx(z.real(), 0.0) : z, c, real, node_flag});
  };
  for (cplx z : sp.blacks) add_point(z, VertexColor::Black);
  for (cplx z : sp.whites) add_point(z, VertexColor::White);
  for (cplx z : sp.crosses) add_point(z, VertexColor::Cross);
  if (sp.node) add_point(*sp.node, VertexColor::Cross, true);
  for (double x : sp.monos) add_point(cplx(x, 0.0), VertexColor::Mono);

  // minimum separation, for snapping certification
  double sep = 1e9;
  for (size_t i = 0; i < vtab.size(); ++i)
    for (size_t j = i + 1; j < vtab.size(); ++j)
      sep = std::min(sep, std::abs(vtab[i].z - vtab[j].z));
  if (sep < ctol * 4)
    throw DomainError("NonGenericInput", "special points too close to resolve");

  auto nearest_vertex = [&](cplx z, double* dist) {
    int best = -1;
    double bd = 1e18, second = 1e18;
    for (int i = 0; i < int(vtab.size()); ++i) {
      double dd = std::abs(z - vtab[i].z);
      if (dd < bd) {
        second = bd;
        bd = dd;
        best = i;
      } else if (dd < second)
        second = dd;
    }
    if (dist) *dist = bd;
    if (bd > 0.35 * second) return -1;
    return best;
  };

  // ---- interval structure of the three primary segments
  struct Segment {
    EdgeColor color;
    double lo, hi;  // finite endpoints or +-HUGE for the pole side
  };
  const double HUGE_V = 1e9;
  std::vector<Segment> segments;
  {
    auto split = [&](EdgeColor col, double lo, double hi) {
      std::vector<double> cuts;
      for (double v : sp.mono_values)
        if (v > lo && v < hi) cuts.push_back(v);
      std::sort(cuts.begin(), cuts.end());
      double cur = lo;
      for (double c : cuts) {
        segments.push_back(Segment{col, cur, c});
        cur = c;
      }
      segments.push_back(Segment{col, cur, hi});
    };
    split(EdgeColor::Solid, -HUGE_V, 0.0);
    split(EdgeColor::Bold, 0.0, 1.0);
    split(EdgeColor::Dotted, 1.0, HUGE_V);
  }

  // ---- continuation of the upper-half arcs
  struct ArcEnd {
    int vertex = -1;       // index into vtab, or -1 for a pass-through end
    double passthrough_value = 0;  // the critical value where the arc stopped
    cplx stop;             // final position
    cplx approach;         // a sample close to the end, for ray selection
    bool from_below = false;  // side of the target value (sign of the local model)
  };
  struct Arc {
    EdgeColor color;
    ArcEnd a, b;  // a: toward lo, b: toward hi
  };
  std::vector<Arc> arcs;

  auto solve_fiber = [&](double v) {
    // roots of -4 g2^3 - v * disc
    RealPolynomial p = ((-4.0) * (w.g2 * w.g2 * w.g2)) - (v * disc);
    return roots(p);
  };

  // endpoint kind: which vertices may legally terminate an arc at value v1
  auto legal_end = [&](int idx, double v1) {
    const TV& tv = vtab[idx];
    if (v1 == 0.0) return tv.color == VertexColor::Black;
    if (v1 == 1.0) return tv.color == VertexColor::White;
    if (v1 <= -HUGE_V || v1 >= HUGE_V) return tv.color == VertexColor::Cross;
    // monochrome critical value: only the mono carrying that value
    if (tv.color != VertexColor::Mono) return false;
    cplx cv = jval(tv.z);
    return std::abs(cv.real() - v1) < 1e-6 * (1.0 + std::abs(v1));
  };

  // Exact terminal ray directions at a vertex: the local model of the
  // relevant function is c*w^m, so the rays solve arg(c) + m*theta = phi
  // (phi = 0 approaching the target value from above, pi from below).  The
  // traced sample only selects the nearest ray.
  RealPolynomial g2d = w.g2.derivative();
  RealPolynomial g3d = w.g3.derivative();
  RealPolynomial discd = disc.derivative();
  RealPolynomial discdd = discd.derivative();
  RealPolynomial Kd = K.derivative();
  auto terminal_rays = [&](int idx, double v_toward,
                           bool from_below) -> std::vector<double> {
    const TV& tv = vtab[idx];
    cplx z = tv.z;
    cplx c;
    int m;
    if (tv.color == VertexColor::Black) {
      cplx gp = g2d(z);
      c = -4.0 * gp * gp * gp / disc(z);
      m = 3;
    } else if (tv.color == VertexColor::White) {
      // white of index 2 (simple g3 root) or 4 (double root, kept merged)
      cplx g3p = g3d(z);
      if (std::abs(g3p) > 1e-5 * std::max(1.0, g3d.scale())) {
        c = 27.0 * g3p * g3p / disc(z);
        m = 2;
      } else {
        cplx g3pp = g3d.derivative()(z) / 2.0;
        c = 27.0 * g3pp * g3pp / disc(z);
        m = 4;
      }
    } else if (tv.color == VertexColor::Cross) {
      cplx g2c = w.g2(z);
      cplx denom = -4.0 * g2c * g2c * g2c;
      if (tv.is_node) {
        c = (discdd(z) / 2.0) / denom;
        m = 2;
      } else {
        c = discd(z) / denom;
        m = 1;
      }
    } else {
      // monochrome: j - v_c with j'' = -4 g2^2 K' / disc^2 at the critical pt
      cplx g2c = w.g2(z);
      c = -4.0 * g2c * g2c * Kd(z) / (disc(z) * disc(z)) / 2.0;
      m = 2;
    }
    (void)v_toward;
    double phi = from_below ? M_PI : 0.0;
    std::vector<double> rays;
    double base = (phi - std::arg(c)) / double(m);
    for (int k = 0; k < m; ++k)
      rays.push_back(base + 2.0 * M_PI * double(k) / double(m));
    return rays;
  };

  auto continue_to = [&](cplx z0, double v0, double v1, EdgeColor col,
                         bool* failed) -> ArcEnd {
    // follow j(z) = v from v0 to v1 (v1 may be 0, 1, a critical value, or
    // +-HUGE); Newton on f(z) = -4 g2^3 - v disc
    RealPolynomial g2cube = w.g2 * w.g2 * w.g2;
    RealPolynomial g2cube_d = g2cube.derivative();
    RealPolynomial disc_d = disc.derivative();
    cplx z = z0;
    double v = v0;
    int steps = 0;
    auto newton = [&](cplx zz, double vv) {
      for (int it = 0; it < 30; ++it) {
        cplx f = -4.0 * g2cube(zz) - vv * disc(zz);
        cplx df = -4.0 * g2cube_d(zz) - vv * disc_d(zz);
        if (std::abs(df) < 1e-280) break;
        cplx step = f / df;
        zz -= step;
        if (std::abs(step) < 1e-13 * (1.0 + std::abs(zz))) break;
      }
      return zz;
    };
    ArcEnd end;
    cplx prev = z0;
    std::vector<cplx> samples{z0};
    // geometric approach to the endpoint value: every step changes the
    // distance-to-endpoint by a fixed ratio, so the fiber points move by a
    // small fraction of their separation even at ramified ends
    double v_end = std::min(std::max(v1, -HUGE_V), HUGE_V);
    const bool pole_side = v1 <= -HUGE_V || v1 >= HUGE_V;
    const int N = 300;
    const double rho = 0.93;
    double gap = 1.0;
    for (int k = 1; k <= N; ++k) {
      gap *= rho;
      double vv;
      if (pole_side) {
        // geometric growth of |v| via the reciprocal coordinate
        double w = (1.0 / v0) * gap + (1.0 / v_end) * (1.0 - gap);
        vv = (k == N) ? v_end : 1.0 / w;
      } else {
        vv = (k == N) ? v_end : v_end + (v0 - v_end) * gap;
      }
      prev = z;
      z = newton(z, vv);
      ++steps;
      if (!(std::abs(z) < 1e6) || std::isnan(z.real()) || std::isnan(z.imag())) {
        *failed = true;
        return end;
      }
      v = vv;
      samples.push_back(z);
    }
    double dist;
    int idx = nearest_vertex(z, &dist);
    if (idx >= 0 && legal_end(idx, v1)) {
      // Direction sample: the latest walk sample still well separated from
      // the vertex (the walk follows its branch, so the sample sits on the
      // arc's terminal approach).
      double second = 1e18;
      for (int i = 0; i < int(vtab.size()); ++i)
        if (i != idx) second = std::min(second, std::abs(vtab[i].z - vtab[idx].z));
      cplx sample = samples.front();
      for (auto it = samples.rbegin(); it != samples.rend(); ++it) {
        double dd = std::abs(*it - vtab[idx].z);
        if (dd >= std::max(0.03 * second, 4.0 * dist)) {
          sample = *it;
          break;
        }
      }
      end.vertex = idx;
      end.stop = z;
      end.approach = sample;
      if (pole_side)
        end.from_below = (v_end < 0);  // sign of 1/j at the pole
      else
        end.from_below = (v0 < v_end);  // sign of j - v_end
      return end;
    }
    // pass-through end at a monochrome critical value
    bool at_crit = false;
    for (double mv : sp.mono_values)
      if (std::abs(v1 - mv) < 1e-9 * (1.0 + std::abs(mv))) at_crit = true;
    if (!at_crit) {
      *failed = true;
      return end;
    }
    end.vertex = -1;
    end.passthrough_value = v1;
    end.stop = z;
    end.approach = prev;
    return end;
  };

  bool failed = false;
  for (const auto& seg : segments) {
    double mid;
    if (seg.lo <= -HUGE_V)
      mid = std::min(-10.0 * box, 2.0 * seg.hi - 10.0);
    else if (seg.hi >= HUGE_V)
      mid = std::max(10.0 * box, 2.0 * seg.lo + 10.0);
    else
      mid = 0.5 * (seg.lo + seg.hi);
    for (cplx z0 : solve_fiber(mid)) {
      if (z0.imag() < 3 * rtol) continue;  // boundary and mirror arcs skipped
      Arc arc;
      arc.color = seg.color;
      arc.a = continue_to(z0, mid, seg.lo, seg.color, &failed);
      arc.b = continue_to(z0, mid, seg.hi, seg.color, &failed);
      if (failed)
        throw DomainError("TracingFailure",
                          "arc continuation could not certify its endpoint");
      arcs.push_back(arc);
    }
  }

  // fuse pass-through ends pairwise by position
  {
    struct Open {
      int arc;
      int side;  // 0 = a, 1 = b
    };
    std::vector<Open> open;
    for (int i = 0; i < int(arcs.size()); ++i) {
      if (arcs[i].a.vertex < 0) open.push_back({i, 0});
      if (arcs[i].b.vertex < 0) open.push_back({i, 1});
    }
    auto endref = [&](const Open& o) -> ArcEnd& {
      return o.side == 0 ? arcs[o.arc].a : arcs[o.arc].b;
    };
    std::vector<char> used(open.size(), 0);
    // union-find style chain fusion: repeatedly join two arcs at a matching
    // pass-through point
    bool progress = true;
    while (progress) {
      progress = false;
      for (size_t i = 0; i < open.size() && !progress; ++i) {
        if (used[i]) continue;
        for (size_t j = i + 1; j < open.size() && !progress; ++j) {
          if (used[j]) continue;
          ArcEnd& ea = endref(open[i]);
          ArcEnd& eb = endref(open[j]);
          if (std::abs(ea.stop - eb.stop) > 0.05 * sep) continue;
          if (arcs[open[i].arc].color != arcs[open[j].arc].color) continue;
          // merge arc j into arc i across this point
          used[i] = used[j] = 1;
          Arc& A = arcs[open[i].arc];
          Arc& B = arcs[open[j].arc];
          ArcEnd keepB = (open[j].side == 0) ? B.b : B.a;
          if (open[i].side == 0)
            A.a = keepB;
          else
            A.b = keepB;
          // retarget any open reference to B's kept end
          for (size_t k = 0; k < open.size(); ++k) {
            if (used[k] || k == i || k == j) continue;
            if (open[k].arc == open[j].arc)
              open[k].arc = open[i].arc,
              open[k].side = open[i].side == 0 ? 0 : 1;
          }
          B.a.vertex = -2;  // tombstone
          progress = true;
        }
      }
    }
    for (size_t i = 0; i < open.size(); ++i)
      if (!used[i] && endref(open[i]).vertex == -1)
        throw DomainError("TracingFailure", "unmatched pass-through arc end");
    std::vector<Arc> fused;
    for (auto& a : arcs)
      if (a.a.vertex != -2) fused.push_back(a);
    arcs = std::move(fused);
  }

  // ---- assemble the combinatorial map
  Dessin d;
  d.surface = disk();
  d.verts.clear();
  d.darts.clear();

  // order real vertices along the axis; infinity is an ordinary point here
  std::vector<int> real_ix, inner_ix;
  for (int i = 0; i < int(vtab.size()); ++i)
    (vtab[i].real ? real_ix : inner_ix).push_back(i);
  std::sort(real_ix.begin(), real_ix.end(), [&](int a, int b) {
    return vtab[a].z.real() < vtab[b].z.real();
  });
  if (real_ix.empty())
    throw DomainError("NonGenericInput", "no real structure on the boundary");

  std::vector<int> vmap(vtab.size(), -1);
  for (int i : real_ix) vmap[i] = d.add_vertex(vtab[i].color, true);
  for (int i : inner_ix) vmap[i] = d.add_vertex(vtab[i].color, false);

  // boundary edge colors from the interval classification: dotted when
  // disc > 0, otherwise bold when g2 > 0, else solid
  auto real_color = [&](double x) {
    double dv = disc(x);
    if (dv > 0) return EdgeColor::Dotted;
    return w.g2(x) > 0 ? EdgeColor::Bold : EdgeColor::Solid;
  };
  int R = int(real_ix.size());
  struct DartSeed {
    int vtab_ix;
    double angle;
    int dart;
  };
  std::vector<std::vector<DartSeed>> inner_seeds(vtab.size());

  // real darts
  std::vector<int> succ_dart(R), prev_dart(R);
  for (int i = 0; i < R; ++i) {
    int a = real_ix[i], b = real_ix[(i + 1) % R];
    double xm;
    if (i + 1 < R)
      xm = 0.5 * (vtab[a].z.real() + vtab[b].z.real());
    else
      xm = vtab[real_ix[R - 1]].z.real() + 10.0 * box;  // wrap through infinity
    EdgeColor col = real_color(xm);
    int da = d.add_dart(vmap[a], col, true);
    int db = d.add_dart(vmap[b], col, true);
    d.pair_darts(da, db);
    succ_dart[i] = da;
    prev_dart[(i + 1) % R] = db;
  }

  // inner darts from arcs; angles snapped to the exact terminal rays
  auto snapped_angle = [&](const ArcEnd& e) {
    auto rays = terminal_rays(e.vertex, 0.0, e.from_below);
    double raw = std::arg(e.approach - vtab[e.vertex].z);
    double best = rays.front();
    double bd = 10.0;
    for (double r : rays) {
      if (vtab[e.vertex].real) {
        double s = std::sin(r);
        if (s < 1e-9) continue;  // inner rays only at a real vertex
      }
      double diff = std::remainder(raw - r, 2.0 * M_PI);
      if (std::abs(diff) < bd) {
        bd = std::abs(diff);
        best = r;
      }
    }
    return std::remainder(best, 2.0 * M_PI);
  };
  for (auto& arc : arcs) {
    if (arc.a.vertex < 0 || arc.b.vertex < 0)
      throw DomainError("TracingFailure", "arc with unresolved end");
    int va = arc.a.vertex, vb = arc.b.vertex;
    int da = d.add_dart(vmap[va], arc.color, false);
    int db = d.add_dart(vmap[vb], arc.color, false);
    d.pair_darts(da, db);
    inner_seeds[va].push_back(DartSeed{va, snapped_angle(arc.a), da});
    inner_seeds[vb].push_back(DartSeed{vb, snapped_angle(arc.b), db});
  }
  // two arcs on one terminal ray cannot be ordered
  for (int vt = 0; vt < int(vtab.size()); ++vt) {
    auto& seeds = inner_seeds[vt];
    for (size_t i = 0; i + 1 < seeds.size(); ++i)
      for (size_t j = i + 1; j < seeds.size(); ++j)
        if (std::abs(std::remainder(seeds[i].angle - seeds[j].angle,
                                    2.0 * M_PI)) < 1e-7) {
          std::ostringstream os;
          os << "two arcs share a terminal ray at vertex " << vt << " ("
             << to_string(vtab[vt].color) << " at " << vtab[vt].z.real()
             << "," << vtab[vt].z.imag() << " ray " << seeds[i].angle << ")";
          throw DomainError("TracingFailure", os.str());
        }
  }

  // rotations
  for (int i = 0; i < R; ++i) {
    int vt = real_ix[i];
    auto& seeds = inner_seeds[vt];
    std::sort(seeds.begin(), seeds.end(),
              [](const DartSeed& a, const DartSeed& b) { return a.angle > b.angle; });
    auto& rot = d.verts[vmap[vt]].rot;
    rot.push_back(prev_dart[i]);
    for (auto& s : seeds) rot.push_back(s.dart);
    rot.push_back(succ_dart[i]);
  }
  for (int vt : inner_ix) {
    auto& seeds = inner_seeds[vt];
    std::sort(seeds.begin(), seeds.end(),
              [](const DartSeed& a, const DartSeed& b) { return a.angle > b.angle; });
    auto& rot = d.verts[vmap[vt]].rot;
    for (auto& s : seeds) rot.push_back(s.dart);
  }

  if (log) {
    for (int i = 0; i < int(vtab.size()); ++i) {
      std::ostringstream os;
      os << "vertex " << i << " " << to_string(vtab[i].color) << " at ("
         << vtab[i].z.real() << "," << vtab[i].z.imag() << ")"
         << (vtab[i].real ? " real" : " inner");
      log->add(os.str());
    }
    for (auto& arc : arcs) {
      std::ostringstream os;
      os << "arc " << to_string(arc.color) << " v" << arc.a.vertex << " (ang "
         << std::arg(arc.a.approach - vtab[arc.a.vertex].z) << ") -- v"
         << arc.b.vertex << " (ang "
         << std::arg(arc.b.approach - vtab[arc.b.vertex].z) << ")";
      log->add(os.str());
    }
  }
  try {
    d.finalize();
  } catch (const DomainError& e) {
    throw DomainError("TracingFailure",
                      std::string("assembled map is inconsistent: ") + e.what());
  }
  // reduction: split real whites of index 4 (double g3 roots on the wall)
  // into two index-2 whites flanking a monochrome vertex
  for (int v = 0; v < int(d.verts.size()); ++v) {
    if (!d.verts[v].alive || !d.verts[v].real ||
        d.verts[v].color != VertexColor::White || d.verts[v].rot.size() != 5)
      continue;
    auto rot = d.verts[v].rot;
    EdgeColor c = d.darts[rot[0]].color;
    int p_prev = d.pair_of(rot[0]), i1 = d.pair_of(rot[1]),
        i2 = d.pair_of(rot[2]), i3 = d.pair_of(rot[3]),
        p_succ = d.pair_of(rot[4]);
    EdgeColor c1 = d.darts[rot[1]].color, c2 = d.darts[rot[2]].color,
              c3 = d.darts[rot[3]].color;
    int w1 = d.add_vertex(VertexColor::White, true);
    int u = d.add_vertex(VertexColor::Mono, true);
    int w2 = d.add_vertex(VertexColor::White, true);
    int w1a = d.add_dart(w1, c, true), w1b = d.add_dart(w1, c1, false),
        w1c = d.add_dart(w1, c, true);
    int ua = d.add_dart(u, c, true), ub = d.add_dart(u, c2, false),
        uc = d.add_dart(u, c, true);
    int w2a = d.add_dart(w2, c, true), w2b = d.add_dart(w2, c3, false),
        w2c = d.add_dart(w2, c, true);
    d.verts[w1].rot = {w1a, w1b, w1c};
    d.verts[u].rot = {ua, ub, uc};
    d.verts[w2].rot = {w2a, w2b, w2c};
    for (int dd : rot) d.darts[dd].alive = false;
    d.verts[v].alive = false;
    d.pair_darts(w1a, p_prev);
    d.pair_darts(w1b, i1);
    d.pair_darts(w1c, ua);
    d.pair_darts(ub, i2);
    d.pair_darts(uc, w2a);
    d.pair_darts(w2b, i3);
    d.pair_darts(w2c, p_succ);
  }
  d.compact();
  auto rep = validate(d);
  if (!rep.ok())
    throw DomainError("TracingFailure",
                      "traced dessin fails validation: " + rep.violations.front());
  if (degree(d) != 3 * n)
    throw DomainError("TracingFailure", "traced dessin has the wrong degree");
  if (log) {
    log->add("vertices: " + std::to_string(d.live_vertex_count()));
    log->add("arcs: " + std::to_string(arcs.size()));
    log->add("degree: " + std::to_string(3 * n));
  }
  return d;
}

}  // namespace dessin
