#include "weylcheck/twistor.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "weylcheck/connection.hpp"
#include "weylcheck/curvature.hpp"
#include "weylcheck/expr.hpp"
#include "weylcheck/geometry.hpp"
#include "weylcheck/hermitian.hpp"
#include "weylcheck/morphism.hpp"

using namespace weyl;

namespace {

Chart make_chart(int dim, double lo, double hi, const std::string& prefix = "x") {
  Chart c;
  c.dim = dim;
  for (int i = 0; i < dim; ++i) {
    c.coords.push_back(prefix + std::to_string(i + 1));
    c.box[static_cast<size_t>(i)] = {lo, hi};
  }
  return c;
}

WeylStructure euclidean(int dim, double lo, double hi, const std::string& prefix = "x") {
  WeylStructure w;
  w.chart = make_chart(dim, lo, hi, prefix);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) w.metric.push_back(e_num(i == j ? 1.0 : 0.0));
  return w;
}

WeylStructure gibbons_hawking() {
  WeylStructure w;
  w.chart = make_chart(4, 0.5, 1.5);
  for (const char* s : {"1+x1", "0", "0", "0", "1+x1", "0", "0",
                        "1+x1+x2^2/(1+x1)", "x2/(1+x1)", "1/(1+x1)"})
    w.metric.push_back(parse_expr(s, w.chart.coords));
  return w;
}

std::vector<Expr> parse_map(const std::vector<std::string>& comps, const Chart& dom) {
  std::vector<Expr> out;
  for (const auto& s : comps) out.push_back(parse_expr(s, dom.coords));
  return out;
}

struct PointCtx {
  MetricJets mj;
  MapJets mp;
  MetricJets nj;
  ConnCoeffs dm, dn;
  PointFrame f;
  D1 l2;
};

PointCtx ctx(const WeylStructure& M, const WeylStructure& N, const std::vector<Expr>& phi,
             const Vec& x) {
  PointCtx c;
  c.mj = metric_at(M, x);
  c.mp = map_jets(phi, x, M.chart.dim);
  c.nj = metric_at(N, c.mp.phi);
  c.dm = weyl_connection(c.mj, false);
  c.dn = weyl_connection(c.nj, false);
  auto ker = map_kernel_d1(c.mp, M.eps);
  c.f = orthonormal_frame(c.mj, ker, M.chart.orientation, M.eps);
  c.l2 = dilation_d1(c.mj, c.mp, c.nj);
  return c;
}

WeylStructure killing_domain() { return euclidean(4, 0.3, 1.2); }

WeylStructure killing_codomain() {
  WeylStructure N = euclidean(3, 0.05, 99.0, "y");
  N.lee.push_back(parse_expr("1/y1", N.chart.coords));
  N.lee.push_back(e_num(0.0));
  N.lee.push_back(e_num(0.0));
  return N;
}

std::vector<Expr> killing_map(const Chart& dom) {
  return parse_map({"sqrt(x1^2+x2^2)", "x3", "x4"}, dom);
}

}  // namespace

TEST_CASE("geodesic fibres and harmonicity agree on three-dim fibrations") {
  WeylStructure cod = euclidean(2, -9.0, 9.0, "y");
  const Chart dom3 = make_chart(3, -1.0, 1.0);
  const auto phi = parse_map({"x1", "x2"}, dom3);

  WeylStructure prod = euclidean(3, -1.0, 1.0);
  WeylStructure stretched = euclidean(3, -1.0, 1.0);
  stretched.metric[5] = parse_expr("1+0.5*x1", stretched.chart.coords);

  for (const Vec& x : sample_points(dom3, 8, 0)) {
    const PointCtx cp = ctx(prod, cod, phi, x);
    const GeodesicResidual gp = vertical_geodesic(cp.mj, cp.dm, cp.f);
    const Vec taup = tension(cp.mj, cp.mp, cp.dm, cp.dn);
    CHECK(gp.residual < 1e-12);
    CHECK(std::fabs(taup[0]) + std::fabs(taup[1]) < 1e-12);

    const PointCtx cs = ctx(stretched, cod, phi, x);
    const GeodesicResidual gs = vertical_geodesic(cs.mj, cs.dm, cs.f);
    const Vec taus = tension(cs.mj, cs.mp, cs.dm, cs.dn);
    CHECK(gs.residual > 1e-3);
    CHECK(std::fabs(taus[0]) + std::fabs(taus[1]) > 1e-3);
  }

  // Rank check: a two-dim vertical is rejected.
  WeylStructure flat4 = euclidean(4, -1.0, 1.0);
  const auto proj = parse_map({"x1", "x2"}, flat4.chart);
  const PointCtx c4 = ctx(flat4, cod, proj, Vec{0.1, 0.2, 0.3, 0.4});
  CHECK_THROWS_AS(vertical_geodesic(c4.mj, c4.dm, c4.f), GeometryError);
}

TEST_CASE("plus and minus connections on the monopole fibration") {
  WeylStructure gh = gibbons_hawking();
  WeylStructure cod = euclidean(3, -9.0, 9.0, "y");
  const auto phi = parse_map({"x1", "x2", "x3"}, gh.chart);

  for (const Vec& x : sample_points(gh.chart, 8, 0)) {
    const PointCtx c = ctx(gh, cod, phi, x);
    const DPlusMinus d = dpm_forms(c.mj, c.f);
    const double h = 1.0 + x[0];
    CHECK(d.star[0] == doctest::Approx(-std::pow(h, -1.5)).epsilon(1e-9));
    CHECK(std::fabs(d.star[1]) < 1e-12);
    CHECK(std::fabs(d.star[2]) < 1e-12);
    CHECK(d.hd[0] == doctest::Approx(0.5 * std::pow(h, -1.5)).epsilon(1e-9));
    for (int b = 0; b < 3; ++b) {
      CHECK(d.dplus[b] - d.dminus[b] == doctest::Approx(2.0 * d.star[b]).epsilon(1e-14));
      CHECK(d.dplus[b] + d.dminus[b] == doctest::Approx(2.0 * d.hd[b]).epsilon(1e-14));
    }
  }

  // Integrable horizontal spaces collapse the pair onto the minimal form.
  WeylStructure prod = euclidean(4, -1.0, 1.0);
  const auto proj = parse_map({"x1", "x2", "x3"}, prod.chart);
  for (int ori : {1, -1}) {
    WeylStructure p = prod;
    p.chart.orientation = ori;
    const PointCtx c = ctx(p, cod, proj, Vec{0.2, -0.4, 0.6, 0.1});
    const DPlusMinus d = dpm_forms(c.mj, c.f);
    for (int b = 0; b < 3; ++b) {
      CHECK(std::fabs(d.star[b]) < 1e-13);
      CHECK(std::fabs(d.dplus[b] - d.dminus[b]) < 1e-13);
    }
  }

  // Orientation reversal negates the dual form and swaps the pair.
  WeylStructure ghr = gibbons_hawking();
  ghr.chart.orientation = -1;
  const Vec x{0.9, 1.2, 0.7, 1.1};
  const PointCtx c = ctx(gh, cod, phi, x);
  const PointCtx cr = ctx(ghr, cod, phi, x);
  const DPlusMinus d = dpm_forms(c.mj, c.f);
  const DPlusMinus dr = dpm_forms(cr.mj, cr.f);
  CHECK(dr.star[0] == doctest::Approx(-d.star[0]).epsilon(1e-12));
  CHECK(dr.dplus[0] == doctest::Approx(d.dminus[0]).epsilon(1e-12));
  CHECK(dr.dminus[0] == doctest::Approx(d.dplus[0]).epsilon(1e-12));
}

TEST_CASE("pullback of the codomain connection matches the plus connection") {
  WeylStructure gh = gibbons_hawking();
  WeylStructure cod = euclidean(3, -9.0, 9.0, "y");
  const auto phi = parse_map({"x1", "x2", "x3"}, gh.chart);

  for (const Vec& x : sample_points(gh.chart, 8, 1)) {
    const PointCtx c = ctx(gh, cod, phi, x);
    const PartialLeeGap gap = twistorial_4to3(c.mj, c.mp, c.nj, c.dn, c.f, c.l2);
    CHECK(gap.residual < 1e-12);
  }

  // The reversed orientation compares against the minus connection instead.
  WeylStructure ghr = gibbons_hawking();
  ghr.chart.orientation = -1;
  const Vec x{0.9, 1.2, 0.7, 1.1};
  const PointCtx c = ctx(gh, cod, phi, x);
  const PointCtx cr = ctx(ghr, cod, phi, x);
  const PartialLeeGap gapr = twistorial_4to3(cr.mj, cr.mp, cr.nj, cr.dn, cr.f, cr.l2);
  CHECK(gapr.residual > 0.1);
  const DPlusMinus d = dpm_forms(c.mj, c.f);
  const HLeeValues pb = lee_values_pullback(c.mj, c.mp, c.nj, c.dn, c.f, c.l2);
  double against_minus = 0;
  for (int b = 0; b < 3; ++b)
    against_minus = std::max(against_minus, std::fabs(pb.val[b] - d.dminus[b]));
  CHECK(gapr.residual == doctest::Approx(against_minus).epsilon(1e-10));

  // Flat product: both orientations agree with the plus connection.
  WeylStructure prod = euclidean(4, -1.0, 1.0);
  const auto proj = parse_map({"x1", "x2", "x3"}, prod.chart);
  for (int ori : {1, -1}) {
    WeylStructure p = prod;
    p.chart.orientation = ori;
    const PointCtx cp = ctx(p, cod, proj, Vec{0.2, -0.4, 0.6, 0.1});
    CHECK(twistorial_4to3(cp.mj, cp.mp, cp.nj, cp.dn, cp.f, cp.l2).residual < 1e-12);
  }
}

TEST_CASE("any two of the three fibration identities imply the third") {
  WeylStructure gh = gibbons_hawking();
  WeylStructure cod = euclidean(3, -9.0, 9.0, "y");
  const auto phi = parse_map({"x1", "x2", "x3"}, gh.chart);
  const double tol = 1e-7;

  auto flags = [&](const LeeSplitParts& t) {
    const bool morph = t.tension < tol * (1.0 + t.lambda2) && t.hwc < tol * (1.0 + t.lambda2);
    const bool pullback = t.pullback_gap < tol * (1.0 + t.scale);
    const bool lee = t.lee_gap < tol * (1.0 + t.scale);
    return std::array<bool, 3>{morph, pullback, lee};
  };
  auto two_of_three = [](const std::array<bool, 3>& v) {
    int fails = 0;
    for (bool b : v) fails += b ? 0 : 1;
    return fails != 1;
  };

  for (const Vec& x : sample_points(gh.chart, 6, 2)) {
    const PointCtx c = ctx(gh, cod, phi, x);
    const LeeSplitParts t = leesplit_point(c.mj, c.mp, c.dm, c.nj, c.dn, c.f, c.l2);
    const auto fl = flags(t);
    CHECK(fl[0]);
    CHECK(fl[1]);
    CHECK(fl[2]);

    // Moving the star coefficient off its value breaks the identity.
    const LeeSplitParts tc = leesplit_point(c.mj, c.mp, c.dm, c.nj, c.dn, c.f, c.l2, 1.0);
    CHECK(tc.lee_gap > 1e-3);
  }

  // A horizontal lee perturbation breaks the lee identity and exactly one
  // of the other two parts.
  WeylStructure ghp = gibbons_hawking();
  ghp.lee.push_back(e_num(0.0));
  ghp.lee.push_back(e_num(0.2));
  ghp.lee.push_back(e_num(0.0));
  ghp.lee.push_back(e_num(0.0));
  for (const Vec& x : sample_points(gh.chart, 6, 3)) {
    const PointCtx c = ctx(ghp, cod, phi, x);
    const LeeSplitParts t = leesplit_point(c.mj, c.mp, c.dm, c.nj, c.dn, c.f, c.l2);
    const auto fl = flags(t);
    CHECK_FALSE(fl[0]);
    CHECK(fl[1]);
    CHECK_FALSE(fl[2]);
    CHECK(two_of_three(fl));
  }

  // Harmonic morphism onto a curved-connection codomain: the morphism part
  // holds while the twistoriality pair fails jointly.
  WeylStructure km = killing_domain();
  WeylStructure kn = killing_codomain();
  const auto kphi = killing_map(km.chart);
  for (const Vec& x : sample_points(km.chart, 6, 4)) {
    const PointCtx c = ctx(km, kn, kphi, x);
    const LeeSplitParts t = leesplit_point(c.mj, c.mp, c.dm, c.nj, c.dn, c.f, c.l2);
    const auto fl = flags(t);
    CHECK(fl[0]);
    CHECK_FALSE(fl[1]);
    CHECK_FALSE(fl[2]);
    CHECK(two_of_three(fl));
    CHECK(t.pullback_gap > 0.5);
  }
}

TEST_CASE("vertical gauge function extraction") {
  WeylStructure gh = gibbons_hawking();
  const auto phi = parse_map({"x1", "x2", "x3"}, gh.chart);
  const Vec x{0.9, 1.2, 0.7, 1.1};

  const KSection k0 = extract_k(gh, phi, x);
  CHECK(std::fabs(k0.k) < 1e-12);
  CHECK(k0.horiz_res < 1e-12);
  CHECK(k0.basic_res < 1e-7);

  // A vertical lee form of strength 0.3 against the unit vertical covector
  // doubles into k = 0.6 and leaves the horizontal identity intact.
  WeylStructure ghv = gibbons_hawking();
  for (const char* s : {"0", "0", "0.3*x2/sqrt(1+x1)", "0.3/sqrt(1+x1)"})
    ghv.lee.push_back(parse_expr(s, ghv.chart.coords));
  const KSection k1 = extract_k(ghv, phi, x);
  CHECK(k1.k == doctest::Approx(0.6).epsilon(1e-10));
  CHECK(k1.horiz_res < 1e-12);
  CHECK(k1.basic_res < 1e-6);

  // Fibre-dependent strength is flagged by the vertical derivative.
  WeylStructure ghn = gibbons_hawking();
  for (const char* s : {"0", "0", "0.3*x4*x2/sqrt(1+x1)", "0.3*x4/sqrt(1+x1)"})
    ghn.lee.push_back(parse_expr(s, ghn.chart.coords));
  const KSection kn = extract_k(ghn, phi, x);
  CHECK(kn.basic_res > 0.1);

  // Gauge weight: rescaling the metric by 1/lambda^2 rescales k by lambda.
  const Expr lam = parse_expr("1+0.3*x1", ghv.chart.coords);
  std::vector<Expr> dlam = {e_num(0.3), e_num(0.0), e_num(0.0), e_num(0.0)};
  const WeylStructure gauged = gauge_transform(ghv, lam, dlam);
  const KSection kg = extract_k(gauged, phi, x);
  CHECK(kg.k == doctest::Approx((1.0 + 0.3 * x[0]) * k1.k).epsilon(1e-9));
  CHECK(kg.horiz_res < 1e-10);
}

TEST_CASE("horizontal ricci trace-free residuals") {
  WeylStructure cod2 = euclidean(2, -9.0, 9.0, "y");

  // Einstein-Weyl domain: any split passes.
  WeylStructure cc3;
  cc3.chart = make_chart(3, -0.9, 0.9);
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j)
      cc3.metric.push_back(i == j ? parse_expr("4/(1+x1^2+x2^2+x3^2)^2", cc3.chart.coords)
                                  : e_num(0.0));
  const auto proj3 = parse_map({"x1", "x2"}, cc3.chart);
  for (const Vec& x : sample_points(cc3.chart, 6, 5)) {
    const PointCtx c = ctx(cc3, cod2, proj3, x);
    const CurvatureAtPoint cv = curvature_at(weyl_connection(c.mj, true), c.mj);
    CHECK(ricci_horizontal_tracefree(cv, c.f).residual < 1e-9);
  }

  // Product of a round factor and a flat factor, vertical along the flat
  // block: the horizontal trace recovers the factor curvature.
  WeylStructure s2r2;
  s2r2.chart = make_chart(4, -0.9, 0.9);
  const Expr round = parse_expr("4/(1+x1^2+x2^2)^2", s2r2.chart.coords);
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j)
      s2r2.metric.push_back(i == j ? (i < 2 ? round : e_num(1.0)) : e_num(0.0));
  WeylStructure sphere2;
  sphere2.chart = make_chart(2, -0.9, 0.9, "y");
  const Expr roundy = parse_expr("4/(1+y1^2+y2^2)^2", sphere2.chart.coords);
  for (int i = 0; i < 2; ++i)
    for (int j = i; j < 2; ++j) sphere2.metric.push_back(i == j ? roundy : e_num(0.0));
  const auto proj42 = parse_map({"x1", "x2"}, s2r2.chart);
  for (const Vec& x : sample_points(s2r2.chart, 6, 6)) {
    const PointCtx c = ctx(s2r2, sphere2, proj42, x);
    const CurvatureAtPoint cv = curvature_at(weyl_connection(c.mj, true), c.mj);
    const HorizRicci hr = ricci_horizontal_tracefree(cv, c.f);
    CHECK(hr.residual < 1e-9);
    CHECK(hr.trace == doctest::Approx(1.0).epsilon(1e-8));
  }

  // Dimension three: the residual agrees with the geodesic-fibre and
  // harmonicity verdicts on both catalog patterns.
  WeylStructure stretched = euclidean(3, -1.0, 1.0);
  stretched.metric[5] = parse_expr("1+0.5*x1", stretched.chart.coords);
  const auto proj = parse_map({"x1", "x2"}, stretched.chart);
  for (const Vec& x : sample_points(stretched.chart, 6, 7)) {
    const PointCtx c = ctx(stretched, cod2, proj, x);
    const CurvatureAtPoint cv = curvature_at(weyl_connection(c.mj, true), c.mj);
    CHECK(ricci_horizontal_tracefree(cv, c.f).residual > 1e-3);
    CHECK(vertical_geodesic(c.mj, c.dm, c.f).residual > 1e-3);
  }
  WeylStructure prod3 = euclidean(3, -1.0, 1.0);
  for (const Vec& x : sample_points(prod3.chart, 6, 8)) {
    const PointCtx c = ctx(prod3, cod2, proj, x);
    const CurvatureAtPoint cv = curvature_at(weyl_connection(c.mj, true), c.mj);
    CHECK(ricci_horizontal_tracefree(cv, c.f).residual < 1e-12);
    CHECK(vertical_geodesic(c.mj, c.dm, c.f).residual < 1e-12);
  }
}

TEST_CASE("ricci difference and twistoriality fail or pass together") {
  WeylStructure cod3 = euclidean(3, -9.0, 9.0, "y");
  const double tol = 1e-7;

  // Monopole fibration: harmonic morphism, twistorial, difference vanishes.
  WeylStructure gh = gibbons_hawking();
  const auto phi = parse_map({"x1", "x2", "x3"}, gh.chart);
  for (const Vec& x : sample_points(gh.chart, 6, 9)) {
    const PointCtx c = ctx(gh, cod3, phi, x);
    const Vec tau = tension(c.mj, c.mp, c.dm, c.dn);
    CHECK(std::fabs(tau[0]) + std::fabs(tau[1]) + std::fabs(tau[2]) < 1e-9);
    const CurvatureAtPoint cM = curvature_at(weyl_connection(c.mj, true), c.mj);
    const CurvatureAtPoint cN = curvature_at(weyl_connection(c.nj, true), c.nj);
    const HorizRicci hr = ricci_difference_tracefree(cM, c.mp, cN, c.f);
    const PartialLeeGap gap = twistorial_4to3(c.mj, c.mp, c.nj, c.dn, c.f, c.l2);
    CHECK(hr.residual < tol * (1.0 + hr.scale));
    CHECK(gap.residual < tol * (1.0 + gap.scale));
  }

  // Rotation-invariant morphism: harmonic, but neither twistorial nor
  // Ricci-compatible; the two verdicts fail together.
  WeylStructure km = killing_domain();
  WeylStructure kn = killing_codomain();
  const auto kphi = killing_map(km.chart);
  for (const Vec& x : sample_points(km.chart, 6, 10)) {
    const PointCtx c = ctx(km, kn, kphi, x);
    const Vec tau = tension(c.mj, c.mp, c.dm, c.dn);
    CHECK(std::fabs(tau[0]) + std::fabs(tau[1]) + std::fabs(tau[2]) < 1e-9);
    const CurvatureAtPoint cM = curvature_at(weyl_connection(c.mj, true), c.mj);
    const CurvatureAtPoint cN = curvature_at(weyl_connection(c.nj, true), c.nj);
    const HorizRicci hr = ricci_difference_tracefree(cM, c.mp, cN, c.f);
    const PartialLeeGap gap = twistorial_4to3(c.mj, c.mp, c.nj, c.dn, c.f, c.l2);
    CHECK(hr.residual > 1e-3);
    CHECK(gap.residual > 1e-3);
  }

  // Flat product: both pass.
  WeylStructure prod = euclidean(4, -1.0, 1.0);
  const auto proj = parse_map({"x1", "x2", "x3"}, prod.chart);
  const PointCtx c = ctx(prod, cod3, proj, Vec{0.2, -0.4, 0.6, 0.1});
  const CurvatureAtPoint cM = curvature_at(weyl_connection(c.mj, true), c.mj);
  const CurvatureAtPoint cN = curvature_at(weyl_connection(c.nj, true), c.nj);
  CHECK(ricci_difference_tracefree(cM, c.mp, cN, c.f).residual < 1e-12);
  CHECK(twistorial_4to3(c.mj, c.mp, c.nj, c.dn, c.f, c.l2).residual < 1e-12);
}

TEST_CASE("null-direction ricci identity") {
  WeylStructure cod3 = euclidean(3, -9.0, 9.0, "y");

  // Monopole fibration: all terms vanish individually.
  WeylStructure gh = gibbons_hawking();
  const auto phi = parse_map({"x1", "x2", "x3"}, gh.chart);
  for (const Vec& x : sample_points(gh.chart, 4, 11)) {
    const PointCtx c = ctx(gh, cod3, phi, x);
    const CurvatureAtPoint cM = curvature_at(weyl_connection(c.mj, true), c.mj);
    const CurvatureAtPoint cN = curvature_at(weyl_connection(c.nj, true), c.nj);
    for (int hi = 0; hi < 3; ++hi)
      for (int hj = hi + 1; hj < 3; ++hj) {
        const Lemma55 l =
            lemma55_point(c.mj, c.mp, cM, c.nj, c.dn, cN, c.f, c.l2, hi, hj);
        CHECK(l.residual < 1e-7 * (1.0 + l.scale));
      }
  }

  // Rotation-invariant morphism: every term is nonzero and the three-term
  // combination still cancels.
  WeylStructure km = killing_domain();
  WeylStructure kn = killing_codomain();
  const auto kphi = killing_map(km.chart);
  double peak_scale = 0;
  for (const Vec& x : sample_points(km.chart, 8, 12)) {
    const PointCtx c = ctx(km, kn, kphi, x);
    const CurvatureAtPoint cM = curvature_at(weyl_connection(c.mj, true), c.mj);
    const CurvatureAtPoint cN = curvature_at(weyl_connection(c.nj, true), c.nj);
    for (int hi = 0; hi < 3; ++hi)
      for (int hj = hi + 1; hj < 3; ++hj) {
        const Lemma55 l =
            lemma55_point(c.mj, c.mp, cM, c.nj, c.dn, cN, c.f, c.l2, hi, hj);
        CHECK(l.residual < 1e-7 * (1.0 + l.scale));
        peak_scale = std::max(peak_scale, l.scale);
      }
  }
  CHECK(peak_scale > 1.0);
}

TEST_CASE("surface-valued twistoriality picks an orientation on flat domains") {
  WeylStructure flat = euclidean(4, 0.2, 1.0);
  WeylStructure cod2 = euclidean(2, -9.0, 9.0, "y");
  const auto holo = parse_map({"x1*x3-x2*x4", "x1*x4+x2*x3"}, flat.chart);
  const auto anti = parse_map({"x1*x3+x2*x4", "x1*x4-x2*x3"}, flat.chart);

  auto nmax = [&](const std::vector<Expr>& phi, int ori) {
    WeylStructure M = flat;
    M.chart.orientation = ori;
    double peak = 0;
    for (const Vec& x : sample_points(M.chart, 6, 13)) {
      const PointCtx c = ctx(M, cod2, phi, x);
      peak = std::max(peak, nijenhuis_max(induced_positive_j(c.mj, c.f)));
    }
    return peak;
  };

  CHECK(nmax(holo, 1) < 1e-10);
  CHECK(nmax(holo, -1) > 0.01);
  CHECK(nmax(anti, 1) > 0.01);
  CHECK(nmax(anti, -1) < 1e-10);
}

TEST_CASE("codomain einstein property tracks twistoriality on instances") {
  WeylStructure cod3 = euclidean(3, -9.0, 9.0, "y");
  const double tol = 1e-7;

  auto instance = [&](const WeylStructure& M, const WeylStructure& N,
                      const std::vector<Expr>& phi, const Vec& x) {
    const PointCtx c = ctx(M, N, phi, x);
    const CurvatureAtPoint cN = curvature_at(weyl_connection(c.nj, true), c.nj);
    const bool ew = einstein_residual(cN) < tol;
    const PartialLeeGap gap = twistorial_4to3(c.mj, c.mp, c.nj, c.dn, c.f, c.l2);
    const bool tw = gap.residual < tol * (1.0 + gap.scale);
    return std::pair<bool, bool>(ew, tw);
  };

  WeylStructure gh = gibbons_hawking();
  const auto ghphi = parse_map({"x1", "x2", "x3"}, gh.chart);
  const auto r1 = instance(gh, cod3, ghphi, Vec{0.9, 1.2, 0.7, 1.1});
  CHECK(r1.first);
  CHECK(r1.second);

  WeylStructure prod = euclidean(4, -1.0, 1.0);
  const auto projphi = parse_map({"x1", "x2", "x3"}, prod.chart);
  const auto r2 = instance(prod, cod3, projphi, Vec{0.2, -0.4, 0.6, 0.1});
  CHECK(r2.first);
  CHECK(r2.second);

  const auto r3 = instance(killing_domain(), killing_codomain(),
                           killing_map(make_chart(4, 0.3, 1.2)), Vec{0.8, 0.5, 0.4, 0.9});
  CHECK_FALSE(r3.first);
  CHECK_FALSE(r3.second);
}
