#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "weylcheck/connection.hpp"
#include "weylcheck/geometry.hpp"

using namespace weyl;

namespace {

Chart make_chart(int dim, double lo = -1.0, double hi = 1.0) {
  Chart c;
  c.dim = dim;
  for (int i = 0; i < dim; ++i) {
    c.coords.push_back("x" + std::to_string(i + 1));
    c.box[i] = {lo, hi};
  }
  return c;
}

WeylStructure euclidean(int dim) {
  WeylStructure w;
  w.chart = make_chart(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) w.metric.push_back(e_num(i == j ? 1.0 : 0.0));
  return w;
}

WeylStructure gibbons_hawking(bool with_lee = false) {
  WeylStructure w;
  w.chart = make_chart(4, 0.5, 1.5);
  const char* entries[10] = {"1+x1", "0", "0", "0",
                             "1+x1", "0", "0",
                             "1+x1+x2^2/(1+x1)", "x2/(1+x1)",
                             "1/(1+x1)"};
  for (const char* s : entries) w.metric.push_back(parse_expr(s, w.chart.coords));
  if (with_lee) {
    w.lee = {parse_expr("0.2*x2", w.chart.coords), parse_expr("0.1", w.chart.coords),
             e_num(0.0), parse_expr("0.3*x1", w.chart.coords)};
  }
  return w;
}

Expr random_linear(Rng& rng, int dim) {
  Expr e = e_num(rng.uniform(-1, 1));
  for (int i = 0; i < dim; ++i)
    e = e_add(e, e_mul(e_num(rng.uniform(-1, 1)), e_var(i)));
  return e;
}

Expr random_cubic(Rng& rng, int dim) {
  Expr a = e_mul(e_mul(random_linear(rng, dim), random_linear(rng, dim)),
                 random_linear(rng, dim));
  Expr b = e_mul(random_linear(rng, dim), random_linear(rng, dim));
  return e_add(e_add(a, b), random_linear(rng, dim));
}

// nabla_i g_jk with the given coefficients; zero for metric connections.
double metric_compat_residual(const ConnCoeffs& c, const MetricJets& mj, const Vec& alpha) {
  double worst = 0;
  for (int i = 0; i < mj.m; ++i)
    for (int j = 0; j < mj.m; ++j)
      for (int k = 0; k < mj.m; ++k) {
        double s = mj.dg[i][j][k];
        for (int l = 0; l < mj.m; ++l)
          s -= c.G[l][i][j] * mj.g[l][k] + c.G[l][i][k] * mj.g[j][l];
        s += 2.0 * alpha[i] * mj.g[j][k];
        worst = std::max(worst, std::fabs(s));
      }
  return worst;
}

PointFrame killing_frame(const WeylStructure& w, const Vec& x, MetricJets& mj) {
  std::vector<Expr> comps = {parse_expr("sqrt(x1^2+x2^2)", w.chart.coords),
                             parse_expr("x3", w.chart.coords),
                             parse_expr("x4", w.chart.coords)};
  mj = metric_at(w, x);
  MapJets mp = map_jets(comps, x, 4);
  return orthonormal_frame(mj, map_kernel_d1(mp, w.eps), w.chart.orientation, w.eps);
}

}  // namespace

TEST_CASE("flat metric has vanishing coefficients") {
  WeylStructure w = euclidean(3);
  Vec x{};
  x[1] = 0.4;
  ConnCoeffs c = christoffel(metric_at(w, x), true);
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        CHECK(c.G[k][i][j] == 0.0);
        for (int l = 0; l < 3; ++l) CHECK(c.dG[l][k][i][j] == 0.0);
      }
}

TEST_CASE("conformally flat coefficients match the closed form") {
  WeylStructure w = euclidean(3);
  // g = e^{2f} delta with f = 0.2 x1 + 0.1 x2^2
  for (int i = 0; i < 3; ++i)
    w.metric[static_cast<size_t>(packed_index(i, i, 3))] =
        parse_expr("exp(2*(0.2*x1+0.1*x2^2))", w.chart.coords);
  Vec x{};
  x[0] = 0.3;
  x[1] = -0.5;
  x[2] = 0.7;
  MetricJets mj = metric_at(w, x);
  ConnCoeffs c = christoffel(mj, false);
  Vec df{};
  df[0] = 0.2;
  df[1] = 0.2 * x[1];
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double expect = (k == i ? df[j] : 0.0) + (k == j ? df[i] : 0.0) -
                        (i == j ? df[k] : 0.0);
        CHECK(std::fabs(c.G[k][i][j] - expect) < 1e-12);
      }
}

TEST_CASE("Levi-Civita is metric compatible on a curved chart") {
  WeylStructure w = gibbons_hawking();
  Vec x{};
  x[0] = 0.9;
  x[1] = 1.2;
  x[2] = 0.7;
  x[3] = 0.6;
  MetricJets mj = metric_at(w, x);
  ConnCoeffs c = christoffel(mj, false);
  Vec zero{};
  CHECK(metric_compat_residual(c, mj, zero) < 1e-9);
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) CHECK(c.G[k][i][j] == c.G[k][j][i]);
}

TEST_CASE("coefficient derivatives match nested finite differences") {
  WeylStructure w = gibbons_hawking(true);
  Vec x{};
  x[0] = 1.1;
  x[1] = 0.8;
  x[2] = 1.3;
  x[3] = 0.9;
  MetricJets mj = metric_at(w, x);
  ConnCoeffs c = weyl_connection(mj, true);
  for (int l = 0; l < 4; ++l) {
    auto gamma_at = [&](double h) {
      Vec xp = x, xm = x;
      xp[l] += h;
      xm[l] -= h;
      ConnCoeffs cp = weyl_connection(metric_at(w, xp), false);
      ConnCoeffs cm = weyl_connection(metric_at(w, xm), false);
      ConnCoeffs d;
      d.m = 4;
      for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) d.G[k][i][j] = (cp.G[k][i][j] - cm.G[k][i][j]) / (2 * h);
      return d;
    };
    ConnCoeffs c1 = gamma_at(1e-4);
    ConnCoeffs c2 = gamma_at(5e-5);
    for (int k = 0; k < 4; ++k)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          double fd = (4 * c2.G[k][i][j] - c1.G[k][i][j]) / 3;
          CHECK(std::fabs(c.dG[l][k][i][j] - fd) < 1e-6 * (1 + std::fabs(fd)));
        }
  }
}

TEST_CASE("zero lee form reduces the Weyl connection to Levi-Civita") {
  WeylStructure w = gibbons_hawking(false);
  Vec x{};
  x[0] = 1.0;
  x[1] = 1.0;
  x[2] = 1.0;
  x[3] = 1.0;
  MetricJets mj = metric_at(w, x);
  ConnCoeffs lc = christoffel(mj, false);
  ConnCoeffs d = weyl_connection(mj, false);
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) CHECK(d.G[k][i][j] == lc.G[k][i][j]);
}

TEST_CASE("flat chart with a constant lee form has the closed-form shift") {
  WeylStructure w = euclidean(3);
  w.lee = {e_num(1.0), e_num(0.0), e_num(0.0)};
  Vec x{};
  ConnCoeffs d = weyl_connection(metric_at(w, x), false);
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double expect = (i == 0 && k == j ? 1.0 : 0.0) + (j == 0 && k == i ? 1.0 : 0.0) -
                        (i == j && k == 0 ? 1.0 : 0.0);
        CHECK(d.G[k][i][j] == doctest::Approx(expect));
      }
}

TEST_CASE("Weyl connection satisfies its defining compatibility") {
  WeylStructure w = gibbons_hawking(true);
  Vec x{};
  x[0] = 0.7;
  x[1] = 1.4;
  x[2] = 0.8;
  x[3] = 1.1;
  MetricJets mj = metric_at(w, x);
  ConnCoeffs d = weyl_connection(mj, false);
  CHECK(metric_compat_residual(d, mj, mj.alpha) < 1e-9);
}

TEST_CASE("gauge change leaves the Weyl coefficients fixed") {
  WeylStructure w = gibbons_hawking(true);
  Expr lambda = parse_expr("1+0.3*x1", w.chart.coords);
  std::vector<Expr> dl = {e_num(0.3), e_num(0.0), e_num(0.0), e_num(0.0)};
  WeylStructure wg = gauge_transform(w, lambda, dl);
  Vec x{};
  x[0] = 1.2;
  x[1] = 0.6;
  x[2] = 1.0;
  x[3] = 0.8;
  ConnCoeffs a = weyl_connection(metric_at(w, x), true);
  ConnCoeffs b = weyl_connection(metric_at(wg, x), true);
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        CHECK(std::fabs(a.G[k][i][j] - b.G[k][i][j]) < 1e-12);
        for (int l = 0; l < 4; ++l)
          CHECK(std::fabs(a.dG[l][k][i][j] - b.dG[l][k][i][j]) < 1e-11);
      }
}

TEST_CASE("trace construction recovers the lee form of a Weyl connection") {
  WeylStructure w = gibbons_hawking(true);
  Vec x{};
  x[0] = 1.3;
  x[1] = 0.9;
  x[2] = 0.6;
  x[3] = 1.2;
  MetricJets mj = metric_at(w, x);
  Vec a = equal_trace_lee(weyl_connection(mj, false), mj);
  for (int i = 0; i < 4; ++i) CHECK(std::fabs(a[i] - mj.alpha[i]) < 1e-9);
  Vec zero = equal_trace_lee(christoffel(mj, false), mj);
  for (int i = 0; i < 4; ++i) CHECK(std::fabs(zero[i]) < 1e-12);
}

TEST_CASE("equal-trace property holds for arbitrary torsion-free connections") {
  WeylStructure w = gibbons_hawking(true);
  Rng rng(7);
  auto pts = sample_points(w.chart, 20, 0);
  for (int trial = 0; trial < 3; ++trial) {
    // random symmetric torsion-free perturbation, constant coefficients
    double t[4][4][4];
    for (int k = 0; k < 4; ++k)
      for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) t[k][i][j] = t[k][j][i] = rng.uniform(-0.5, 0.5);
    std::vector<Expr> fs;
    for (int q = 0; q < 10; ++q) fs.push_back(random_cubic(rng, 4));
    for (const Vec& x : pts) {
      MetricJets mj = metric_at(w, x);
      ConnCoeffs d = christoffel(mj, false);
      for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) d.G[k][i][j] += t[k][i][j];
      ConnCoeffs d1 = weyl_from_lee(mj, equal_trace_lee(d, mj));
      for (const Expr& f : fs) {
        Jet2 jf = eval_jet2(f, x, 4);
        double lhs = trace_dd(d, mj, jf);
        double rhs = trace_dd(d1, mj, jf);
        CHECK(std::fabs(lhs - rhs) < 1e-8 * (1 + std::fabs(lhs)));
      }
    }
  }
}

TEST_CASE("mean curvature of product fibres vanishes") {
  WeylStructure w = euclidean(4);
  std::vector<Expr> comps = {e_var(0), e_var(1), e_var(2)};
  Vec x{};
  x[0] = 0.4;
  x[3] = -0.7;
  MetricJets mj = metric_at(w, x);
  MapJets mp = map_jets(comps, x, 4);
  PointFrame f = orthonormal_frame(mj, map_kernel_d1(mp, w.eps), 1, w.eps);
  Vec tb = mean_curvature(christoffel(mj, false), mj, f, true);
  CHECK(max_abs(tb, 4) < 1e-12);
}

TEST_CASE("mean curvature of rotation orbits points inward with norm 1/r") {
  WeylStructure w = euclidean(4);
  Vec x{};
  x[0] = 1.0;
  x[1] = 0.0;
  x[2] = 0.4;
  x[3] = -0.2;
  MetricJets mj;
  PointFrame f = killing_frame(w, x, mj);
  REQUIRE(f.k == 1);
  Vec tb = mean_curvature(christoffel(mj, false), mj, f, true);
  CHECK(tb[0] == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(std::fabs(tb[1]) < 1e-10);
  CHECK(std::fabs(tb[2]) < 1e-10);
  CHECK(std::fabs(tb[3]) < 1e-10);

  Vec y{};
  y[0] = 1.2;
  y[1] = 0.5;
  y[2] = 0.1;
  y[3] = 0.3;
  PointFrame f2 = killing_frame(w, y, mj);
  Vec tb2 = mean_curvature(christoffel(mj, false), mj, f2, true);
  double r2 = y[0] * y[0] + y[1] * y[1];
  CHECK(tb2[0] == doctest::Approx(-y[0] / r2).epsilon(1e-9));
  CHECK(tb2[1] == doctest::Approx(-y[1] / r2).epsilon(1e-9));
}

TEST_CASE("orbit geometry lee form is minus dr over r on the horizontal block") {
  WeylStructure w = euclidean(4);
  Vec x{};
  x[0] = 1.2;
  x[1] = 0.5;
  x[2] = 0.1;
  x[3] = 0.3;
  MetricJets mj;
  PointFrame f = killing_frame(w, x, mj);
  Vec bl = bott_lee(mj, f);
  double r2 = x[0] * x[0] + x[1] * x[1];
  CHECK(bl[0] == doctest::Approx(-x[0] / r2).epsilon(1e-9));
  CHECK(bl[1] == doctest::Approx(-x[1] / r2).epsilon(1e-9));
  CHECK(std::fabs(bl[2]) < 1e-10);
  // annihilates the vertical direction
  double on_vert = 0;
  for (int i = 0; i < 4; ++i) on_vert += bl[i] * f.cols[0].v[i];
  CHECK(std::fabs(on_vert) < 1e-10);
}

TEST_CASE("second fundamental trace shifts by the lee form across connections") {
  WeylStructure w = gibbons_hawking(true);
  std::vector<Expr> comps = {e_var(0), e_var(1), e_var(2)};
  auto pts = sample_points(w.chart, 6, 0);
  for (const Vec& x : pts) {
    MetricJets mj = metric_at(w, x);
    MapJets mp = map_jets(comps, x, 4);
    PointFrame f = orthonormal_frame(mj, map_kernel_d1(mp, w.eps), 1, w.eps);
    ConnCoeffs lc = christoffel(mj, false);
    ConnCoeffs d = weyl_connection(mj, false);
    Vec lhs = lower_index(mj, mean_curvature(d, mj, f, true));
    Vec base = lower_index(mj, mean_curvature(lc, mj, f, true));
    // horizontal part of the lee covector
    Vec ah{};
    for (int b = f.k; b < 4; ++b) {
      double coef = 0;
      for (int i = 0; i < 4; ++i) coef += mj.alpha[i] * f.cols[static_cast<size_t>(b)].v[i];
      Vec fb = lower_index(mj, f.cols[static_cast<size_t>(b)].v);
      for (int i = 0; i < 4; ++i) ah[i] += coef * fb[i];
    }
    int codim = f.k;
    for (int i = 0; i < 4; ++i)
      CHECK(std::fabs(lhs[i] - (base[i] - codim * ah[i])) < 1e-9);
  }
}

TEST_CASE("minimal lee form makes both blocks minimal and is detectably unique") {
  WeylStructure w = euclidean(4);
  Vec x{};
  x[0] = 1.1;
  x[1] = 0.4;
  x[2] = 0.2;
  x[3] = -0.3;
  MetricJets mj;
  PointFrame f = killing_frame(w, x, mj);
  Vec a = minimal_weyl_lee(mj, f);
  ConnCoeffs dmin = weyl_from_lee(mj, a);
  CHECK(max_abs(mean_curvature(dmin, mj, f, true), 4) < 1e-8);
  CHECK(max_abs(mean_curvature(dmin, mj, f, false), 4) < 1e-8);
  Vec ap = a;
  ap[0] += 1e-3;
  ConnCoeffs dp = weyl_from_lee(mj, ap);
  double broken = std::max(max_abs(mean_curvature(dp, mj, f, true), 4),
                           max_abs(mean_curvature(dp, mj, f, false), 4));
  CHECK(broken >= 1e-4);

  WeylStructure wp = euclidean(4);
  std::vector<Expr> proj = {e_var(0), e_var(1), e_var(2)};
  Vec y{};
  y[1] = 0.2;
  MetricJets mjp = metric_at(wp, y);
  MapJets mpp = map_jets(proj, y, 4);
  PointFrame fp = orthonormal_frame(mjp, map_kernel_d1(mpp, wp.eps), 1, wp.eps);
  CHECK(max_abs(minimal_weyl_lee(mjp, fp), 4) < 1e-12);
}

TEST_CASE("endomorphism trace solve reproduces known lee forms") {
  // flat metric, constant compatible J: alpha = 0
  WeylStructure w = euclidean(4);
  JVals jv;
  jv.m = 4;
  jv.J[1][0] = 1;
  jv.J[0][1] = -1;
  jv.J[3][2] = 1;
  jv.J[2][3] = -1;
  Vec x{};
  MetricJets mj = metric_at(w, x);
  Vec a = hermitian_weyl_lee(mj, jv);
  CHECK(max_abs(a, 4) < 1e-12);

  // conformally flat metric: alpha = -du
  WeylStructure wc = euclidean(4);
  for (int i = 0; i < 4; ++i)
    wc.metric[static_cast<size_t>(packed_index(i, i, 4))] =
        parse_expr("exp(0.4*x1)", wc.chart.coords);
  Vec y{};
  y[0] = 0.6;
  y[1] = -0.2;
  MetricJets mjc = metric_at(wc, y);
  Vec ac = hermitian_weyl_lee(mjc, jv);
  CHECK(ac[0] == doctest::Approx(-0.2).epsilon(1e-10));
  for (int i = 1; i < 4; ++i) CHECK(std::fabs(ac[i]) < 1e-10);
  // defining trace postcondition
  ConnCoeffs d = weyl_from_lee(mjc, ac);
  CHECK(max_abs(trace_dj(d, jv, mjc), 4) < 1e-9);
}

TEST_CASE("frozen scale of the trace under a lee shift") {
  WeylStructure w = euclidean(4);
  JVals jv;
  jv.m = 4;
  jv.J[1][0] = 1;
  jv.J[0][1] = -1;
  jv.J[3][2] = 1;
  jv.J[2][3] = -1;
  Vec x{};
  x[2] = 0.4;
  MetricJets mj = metric_at(w, x);
  Vec alpha{};
  alpha[0] = 1.0;
  ConnCoeffs d = weyl_from_lee(mj, alpha);
  Vec t = trace_dj(d, jv, mj);
  // (m-2) J(alpha sharp) with m = 4: twice the first J column
  CHECK(t[0] == doctest::Approx(0.0));
  CHECK(t[1] == doctest::Approx(2.0));
  CHECK(t[2] == doctest::Approx(0.0));
  CHECK(t[3] == doctest::Approx(0.0));
}

TEST_CASE("dimension-4 anticommutation of the Hermitian Weyl derivative") {
  WeylStructure wc = euclidean(4);
  for (int i = 0; i < 4; ++i)
    wc.metric[static_cast<size_t>(packed_index(i, i, 4))] =
        parse_expr("exp(0.4*x1+0.2*x2^2)", wc.chart.coords);
  JVals jv;
  jv.m = 4;
  jv.J[1][0] = 1;
  jv.J[0][1] = -1;
  jv.J[3][2] = 1;
  jv.J[2][3] = -1;
  Vec x{};
  x[0] = 0.3;
  x[1] = 0.5;
  MetricJets mj = metric_at(wc, x);
  ConnCoeffs d = weyl_from_lee(mj, hermitian_weyl_lee(mj, jv));
  for (int c = 0; c < 4; ++c) {
    Vec X{};
    X[c] = 1.0;
    Vec JX{};
    for (int i = 0; i < 4; ++i) JX[i] = jv.J[i][c];
    Mat a = dj_along(d, jv, JX);
    Mat b = dj_along(d, jv, X);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        double jb = 0;
        for (int l = 0; l < 4; ++l) jb += jv.J[i][l] * b[l][j];
        CHECK(std::fabs(a[i][j] + jb) < 1e-8);
      }
  }
}

TEST_CASE("horizontal lee values shift by the lee form") {
  WeylStructure w = gibbons_hawking(false);
  std::vector<Expr> comps = {e_var(0), e_var(1), e_var(2)};
  Vec x{};
  x[0] = 1.0;
  x[1] = 0.7;
  x[2] = 1.2;
  x[3] = 0.9;
  MetricJets mj = metric_at(w, x);
  MapJets mp = map_jets(comps, x, 4);
  PointFrame f = orthonormal_frame(mj, map_kernel_d1(mp, w.eps), 1, w.eps);
  ConnCoeffs d1 = christoffel(mj, false);
  Vec beta{};
  beta[0] = 0.4;
  beta[1] = -0.2;
  beta[3] = 0.1;
  ConnCoeffs d2 = lee_shift(d1, mj, beta);
  HLeeValues l1 = lee_values_full(d1, mj, f);
  HLeeValues l2 = lee_values_full(d2, mj, f);
  REQUIRE(l1.n == 3);
  for (int b = 0; b < 3; ++b) {
    double bx = 0;
    for (int i = 0; i < 4; ++i) bx += beta[i] * f.cols[static_cast<size_t>(f.k + b)].v[i];
    CHECK(l2.val[static_cast<size_t>(b)] - l1.val[static_cast<size_t>(b)] ==
          doctest::Approx(bx).epsilon(1e-10));
  }
  // full Weyl connection: lee values over the horizontal block equal alpha(X)
  WeylStructure wl = gibbons_hawking(true);
  MetricJets mjl = metric_at(wl, x);
  HLeeValues lw = lee_values_full(weyl_connection(mjl, false), mjl, f);
  HLeeValues lg = lee_values_full(christoffel(mjl, false), mjl, f);
  for (int b = 0; b < 3; ++b) {
    double ax = 0;
    for (int i = 0; i < 4; ++i) ax += mjl.alpha[i] * f.cols[static_cast<size_t>(f.k + b)].v[i];
    CHECK(lw.val[static_cast<size_t>(b)] - lg.val[static_cast<size_t>(b)] ==
          doctest::Approx(ax).epsilon(1e-9));
  }
  // covector form annihilates the vertical block
  Vec cov = hlee_covector(mj, f, l2);
  double on_vert = 0;
  for (int i = 0; i < 4; ++i) on_vert += cov[i] * f.cols[0].v[i];
  CHECK(std::fabs(on_vert) < 1e-10);
}
