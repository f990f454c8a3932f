#include "weylcheck/runner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <utility>

#include "weylcheck/curvature.hpp"
#include "weylcheck/hermitian.hpp"
#include "weylcheck/morphism.hpp"
#include "weylcheck/twistor.hpp"

namespace weyl {

namespace {

struct PointOut {
  double residual = 0;
  double scale = 0;
  bool ok = true;
  std::array<double, 8> extra{};
};

// Evaluates fn at every point. Parallel runs fill independent slots and the
// reduction below walks them in index order, so both modes agree bitwise.
// When points throw, the error at the smallest index wins in both modes.
template <class F>
std::vector<PointOut> sweep(const std::vector<Vec>& pts, bool parallel, F&& fn) {
  std::vector<PointOut> out(pts.size());
  const long long n = static_cast<long long>(pts.size());
  std::exception_ptr first;
  long long first_at = n;
  if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long long i = 0; i < n; ++i) {
      try {
        out[static_cast<size_t>(i)] = fn(pts[static_cast<size_t>(i)]);
      } catch (...) {
#ifdef _OPENMP
#pragma omp critical(weyl_sweep_error)
#endif
        if (i < first_at) {
          first_at = i;
          first = std::current_exception();
        }
      }
    }
    if (first) std::rethrow_exception(first);
  } else {
    for (long long i = 0; i < n; ++i)
      out[static_cast<size_t>(i)] = fn(pts[static_cast<size_t>(i)]);
  }
  return out;
}

struct Agg {
  double res = 0;
  double scale = 0;
  bool ok = true;
  std::array<double, 8> extra{};
};

Agg reduce(const std::vector<PointOut>& outs) {
  Agg a;
  for (const PointOut& o : outs) {
    a.res = std::max(a.res, o.residual);
    a.scale = std::max(a.scale, o.scale);
    a.ok = a.ok && o.ok;
    for (size_t s = 0; s < a.extra.size(); ++s) a.extra[s] = std::max(a.extra[s], o.extra[s]);
  }
  return a;
}

bool passes(double res, double scale, double tol) { return res < tol * (1.0 + scale); }

TaskResult finish(const std::string& name, const Agg& a, double tol) {
  TaskResult r;
  r.task = name;
  r.max_residual = a.res;
  r.scale = a.scale;
  r.verdict = passes(a.res, a.scale, tol) ? "pass" : "fail";
  return r;
}

// Shared per-point data for map-based tasks.
struct MapCtx {
  MetricJets mj;
  ConnCoeffs dm;
  MapJets mp;
  MetricJets nj;
  ConnCoeffs dn;
  PointFrame frame;
  D1 l2;
};

MapCtx map_ctx(const Bundle& b, const Vec& x) {
  MapCtx c;
  c.mj = metric_at(b.domain, x);
  c.dm = weyl_connection(c.mj, false);
  c.mp = map_jets(b.map, x, c.mj.m);
  c.nj = metric_at(*b.codomain, c.mp.phi);
  c.dn = weyl_connection(c.nj, false);
  c.frame = orthonormal_frame(c.mj, map_kernel_d1(c.mp, b.domain.eps),
                              b.domain.chart.orientation, b.domain.eps);
  c.l2 = dilation_d1(c.mj, c.mp, c.nj);
  return c;
}

PointFrame declared_frame(const Bundle& b, const MetricJets& mj) {
  std::vector<VecD1> vs;
  for (int idx : b.vertical) {
    VecD1 u{};
    u.v[idx] = 1.0;
    vs.push_back(u);
  }
  return orthonormal_frame(mj, vs, b.domain.chart.orientation, b.domain.eps);
}

// Rotation by the metric area form of a surface structure, with codomain
// coordinate derivatives so it can feed covariant derivative formulas.
JVals surface_rotation(const MetricJets& nj, int orientation) {
  JVals j;
  j.m = 2;
  const double rd = std::sqrt(nj.det);
  double mj[2][2] = {{-nj.g[0][1], -nj.g[1][1]}, {nj.g[0][0], nj.g[0][1]}};
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) j.J[r][c] = orientation * mj[r][c] / rd;
  for (int k = 0; k < 2; ++k) {
    double ddet = nj.dg[k][0][0] * nj.g[1][1] + nj.g[0][0] * nj.dg[k][1][1] -
                  2.0 * nj.g[0][1] * nj.dg[k][0][1];
    double drd = ddet / (2.0 * rd);
    double dm[2][2] = {{-nj.dg[k][0][1], -nj.dg[k][1][1]}, {nj.dg[k][0][0], nj.dg[k][0][1]}};
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        j.dJ[k][r][c] = orientation * (dm[r][c] / rd - mj[r][c] * drd / (rd * rd));
  }
  return j;
}

int codim(const Bundle& b) { return b.codomain ? b.codomain->chart.dim : 0; }

// ----- applicability gates ------------------------------------------------

std::string gate_always(const Bundle&) { return ""; }

std::string gate_map(const Bundle& b) {
  return b.map.empty() ? "needs a declared [map]" : "";
}

std::string gate_selfdual(const Bundle& b) {
  return b.domain.chart.dim == 4 ? "" : "needs a four dimensional domain";
}

std::string gate_gt(const Bundle& b) {
  if (b.domain.chart.dim != 3) return "needs a three dimensional domain";
  if (!b.kfun) return "needs a [weyl] k gauge function";
  return "";
}

std::string gate_hermitian(const Bundle& b) {
  if (!b.jfield) return "needs a declared [complex_structure]";
  int m = b.domain.chart.dim;
  if (m < 4 || m % 2 != 0) return "needs an even domain dimension of at least four";
  return "";
}

std::string gate_jfield(const Bundle& b) {
  return b.jfield ? "" : "needs a declared [complex_structure]";
}

std::string gate_fibres(const Bundle& b) {
  if (b.map.empty()) return "needs a declared [map]";
  if (codim(b) < 2) return "needs a codomain of dimension at least two";
  return "";
}

std::string gate_holomorphic(const Bundle& b) {
  if (b.map.empty()) return "needs a declared [map]";
  if (!b.jfield) return "needs a declared [complex_structure]";
  if (codim(b) != 2) return "needs a two dimensional codomain";
  return "";
}

std::string gate_parallel(const Bundle& b) {
  if (b.map.empty()) return "needs a declared [map]";
  if (b.domain.chart.dim != 4 || codim(b) != 2) return "needs a four-to-two submersion";
  return "";
}

std::string gate_twistorial(const Bundle& b) {
  if (b.map.empty()) return "needs a declared [map]";
  int m = b.domain.chart.dim, n = codim(b);
  bool known = (m == 3 && n == 2) || (m == 4 && n == 2) || (m == 4 && n == 3);
  return known ? "" : "handles the dimension pairs 3-2, 4-2 and 4-3 only";
}

std::string gate_4to3(const Bundle& b) {
  if (b.map.empty()) return "needs a declared [map]";
  if (b.domain.chart.dim != 4 || codim(b) != 3) return "needs a four-to-three submersion";
  return "";
}

std::string gate_ricci_h(const Bundle& b) {
  if (!b.map.empty() || !b.vertical.empty()) return "";
  return "needs a declared [map] or a [distribution] vertical list";
}

// ----- verdict tasks -------------------------------------------------------

TaskResult task_einstein(const Bundle& b, const std::vector<Vec>& pts, bool parallel) {
  auto outs = sweep(pts, parallel, [&](const Vec& x) {
    PointOut o;
    MetricJets mj = metric_at(b.domain, x);
    CurvatureAtPoint cur = curvature_at(weyl_connection(mj, true), mj);
    o.residual = einstein_residual(cur);
    o.scale = max_abs(cur.ricci, mj.m);
    o.extra[0] = std::fabs(cur.scalar);
    o.extra[1] = cur.bianchi_residual;
    return o;
  });
  Agg a = reduce(outs);
  TaskResult r = finish("einstein-weyl", a, b.run.tol);
  r.details = {{"scalar_max", a.extra[0]}, {"bianchi_max", a.extra[1]}};
  return r;
}

TaskResult task_selfdual(const Bundle& b, const std::vector<Vec>& pts, bool parallel) {
  auto outs = sweep(pts, parallel, [&](const Vec& x) {
    PointOut o;
    MetricJets mj = metric_at(b.domain, x);
    WeylSplit ws = weyl_split(mj, b.domain.chart.orientation, b.domain.eps);
    o.residual = wsplit_max(ws.wplus);
    o.scale = ws.wmax;
    o.extra[0] = wsplit_max(ws.wminus);
    o.extra[1] = ws.reassembly;
    return o;
  });
  Agg a = reduce(outs);
  TaskResult r = finish("selfdual", a, b.run.tol);
  r.details = {{"other_half_max", a.extra[0]}, {"reassembly_max", a.extra[1]}};
  return r;
}

TaskResult task_faraday(const Bundle& b, const std::vector<Vec>& pts, bool parallel) {
  auto outs = sweep(pts, parallel, [&](const Vec& x) {
    PointOut o;
    MetricJets mj = metric_at(b.domain, x);
    double f = 0;
    for (int i = 0; i < mj.m; ++i)
      for (int j = 0; j < mj.m; ++j)
        f = std::max(f, std::fabs(mj.dalpha[i][j] - mj.dalpha[j][i]));
    o.residual = f;
    o.scale = max_abs(mj.alpha, mj.m);
    return o;
  });
  Agg a = reduce(outs);
  TaskResult r = finish("faraday", a, b.run.tol);
  r.verdict = "report-only";
  r.details = {{"lee_max", a.scale}};
  return r;
}

TaskResult task_gt(const Bundle& b, const std::vector<Vec>& pts, bool parallel) {
  auto outs = sweep(pts, parallel, [&](const Vec& x) {
    PointOut o;
    MetricJets mj = metric_at(b.domain, x);
    CurvatureAtPoint cur = curvature_at(weyl_connection(mj, true), mj);
    D1 k = eval_d1(b.kfun, x, 3);
    GtResiduals gt = gauduchon_tod_residuals(mj, cur, k, b.domain.chart.orientation);
    o.residual = std::max(gt.scalar_res, gt.star_res);
    o.scale = std::max(std::fabs(gt.scalar), 1.5 * gt.k * gt.k);
    o.extra[0] = std::fabs(gt.k);
    o.extra[1] = gt.scalar_res;
    o.extra[2] = gt.star_res;
    return o;
  });
  Agg a = reduce(outs);
  TaskResult r = finish("gauduchon-tod", a, b.run.tol);
  r.details = {{"k_max", a.extra[0]}, {"scalar_gap", a.extra[1]}, {"star_gap", a.extra[2]}};
  return r;
}

TaskResult task_gt_flat(const Bundle& b, const std::vector<Vec>& pts, bool parallel) {
  auto outs = sweep(pts, parallel, [&](const Vec& x) {
    PointOut o;
    MetricJets mj = metric_at(b.domain, x);
    ConnCoeffs d = weyl_connection(mj, true);
    D1 k = eval_d1(b.kfun, x, 3);
    o.residual = gt_flatness_residual(mj, d, k, b.domain.chart.orientation);
    o.scale = std::fabs(curvature_at(d, mj).scalar);
    return o;
  });
  Agg a = reduce(outs);
  return finish("gt-flatness", a, b.run.tol);
}

TaskResult task_hermitian(const Bundle& b, const std::vector<Vec>& pts, bool parallel) {
  auto outs = sweep(pts, parallel, [&](const Vec& x) {
    PointOut o;
    MetricJets mj = metric_at(b.domain, x);
    JVals jv = jfield_at(*b.jfield, x);
    double compat = compat_residual(mj, jv);
    Vec alee = hermitian_weyl_lee(mj, jv);
    ConnCoeffs d = weyl_from_lee(mj, alee);
    double tres = max_abs(trace_dj(d, jv, mj), mj.m);
    double anti = 0;
    if (mj.m == 4) {
      for (int k = 0; k < 4; ++k) {
        Vec ek{};
        ek[k] = 1.0;
        Mat A = dj_along(d, jv, ek);
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) {
            double s = 0;
            for (int a2 = 0; a2 < 4; ++a2) s += A[i][a2] * jv.J[a2][j] + jv.J[i][a2] * A[a2][j];
            anti = std::max(anti, std::fabs(s));
          }
      }
    }
    o.residual = std::max({compat, tres, anti});
    o.scale = max_abs(mj.g, mj.m) + max_abs(jv.J, mj.m);
    o.extra[0] = compat;
    o.extra[1] = tres;
    o.extra[2] = anti;
    Vec gap{};
    for (int i = 0; i < mj.m; ++i) gap[i] = alee[i] - mj.alpha[i];
    o.extra[3] = max_abs(gap, mj.m);
    return o;
  });
  Agg a = reduce(outs);
  TaskResult r = finish("hermitian", a, b.run.tol);
  r.details = {{"compatibility", a.extra[0]},
               {"trace_gap", a.extra[1]},
               {"anticommutator", a.extra[2]},
               {"declared_lee_gap", a.extra[3]}};
  return r;
}

TaskResult task_integrable(const Bundle& b, const std::vector<Vec>& pts, bool parallel) {
  auto outs = sweep(pts, parallel, [&](const Vec& x) {
    PointOut o;
    JVals jv = jfield_at(*b.jfield, x);
    o.residual = nijenhuis_max(jv);
    o.scale = max_abs(jv.J, jv.m);
    return o;
  });
  Agg a = reduce(outs);
  return finish("integrable", a, b.run.tol);
}

TaskResult task_harmonic(const Bundle& b, const std::vector<Vec>& pts, bool parallel) {
  auto outs = sweep(pts, parallel, [&](const Vec& x) {
    PointOut o;
    MapCtx c = map_ctx(b, x);
    Vec tau = tension(c.mj, c.mp, c.dm, c.dn);
    o.residual = max_abs(tau, c.mp.n);
    o.scale = c.l2.v;
    o.extra[0] = c.l2.v;
    return o;
  });
  Agg a = reduce(outs);
  TaskResult r = finish("harmonic", a, b.run.tol);
  r.details = {{"dilation_max", a.extra[0]}};
  return r;
}

TaskResult task_conformal(const Bundle& b, const std::vector<Vec>& pts, bool parallel) {
  auto outs = sweep(pts, parallel, [&](const Vec& x) {
    PointOut o;
    MetricJets mj = metric_at(b.domain, x);
    MapJets mp = map_jets(b.map, x, mj.m);
    MetricJets nj = metric_at(*b.codomain, mp.phi);
    Dilation d = hwc_check(mj, mp, nj);
    o.residual = d.residual;
    o.scale = d.lambda2;
    o.extra[0] = d.lambda2;
    return o;
  });
  Agg a = reduce(outs);
  TaskResult r = finish("conformal", a, b.run.tol);
  r.details = {{"dilation_max", a.extra[0]}};
  return r;
}

TaskResult task_morphism(const Bundle& b, const std::vector<Vec>& pts, bool parallel) {
  auto outs = sweep(pts, parallel, [&](const Vec& x) {
    PointOut o;
    MapCtx c = map_ctx(b, x);
    Vec tau = tension(c.mj, c.mp, c.dm, c.dn);
    Dilation d = hwc_check(c.mj, c.mp, c.nj);
    o.residual = std::max(max_abs(tau, c.mp.n), d.residual);
    o.scale = d.lambda2;
    o.extra[0] = max_abs(tau, c.mp.n);
    o.extra[1] = d.residual;
    return o;
  });
  Agg a = reduce(outs);
  TaskResult r = finish("morphism", a, b.run.tol);
  r.details = {{"tension_max", a.extra[0]}, {"conformality_max", a.extra[1]}};
  return r;
}

TaskResult task_fibres(const Bundle& b, const std::vector<Vec>& pts, bool parallel) {
  const double tol = b.run.tol;
  const int n = codim(b);
  auto outs = sweep(pts, parallel, [&](const Vec& x) {
    PointOut o;
    MapCtx c = map_ctx(b, x);
    Vec tau = tension(c.mj, c.mp, c.dm, c.dn);
    Dilation d = hwc_check(c.mj, c.mp, c.nj);
    double harm = std::max(max_abs(tau, c.mp.n), d.residual);
    double minim = max_abs(mean_curvature(c.dm, c.mj, c.frame, true), c.mj.m);
    double thr = tol * (1.0 + c.l2.v);
    bool p1 = harm < thr;
    bool p2 = minim < thr;
    o.extra[0] = harm;
    o.extra[1] = minim;
    o.extra[2] = c.l2.v;
    if (n == 2) {
      o.ok = p1 == p2;
    } else {
      double gap = partial_lee_difference(c.mj, c.mp, c.nj, c.dm, c.dn, c.frame, c.l2);
      o.extra[3] = gap;
      bool p3 = gap < thr;
      int fails = (p1 ? 0 : 1) + (p2 ? 0 : 1) + (p3 ? 0 : 1);
      o.ok = fails != 1;
    }
    o.residual = o.ok ? 0.0 : 1.0;
    return o;
  });
  Agg a = reduce(outs);
  TaskResult r = finish("fibres", a, tol);
  r.details = {{"harmonic_gap", a.extra[0]}, {"minimality", a.extra[1]}, {"dilation_max", a.extra[2]}};
  if (n >= 3) r.details.push_back({"connection_gap", a.extra[3]});
  r.notes.push_back(n == 2 ? "surface codomain: harmonicity and fibre minimality must agree"
                           : "any two of harmonicity, minimal fibres and a vanishing "
                             "connection gap force the third");
  return r;
}

TaskResult task_codlee(const Bundle& b, const std::vector<Vec>& pts, bool parallel) {
  auto outs = sweep(pts, parallel, [&](const Vec& x) {
    PointOut o;
    CodomainLee cl = required_codomain_lee(b.domain, *b.codomain, b.map, x);
    o.residual = cl.minimal_route ? cl.minimal_res : cl.basic_res;
    o.scale = max_abs(cl.value, cl.n);
    o.extra[0] = o.scale;
    return o;
  });
  Agg a = reduce(outs);
  TaskResult r = finish("codomain-lee", a, b.run.tol);
  r.details = {{"candidate_max", a.extra[0]}};
  if (codim(b) == 2)
    r.notes.push_back("surface codomain: tests fibre minimality instead of basicness");
  return r;
}

TaskResult task_holomorphic(const Bundle& b, const std::vector<Vec>& pts, bool parallel) {
  auto outs = sweep(pts, parallel, [&](const Vec& x) {
    PointOut o;
    MetricJets mj = metric_at(b.domain, x);
    MapJets mp = map_jets(b.map, x, mj.m);
    MetricJets nj = metric_at(*b.codomain, mp.phi);
    JVals jm = jfield_at(*b.jfield, x);
    JVals jn = surface_rotation(nj, b.codomain->chart.orientation);
    o.residual = holomorphy_residual(mp, jm, jn);
    double dmax = 0;
    for (int c = 0; c < mp.n; ++c)
      for (int i = 0; i < mp.m; ++i) dmax = std::max(dmax, std::fabs(mp.J[c][i]));
    o.scale = dmax;
    return o;
  });
  Agg a = reduce(outs);
  return finish("holomorphic", a, b.run.tol);
}

TaskResult task_parallel(const Bundle& b, const std::vector<Vec>& pts, bool parallel) {
  const double tol = b.run.tol;
  auto outs = sweep(pts, parallel, [&](const Vec& x) {
    PointOut o;
    MapCtx c = map_ctx(b, x);
    FibreParallel p = fibre_parallel_point(c.mj, c.mp, c.dm, c.nj, c.dn, c.frame);
    double thr = tol * (1.0 + p.hwc_lambda2);
    bool morph = std::max({p.tension_res, p.hwc_res, p.nijenhuis_res}) < thr;
    bool par = p.parallel_res < thr;
    o.ok = morph == par;
    o.residual = o.ok ? 0.0 : 1.0;
    o.extra[0] = p.tension_res;
    o.extra[1] = p.hwc_res;
    o.extra[2] = p.nijenhuis_res;
    o.extra[3] = p.parallel_res;
    o.extra[4] = p.hwc_lambda2;
    return o;
  });
  Agg a = reduce(outs);
  TaskResult r = finish("parallel", a, tol);
  r.details = {{"tension", a.extra[0]},
               {"conformality", a.extra[1]},
               {"nijenhuis", a.extra[2]},
               {"vertical_parallel", a.extra[3]},
               {"dilation_max", a.extra[4]}};
  r.notes.push_back("morphism plus integrable induced structure must match fibrewise parallelism");
  return r;
}

TaskResult task_twistorial(const Bundle& b, const std::vector<Vec>& pts, bool parallel) {
  const int m = b.domain.chart.dim;
  const int n = codim(b);
  auto outs = sweep(pts, parallel, [&](const Vec& x) {
    PointOut o;
    MapCtx c = map_ctx(b, x);
    if (m == 3 && n == 2) {
      GeodesicResidual g = vertical_geodesic(c.mj, c.dm, c.frame);
      o.residual = g.residual;
      o.scale = g.scale;
    } else if (m == 4 && n == 2) {
      JVals jv = induced_positive_j(c.mj, c.frame);
      o.residual = nijenhuis_max(jv);
      o.scale = max_abs(jv.J, 4);
    } else {
      PartialLeeGap g = twistorial_4to3(c.mj, c.mp, c.nj, c.dn, c.frame, c.l2);
      o.residual = g.residual;
      o.scale = g.scale;
    }
    return o;
  });
  Agg a = reduce(outs);
  TaskResult r = finish("twistorial", a, b.run.tol);
  if (m == 3)
    r.notes.push_back("route: geodesic fibres");
  else if (n == 2)
    r.notes.push_back("route: integrability of the induced positive structure");
  else
    r.notes.push_back("route: pullback partial connection against the plus connection");
  return r;
}

TaskResult task_leesplit(const Bundle& b, const std::vector<Vec>& pts, bool parallel) {
  const double tol = b.run.tol;
  auto outs = sweep(pts, parallel, [&](const Vec& x) {
    PointOut o;
    MapCtx c = map_ctx(b, x);
    LeeSplitParts t = leesplit_point(c.mj, c.mp, c.dm, c.nj, c.dn, c.frame, c.l2);
    double morph = std::max(t.tension, t.hwc);
    bool p1 = morph < tol * (1.0 + t.lambda2);
    bool p2 = t.pullback_gap < tol * (1.0 + t.scale);
    bool p3 = t.lee_gap < tol * (1.0 + t.scale);
    int fails = (p1 ? 0 : 1) + (p2 ? 0 : 1) + (p3 ? 0 : 1);
    o.ok = fails != 1;
    o.residual = std::max({morph, t.pullback_gap, t.lee_gap});
    o.scale = std::max(t.lambda2, t.scale);
    o.extra[0] = morph;
    o.extra[1] = t.pullback_gap;
    o.extra[2] = t.lee_gap;
    return o;
  });
  Agg a = reduce(outs);
  TaskResult r = finish("leesplit", a, tol);
  r.details = {{"harmonic_gap", a.extra[0]},
               {"pullback_gap", a.extra[1]},
               {"lee_identity_gap", a.extra[2]}};
  if (!a.ok)
    r.notes.push_back("exactly one of the three parts failed at some point; "
                      "the expected pairing is broken");
  return r;
}

TaskResult task_ksection(const Bundle& b, const std::vector<Vec>& pts, bool parallel) {
  auto outs = sweep(pts, parallel, [&](const Vec& x) {
    PointOut o;
    KSection ks = extract_k(b.domain, b.map, x);
    o.residual = ks.horiz_res;
    o.scale = std::fabs(ks.k);
    o.extra[0] = std::fabs(ks.k);
    o.extra[1] = ks.basic_res;
    return o;
  });
  Agg a = reduce(outs);
  TaskResult r = finish("ksection", a, b.run.tol);
  r.details = {{"k_max", a.extra[0]}, {"basic_gap", a.extra[1]}};
  return r;
}

TaskResult task_ricci_h(const Bundle& b, const std::vector<Vec>& pts, bool parallel) {
  auto outs = sweep(pts, parallel, [&](const Vec& x) {
    PointOut o;
    MetricJets mj = metric_at(b.domain, x);
    PointFrame f;
    if (!b.map.empty()) {
      MapJets mp = map_jets(b.map, x, mj.m);
      f = orthonormal_frame(mj, map_kernel_d1(mp, b.domain.eps), b.domain.chart.orientation,
                            b.domain.eps);
    } else {
      f = declared_frame(b, mj);
    }
    CurvatureAtPoint cur = curvature_at(weyl_connection(mj, true), mj);
    HorizRicci hr = ricci_horizontal_tracefree(cur, f);
    o.residual = hr.residual;
    o.scale = hr.scale;
    o.extra[0] = std::fabs(hr.trace);
    return o;
  });
  Agg a = reduce(outs);
  TaskResult r = finish("ricci-horizontal", a, b.run.tol);
  r.details = {{"trace_max", a.extra[0]}};
  return r;
}

TaskResult task_ricci_pb(const Bundle& b, const std::vector<Vec>& pts, bool parallel) {
  const double tol = b.run.tol;
  auto outs = sweep(pts, parallel, [&](const Vec& x) {
    PointOut o;
    MapCtx c = map_ctx(b, x);
    CurvatureAtPoint cm = curvature_at(weyl_connection(c.mj, true), c.mj);
    CurvatureAtPoint cn = curvature_at(weyl_connection(c.nj, true), c.nj);
    HorizRicci hr = ricci_difference_tracefree(cm, c.mp, cn, c.frame);
    PartialLeeGap gap = twistorial_4to3(c.mj, c.mp, c.nj, c.dn, c.frame, c.l2);
    Vec tau = tension(c.mj, c.mp, c.dm, c.dn);
    o.residual = hr.residual;
    o.scale = hr.scale;
    o.ok = passes(hr.residual, hr.scale, tol) == passes(gap.residual, gap.scale, tol);
    o.extra[0] = gap.residual;
    o.extra[1] = max_abs(tau, c.mp.n);
    o.extra[2] = c.l2.v;
    return o;
  });
  Agg a = reduce(outs);
  TaskResult r = finish("ricci-pullback", a, tol);
  r.details = {{"pullback_gap", a.extra[0]}, {"tension_max", a.extra[1]}};
  if (!passes(a.extra[1], a.extra[2], tol))
    r.notes.push_back("the map is not harmonic on this sample; no agreement with "
                      "twistoriality is expected");
  else if (!a.ok)
    r.notes.push_back("twistoriality and the ricci comparison disagree somewhere "
                      "on this sample");
  else
    r.notes.push_back("agrees with the twistoriality verdict at every sampled point");
  return r;
}

TaskResult task_nullricci(const Bundle& b, const std::vector<Vec>& pts, bool parallel) {
  auto outs = sweep(pts, parallel, [&](const Vec& x) {
    PointOut o;
    MapCtx c = map_ctx(b, x);
    CurvatureAtPoint cm = curvature_at(weyl_connection(c.mj, true), c.mj);
    CurvatureAtPoint cn = curvature_at(weyl_connection(c.nj, true), c.nj);
    const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    for (const auto& pr : pairs) {
      Lemma55 l = lemma55_point(c.mj, c.mp, cm, c.nj, c.dn, cn, c.frame, c.l2, pr[0], pr[1]);
      o.residual = std::max(o.residual, l.residual);
      o.scale = std::max(o.scale, l.scale);
    }
    return o;
  });
  Agg a = reduce(outs);
  TaskResult r = finish("nullricci", a, b.run.tol);
  r.notes.push_back("null directions taken over all horizontal frame pairs");
  return r;
}

// ----- identities -----------------------------------------------------------

TaskResult id_chain(const Bundle& b, const std::vector<Vec>& pts, bool parallel) {
  std::vector<Expr> fs = harmonic_test_functions(b.codomain->chart);
  const int n = codim(b);
  auto outs = sweep(pts, parallel, [&](const Vec& x) {
    PointOut o;
    MapCtx c = map_ctx(b, x);
    for (const Expr& f : fs) {
      Jet2 fy = eval_jet2(f, c.mp.phi, n);
      ChainRule cr = chain_rule(c.mj, c.mp, c.dm, c.nj, c.dn, fy);
      o.residual = std::max(o.residual, std::fabs(cr.residual));
      o.scale = std::max(o.scale, cr.scale);
    }
    return o;
  });
  Agg a = reduce(outs);
  TaskResult r = finish("chain", a, b.run.tol);
  r.details = {{"test_functions", static_cast<double>(fs.size())}};
  return r;
}

TaskResult id_trace_b(const Bundle& b, const std::vector<Vec>& pts, bool parallel) {
  auto outs = sweep(pts, parallel, [&](const Vec& x) {
    PointOut o;
    MapCtx c = map_ctx(b, x);
    const int m = c.mj.m;
    ConnCoeffs lc = christoffel(c.mj, false);
    Vec lhs = lower_index(c.mj, mean_curvature(c.dm, c.mj, c.frame, true));
    Vec base = lower_index(c.mj, mean_curvature(lc, c.mj, c.frame, true));
    Vec ah{};
    for (int col = c.frame.k; col < m; ++col) {
      double coef = 0;
      for (int i = 0; i < m; ++i) coef += c.mj.alpha[i] * c.frame.cols[static_cast<size_t>(col)].v[i];
      Vec fb = lower_index(c.mj, c.frame.cols[static_cast<size_t>(col)].v);
      for (int i = 0; i < m; ++i) ah[i] += coef * fb[i];
    }
    for (int i = 0; i < m; ++i)
      o.residual = std::max(o.residual, std::fabs(lhs[i] - base[i] + c.frame.k * ah[i]));
    o.scale = std::max(max_abs(base, m), c.frame.k * max_abs(ah, m));
    return o;
  });
  Agg a = reduce(outs);
  return finish("trace-b", a, b.run.tol);
}

TaskResult id_fundamental(const Bundle& b, const std::vector<Vec>& pts, bool parallel) {
  auto outs = sweep(pts, parallel, [&](const Vec& x) {
    PointOut o;
    MapCtx c = map_ctx(b, x);
    Fundamental fe = fundamental_equation(c.mj, c.mp, c.dm, c.nj, c.dn, c.frame, c.l2);
    o.residual = fe.max_residual;
    o.scale = fe.scale;
    return o;
  });
  Agg a = reduce(outs);
  return finish("fundamental", a, b.run.tol);
}

TaskResult id_lemma34(const Bundle& b, const std::vector<Vec>& pts, bool parallel) {
  auto outs = sweep(pts, parallel, [&](const Vec& x) {
    PointOut o;
    MapCtx c = map_ctx(b, x);
    JVals jm = jfield_at(*b.jfield, x);
    JVals jn = surface_rotation(c.nj, b.codomain->chart.orientation);
    Lemma34 l = lemma34(c.mj, c.mp, c.dm, jm, c.nj, c.dn, jn);
    o.residual = l.max_residual;
    o.scale = l.scale;
    return o;
  });
  Agg a = reduce(outs);
  return finish("lemma34", a, b.run.tol);
}

TaskResult id_lemma55(const Bundle& b, const std::vector<Vec>& pts, bool parallel) {
  TaskResult r = task_nullricci(b, pts, parallel);
  r.task = "lemma55";
  return r;
}

struct Cubic {
  double c0 = 0;
  double a[kMaxDim] = {};
  double B[kMaxDim][kMaxDim] = {};
  double C[kMaxDim][kMaxDim][kMaxDim] = {};
};

std::vector<Cubic> random_cubics(int m, int count, unsigned long long seed) {
  Rng rng(seed);
  std::vector<Cubic> out(static_cast<size_t>(count));
  for (Cubic& c : out) {
    c.c0 = rng.uniform(-1, 1);
    for (int i = 0; i < m; ++i) c.a[i] = rng.uniform(-1, 1);
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) c.B[i][j] = c.B[j][i] = rng.uniform(-1, 1);
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j)
        for (int k = j; k < m; ++k) {
          double v = rng.uniform(-1, 1);
          int p[3] = {i, j, k};
          std::sort(p, p + 3);
          do {
            c.C[p[0]][p[1]][p[2]] = v;
          } while (std::next_permutation(p, p + 3));
        }
  }
  return out;
}

Jet2 cubic_jet(const Cubic& c, const Vec& x, int m) {
  Jet2 f;
  f.dim = m;
  f.v = c.c0;
  for (int i = 0; i < m; ++i) f.v += c.a[i] * x[i];
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      f.v += c.B[i][j] * x[i] * x[j];
      for (int k = 0; k < m; ++k) f.v += c.C[i][j][k] * x[i] * x[j] * x[k];
    }
  for (int p = 0; p < m; ++p) {
    double g = c.a[p];
    for (int j = 0; j < m; ++j) {
      g += 2.0 * c.B[p][j] * x[j];
      for (int k = 0; k < m; ++k) g += 3.0 * c.C[p][j][k] * x[j] * x[k];
    }
    f.g[static_cast<size_t>(p)] = g;
  }
  for (int p = 0; p < m; ++p)
    for (int q = p; q < m; ++q) {
      double h = 2.0 * c.B[p][q];
      for (int k = 0; k < m; ++k) h += 6.0 * c.C[p][q][k] * x[k];
      f.hess(p, q) = h;
    }
  return f;
}

TaskResult id_eq13(const Bundle& b, const std::vector<Vec>& pts, bool parallel) {
  const int m = b.domain.chart.dim;
  const std::vector<Cubic> cubes = random_cubics(m, 10, 7);
  auto outs = sweep(pts, parallel, [&](const Vec& x) {
    PointOut o;
    MetricJets mj = metric_at(b.domain, x);
    ConnCoeffs lc = christoffel(mj, false);
    ConnCoeffs dw = weyl_connection(mj, false);
    for (const Cubic& c : cubes) {
      Jet2 f = cubic_jet(c, x, m);
      double lhs = trace_dd(dw, mj, f);
      double base = trace_dd(lc, mj, f);
      Vec grad{};
      for (int i = 0; i < m; ++i) grad[i] = f.g[static_cast<size_t>(i)];
      double adf = dot(mj.alpha, raise_index(mj, grad), m);
      o.residual = std::max(o.residual, std::fabs(lhs - base - (m - 2) * adf));
      o.scale = std::max(o.scale, std::fabs(base) + std::fabs((m - 2) * adf));
    }
    if (m > 2) {
      Vec rec = equal_trace_lee(dw, mj);
      Vec gap{};
      for (int i = 0; i < m; ++i) gap[i] = rec[i] - mj.alpha[i];
      o.extra[0] = max_abs(gap, m);
      o.residual = std::max(o.residual, o.extra[0]);
    }
    return o;
  });
  Agg a = reduce(outs);
  TaskResult r = finish("eq13", a, b.run.tol);
  r.details = {{"test_functions", static_cast<double>(cubes.size())}};
  if (m > 2) r.details.push_back({"recovered_lee_gap", a.extra[0]});
  return r;
}

TaskResult id_eq41(const Bundle& b, const std::vector<Vec>& pts, bool parallel) {
  auto outs = sweep(pts, parallel, [&](const Vec& x) {
    PointOut o;
    MapCtx c = map_ctx(b, x);
    LeeSplitParts t = leesplit_point(c.mj, c.mp, c.dm, c.nj, c.dn, c.frame, c.l2);
    o.residual = t.lee_gap;
    o.scale = t.scale;
    o.extra[0] = std::max(t.tension, t.hwc);
    o.extra[1] = t.pullback_gap;
    return o;
  });
  Agg a = reduce(outs);
  TaskResult r = finish("eq41", a, b.run.tol);
  r.details = {{"harmonic_gap", a.extra[0]}, {"pullback_gap", a.extra[1]}};
  return r;
}

TaskResult id_eq42(const Bundle& b, const std::vector<Vec>& pts, bool parallel) {
  TaskResult r = task_ksection(b, pts, parallel);
  r.task = "eq42";
  return r;
}

// ----- registry -------------------------------------------------------------

struct TaskSpec {
  const char* name;
  const char* what;
  std::string (*gate)(const Bundle&);
  TaskResult (*run)(const Bundle&, const std::vector<Vec>&, bool);
};

const TaskSpec kTasks[] = {
    {"einstein-weyl", "trace-free symmetric Ricci of the Weyl connection vanishes",
     gate_always, task_einstein},
    {"selfdual", "plus half of the conformal curvature vanishes (dimension four)",
     gate_selfdual, task_selfdual},
    {"faraday", "size of the Lee form curl, reported without a verdict", gate_always,
     task_faraday},
    {"gauduchon-tod", "scalar and star identities for the declared gauge function "
     "(dimension three)", gate_gt, task_gt},
    {"gt-flatness", "flatness of the cross-product connection built from the gauge "
     "function (dimension three)", gate_gt, task_gt_flat},
    {"hermitian", "a Weyl connection whose DJ trace vanishes exists for the declared "
     "structure", gate_hermitian, task_hermitian},
    {"integrable", "Nijenhuis tensor of the declared structure vanishes", gate_jfield,
     task_integrable},
    {"harmonic", "tension field of the map vanishes", gate_map, task_harmonic},
    {"conformal", "map is horizontally weakly conformal", gate_map, task_conformal},
    {"morphism", "map is harmonic and horizontally weakly conformal", gate_map,
     task_morphism},
    {"fibres", "harmonicity, fibre minimality and the connection gap pair up as "
     "expected", gate_fibres, task_fibres},
    {"codomain-lee", "the codomain Lee form forced by the balance equation is well "
     "defined", gate_fibres, task_codlee},
    {"holomorphic", "map intertwines the declared structure with the codomain "
     "rotation", gate_holomorphic, task_holomorphic},
    {"parallel", "fibrewise parallelism matches morphism plus integrability "
     "(four to two)", gate_parallel, task_parallel},
    {"twistorial", "twistoriality residual for the dimension pair", gate_twistorial,
     task_twistorial},
    {"leesplit", "harmonicity, the pullback gap and the horizontal Lee identity pair "
     "up (four to three)", gate_4to3, task_leesplit},
    {"ksection", "vertical gauge function matches the horizontal star form "
     "(four to three)", gate_4to3, task_ksection},
    {"ricci-horizontal", "trace-free symmetric horizontal Ricci block vanishes",
     gate_ricci_h, task_ricci_h},
    {"ricci-pullback", "trace-free symmetric horizontal part of the Ricci difference "
     "vanishes (four to three)", gate_4to3, task_ricci_pb},
    {"nullricci", "null-direction Ricci comparison against the plus and minus forms "
     "(four to three)", gate_4to3, task_nullricci},
};

const TaskSpec kIdentities[] = {
    {"chain", "composition rule for the connection Laplacian through the map",
     gate_map, id_chain},
    {"trace-b", "mean curvature trace shift between the Weyl and metric connections",
     gate_map, id_trace_b},
    {"fundamental", "first-order balance of tension, Lee terms and fibre mean "
     "curvature", gate_map, id_fundamental},
    {"lemma34", "DJ trace balance through a holomorphic map to a surface",
     gate_holomorphic, id_lemma34},
    {"lemma55", "null-direction Ricci comparison (four to three)", gate_4to3,
     id_lemma55},
    {"eq13", "Laplacian trace shift on random cubics and Lee form recovery",
     gate_always, id_eq13},
    {"eq41", "horizontal Lee identity with the half coefficient (four to three)",
     gate_4to3, id_eq41},
    {"eq42", "vertical gauge function extraction (four to three)", gate_4to3, id_eq42},
};

const TaskSpec* find_spec(const TaskSpec* arr, size_t count, const std::string& name) {
  for (size_t i = 0; i < count; ++i)
    if (name == arr[i].name) return &arr[i];
  return nullptr;
}

std::string known_names(const TaskSpec* arr, size_t count) {
  std::string s;
  for (size_t i = 0; i < count; ++i) {
    if (i) s += ", ";
    s += arr[i].name;
  }
  return s;
}

constexpr size_t kTaskCount = sizeof(kTasks) / sizeof(kTasks[0]);
constexpr size_t kIdentityCount = sizeof(kIdentities) / sizeof(kIdentities[0]);

struct Sampled {
  std::vector<Vec> pts;
  int rejected = 0;
};

Sampled sample_bundle(const Bundle& b) {
  PointFilter filter = [&b](const Vec& x) -> std::string {
    try {
      MetricJets mj = metric_at(b.domain, x);
      if (!b.map.empty()) {
        MapJets mp = map_jets(b.map, x, mj.m);
        (void)metric_at(*b.codomain, mp.phi);
        std::vector<VecD1> ker = map_kernel_d1(mp, b.domain.eps);
        (void)orthonormal_frame(mj, ker, b.domain.chart.orientation, b.domain.eps);
      }
    } catch (const GeometryError& e) {
      return e.what();
    } catch (const EvalError& e) {
      return e.what();
    }
    return "";
  };
  SampleLog log;
  Sampled s;
  s.pts = sample_points(b.domain.chart, b.run.points, b.run.seed, filter, &log);
  s.rejected = static_cast<int>(log.rejected.size());
  return s;
}

RunReport run_selected(const Bundle& b, const TaskSpec* arr, size_t count,
                       const std::vector<std::string>& names, bool parallel) {
  Sampled s = sample_bundle(b);
  RunReport rep;
  rep.points = static_cast<int>(s.pts.size());
  rep.seed = b.run.seed;
  rep.tol = b.run.tol;
  rep.orientation = b.domain.chart.orientation;
  rep.config_echo = b.source;
  for (const std::string& t : names) {
    const TaskSpec* spec = find_spec(arr, count, t);
    TaskResult r = spec->run(b, s.pts, parallel);
    r.accepted = static_cast<int>(s.pts.size());
    r.rejected = s.rejected;
    if (r.verdict == "fail") rep.all_pass = false;
    rep.results.push_back(std::move(r));
  }
  return rep;
}

}  // namespace

const std::vector<TaskInfo>& task_registry() {
  static const std::vector<TaskInfo> reg = [] {
    std::vector<TaskInfo> v;
    for (const TaskSpec& t : kTasks) v.push_back({t.name, t.what});
    return v;
  }();
  return reg;
}

const std::vector<TaskInfo>& identity_registry() {
  static const std::vector<TaskInfo> reg = [] {
    std::vector<TaskInfo> v;
    for (const TaskSpec& t : kIdentities) v.push_back({t.name, t.what});
    return v;
  }();
  return reg;
}

std::string task_inapplicable(const std::string& task, const Bundle& b) {
  const TaskSpec* spec = find_spec(kTasks, kTaskCount, task);
  if (!spec) spec = find_spec(kIdentities, kIdentityCount, task);
  if (!spec)
    throw ConfigError("unknown task '" + task + "'; known tasks: " +
                      known_names(kTasks, kTaskCount));
  return spec->gate(b);
}

std::vector<std::string> applicable_tasks(const Bundle& b) {
  std::vector<std::string> out;
  for (const TaskSpec& t : kTasks)
    if (t.gate(b).empty()) out.push_back(t.name);
  return out;
}

RunReport run_tasks(const Bundle& b, bool parallel) {
  std::vector<std::string> names = b.run.tasks;
  if (names.empty()) {
    names = applicable_tasks(b);
  } else {
    for (const std::string& t : names) {
      const TaskSpec* spec = find_spec(kTasks, kTaskCount, t);
      if (!spec)
        throw ConfigError("unknown task '" + t + "'; known tasks: " +
                          known_names(kTasks, kTaskCount));
      std::string why = spec->gate(b);
      if (!why.empty()) throw ConfigError("task '" + t + "' does not apply: " + why);
    }
  }
  return run_selected(b, kTasks, kTaskCount, names, parallel);
}

RunReport run_identity(const Bundle& b, const std::string& name, bool parallel) {
  const TaskSpec* spec = find_spec(kIdentities, kIdentityCount, name);
  if (!spec)
    throw ConfigError("unknown identity '" + name + "'; known identities: " +
                      known_names(kIdentities, kIdentityCount));
  std::string why = spec->gate(b);
  if (!why.empty()) throw ConfigError("identity '" + name + "' does not apply: " + why);
  return run_selected(b, kIdentities, kIdentityCount, {name}, parallel);
}

}  // namespace weyl
