#include "weylcheck/twistor.hpp"

#include <cmath>
#include <complex>

namespace weyl {

namespace {

double inner(const MetricJets& mj, const Vec& a, const Vec& b) {
  double s = 0;
  for (int i = 0; i < mj.m; ++i)
    for (int j = 0; j < mj.m; ++j) s += mj.g[i][j] * a[i] * b[j];
  return s;
}

double frame_lee(const Vec& covector, const PointFrame& f, int col) {
  double s = 0;
  for (int i = 0; i < f.m; ++i) s += covector[i] * f.cols[col].v[i];
  return s;
}

}  // namespace

GeodesicResidual vertical_geodesic(const MetricJets& mj, const ConnCoeffs& D,
                                   const PointFrame& f) {
  if (f.k != 1) throw GeometryError("geodesic-fibre residual needs a rank-1 vertical");
  const VecD1& V = f.cols[0];
  const Vec w = cov_deriv(D, V.v, V);
  const double ww = inner(mj, w, w);
  const double wv = inner(mj, w, V.v);
  GeodesicResidual out;
  out.scale = std::sqrt(std::max(0.0, ww));
  out.residual = std::sqrt(std::max(0.0, ww - wv * wv));
  return out;
}

DPlusMinus dpm_forms(const MetricJets& mj, const PointFrame& f) {
  if (mj.m != 4 || f.k != 1) throw GeometryError("plus/minus split needs a rank-1 vertical in dimension 4");
  DPlusMinus out;
  out.n = 3;
  const Vec amin = minimal_weyl_lee(mj, f);
  for (int b = 0; b < 3; ++b) out.hd[b] = frame_lee(amin, f, 1 + b);

  // i_ab = -g([F_a, F_b], U0) over the horizontal block, then the block
  // Hodge dual star_c = sum_{a<b} eps_{abc} i_ab.
  double iab[3][3] = {};
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      const Vec br = bracket(f.cols[1 + a], f.cols[1 + b], 4);
      iab[a][b] = -inner(mj, br, f.cols[0].v);
      iab[b][a] = -iab[a][b];
    }
  out.star[0] = iab[1][2];
  out.star[1] = -iab[0][2];
  out.star[2] = iab[0][1];

  for (int b = 0; b < 3; ++b) {
    out.dplus[b] = out.hd[b] + out.star[b];
    out.dminus[b] = out.hd[b] - out.star[b];
  }
  return out;
}

PartialLeeGap twistorial_4to3(const MetricJets& mjM, const MapJets& mp,
                              const MetricJets& mjN, const ConnCoeffs& DN,
                              const PointFrame& f, const D1& lambda2) {
  if (mp.m != 4 || mp.n != 3) throw GeometryError("pullback comparison needs a 4-to-3 submersion");
  const DPlusMinus pm = dpm_forms(mjM, f);
  const HLeeValues pb = lee_values_pullback(mjM, mp, mjN, DN, f, lambda2);
  PartialLeeGap out;
  for (int b = 0; b < 3; ++b) {
    out.diff[b] = pb.val[b] - pm.dplus[b];
    out.residual = std::max(out.residual, std::fabs(out.diff[b]));
    out.scale = std::max(out.scale, std::fabs(pb.val[b]) + std::fabs(pm.dplus[b]));
  }
  return out;
}

LeeSplitParts leesplit_point(const MetricJets& mjM, const MapJets& mp,
                             const ConnCoeffs& DM, const MetricJets& mjN,
                             const ConnCoeffs& DN, const PointFrame& f,
                             const D1& lambda2, double coeff) {
  if (mp.m != 4 || mp.n != 3) throw GeometryError("identity requires a 4-to-3 submersion");
  LeeSplitParts out;
  const Vec tau = tension(mjM, mp, DM, DN);
  for (int c = 0; c < mp.n; ++c) out.tension = std::max(out.tension, std::fabs(tau[c]));
  const Dilation dil = hwc_check(mjM, mp, mjN);
  out.hwc = dil.residual;
  out.lambda2 = dil.lambda2;

  const PartialLeeGap gap = twistorial_4to3(mjM, mp, mjN, DN, f, lambda2);
  out.pullback_gap = gap.residual;

  const DPlusMinus pm = dpm_forms(mjM, f);
  const HLeeValues own = lee_values_full(DM, mjM, f);
  double scale = gap.scale;
  for (int b = 0; b < 3; ++b) {
    const double r = own.val[b] - pm.hd[b] - coeff * pm.star[b];
    out.lee_gap = std::max(out.lee_gap, std::fabs(r));
    scale = std::max(scale, std::fabs(own.val[b]) + std::fabs(pm.hd[b]) + std::fabs(pm.star[b]));
  }
  out.scale = scale;
  return out;
}

KSection extract_k(const WeylStructure& M, const std::vector<Expr>& phi, const Vec& x,
                   double fd_h) {
  const int m = M.chart.dim;
  if (m != 4 || phi.size() != 3) throw GeometryError("gauge extraction needs a 4-to-3 submersion");

  struct PointData {
    double k = 0;
    DPlusMinus pm;
    Vec gap{};  // 2 (alpha_M - alpha_min)
    PointFrame f;
    MetricJets mj;
  };
  auto at = [&](const Vec& p) {
    PointData d;
    d.mj = metric_at(M, p);
    const MapJets mp = map_jets(phi, p, m);
    auto ker = map_kernel_d1(mp, M.eps);
    d.f = orthonormal_frame(d.mj, ker, M.chart.orientation, M.eps);
    d.pm = dpm_forms(d.mj, d.f);
    const Vec amin = minimal_weyl_lee(d.mj, d.f);
    for (int i = 0; i < m; ++i) d.gap[i] = 2.0 * (d.mj.alpha[i] - amin[i]);
    d.k = frame_lee(d.gap, d.f, 0);
    return d;
  };

  const PointData d = at(x);
  KSection out;
  out.k = d.k;
  for (int b = 0; b < 3; ++b)
    out.horiz_res = std::max(out.horiz_res,
                             std::fabs(frame_lee(d.gap, d.f, 1 + b) - d.pm.star[b]));

  Vec xp = x, xm = x;
  for (int i = 0; i < m; ++i) {
    xp[i] += fd_h * d.f.cols[0].v[i];
    xm[i] -= fd_h * d.f.cols[0].v[i];
  }
  out.basic_res = std::fabs(at(xp).k - at(xm).k) / (2.0 * fd_h);
  return out;
}

HorizRicci ricci_horizontal_tracefree(const CurvatureAtPoint& c, const PointFrame& f) {
  const int n = f.m - f.k;
  if (n < 2) throw GeometryError("horizontal block has rank below 2");
  double s[kMaxDim][kMaxDim] = {};
  HorizRicci out;
  double tr = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double v = 0;
      for (int i = 0; i < f.m; ++i)
        for (int j = 0; j < f.m; ++j)
          v += 0.5 * (c.ricci[i][j] + c.ricci[j][i]) * f.cols[f.k + a].v[i] *
               f.cols[f.k + b].v[j];
      s[a][b] = v;
      out.scale = std::max(out.scale, std::fabs(v));
    }
  for (int a = 0; a < n; ++a) tr += s[a][a];
  out.trace = tr / n;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const double v = s[a][b] - (a == b ? out.trace : 0.0);
      out.residual = std::max(out.residual, std::fabs(v));
    }
  return out;
}

HorizRicci ricci_difference_tracefree(const CurvatureAtPoint& cM, const MapJets& mp,
                                      const CurvatureAtPoint& cN, const PointFrame& f) {
  const int n = f.m - f.k;
  if (n < 2) throw GeometryError("horizontal block has rank below 2");
  double s[kMaxDim][kMaxDim] = {};
  HorizRicci out;
  double tr = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double v = 0;
      for (int i = 0; i < f.m; ++i)
        for (int j = 0; j < f.m; ++j)
          v += 0.5 * (cM.ricci[i][j] + cM.ricci[j][i]) * f.cols[f.k + a].v[i] *
               f.cols[f.k + b].v[j];
      Vec pa{}, pb{};
      for (int c = 0; c < mp.n; ++c) {
        for (int i = 0; i < f.m; ++i) {
          pa[c] += mp.J[c][i] * f.cols[f.k + a].v[i];
          pb[c] += mp.J[c][i] * f.cols[f.k + b].v[i];
        }
      }
      for (int c = 0; c < mp.n; ++c)
        for (int d = 0; d < mp.n; ++d)
          v -= 0.5 * (cN.ricci[c][d] + cN.ricci[d][c]) * pa[c] * pb[d];
      s[a][b] = v;
      out.scale = std::max(out.scale, std::fabs(v));
    }
  for (int a = 0; a < n; ++a) tr += s[a][a];
  out.trace = tr / n;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const double v = s[a][b] - (a == b ? out.trace : 0.0);
      out.residual = std::max(out.residual, std::fabs(v));
    }
  return out;
}

Lemma55 lemma55_point(const MetricJets& mjM, const MapJets& mp, const CurvatureAtPoint& cM,
                      const MetricJets& mjN, const ConnCoeffs& DN, const CurvatureAtPoint& cN,
                      const PointFrame& f, const D1& lambda2, int hi, int hj) {
  if (mp.m != 4 || mp.n != 3) throw GeometryError("null identity needs a 4-to-3 submersion");
  using C = std::complex<double>;
  const CVec Y = null_pair(f, f.k + hi, f.k + hj);

  C ricm(0, 0);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) ricm += cM.ricci[i][j] * Y[i] * Y[j];

  CVec dy{};
  for (int c = 0; c < 3; ++c)
    for (int i = 0; i < 4; ++i) dy[c] += mp.J[c][i] * Y[i];
  C ricn(0, 0);
  for (int c = 0; c < 3; ++c)
    for (int d = 0; d < 3; ++d) ricn += cN.ricci[c][d] * dy[c] * dy[d];

  const DPlusMinus pm = dpm_forms(mjM, f);
  const HLeeValues pb = lee_values_pullback(mjM, mp, mjN, DN, f, lambda2);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const C ap = C(pm.dplus[hi] - pb.val[hi], pm.dplus[hj] - pb.val[hj]) * inv_sqrt2;
  const C am = C(pm.dminus[hi] - pb.val[hi], pm.dminus[hj] - pb.val[hj]) * inv_sqrt2;

  Lemma55 out;
  out.residual = std::abs(ricm - ricn + 0.5 * ap * am);
  out.scale = std::abs(ricm) + std::abs(ricn) + 0.5 * std::abs(ap) * std::abs(am);
  return out;
}

}  // namespace weyl
