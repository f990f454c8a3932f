#include "weylcheck/morphism.hpp"

#include <cmath>

#include "weylcheck/expr.hpp"

namespace weyl {
namespace {

// Gauss-Jordan inverse over first-order scalars, pivoting on values.
void invert_d1(int n, D1 a[kMaxDim][kMaxDim], D1 inv[kMaxDim][kMaxDim], double eps) {
  double scale = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) scale = std::max(scale, std::fabs(a[i][j].v));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv[i][j] = D1::c(i == j ? 1.0 : 0.0);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::fabs(a[r][col].v) > std::fabs(a[piv][col].v)) piv = r;
    if (std::fabs(a[piv][col].v) <= eps * (1.0 + scale))
      throw GeometryError("degenerate pushed co-metric");
    if (piv != col)
      for (int j = 0; j < n; ++j) {
        std::swap(a[piv][j], a[col][j]);
        std::swap(inv[piv][j], inv[col][j]);
      }
    D1 d = a[col][col];
    for (int j = 0; j < n; ++j) {
      a[col][j] = a[col][j] / d;
      inv[col][j] = inv[col][j] / d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      D1 f = a[r][col];
      if (f.v == 0.0) {
        bool flat = true;
        for (int q = 0; q < kMaxDim; ++q) flat = flat && f.d[static_cast<size_t>(q)] == 0.0;
        if (flat) continue;
      }
      for (int j = 0; j < n; ++j) {
        a[r][j] = a[r][j] - f * a[col][j];
        inv[r][j] = inv[r][j] - f * inv[col][j];
      }
    }
  }
}

}  // namespace

Jet2 map_component_jet(const MapJets& mp, int c) {
  Jet2 j = Jet2::constant(mp.phi[c], mp.m);
  for (int i = 0; i < mp.m; ++i) j.g[static_cast<size_t>(i)] = mp.J[c][i];
  for (int i = 0; i < mp.m; ++i)
    for (int k = i; k < mp.m; ++k) j.hess(i, k) = mp.d2[c][i][k];
  return j;
}

Vec tension(const MetricJets& mjM, const MapJets& mp, const ConnCoeffs& DM,
            const ConnCoeffs& DN) {
  Vec tau{};
  for (int c = 0; c < mp.n; ++c) {
    double acc = 0;
    for (int i = 0; i < mp.m; ++i)
      for (int j = 0; j < mp.m; ++j) {
        double term = mp.d2[c][i][j];
        for (int k = 0; k < mp.m; ++k) term -= DM.G[k][i][j] * mp.J[c][k];
        for (int a = 0; a < mp.n; ++a)
          for (int b = 0; b < mp.n; ++b) term += DN.G[c][a][b] * mp.J[a][i] * mp.J[b][j];
        acc += mjM.ginv[i][j] * term;
      }
    tau[c] = acc;
  }
  return tau;
}

Dilation hwc_check(const MetricJets& mjM, const MapJets& mp, const MetricJets& mjN) {
  Dilation out;
  const int n = mp.n;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double v = 0;
      for (int i = 0; i < mp.m; ++i)
        for (int j = 0; j < mp.m; ++j) v += mp.J[a][i] * mjM.ginv[i][j] * mp.J[b][j];
      out.p[a][b] = v;
    }
  double tr = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) tr += out.p[a][b] * mjN.g[a][b];
  out.lambda2 = tr / n;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      out.residual = std::max(out.residual,
                              std::fabs(out.p[a][b] - out.lambda2 * mjN.ginv[a][b]));
  return out;
}

D1 dilation_d1(const MetricJets& mjM, const MapJets& mp, const MetricJets& mjN) {
  const int m = mp.m, n = mp.n;
  D1 acc = D1::c(0.0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      D1 p = D1::c(0.0);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          p = p + dphi_d1(mp, a, i) * ginv_d1(mjM, i, j) * dphi_d1(mp, b, j);
      D1 gn = D1::c(mjN.g[a][b]);
      for (int j = 0; j < m; ++j) {
        double dv = 0;
        for (int s = 0; s < n; ++s) dv += mjN.dg[s][a][b] * mp.J[s][j];
        gn.d[static_cast<size_t>(j)] = dv;
      }
      acc = acc + p * gn;
    }
  return (1.0 / n) * acc;
}

ChainRule chain_rule(const MetricJets& mjM, const MapJets& mp, const ConnCoeffs& DM,
                     const MetricJets& mjN, const ConnCoeffs& DN, const Jet2& fy) {
  ChainRule out;
  std::vector<Jet2> inner;
  inner.reserve(static_cast<size_t>(mp.n));
  for (int c = 0; c < mp.n; ++c) inner.push_back(map_component_jet(mp, c));
  Jet2 fphi = jet_compose(fy, inner);
  out.lhs = trace_dd(DM, mjM, fphi);

  Vec tau = tension(mjM, mp, DM, DN);
  double dft = 0;
  for (int c = 0; c < mp.n; ++c) dft += fy.g[static_cast<size_t>(c)] * tau[c];

  Dilation dil = hwc_check(mjM, mp, mjN);
  double hterm = 0;
  for (int a = 0; a < mp.n; ++a)
    for (int b = 0; b < mp.n; ++b) {
      double hn = fy.hess(a, b);
      for (int c = 0; c < mp.n; ++c) hn -= DN.G[c][a][b] * fy.g[static_cast<size_t>(c)];
      hterm += hn * dil.p[a][b];
    }
  out.rhs = dft + hterm;
  out.residual = std::fabs(out.lhs - out.rhs);
  out.scale = std::fabs(out.lhs) + std::fabs(dft) + std::fabs(hterm);
  return out;
}

std::vector<VecD1> horizontal_lifts(const MetricJets& mjM, const MapJets& mp, double eps) {
  const int m = mp.m, n = mp.n;
  D1 K[kMaxDim][kMaxDim];
  D1 inv[kMaxDim][kMaxDim];
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      D1 p = D1::c(0.0);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          p = p + dphi_d1(mp, a, i) * ginv_d1(mjM, i, j) * dphi_d1(mp, b, j);
      K[a][b] = p;
    }
  invert_d1(n, K, inv, eps);

  std::vector<VecD1> lifts(static_cast<size_t>(n));
  for (int c = 0; c < n; ++c) {
    VecD1 h;
    for (int i = 0; i < m; ++i) {
      D1 acc = D1::c(0.0);
      for (int j = 0; j < m; ++j)
        for (int d = 0; d < n; ++d)
          acc = acc + ginv_d1(mjM, i, j) * dphi_d1(mp, d, j) * inv[d][c];
      vd1_set(h, i, acc);
    }
    lifts[static_cast<size_t>(c)] = h;
  }
  return lifts;
}

Vec integrability(const MetricJets& mjM, const PointFrame& f, int a, int b) {
  Vec w = bracket(f.cols[static_cast<size_t>(a)], f.cols[static_cast<size_t>(b)], mjM.m);
  Vec v = project_onto(mjM, f, 0, f.k, w);
  for (int i = 0; i < mjM.m; ++i) v[i] = -v[i];
  return v;
}

HLeeValues lee_values_pullback(const MetricJets& mjM, const MapJets& mp,
                               const MetricJets& mjN, const ConnCoeffs& DN,
                               const PointFrame& f, const D1& lambda2) {
  const int m = mp.m, n = mp.n;
  HLeeValues lv;
  lv.n = n;
  if (f.m != mjM.m || f.m - f.k != n)
    throw GeometryError("frame horizontal block does not match the map");
  if (lambda2.v <= 0) throw GeometryError("square dilation vanishes at the point");

  // W_a = dphi(F_{k+a}) with domain-coordinate derivatives.
  double W[kMaxDim][kMaxDim] = {};
  double dW[kMaxDim][kMaxDim][kMaxDim] = {};  // dW[a][c][j] = d_j W_a^c
  for (int a = 0; a < n; ++a) {
    const VecD1& F = f.cols[static_cast<size_t>(f.k + a)];
    for (int c = 0; c < n; ++c) {
      double v = 0;
      for (int i = 0; i < m; ++i) v += mp.J[c][i] * F.v[i];
      W[a][c] = v;
      for (int j = 0; j < m; ++j) {
        double dv = 0;
        for (int i = 0; i < m; ++i) dv += mp.d2[c][i][j] * F.v[i] + mp.J[c][i] * F.d[i][j];
        dW[a][c][j] = dv;
      }
    }
  }

  for (int b = 0; b < n; ++b) {
    const VecD1& X = f.cols[static_cast<size_t>(f.k + b)];
    Vec JX = zero_vec();
    for (int c = 0; c < n; ++c)
      for (int i = 0; i < m; ++i) JX[c] += mp.J[c][i] * X.v[i];
    double s = 0;
    for (int a = 0; a < n; ++a) {
      Vec cw = zero_vec();
      for (int c = 0; c < n; ++c) {
        double v = 0;
        for (int j = 0; j < m; ++j) v += X.v[j] * dW[a][c][j];
        for (int p = 0; p < n; ++p)
          for (int q = 0; q < n; ++q) v += DN.G[c][p][q] * JX[p] * W[a][q];
        cw[c] = v;
      }
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) s += cw[c] * mjN.g[c][d] * W[a][d];
    }
    lv.val[static_cast<size_t>(b)] = s / (n * lambda2.v);
  }
  return lv;
}

double partial_lee_difference(const MetricJets& mjM, const MapJets& mp,
                              const MetricJets& mjN, const ConnCoeffs& DM,
                              const ConnCoeffs& DN, const PointFrame& f,
                              const D1& lambda2) {
  HLeeValues full = lee_values_full(DM, mjM, f);
  HLeeValues pb = lee_values_pullback(mjM, mp, mjN, DN, f, lambda2);
  double r = 0;
  for (int b = 0; b < full.n; ++b)
    r = std::max(r, std::fabs(pb.val[static_cast<size_t>(b)] -
                              full.val[static_cast<size_t>(b)]));
  return r;
}

Fundamental fundamental_equation(const MetricJets& mjM, const MapJets& mp,
                                 const ConnCoeffs& DM, const MetricJets& mjN,
                                 const ConnCoeffs& DN, const PointFrame& f,
                                 const D1& lambda2) {
  const int m = mp.m, n = mp.n;
  Fundamental out;
  out.n = n;
  if (lambda2.v <= 0) throw GeometryError("square dilation vanishes at the point");

  Vec tau = tension(mjM, mp, DM, DN);
  ConnCoeffs lc = christoffel(mjM, false);
  Vec traceB = mean_curvature(lc, mjM, f, true);
  Vec bflat = lower_index(mjM, traceB);

  for (int b = 0; b < n; ++b) {
    const VecD1& X = f.cols[static_cast<size_t>(f.k + b)];
    Vec JX = zero_vec();
    for (int c = 0; c < n; ++c)
      for (int i = 0; i < m; ++i) JX[c] += mp.J[c][i] * X.v[i];

    double lhs = 0;
    for (int c = 0; c < n; ++c)
      for (int d = 0; d < n; ++d) lhs += mjN.g[c][d] * tau[c] * JX[d];
    lhs /= lambda2.v;

    double am = (m - 2) * dot(mjM.alpha, X.v, m);
    double an = 0;
    for (int c = 0; c < n; ++c) an += mjN.alpha[c] * JX[c];
    an *= (n - 2);
    double dln = 0;
    for (int j = 0; j < m; ++j) dln += lambda2.d[static_cast<size_t>(j)] * X.v[j];
    dln = (n - 2) * 0.5 * dln / lambda2.v;
    double bterm = dot(bflat, X.v, m);

    double res = lhs - (am - an - dln - bterm);
    out.residual[b] = res;
    out.max_residual = std::max(out.max_residual, std::fabs(res));
    double sc = std::fabs(lhs) + std::fabs(am) + std::fabs(an) + std::fabs(dln) +
                std::fabs(bterm);
    out.scale = std::max(out.scale, sc);
  }
  return out;
}

CodomainLee required_codomain_lee(const WeylStructure& M, const WeylStructure& N,
                                  const std::vector<Expr>& phi, const Vec& x,
                                  double fd_h) {
  const int m = M.chart.dim;
  const int n = N.chart.dim;
  CodomainLee out;
  out.n = n;
  out.minimal_route = (n == 2);

  auto candidate = [&](const Vec& xx) -> Vec {
    MetricJets mj = metric_at(M, xx);
    MapJets mp = map_jets(phi, xx, m);
    std::vector<VecD1> kernel = map_kernel_d1(mp, M.eps);
    PointFrame f = orthonormal_frame(mj, kernel, M.chart.orientation, M.eps);
    ConnCoeffs lc = christoffel(mj, false);
    if (n == 2) {
      ConnCoeffs dm = weyl_connection(mj, false);
      Vec tr = mean_curvature(dm, mj, f, true);
      Vec r = zero_vec();
      r[0] = max_abs(tr, m);
      return r;
    }
    Vec y = mp.phi;
    MetricJets nj = metric_at(N, y);
    D1 l2 = dilation_d1(mj, mp, nj);
    if (l2.v <= 0) throw GeometryError("square dilation vanishes at the point");
    Vec bflat = lower_index(mj, mean_curvature(lc, mj, f, true));
    std::vector<VecD1> lifts = horizontal_lifts(mj, mp, M.eps);
    Vec cand = zero_vec();
    for (int c = 0; c < n; ++c) {
      const VecD1& h = lifts[static_cast<size_t>(c)];
      double am = dot(mj.alpha, h.v, m);
      double bt = dot(bflat, h.v, m);
      double dln = 0;
      for (int j = 0; j < m; ++j) dln += l2.d[static_cast<size_t>(j)] * h.v[j];
      dln = 0.5 * dln / l2.v;
      cand[c] = ((m - 2) * am - bt) / (n - 2) - dln;
    }
    return cand;
  };

  Vec base = candidate(x);
  if (out.minimal_route) {
    out.minimal_res = base[0];
    return out;
  }
  out.value = base;

  MetricJets mj = metric_at(M, x);
  MapJets mp = map_jets(phi, x, m);
  std::vector<VecD1> kernel = map_kernel_d1(mp, M.eps);
  PointFrame f = orthonormal_frame(mj, kernel, M.chart.orientation, M.eps);
  for (int u = 0; u < f.k; ++u) {
    Vec xp = x, xm = x;
    for (int i = 0; i < m; ++i) {
      xp[i] += fd_h * f.cols[static_cast<size_t>(u)].v[i];
      xm[i] -= fd_h * f.cols[static_cast<size_t>(u)].v[i];
    }
    Vec cp = candidate(xp);
    Vec cm = candidate(xm);
    for (int c = 0; c < n; ++c)
      out.basic_res = std::max(out.basic_res, std::fabs(cp[c] - cm[c]) / (2 * fd_h));
  }
  return out;
}

std::vector<Expr> harmonic_test_functions(const Chart& codomain) {
  std::vector<Expr> out;
  const std::string a = codomain.coords[0];
  if (codomain.dim == 1) {
    out.push_back(parse_expr(a, codomain.coords));
    return out;
  }
  const std::string b = codomain.coords[1];
  for (const std::string& s :
       {a, b, a + "^2-" + b + "^2", a + "*" + b, a + "^3-3*" + a + "*" + b + "^2"})
    out.push_back(parse_expr(s, codomain.coords));
  return out;
}

}  // namespace weyl
