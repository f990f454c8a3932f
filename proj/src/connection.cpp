#include "weylcheck/connection.hpp"

#include <cmath>

namespace weyl {

ConnCoeffs christoffel(const MetricJets& mj, bool with_derivatives) {
  int m = mj.m;
  ConnCoeffs c;
  c.m = m;
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) {
        double s = 0;
        for (int a = 0; a < m; ++a)
          s += mj.ginv[k][a] * (mj.dg[i][a][j] + mj.dg[j][a][i] - mj.dg[a][i][j]);
        c.G[k][i][j] = c.G[k][j][i] = 0.5 * s;
      }
  if (with_derivatives) {
    c.has_d = true;
    for (int l = 0; l < m; ++l)
      for (int k = 0; k < m; ++k)
        for (int i = 0; i < m; ++i)
          for (int j = i; j < m; ++j) {
            double s = 0;
            for (int a = 0; a < m; ++a) {
              s += mj.dginv[l][k][a] * (mj.dg[i][a][j] + mj.dg[j][a][i] - mj.dg[a][i][j]);
              s += mj.ginv[k][a] *
                   (mj.d2g[l][i][a][j] + mj.d2g[l][j][a][i] - mj.d2g[l][a][i][j]);
            }
            c.dG[l][k][i][j] = c.dG[l][k][j][i] = 0.5 * s;
          }
  }
  return c;
}

ConnCoeffs lee_shift(const ConnCoeffs& base, const MetricJets& mj, const Vec& alpha) {
  int m = mj.m;
  ConnCoeffs c = base;
  c.has_d = false;
  Vec sharp = raise_index(mj, alpha);
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        c.G[k][i][j] += (k == i ? alpha[j] : 0.0) + (k == j ? alpha[i] : 0.0) -
                        mj.g[i][j] * sharp[k];
  return c;
}

ConnCoeffs weyl_connection(const MetricJets& mj, bool with_derivatives) {
  int m = mj.m;
  ConnCoeffs c = christoffel(mj, with_derivatives);
  Vec sharp = raise_index(mj, mj.alpha);
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        c.G[k][i][j] += (k == i ? mj.alpha[j] : 0.0) + (k == j ? mj.alpha[i] : 0.0) -
                        mj.g[i][j] * sharp[k];
  if (with_derivatives) {
    Mat dsharp{};  // dsharp[l][k] = d_l alpha^k
    for (int l = 0; l < m; ++l)
      for (int k = 0; k < m; ++k) {
        double s = 0;
        for (int a = 0; a < m; ++a)
          s += mj.dginv[l][k][a] * mj.alpha[a] + mj.ginv[k][a] * mj.dalpha[l][a];
        dsharp[l][k] = s;
      }
    for (int l = 0; l < m; ++l)
      for (int k = 0; k < m; ++k)
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j)
            c.dG[l][k][i][j] += (k == i ? mj.dalpha[l][j] : 0.0) +
                                (k == j ? mj.dalpha[l][i] : 0.0) -
                                mj.dg[l][i][j] * sharp[k] - mj.g[i][j] * dsharp[l][k];
  }
  return c;
}

ConnCoeffs weyl_from_lee(const MetricJets& mj, const Vec& alpha) {
  return lee_shift(christoffel(mj, false), mj, alpha);
}

Vec equal_trace_lee(const ConnCoeffs& d_any, const MetricJets& mj) {
  int m = mj.m;
  if (m <= 2) throw GeometryError("equal-trace construction requires dimension above 2");
  ConnCoeffs lc = christoffel(mj, false);
  Vec v{};
  for (int k = 0; k < m; ++k) {
    double s = 0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) s += mj.ginv[i][j] * (lc.G[k][i][j] - d_any.G[k][i][j]);
    v[k] = s;
  }
  Vec a = lower_index(mj, v);
  for (int k = 0; k < m; ++k) a[k] /= (m - 2);
  return a;
}

double trace_dd(const ConnCoeffs& D, const MetricJets& mj, const Jet2& f) {
  int m = mj.m;
  double s = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      double hij = f.hess(i, j);
      for (int k = 0; k < m; ++k) hij -= D.G[k][i][j] * f.g[k];
      s += mj.ginv[i][j] * hij;
    }
  return s;
}

Vec cov_deriv(const ConnCoeffs& D, const Vec& X, const VecD1& Y) {
  int m = D.m;
  Vec r{};
  for (int k = 0; k < m; ++k) {
    double s = 0;
    for (int i = 0; i < m; ++i) {
      s += X[i] * Y.d[k][i];
      for (int j = 0; j < m; ++j) s += D.G[k][i][j] * X[i] * Y.v[j];
    }
    r[k] = s;
  }
  return r;
}

Vec project_onto(const MetricJets& mj, const PointFrame& f, int from, int to, const Vec& w) {
  Vec r{};
  for (int c = from; c < to; ++c) {
    double coef = 0;
    for (int i = 0; i < mj.m; ++i)
      for (int j = 0; j < mj.m; ++j)
        coef += w[i] * mj.g[i][j] * f.cols[static_cast<size_t>(c)].v[j];
    for (int i = 0; i < mj.m; ++i) r[i] += coef * f.cols[static_cast<size_t>(c)].v[i];
  }
  return r;
}

Vec mean_curvature(const ConnCoeffs& D, const MetricJets& mj, const PointFrame& f,
                   bool of_vertical) {
  int lo = of_vertical ? 0 : f.k;
  int hi = of_vertical ? f.k : f.m;
  Vec trace{};
  for (int c = lo; c < hi; ++c) {
    const VecD1& e = f.cols[static_cast<size_t>(c)];
    Vec de = cov_deriv(D, e.v, e);
    Vec proj = of_vertical ? project_onto(mj, f, f.k, f.m, de)
                           : project_onto(mj, f, 0, f.k, de);
    for (int i = 0; i < mj.m; ++i) trace[i] += proj[i];
  }
  return trace;
}

Vec lower_index(const MetricJets& mj, const Vec& v) {
  return matvec(mj.g, v, mj.m);
}

Vec raise_index(const MetricJets& mj, const Vec& a) {
  return matvec(mj.ginv, a, mj.m);
}

Vec bott_lee(const MetricJets& mj, const PointFrame& f) {
  ConnCoeffs lc = christoffel(mj, false);
  Vec t = mean_curvature(lc, mj, f, true);
  Vec a = lower_index(mj, t);
  int codim = f.k;
  if (codim == 0) throw GeometryError("no vertical block in the frame");
  for (int i = 0; i < mj.m; ++i) a[i] /= codim;
  return a;
}

Vec minimal_weyl_lee(const MetricJets& mj, const PointFrame& f) {
  ConnCoeffs lc = christoffel(mj, false);
  int k = f.k, n = f.m - f.k;
  if (k == 0 || n == 0) throw GeometryError("split has an empty block");
  Vec tv = lower_index(mj, mean_curvature(lc, mj, f, true));
  Vec th = lower_index(mj, mean_curvature(lc, mj, f, false));
  Vec a{};
  for (int i = 0; i < mj.m; ++i) a[i] = tv[i] / k + th[i] / n;
  return a;
}

namespace {

// (D_i J)^k_j = d_i J^k_j + G^k_{ia} J^a_j - G^a_{ij} J^k_a
double dj_entry(const ConnCoeffs& D, const JVals& jv, int i, int k, int j) {
  double s = jv.dJ[i][k][j];
  for (int a = 0; a < D.m; ++a) s += D.G[k][i][a] * jv.J[a][j] - D.G[a][i][j] * jv.J[k][a];
  return s;
}

}  // namespace

Vec trace_dj(const ConnCoeffs& D, const JVals& jv, const MetricJets& mj) {
  int m = mj.m;
  Vec t{};
  for (int k = 0; k < m; ++k) {
    double s = 0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) s += mj.ginv[i][j] * dj_entry(D, jv, i, k, j);
    t[k] = s;
  }
  return t;
}

Mat dj_along(const ConnCoeffs& D, const JVals& jv, const Vec& X) {
  Mat r{};
  for (int k = 0; k < D.m; ++k)
    for (int j = 0; j < D.m; ++j) {
      double s = 0;
      for (int i = 0; i < D.m; ++i) s += X[i] * dj_entry(D, jv, i, k, j);
      r[k][j] = s;
    }
  return r;
}

Vec hermitian_weyl_lee(const MetricJets& mj, const JVals& jv) {
  int m = mj.m;
  if (m < 4 || m % 2 != 0)
    throw GeometryError("Hermitian Weyl connection requires even dimension at least 4");
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      double jj = 0, comp = 0;
      for (int a = 0; a < m; ++a) jj += jv.J[i][a] * jv.J[a][j];
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) comp += jv.J[a][i] * mj.g[a][b] * jv.J[b][j];
      if (std::fabs(jj + (i == j ? 1.0 : 0.0)) > 1e-10)
        throw GeometryError("J does not square to minus the identity");
      if (std::fabs(comp - mj.g[i][j]) > 1e-10)
        throw GeometryError("J is not compatible with the metric");
    }
  ConnCoeffs lc = christoffel(mj, false);
  Vec t0 = trace_dj(lc, jv, mj);
  // trace_g(DJ) is affine in the covector; assemble the linear part by
  // plugging coordinate covectors into the conformal shift.
  Mat L{};
  for (int c = 0; c < m; ++c) {
    Vec ec{};
    ec[c] = 1.0;
    ConnCoeffs zero;
    zero.m = m;
    ConnCoeffs shift = lee_shift(zero, mj, ec);
    JVals jconst = jv;  // same J values; dJ drops out of the difference
    for (int k = 0; k < m; ++k)
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) jconst.dJ[k][i][j] = 0.0;
    Vec col = trace_dj(shift, jconst, mj);
    for (int r = 0; r < m; ++r) L[r][c] = col[r];
  }
  Vec rhs{};
  for (int r = 0; r < m; ++r) rhs[r] = -t0[r];
  return solve(L, rhs, m, "Hermitian Weyl system");
}

HLeeValues lee_values_full(const ConnCoeffs& D, const MetricJets& mj, const PointFrame& f) {
  HLeeValues lv;
  lv.n = f.m - f.k;
  for (int b = 0; b < lv.n; ++b) {
    const VecD1& X = f.cols[static_cast<size_t>(f.k + b)];
    double s = 0;
    for (int a = 0; a < lv.n; ++a) {
      const VecD1& E = f.cols[static_cast<size_t>(f.k + a)];
      Vec de = cov_deriv(D, X.v, E);
      for (int i = 0; i < mj.m; ++i)
        for (int j = 0; j < mj.m; ++j) s += de[i] * mj.g[i][j] * E.v[j];
    }
    lv.val[static_cast<size_t>(b)] = s / lv.n;
  }
  return lv;
}

Vec hlee_covector(const MetricJets& mj, const PointFrame& f, const HLeeValues& lv) {
  Vec r{};
  for (int b = 0; b < lv.n; ++b) {
    Vec fb = lower_index(mj, f.cols[static_cast<size_t>(f.k + b)].v);
    for (int i = 0; i < mj.m; ++i) r[i] += lv.val[static_cast<size_t>(b)] * fb[i];
  }
  return r;
}

}  // namespace weyl
