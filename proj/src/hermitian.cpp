#include "weylcheck/hermitian.hpp"

#include <cmath>
#include <cstddef>

namespace weyl {

namespace {

double matrix_scale(const Mat& a, int m) {
  double s = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) s = std::max(s, std::fabs(a[i][j]));
  return s;
}

}  // namespace

JVals jfield_at(const JField& jf, const Vec& x) {
  if (jf.m < 2 || jf.m > kMaxDim) throw GeometryError("complex structure has unsupported dimension");
  if (jf.entries.size() != static_cast<std::size_t>(jf.m) * jf.m)
    throw GeometryError("complex structure needs m*m entries");
  JVals jv;
  jv.m = jf.m;
  for (int i = 0; i < jf.m; ++i)
    for (int j = 0; j < jf.m; ++j) {
      const D1 e = eval_d1(jf.entries[static_cast<std::size_t>(i) * jf.m + j], x, jf.m);
      jv.J[i][j] = e.v;
      for (int k = 0; k < jf.m; ++k) jv.dJ[k][i][j] = e.d[k];
    }
  return jv;
}

double compat_residual(const MetricJets& mj, const JVals& jv) {
  const int m = mj.m;
  double r = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      double sq = (i == j) ? 1.0 : 0.0;
      double pull = -mj.g[i][j];
      for (int a = 0; a < m; ++a) {
        sq += jv.J[i][a] * jv.J[a][j];
        for (int b = 0; b < m; ++b) pull += jv.J[a][i] * jv.J[b][j] * mj.g[a][b];
      }
      r = std::max(r, std::max(std::fabs(sq), std::fabs(pull)));
    }
  return r;
}

Mat kahler_form(const MetricJets& mj, const JVals& jv) {
  const double scale = 1.0 + matrix_scale(mj.g, mj.m);
  if (compat_residual(mj, jv) > 1e-8 * scale)
    throw GeometryError("almost complex structure incompatible with the metric");
  Mat w{};
  for (int i = 0; i < mj.m; ++i)
    for (int j = 0; j < mj.m; ++j) {
      double s = 0;
      for (int k = 0; k < mj.m; ++k) s += jv.J[k][i] * mj.g[k][j];
      w[i][j] = s;
    }
  return w;
}

Vec nijenhuis(const JVals& jv, int i, int j) {
  const int m = jv.m;
  VecD1 Ji, Jj;
  for (int k = 0; k < m; ++k) {
    Ji.v[k] = jv.J[k][i];
    Jj.v[k] = jv.J[k][j];
    for (int l = 0; l < m; ++l) {
      Ji.d[k][l] = jv.dJ[l][k][i];
      Jj.d[k][l] = jv.dJ[l][k][j];
    }
  }
  const Vec b1 = bracket(Ji, Jj, m);
  Vec out{};
  for (int k = 0; k < m; ++k) {
    // [Je_i, e_j]^a = -d_j J^a_i and [e_i, Je_j]^a = d_i J^a_j.
    double jb = 0;
    for (int a = 0; a < m; ++a) jb += jv.J[k][a] * (jv.dJ[i][a][j] - jv.dJ[j][a][i]);
    out[k] = b1[k] - jb;
  }
  return out;
}

double nijenhuis_max(const JVals& jv) {
  double r = 0;
  for (int i = 0; i < jv.m; ++i)
    for (int j = i + 1; j < jv.m; ++j) {
      const Vec n = nijenhuis(jv, i, j);
      for (int k = 0; k < jv.m; ++k) r = std::max(r, std::fabs(n[k]));
    }
  return r;
}

double holomorphy_residual(const MapJets& mp, const JVals& jm, const JVals& jn) {
  if (jm.m != mp.m || jn.m != mp.n)
    throw GeometryError("complex structure dimensions do not match the map");
  double r = 0;
  for (int c = 0; c < mp.n; ++c)
    for (int j = 0; j < mp.m; ++j) {
      double s = 0;
      for (int a = 0; a < mp.m; ++a) s += mp.J[c][a] * jm.J[a][j];
      for (int d = 0; d < mp.n; ++d) s -= jn.J[c][d] * mp.J[d][j];
      r = std::max(r, std::fabs(s));
    }
  return r;
}

Lemma34 lemma34(const MetricJets& mjM, const MapJets& mp, const ConnCoeffs& DM,
                const JVals& jm, const MetricJets& mjN, const ConnCoeffs& DN,
                const JVals& jn) {
  const int m = mp.m, n = mp.n;
  const double hol = holomorphy_residual(mp, jm, jn);
  if (hol > 1e-6 * (1.0 + matrix_scale(mjN.g, n)))
    throw GeometryError("map is not holomorphic for the given structures");

  // trace over g_M of (D^N_{dphi e_i} J^N)(dphi e_j).
  Vec pulled{};
  for (int i = 0; i < m; ++i) {
    Vec Z{};
    for (int c = 0; c < n; ++c) Z[c] = mp.J[c][i];
    const Mat dj = dj_along(DN, jn, Z);
    for (int j = 0; j < m; ++j) {
      if (mjM.ginv[i][j] == 0.0) continue;
      for (int c = 0; c < n; ++c) {
        double s = 0;
        for (int d = 0; d < n; ++d) s += dj[c][d] * mp.J[d][j];
        pulled[c] += mjM.ginv[i][j] * s;
      }
    }
  }

  const Vec tm = trace_dj(DM, jm, mjM);
  Vec pushed{};
  for (int c = 0; c < n; ++c) {
    double s = 0;
    for (int a = 0; a < m; ++a) s += mp.J[c][a] * tm[a];
    pushed[c] = s;
  }

  const Vec tau = tension(mjM, mp, DM, DN);
  Vec jtau{};
  for (int c = 0; c < n; ++c) {
    double s = 0;
    for (int d = 0; d < n; ++d) s += jn.J[c][d] * tau[d];
    jtau[c] = s;
  }

  Lemma34 out;
  for (int c = 0; c < n; ++c) {
    out.residual[c] = pulled[c] - pushed[c] + jtau[c];
    out.max_residual = std::max(out.max_residual, std::fabs(out.residual[c]));
    out.scale = std::max(out.scale,
                         std::fabs(pulled[c]) + std::fabs(pushed[c]) + std::fabs(jtau[c]));
  }
  return out;
}

JVals induced_positive_j(const MetricJets& mj, const PointFrame& f) {
  if (mj.m != 4 || f.m != 4 || f.k != 2)
    throw GeometryError("induced structure needs a 4-dim split with rank-2 vertical");
  JVals jv;
  jv.m = 4;
  const int pairs[2][2] = {{0, 1}, {2, 3}};
  for (const auto& p : pairs) {
    const VecD1& A = f.cols[p[0]];
    const VecD1& B = f.cols[p[1]];
    // J += B (gA)^T - A (gB)^T with first-order derivatives.
    for (int j = 0; j < 4; ++j) {
      D1 ga{}, gb{};
      for (int l = 0; l < 4; ++l) {
        ga.v += mj.g[j][l] * A.v[l];
        gb.v += mj.g[j][l] * B.v[l];
        for (int k = 0; k < 4; ++k) {
          ga.d[k] += mj.dg[k][j][l] * A.v[l] + mj.g[j][l] * A.d[l][k];
          gb.d[k] += mj.dg[k][j][l] * B.v[l] + mj.g[j][l] * B.d[l][k];
        }
      }
      for (int i = 0; i < 4; ++i) {
        jv.J[i][j] += B.v[i] * ga.v - A.v[i] * gb.v;
        for (int k = 0; k < 4; ++k)
          jv.dJ[k][i][j] += B.d[i][k] * ga.v + B.v[i] * ga.d[k] -
                            A.d[i][k] * gb.v - A.v[i] * gb.d[k];
      }
    }
  }
  return jv;
}

FibreParallel fibre_parallel_point(const MetricJets& mjM, const MapJets& mp,
                                   const ConnCoeffs& DM, const MetricJets& mjN,
                                   const ConnCoeffs& DN, const PointFrame& f) {
  if (mp.m != 4 || mp.n != 2)
    throw GeometryError("fibrewise parallelism test needs a 4-to-2 submersion");
  FibreParallel out;

  const Vec tau = tension(mjM, mp, DM, DN);
  for (int c = 0; c < mp.n; ++c) out.tension_res = std::max(out.tension_res, std::fabs(tau[c]));

  const Dilation dil = hwc_check(mjM, mp, mjN);
  out.hwc_res = dil.residual;
  out.hwc_lambda2 = dil.lambda2;

  const JVals jv = induced_positive_j(mjM, f);
  out.nijenhuis_res = nijenhuis_max(jv);

  for (int u = 0; u < f.k; ++u) {
    const Mat dj = dj_along(DM, jv, f.cols[u].v);
    out.parallel_res = std::max(out.parallel_res, matrix_scale(dj, 4));
  }
  return out;
}

}  // namespace weyl
