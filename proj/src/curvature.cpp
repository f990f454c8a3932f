#include "weylcheck/curvature.hpp"

#include <cmath>

namespace weyl {
namespace {

int eps3(int i, int j, int k) {
  if (i == j || j == k || i == k) return 0;
  if ((i == 0 && j == 1 && k == 2) || (i == 1 && j == 2 && k == 0) ||
      (i == 2 && j == 0 && k == 1))
    return 1;
  return -1;
}

}  // namespace

void coeff_curvature(int m, const double A[kMaxDim][kMaxDim][kMaxDim],
                     const double dA[kMaxDim][kMaxDim][kMaxDim][kMaxDim],
                     double R[kMaxDim][kMaxDim][kMaxDim][kMaxDim]) {
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < m; ++l)
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          double v = dA[i][k][j][l] - dA[j][k][i][l];
          for (int a = 0; a < m; ++a)
            v += A[k][i][a] * A[a][j][l] - A[k][j][a] * A[a][i][l];
          R[k][l][i][j] = v;
        }
}

CurvatureAtPoint curvature_at(const ConnCoeffs& D, const MetricJets& mj) {
  if (!D.has_d) throw GeometryError("curvature requires connection derivatives");
  const int m = D.m;
  CurvatureAtPoint out;
  out.m = m;
  coeff_curvature(m, D.G, D.dG, out.R);

  for (int j = 0; j < m; ++j)
    for (int l = 0; l < m; ++l) {
      double v = 0;
      for (int i = 0; i < m; ++i) v += out.R[i][l][i][j];
      out.ricci[j][l] = v;
    }

  out.scalar = 0;
  for (int j = 0; j < m; ++j)
    for (int l = 0; l < m; ++l) out.scalar += mj.ginv[j][l] * out.ricci[j][l];

  Mat sym = zero_mat();
  for (int j = 0; j < m; ++j)
    for (int l = 0; l < m; ++l) sym[j][l] = 0.5 * (out.ricci[j][l] + out.ricci[l][j]);
  for (int j = 0; j < m; ++j)
    for (int l = 0; l < m; ++l)
      out.ricci_sym0[j][l] = sym[j][l] - (out.scalar / m) * mj.g[j][l];

  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) out.faraday[i][j] = mj.dalpha[i][j] - mj.dalpha[j][i];

  out.bianchi_residual = 0;
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < m; ++l)
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          double c = out.R[k][l][i][j] + out.R[k][i][j][l] + out.R[k][j][l][i];
          out.bianchi_residual = std::max(out.bianchi_residual, std::fabs(c));
        }
  return out;
}

double einstein_residual(const CurvatureAtPoint& c) {
  double r = 0;
  for (int j = 0; j < c.m; ++j)
    for (int l = 0; l < c.m; ++l) r = std::max(r, std::fabs(c.ricci_sym0[j][l]));
  return r;
}

WeylSplit weyl_split(const MetricJets& mj, int orientation, double eps) {
  const int m = mj.m;
  if (m != 4) throw GeometryError("chirality split requires dimension 4");
  ConnCoeffs lc = christoffel(mj, true);
  CurvatureAtPoint cur;
  cur.m = m;
  coeff_curvature(m, lc.G, lc.dG, cur.R);

  double Rl[kMaxDim][kMaxDim][kMaxDim][kMaxDim] = {};
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < m; ++l)
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          double v = 0;
          for (int a = 0; a < m; ++a) v += mj.g[k][a] * cur.R[a][l][i][j];
          Rl[k][l][i][j] = v;
        }

  Mat ric = zero_mat();
  for (int j = 0; j < m; ++j)
    for (int l = 0; l < m; ++l) {
      double v = 0;
      for (int i = 0; i < m; ++i) v += cur.R[i][l][i][j];
      ric[j][l] = v;
    }
  double s = 0;
  for (int j = 0; j < m; ++j)
    for (int l = 0; l < m; ++l) s += mj.ginv[j][l] * ric[j][l];

  Mat p = zero_mat();
  for (int j = 0; j < m; ++j)
    for (int l = 0; l < m; ++l) {
      double symr = 0.5 * (ric[j][l] + ric[l][j]);
      p[j][l] = (symr - s / (2.0 * (m - 1)) * mj.g[j][l]) / (m - 2);
    }

  double Wl[kMaxDim][kMaxDim][kMaxDim][kMaxDim] = {};
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < m; ++l)
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          double kn = mj.g[k][i] * p[l][j] - mj.g[k][j] * p[l][i] +
                      mj.g[l][j] * p[k][i] - mj.g[l][i] * p[k][j];
          Wl[k][l][i][j] = Rl[k][l][i][j] - kn;
        }

  PointFrame fr = orthonormal_frame(mj, {}, orientation, eps);
  double wf[kMaxDim][kMaxDim][kMaxDim][kMaxDim] = {};
  double tmp1[kMaxDim][kMaxDim][kMaxDim][kMaxDim] = {};
  double tmp2[kMaxDim][kMaxDim][kMaxDim][kMaxDim] = {};
  double tmp3[kMaxDim][kMaxDim][kMaxDim][kMaxDim] = {};
  for (int a = 0; a < m; ++a)
    for (int l = 0; l < m; ++l)
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          double v = 0;
          for (int k = 0; k < m; ++k) v += Wl[k][l][i][j] * fr.cols[a].v[k];
          tmp1[a][l][i][j] = v;
        }
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          double v = 0;
          for (int l = 0; l < m; ++l) v += tmp1[a][l][i][j] * fr.cols[b].v[l];
          tmp2[a][b][i][j] = v;
        }
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        for (int j = 0; j < m; ++j) {
          double v = 0;
          for (int i = 0; i < m; ++i) v += tmp2[a][b][i][j] * fr.cols[c].v[i];
          tmp3[a][b][c][j] = v;
        }
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d) {
          double v = 0;
          for (int j = 0; j < m; ++j) v += tmp3[a][b][c][j] * fr.cols[d].v[j];
          wf[a][b][c][d] = v;
        }

  static const int pairs[6][2] = {{0, 1}, {2, 3}, {0, 2}, {3, 1}, {0, 3}, {1, 2}};
  double M[6][6];
  for (int p6 = 0; p6 < 6; ++p6)
    for (int q = 0; q < 6; ++q)
      M[p6][q] = wf[pairs[p6][0]][pairs[p6][1]][pairs[q][0]][pairs[q][1]];

  WeylSplit out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      out.wplus[i][j] = 0.5 * (M[2 * i][2 * j] + M[2 * i][2 * j + 1] +
                               M[2 * i + 1][2 * j] + M[2 * i + 1][2 * j + 1]);
      out.wminus[i][j] = 0.5 * (M[2 * i][2 * j] - M[2 * i][2 * j + 1] -
                                M[2 * i + 1][2 * j] + M[2 * i + 1][2 * j + 1]);
    }

  const double s2 = 1.0 / std::sqrt(2.0);
  double rec[6][6] = {};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double cp_i[6] = {}, cp_j[6] = {}, cm_i[6] = {}, cm_j[6] = {};
      cp_i[2 * i] = s2;
      cp_i[2 * i + 1] = s2;
      cm_i[2 * i] = s2;
      cm_i[2 * i + 1] = -s2;
      cp_j[2 * j] = s2;
      cp_j[2 * j + 1] = s2;
      cm_j[2 * j] = s2;
      cm_j[2 * j + 1] = -s2;
      for (int p6 = 0; p6 < 6; ++p6)
        for (int q = 0; q < 6; ++q)
          rec[p6][q] += out.wplus[i][j] * cp_i[p6] * cp_j[q] +
                        out.wminus[i][j] * cm_i[p6] * cm_j[q];
    }
  out.reassembly = 0;
  out.wmax = 0;
  for (int p6 = 0; p6 < 6; ++p6)
    for (int q = 0; q < 6; ++q) {
      out.reassembly = std::max(out.reassembly, std::fabs(M[p6][q] - rec[p6][q]));
      out.wmax = std::max(out.wmax, std::fabs(M[p6][q]));
    }
  return out;
}

double wsplit_max(const double w[3][3]) {
  double r = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r = std::max(r, std::fabs(w[i][j]));
  return r;
}

GtResiduals gauduchon_tod_residuals(const MetricJets& mj, const CurvatureAtPoint& cur,
                                    const D1& kfun, int orientation) {
  const int m = mj.m;
  if (m != 3) throw GeometryError("this check requires dimension 3");
  GtResiduals out;
  out.k = kfun.v;
  out.scalar = cur.scalar;
  out.scalar_res = std::fabs(cur.scalar - 1.5 * kfun.v * kfun.v);

  Vec beta = zero_vec();
  for (int i = 0; i < m; ++i) beta[i] = kfun.d[i] - kfun.v * mj.alpha[i];
  Vec bsharp = matvec(mj.ginv, beta, m);
  double sg = std::sqrt(mj.det);
  out.star_res = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      double star = 0;
      for (int l = 0; l < m; ++l) star += bsharp[l] * orientation * sg * eps3(l, i, j);
      out.star_res = std::max(out.star_res, std::fabs(star - cur.faraday[i][j]));
    }
  return out;
}

double gt_flatness_residual(const MetricJets& mj, const ConnCoeffs& D, const D1& kfun,
                            int orientation) {
  const int m = mj.m;
  if (m != 3) throw GeometryError("this check requires dimension 3");
  if (!D.has_d) throw GeometryError("curvature requires connection derivatives");

  double sg = std::sqrt(mj.det);
  Vec dsg = zero_vec();
  for (int l = 0; l < m; ++l) {
    double tr = 0;
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) tr += mj.ginv[a][b] * mj.dg[l][a][b];
    dsg[l] = 0.5 * sg * tr;
  }

  double c[kMaxDim][kMaxDim][kMaxDim] = {};
  double dc[kMaxDim][kMaxDim][kMaxDim][kMaxDim] = {};
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        double v = 0;
        for (int p = 0; p < m; ++p) v += eps3(i, j, p) * mj.ginv[p][k];
        c[k][i][j] = orientation * sg * v;
        for (int l = 0; l < m; ++l) {
          double dv = 0;
          for (int p = 0; p < m; ++p)
            dv += eps3(i, j, p) * (dsg[l] * mj.ginv[p][k] + sg * mj.dginv[l][p][k]);
          dc[l][k][i][j] = orientation * dv;
        }
      }

  double A[kMaxDim][kMaxDim][kMaxDim] = {};
  double dA[kMaxDim][kMaxDim][kMaxDim][kMaxDim] = {};
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        A[k][i][j] = D.G[k][i][j] + 0.5 * kfun.v * c[k][i][j];
        if (k == j) A[k][i][j] -= mj.alpha[i];
        for (int l = 0; l < m; ++l) {
          dA[l][k][i][j] = D.dG[l][k][i][j] +
                           0.5 * (kfun.d[l] * c[k][i][j] + kfun.v * dc[l][k][i][j]);
          if (k == j) dA[l][k][i][j] -= mj.dalpha[l][i];
        }
      }

  double R[kMaxDim][kMaxDim][kMaxDim][kMaxDim];
  coeff_curvature(m, A, dA, R);
  double r = 0;
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < m; ++l)
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) r = std::max(r, std::fabs(R[k][l][i][j]));
  return r;
}

}  // namespace weyl
