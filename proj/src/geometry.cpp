#include "weylcheck/geometry.hpp"

#include <cmath>

namespace weyl {

void Chart::validate(bool allow_line) const {
  int lo = allow_line ? 1 : 2;
  if (dim < lo || dim > kMaxDim)
    throw GeometryError("chart dimension " + std::to_string(dim) + " out of range");
  if (static_cast<int>(coords.size()) != dim)
    throw GeometryError("coordinate list does not match the chart dimension");
  for (int i = 0; i < dim; ++i)
    if (!(box[i].second > box[i].first))
      throw GeometryError("degenerate sample interval for " + coords[i]);
  if (orientation != 1 && orientation != -1)
    throw GeometryError("orientation must be +1 or -1");
}

namespace {

// LDL^T pivots; positive definiteness requires all pivots above the floor.
bool positive_definite(const Mat& a, int n, double eps) {
  Mat w = a;
  for (int c = 0; c < n; ++c) {
    double piv = w[c][c];
    if (!(piv > eps)) return false;
    for (int r = c + 1; r < n; ++r) {
      double f = w[r][c] / piv;
      for (int k = c; k < n; ++k) w[r][k] -= f * w[c][k];
    }
  }
  return true;
}

}  // namespace

MetricJets metric_at(const WeylStructure& w, const Vec& x) {
  int m = w.chart.dim;
  MetricJets mj;
  mj.m = m;
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      Jet2 jet = eval_jet2(w.metric_entry(i, j), x, m);
      mj.g[i][j] = mj.g[j][i] = jet.v;
      for (int k = 0; k < m; ++k) {
        mj.dg[k][i][j] = mj.dg[k][j][i] = jet.g[k];
        for (int l = 0; l < m; ++l)
          mj.d2g[k][l][i][j] = mj.d2g[k][l][j][i] = jet.hess(k, l);
      }
    }
  if (!positive_definite(mj.g, m, w.eps))
    throw GeometryError("metric representative not positive definite at the point");
  mj.det = det(mj.g, m);
  mj.ginv = inverse(mj.g, m, "metric");
  for (int k = 0; k < m; ++k) {
    // d(g^{-1}) = -g^{-1} dg g^{-1}
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        double s = 0;
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b)
            s += mj.ginv[i][a] * mj.dg[k][a][b] * mj.ginv[b][j];
        mj.dginv[k][i][j] = -s;
      }
  }
  if (!w.lee.empty()) {
    for (int j = 0; j < m; ++j) {
      D1 a = eval_d1(w.lee[static_cast<size_t>(j)], x, m);
      mj.alpha[j] = a.v;
      for (int i = 0; i < m; ++i) mj.dalpha[i][j] = a.d[i];
    }
  }
  return mj;
}

D1 g_d1(const MetricJets& mj, int i, int j) {
  D1 s;
  s.v = mj.g[i][j];
  for (int k = 0; k < mj.m; ++k) s.d[k] = mj.dg[k][i][j];
  return s;
}

D1 ginv_d1(const MetricJets& mj, int i, int j) {
  D1 s;
  s.v = mj.ginv[i][j];
  for (int k = 0; k < mj.m; ++k) s.d[k] = mj.dginv[k][i][j];
  return s;
}

D1 alpha_d1(const MetricJets& mj, int i) {
  D1 s;
  s.v = mj.alpha[i];
  for (int k = 0; k < mj.m; ++k) s.d[k] = mj.dalpha[k][i];
  return s;
}

D1 d1_inner(const MetricJets& mj, const VecD1& u, const VecD1& v) {
  D1 s = D1::c(0.0);
  for (int i = 0; i < mj.m; ++i)
    for (int j = 0; j < mj.m; ++j)
      s = s + g_d1(mj, i, j) * vd1_comp(u, i) * vd1_comp(v, j);
  return s;
}

double halton(long long index, int base) {
  double f = 1.0, r = 0.0;
  long long i = index;
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

namespace {
constexpr int kPrimes[kMaxDim] = {2, 3, 5, 7, 11, 13};
}

std::vector<Vec> sample_points(const Chart& chart, int count, long long seed,
                               const PointFilter& filter, SampleLog* log) {
  if (count < 1) throw GeometryError("sample count must be at least 1");
  std::vector<Vec> pts;
  pts.reserve(static_cast<size_t>(count));
  if (log) log->requested = count;
  for (int t = 1; t <= count; ++t) {
    long long index = seed + t;
    Vec p{};
    for (int i = 0; i < chart.dim; ++i) {
      double u = halton(index, kPrimes[i]);
      p[i] = chart.box[i].first + (chart.box[i].second - chart.box[i].first) * u;
    }
    std::string reason;
    if (filter) reason = filter(p);
    if (reason.empty()) {
      pts.push_back(p);
    } else if (log) {
      log->rejected.emplace_back(index, reason);
    }
  }
  if (static_cast<int>(pts.size()) < (count + 1) / 2)
    throw GeometryError("sampling failure: fewer than half of " + std::to_string(count) +
                        " candidate points were acceptable");
  return pts;
}

MapJets map_jets(const std::vector<Expr>& components, const Vec& x, int m) {
  MapJets mp;
  mp.m = m;
  mp.n = static_cast<int>(components.size());
  for (int c = 0; c < mp.n; ++c) {
    Jet2 jet = eval_jet2(components[static_cast<size_t>(c)], x, m);
    mp.phi[c] = jet.v;
    for (int i = 0; i < m; ++i) {
      mp.J[c][i] = jet.g[i];
      for (int j = 0; j < m; ++j) mp.d2[c][i][j] = jet.hess(i, j);
    }
  }
  return mp;
}

D1 dphi_d1(const MapJets& mp, int c, int i) {
  D1 s;
  s.v = mp.J[c][i];
  for (int j = 0; j < mp.m; ++j) s.d[j] = mp.d2[c][i][j];
  return s;
}

std::vector<VecD1> map_kernel_d1(const MapJets& mp, double eps) {
  int n = mp.n, m = mp.m;
  // Row-reduce the n x m first-order Jacobian with column pivoting.
  std::vector<std::vector<D1>> a(static_cast<size_t>(n));
  for (int r = 0; r < n; ++r) {
    a[static_cast<size_t>(r)].resize(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) a[static_cast<size_t>(r)][static_cast<size_t>(i)] = dphi_d1(mp, r, i);
  }
  std::array<bool, kMaxDim> is_pivot{};
  std::array<int, kMaxDim> pivot_col{};
  double scale = 0;
  for (int r = 0; r < n; ++r)
    for (int i = 0; i < m; ++i) scale = std::max(scale, std::fabs(a[size_t(r)][size_t(i)].v));
  for (int r = 0; r < n; ++r) {
    int p = -1;
    double best = 0;
    for (int i = 0; i < m; ++i)
      if (!is_pivot[i] && std::fabs(a[size_t(r)][size_t(i)].v) > best) {
        best = std::fabs(a[size_t(r)][size_t(i)].v);
        p = i;
      }
    if (p < 0 || best <= eps * (1 + scale))
      throw GeometryError("differential is rank-deficient at the point");
    is_pivot[p] = true;
    pivot_col[r] = p;
    D1 piv = a[size_t(r)][size_t(p)];
    for (int i = 0; i < m; ++i) a[size_t(r)][size_t(i)] = a[size_t(r)][size_t(i)] / piv;
    for (int r2 = 0; r2 < n; ++r2) {
      if (r2 == r) continue;
      D1 f = a[size_t(r2)][size_t(p)];
      if (f.v == 0.0) {
        bool allz = true;
        for (int q = 0; q < m; ++q) allz = allz && f.d[q] == 0.0;
        if (allz) continue;
      }
      for (int i = 0; i < m; ++i)
        a[size_t(r2)][size_t(i)] = a[size_t(r2)][size_t(i)] - f * a[size_t(r)][size_t(i)];
    }
  }
  std::vector<VecD1> kernel;
  for (int f = 0; f < m; ++f) {
    if (is_pivot[f]) continue;
    VecD1 u;
    vd1_set(u, f, D1::c(1.0));
    for (int r = 0; r < n; ++r) vd1_set(u, pivot_col[r], -a[size_t(r)][size_t(f)]);
    kernel.push_back(u);
  }
  return kernel;
}

PointFrame orthonormal_frame(const MetricJets& mj, const std::vector<VecD1>& vertical,
                             int orientation, double eps) {
  int m = mj.m;
  PointFrame fr;
  fr.m = m;
  fr.k = static_cast<int>(vertical.size());
  int filled = 0;
  auto push = [&](VecD1 u, bool required) {
    double n0 = d1_inner(mj, u, u).v;
    for (int q = 0; q < filled; ++q) {
      D1 c = d1_inner(mj, u, fr.cols[static_cast<size_t>(q)]);
      u = u - c * fr.cols[static_cast<size_t>(q)];
    }
    D1 n2 = d1_inner(mj, u, u);
    if (n2.v <= eps * (1.0 + n0)) {
      if (required) throw GeometryError("degenerate distribution: dependent spanning fields");
      return false;
    }
    D1 inv = D1::c(1.0) / sqrt(n2);
    fr.cols[static_cast<size_t>(filled++)] = inv * u;
    return true;
  };
  for (const VecD1& v : vertical) push(v, true);
  for (int i = 0; i < m && filled < m; ++i) {
    VecD1 e;
    vd1_set(e, i, D1::c(1.0));
    push(e, false);
  }
  if (filled < m) throw GeometryError("failed to complete an orthonormal frame");
  Mat cols{};
  for (int c = 0; c < m; ++c)
    for (int r = 0; r < m; ++r) cols[r][c] = fr.cols[static_cast<size_t>(c)].v[r];
  if (orientation * det(cols, m) < 0) {
    fr.cols[static_cast<size_t>(m - 1)] = -1.0 * fr.cols[static_cast<size_t>(m - 1)];
  }
  return fr;
}

CVec null_pair(const PointFrame& f, int a, int b) {
  CVec u{};
  double inv = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < f.m; ++i)
    u[i] = std::complex<double>(f.cols[static_cast<size_t>(a)].v[i] * inv,
                               f.cols[static_cast<size_t>(b)].v[i] * inv);
  return u;
}

WeylStructure gauge_transform(const WeylStructure& w, const Expr& lambda,
                              const std::vector<Expr>& dlambda) {
  int m = w.chart.dim;
  if (static_cast<int>(dlambda.size()) != m)
    throw GeometryError("gauge derivative list does not match the chart dimension");
  WeylStructure out = w;
  Expr lam2inv = e_pow(lambda, -2);
  for (auto& entry : out.metric) entry = e_mul(entry, lam2inv);
  out.lee.clear();
  for (int j = 0; j < m; ++j) {
    Expr shift = e_div(dlambda[static_cast<size_t>(j)], lambda);
    if (w.lee.empty())
      out.lee.push_back(shift);
    else
      out.lee.push_back(e_add(w.lee[static_cast<size_t>(j)], shift));
  }
  return out;
}

}  // namespace weyl
