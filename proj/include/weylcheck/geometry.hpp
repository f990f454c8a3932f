#pragma once

// Charts, gauge-fixed Weyl structures, smooth maps, point sampling and
// adapted orthonormal frames carrying first-order derivative data.

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "weylcheck/expr.hpp"
#include "weylcheck/linalg.hpp"

namespace weyl {

struct Chart {
  int dim = 0;
  std::vector<std::string> coords;
  std::array<std::pair<double, double>, kMaxDim> box{};
  int orientation = 1;

  // Codomain charts of real-line targets are allowed dim 1.
  void validate(bool allow_line = false) const;
};

// Row-major upper-triangle index for symmetric m x m expression arrays.
inline int packed_index(int i, int j, int m) {
  if (i > j) std::swap(i, j);
  return i * m - i * (i - 1) / 2 + (j - i);
}

struct WeylStructure {
  Chart chart;
  std::vector<Expr> metric;  // m(m+1)/2 entries, packed_index layout
  std::vector<Expr> lee;     // m entries, or empty for a zero Lee form
  double eps = 1e-10;

  const Expr& metric_entry(int i, int j) const {
    return metric[static_cast<size_t>(packed_index(i, j, chart.dim))];
  }
};

// All pointwise metric data needed downstream, computed from order-2 jets.
struct MetricJets {
  int m = 0;
  Mat g{}, ginv{};
  double det = 0;
  double dg[kMaxDim][kMaxDim][kMaxDim] = {};     // dg[k][i][j] = d_k g_ij
  double dginv[kMaxDim][kMaxDim][kMaxDim] = {};  // d_k (g^{-1})_ij
  double d2g[kMaxDim][kMaxDim][kMaxDim][kMaxDim] = {};  // d2g[k][l][i][j]
  Vec alpha{};    // Lee form values
  Mat dalpha{};   // dalpha[i][j] = d_i alpha_j
};

// Throws GeometryError when the representative fails positive definiteness.
MetricJets metric_at(const WeylStructure& w, const Vec& x);

D1 g_d1(const MetricJets& mj, int i, int j);
D1 ginv_d1(const MetricJets& mj, int i, int j);
D1 alpha_d1(const MetricJets& mj, int i);
// g(u, v) carried to first order.
D1 d1_inner(const MetricJets& mj, const VecD1& u, const VecD1& v);

double halton(long long index, int base);

struct SampleLog {
  int requested = 0;
  std::vector<std::pair<long long, std::string>> rejected;  // (index, reason)
};

// Returns "" to accept a candidate point, otherwise the rejection reason.
using PointFilter = std::function<std::string(const Vec&)>;

// Halton candidates at indices seed+1 .. seed+count mapped into the box;
// throws when fewer than count/2 survive the filter.
std::vector<Vec> sample_points(const Chart& chart, int count, long long seed,
                               const PointFilter& filter = {}, SampleLog* log = nullptr);

struct MapJets {
  int m = 0, n = 0;
  Vec phi{};
  double J[kMaxDim][kMaxDim] = {};   // J[c][i] = d_i phi^c
  double d2[kMaxDim][kMaxDim][kMaxDim] = {};  // d2[c][i][j]
};

MapJets map_jets(const std::vector<Expr>& components, const Vec& x, int m);

// Differential as first-order data: entry (c,i) with derivatives d2[c][i][.].
D1 dphi_d1(const MapJets& mp, int c, int i);

// Basis of ker dphi with exact first-order derivative propagation.
// Throws when dphi drops below full rank n at the point.
std::vector<VecD1> map_kernel_d1(const MapJets& mp, double eps);

struct PointFrame {
  int m = 0;
  int k = 0;  // leading columns spanning the vertical distribution
  std::array<VecD1, kMaxDim> cols;
};

// Gram-Schmidt against g in first-order arithmetic. Vertical spans come
// first, coordinate directions complete the frame. The assembled frame is
// made positively oriented (chart orientation times column determinant)
// by negating the last column when needed.
PointFrame orthonormal_frame(const MetricJets& mj, const std::vector<VecD1>& vertical,
                             int orientation, double eps);

// U = (cols[a] + i cols[b]) / sqrt(2): g(U,U) = 0, g(U, conj U) = 1.
CVec null_pair(const PointFrame& f, int a, int b);

// Same Weyl structure in the gauge g -> g/lambda^2, alpha -> alpha + dlambda/lambda.
// The caller supplies dlambda componentwise since trees are not differentiated.
WeylStructure gauge_transform(const WeylStructure& w, const Expr& lambda,
                              const std::vector<Expr>& dlambda);

// Deterministic uniform variates, identical across platforms.
struct Rng {
  explicit Rng(unsigned long long seed) : state(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  unsigned long long state;
  unsigned long long next() {
    // splitmix64
    state += 0x9e3779b97f4a7c15ull;
    unsigned long long z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  double uniform(double a, double b) {
    double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
    return a + (b - a) * u;
  }
};

}  // namespace weyl
