#pragma once

// Connection coefficients: Levi-Civita and Weyl connections, trace-based
// Lee-form constructions, mean curvatures of a split, and Lee values of
// partial connections over the horizontal distribution.

#include <array>

#include "weylcheck/geometry.hpp"
#include "weylcheck/linalg.hpp"

namespace weyl {

struct ConnCoeffs {
  int m = 0;
  double G[kMaxDim][kMaxDim][kMaxDim] = {};  // G[k][i][j], symmetric in (i,j)
  bool has_d = false;
  double dG[kMaxDim][kMaxDim][kMaxDim][kMaxDim] = {};  // dG[l][k][i][j] = d_l G[k][i][j]
};

ConnCoeffs christoffel(const MetricJets& mj, bool with_derivatives);

// Levi-Civita plus the torsion-free conformal shift of the structure's
// own Lee form; derivatives use the declared first-order Lee data.
ConnCoeffs weyl_connection(const MetricJets& mj, bool with_derivatives);

// Same shift applied to an arbitrary base connection with explicit
// covector values (no derivative data).
ConnCoeffs lee_shift(const ConnCoeffs& base, const MetricJets& mj, const Vec& alpha);

ConnCoeffs weyl_from_lee(const MetricJets& mj, const Vec& alpha);

// Covector recovered from the trace of (Levi-Civita minus D); requires m > 2.
Vec equal_trace_lee(const ConnCoeffs& d_any, const MetricJets& mj);

// trace_g(D df) for a scalar order-2 jet.
double trace_dd(const ConnCoeffs& D, const MetricJets& mj, const Jet2& f);

// (D_X Y)^k = X^i (d_i Y^k + G^k_{ij} Y^j) for a first-order field Y.
Vec cov_deriv(const ConnCoeffs& D, const Vec& X, const VecD1& Y);

// g-orthogonal projection of w onto the span of frame columns [from, to).
Vec project_onto(const MetricJets& mj, const PointFrame& f, int from, int to, const Vec& w);

// trace_g of the second fundamental form of the vertical (or horizontal)
// distribution with respect to D: sum over the orthonormal block of the
// complementary projection of D_E E.
Vec mean_curvature(const ConnCoeffs& D, const MetricJets& mj, const PointFrame& f,
                   bool of_vertical);

Vec lower_index(const MetricJets& mj, const Vec& v);
Vec raise_index(const MetricJets& mj, const Vec& a);

// (1/(m-n)) trace_g(B^V)^flat of the Levi-Civita connection.
Vec bott_lee(const MetricJets& mj, const PointFrame& f);

// Lee form making both blocks of the split minimal.
Vec minimal_weyl_lee(const MetricJets& mj, const PointFrame& f);

struct JVals {
  int m = 0;
  Mat J{};                                     // J[i][j] = J^i_j
  double dJ[kMaxDim][kMaxDim][kMaxDim] = {};   // dJ[k][i][j] = d_k J^i_j
};

// trace_g(DJ)^k = g^{ij} (D_i J)^k_j.
Vec trace_dj(const ConnCoeffs& D, const JVals& jv, const MetricJets& mj);

// (D_X J)^k_j as a matrix for a direction X.
Mat dj_along(const ConnCoeffs& D, const JVals& jv, const Vec& X);

// The unique Lee form whose Weyl connection annihilates trace_g(DJ);
// requires even m >= 4 and a compatible J.
Vec hermitian_weyl_lee(const MetricJets& mj, const JVals& jv);

// Lee values of the partial connection induced over the horizontal block:
// val[b] = (1/n) sum_a g(D_{F_b} F_a, F_a), a, b ranging over the block.
struct HLeeValues {
  int n = 0;
  std::array<double, kMaxDim> val{};
};

HLeeValues lee_values_full(const ConnCoeffs& D, const MetricJets& mj, const PointFrame& f);

// Converts per-column horizontal values into the covector annihilating
// the vertical block.
Vec hlee_covector(const MetricJets& mj, const PointFrame& f, const HLeeValues& lv);

}  // namespace weyl
