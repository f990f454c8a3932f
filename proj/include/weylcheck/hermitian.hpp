#pragma once

// Almost-complex data on a Weyl structure: evaluation of declared J
// fields, compatibility and Kaehler form, the Nijenhuis tensor, the
// holomorphic-map balance of DJ traces, the induced positive structure of
// a rank-2 vertical split in dimension 4, and the pointwise data behind
// the fibrewise-parallelism equivalence.

#include <vector>

#include "weylcheck/connection.hpp"
#include "weylcheck/geometry.hpp"
#include "weylcheck/morphism.hpp"

namespace weyl {

struct JField {
  int m = 0;
  std::vector<Expr> entries;  // m*m, row-major J^i_j
};

JVals jfield_at(const JField& jf, const Vec& x);

// max of |J^2 + I| and |g(J.,J.) - g| entries.
double compat_residual(const MetricJets& mj, const JVals& jv);

// w[i][j] = g(J e_i, e_j); throws when J is not compatible.
Mat kahler_form(const MetricJets& mj, const JVals& jv);

// N(e_i, e_j) = [Je_i, Je_j] - J[Je_i, e_j] - J[e_i, Je_j].
Vec nijenhuis(const JVals& jv, int i, int j);
double nijenhuis_max(const JVals& jv);

// max |dphi o J^M - J^N o dphi|.
double holomorphy_residual(const MapJets& mp, const JVals& jm, const JVals& jn);

struct Lemma34 {
  Vec residual{};  // codomain components
  double max_residual = 0;
  double scale = 0;
};

// trace_c phi*(D^N J^N) - dphi(trace_c(D^M J^M)) + J^N(trace_c(D dphi)).
Lemma34 lemma34(const MetricJets& mjM, const MapJets& mp, const ConnCoeffs& DM,
                const JVals& jm, const MetricJets& mjN, const ConnCoeffs& DN,
                const JVals& jn);

// Rotation by 90 degrees inside the vertical and horizontal blocks of an
// oriented orthonormal frame; dimension 4 with a rank-2 vertical only.
JVals induced_positive_j(const MetricJets& mj, const PointFrame& f);

struct FibreParallel {
  double tension_res = 0;
  double hwc_res = 0;
  double hwc_lambda2 = 0;
  double nijenhuis_res = 0;
  double parallel_res = 0;  // max |D_U J| over the vertical frame block
};

// Pointwise data for the equivalence (harmonic morphism and integrable
// induced J) == (induced J parallel along the fibres).
FibreParallel fibre_parallel_point(const MetricJets& mjM, const MapJets& mp,
                                   const ConnCoeffs& DM, const MetricJets& mjN,
                                   const ConnCoeffs& DN, const PointFrame& f);

}  // namespace weyl
