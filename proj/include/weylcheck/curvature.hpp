#pragma once

// Curvature of connection coefficient fields: Riemann, Ricci and scalar
// data, the Faraday 2-form, the conformal tensor with its chirality split
// in dimension 4, and the rank-3 auxiliary connection built from a cross
// product, with its flatness residual.

#include "weylcheck/connection.hpp"
#include "weylcheck/geometry.hpp"

namespace weyl {

struct CurvatureAtPoint {
  int m = 0;
  double R[kMaxDim][kMaxDim][kMaxDim][kMaxDim] = {};  // R[k][l][i][j] = R^k_{lij}
  Mat ricci{};       // ricci[j][l] = R^i_{lij}
  Mat ricci_sym0{};  // trace-free symmetric part (g-trace removed)
  double scalar = 0;
  Mat faraday{};     // F[i][j] = d_i alpha_j - d_j alpha_i
  double bianchi_residual = 0;
};

// R^k_{lij} = d_i A^k_{jl} - d_j A^k_{il} + A^k_{ia} A^a_{jl} - A^k_{ja} A^a_{il}
void coeff_curvature(int m, const double A[kMaxDim][kMaxDim][kMaxDim],
                     const double dA[kMaxDim][kMaxDim][kMaxDim][kMaxDim],
                     double R[kMaxDim][kMaxDim][kMaxDim][kMaxDim]);

// Requires D.has_d. Faraday data comes from the structure's Lee jets.
CurvatureAtPoint curvature_at(const ConnCoeffs& D, const MetricJets& mj);

double einstein_residual(const CurvatureAtPoint& c);

struct WeylSplit {
  double wplus[3][3] = {};
  double wminus[3][3] = {};
  double reassembly = 0;  // defect of the chirality-block reconstruction
  double wmax = 0;        // largest frame component of the full tensor
};

// Conformal tensor of the underlying metric (Levi-Civita curvature), split
// over the +-/-- eigenspaces of the 2-form star in an oriented orthonormal
// frame. Dimension 4 only.
WeylSplit weyl_split(const MetricJets& mj, int orientation, double eps);

double wsplit_max(const double w[3][3]);

struct GtResiduals {
  double k = 0;
  double scalar = 0;       // s^D at the point
  double scalar_res = 0;   // |s^D - (3/2) k^2|
  double star_res = 0;     // max entry of *Dk - F^D
};

// Dimension 3. kfun is the gauge presentation of the weight -1 function,
// carried to first order; Dk = dk - k alpha.
GtResiduals gauduchon_tod_residuals(const MetricJets& mj, const CurvatureAtPoint& cur,
                                    const D1& kfun, int orientation);

// Curvature residual of nabla_X xi = D_X xi - alpha(X) xi + (k/2) X x xi
// acting on weight -1 vector fields. Requires D.has_d and dimension 3.
double gt_flatness_residual(const MetricJets& mj, const ConnCoeffs& D, const D1& kfun,
                            int orientation);

}  // namespace weyl
