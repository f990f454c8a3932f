#pragma once

// Map analysis between Weyl structures: tension fields, horizontal weak
// conformality, the composition rule for trace_g(D d(f o phi)), pullback
// Lee values over the horizontal distribution, the first-order balance of
// tension against Lee and mean-curvature terms, and recovery of the
// codomain Lee form a horizontally conformal submersion would need.

#include <vector>

#include "weylcheck/connection.hpp"
#include "weylcheck/geometry.hpp"

namespace weyl {

// Order-2 jet of one map component in the domain variables.
Jet2 map_component_jet(const MapJets& mp, int c);

// tau^c = g^{ij} (d2 phi^c_{ij} - G^{M,k}_{ij} d_k phi^c
//                 + G^{N,c}_{ab} d_i phi^a d_j phi^b)
Vec tension(const MetricJets& mjM, const MapJets& mp, const ConnCoeffs& DM,
            const ConnCoeffs& DN);

struct Dilation {
  double lambda2 = 0;  // square dilation in the declared metric gauges
  double residual = 0; // conformality defect max |P - lambda2 gN^{-1}|
  Mat p{};             // pushed co-metric P^{ab} = dphi gM^{-1} dphi^T
};

Dilation hwc_check(const MetricJets& mjM, const MapJets& mp, const MetricJets& mjN);

// Square dilation with its domain-coordinate derivatives.
D1 dilation_d1(const MetricJets& mjM, const MapJets& mp, const MetricJets& mjN);

struct ChainRule {
  double lhs = 0;      // trace_g(D^M d (f o phi))
  double rhs = 0;      // df(tau) + <D^N df, P>
  double residual = 0;
  double scale = 0;
};

// fy is the order-2 jet of f at phi(x) in codomain variables.
ChainRule chain_rule(const MetricJets& mjM, const MapJets& mp, const ConnCoeffs& DM,
                     const MetricJets& mjN, const ConnCoeffs& DN, const Jet2& fy);

// Fields h_c with dphi(h_c) = e_c, g-orthogonal to ker dphi, with exact
// first-order derivatives. Throws on a degenerate pushed co-metric.
std::vector<VecD1> horizontal_lifts(const MetricJets& mjM, const MapJets& mp, double eps);

// -Vproj([F_a, F_b]) for two horizontal frame columns.
Vec integrability(const MetricJets& mjM, const PointFrame& f, int a, int b);

// Lee values over the horizontal block of the connection pulled back
// through the map: val[b] = (1/(n Lambda)) sum_a gN((phi*D^N)_{F_b} W_a, W_a)
// with W_a = dphi(F_{k+a}).
HLeeValues lee_values_pullback(const MetricJets& mjM, const MapJets& mp,
                               const MetricJets& mjN, const ConnCoeffs& DN,
                               const PointFrame& f, const D1& lambda2);

// Largest gap between the pullback Lee values and those of the domain
// connection over the horizontal block.
double partial_lee_difference(const MetricJets& mjM, const MapJets& mp,
                              const MetricJets& mjN, const ConnCoeffs& DM,
                              const ConnCoeffs& DN, const PointFrame& f,
                              const D1& lambda2);

struct Fundamental {
  int n = 0;
  double residual[kMaxDim] = {};  // per horizontal frame direction
  double max_residual = 0;
  double scale = 0;
};

// Balance of Lambda^{-1} gN(tau, dphi X) against
// (m-2) aM(X) - (n-2)[phi*aN(X) + dln lambda(X)] - trace_g(B^V)^flat(X)
// over the horizontal frame, with B^V taken for the Levi-Civita connection.
Fundamental fundamental_equation(const MetricJets& mjM, const MapJets& mp,
                                 const ConnCoeffs& DM, const MetricJets& mjN,
                                 const ConnCoeffs& DN, const PointFrame& f,
                                 const D1& lambda2);

struct CodomainLee {
  int n = 0;
  Vec value{};             // candidate on codomain coordinate fields
  double basic_res = 0;    // largest vertical directional derivative
  bool minimal_route = false;  // n == 2 falls back to a minimality check
  double minimal_res = 0;
};

// Candidate codomain Lee form [(m-2) aM - trace_g(B^V)^flat]/(n-2) - dln lambda
// on horizontal lifts of codomain coordinate fields, reported in the
// declared codomain gauge. N supplies that gauge; its own Lee is ignored.
CodomainLee required_codomain_lee(const WeylStructure& M, const WeylStructure& N,
                                  const std::vector<Expr>& phi, const Vec& x,
                                  double fd_h = 1e-4);

// Fixed harmonic polynomials in the first one or two codomain coordinates.
std::vector<Expr> harmonic_test_functions(const Chart& codomain);

}  // namespace weyl
