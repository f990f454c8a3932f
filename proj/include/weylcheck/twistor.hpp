#pragma once

// Twistoriality residuals for the dimension pairs (3,2), (4,2) and (4,3):
// geodesic-fibre defect, the plus/minus partial connections of an oriented
// rank-1 split in dimension 4, the horizontal-lee identity tying a Weyl
// connection to the minimal one, the vertical gauge function extracted
// from that identity, and the Ricci comparisons along a submersion.

#include <vector>

#include "weylcheck/connection.hpp"
#include "weylcheck/curvature.hpp"
#include "weylcheck/geometry.hpp"
#include "weylcheck/morphism.hpp"

namespace weyl {

// |D_V V wedge V|_g for the unit vertical column; rank-1 vertical only.
struct GeodesicResidual {
  double residual = 0;
  double scale = 0;
};
GeodesicResidual vertical_geodesic(const MetricJets& mj, const ConnCoeffs& D,
                                   const PointFrame& f);

// Horizontal 1-forms in frame components (index b matches cols[k + b]):
// hd is the minimal-connection lee form, star the Hodge dual over the
// horizontal block of the integrability 2-form paired with the unit
// vertical field, and dplus/dminus = hd +- star.
struct DPlusMinus {
  int n = 0;
  std::array<double, kMaxDim> hd{};
  std::array<double, kMaxDim> star{};
  std::array<double, kMaxDim> dplus{};
  std::array<double, kMaxDim> dminus{};
};
DPlusMinus dpm_forms(const MetricJets& mj, const PointFrame& f);

// Gap between the pullback partial connection of the codomain and the
// plus connection, as horizontal lee values.
struct PartialLeeGap {
  double residual = 0;
  double scale = 0;
  std::array<double, kMaxDim> diff{};
};
PartialLeeGap twistorial_4to3(const MetricJets& mjM, const MapJets& mp,
                              const MetricJets& mjN, const ConnCoeffs& DN,
                              const PointFrame& f, const D1& lambda2);

// The three parts that must pair up: harmonicity and conformality, the
// pullback-vs-plus gap, and the horizontal-lee identity with the given
// coefficient on star.
struct LeeSplitParts {
  double tension = 0;
  double hwc = 0;
  double lambda2 = 0;
  double pullback_gap = 0;
  double lee_gap = 0;
  double scale = 0;
};
LeeSplitParts leesplit_point(const MetricJets& mjM, const MapJets& mp,
                             const ConnCoeffs& DM, const MetricJets& mjN,
                             const ConnCoeffs& DN, const PointFrame& f,
                             const D1& lambda2, double coeff = 0.5);

// Vertical gauge function k = 2 (alpha_M - alpha_min)(U0) together with
// the horizontal defect |2 (alpha_M - alpha_min)|_H - star| and a
// finite-difference measure of constancy along the fibre.
struct KSection {
  double k = 0;
  double horiz_res = 0;
  double basic_res = 0;
};
KSection extract_k(const WeylStructure& M, const std::vector<Expr>& phi, const Vec& x,
                   double fd_h = 1e-4);

// Trace-free part of the symmetrised horizontal Ricci block.
struct HorizRicci {
  double residual = 0;
  double scale = 0;
  double trace = 0;  // horizontal trace divided by the block rank
};
HorizRicci ricci_horizontal_tracefree(const CurvatureAtPoint& c, const PointFrame& f);

// Same for Ric^M - phi^* Ric^N.
HorizRicci ricci_difference_tracefree(const CurvatureAtPoint& cM, const MapJets& mp,
                                      const CurvatureAtPoint& cN, const PointFrame& f);

// Null-direction identity Ric^M(Y,Y) - Ric^N(dphi Y, dphi Y)
// + (1/2) A_+(Y) A_-(Y) for Y = (F_{k+hi} + i F_{k+hj}) / sqrt(2),
// extended complex-bilinearly.
struct Lemma55 {
  double residual = 0;
  double scale = 0;
};
Lemma55 lemma55_point(const MetricJets& mjM, const MapJets& mp, const CurvatureAtPoint& cM,
                      const MetricJets& mjN, const ConnCoeffs& DN, const CurvatureAtPoint& cN,
                      const PointFrame& f, const D1& lambda2, int hi, int hj);

}  // namespace weyl
