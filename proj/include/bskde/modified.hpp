#pragma once

#include "bskde/bandwidth_matrix.hpp"
#include "bskde/kernel.hpp"
#include "bskde/regions.hpp"

namespace bskde {

/// psi(z) = alpha (z - alpha + 1), the boundary shape map of the modified
/// parametrization; psi(alpha) = alpha.
double boundary_psi(double z, double alpha);

/// Per-axis shape pair of the modified kernel:
///   [0, alpha]            -> (psi(x)/h, x/h)
///   (alpha, 1 - alpha)    -> (x/h, (1-x)/h)
///   [1 - alpha, 1]        -> ((1-x)/h, psi(1-x)/h)
/// Throws at x in {0, 1}, where one shape would be zero.
BetaParams modified_axis_shape(double x, double h, double alpha);

/// Margin with bracket standardization rebuilt from the modified shapes' own
/// beta mean and standard deviation.
AxisMargin modified_axis_margin(double x, double h, double alpha);

/// Modified shape vector; the fifth component h12/sqrt(h11 h22) is shared by
/// all nine regions.
BetaSarmanovShape modified_bs_shape(const TargetPoint2& x,
                                    const BandwidthMatrix2& H, double alpha1,
                                    double alpha2);

/// Admissible h12 interval of the modified kernel at x (corner extremes of
/// the modified standardized product, intersected with the PD band).
Interval modified_h12_bounds(const TargetPoint2& x, const BandwidthMatrix2& H,
                             double alpha1, double alpha2);

PreparedBsKernel prepared_modified_bs(const TargetPoint2& x,
                                      const BandwidthMatrix2& H, double alpha1,
                                      double alpha2, bool checked = true);

double modified_bs_eval(const TargetPoint2& x, const BandwidthMatrix2& H,
                        double alpha1, double alpha2, const TargetPoint2& v);

/// Moments from the beta closed forms of the modified shapes: mean shift
/// mean - x per axis (exactly zero in the interior), diagonal variances, and
/// cross term rho * sd1 * sd2.
KernelMoments2 modified_bs_moments(const TargetPoint2& x,
                                   const BandwidthMatrix2& H, double alpha1,
                                   double alpha2);

/// One-sided shape limits across the frontier x = alpha of one axis. The
/// parametrization is discontinuous there: the second shape jumps from
/// alpha/h (boundary side) to (1-alpha)/h (interior side).
struct FrontierJump {
  BetaParams boundary_side;
  BetaParams interior_side;
  double p_jump;
  double q_jump;
};

FrontierJump modified_frontier_jump(double h, double alpha);

}  // namespace bskde
