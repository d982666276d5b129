#pragma once

#include "bskde/bandwidth_matrix.hpp"
#include "bskde/beta.hpp"
#include "bskde/sarmanov.hpp"

namespace bskde {

/// Estimation target inside the closed unit square.
struct TargetPoint2 {
  TargetPoint2(double x1_, double x2_);
  double x1;
  double x2;
};

/// Slack used when testing membership of a correlation component in its
/// admissible interval; absorbs roundtrip rounding of the exact endpoints.
inline constexpr double kAdmissibilityTol = 1e-12;

/// Mean of the beta margin with shapes (x/h + 1, (1-x)/h + 1).
double margin_center(double x, double h);
/// Variance of the same margin, h (x+h)(1+h-x) / ((1+2h)^2 (1+3h)).
double margin_variance(double x, double h);

/// One axis of a prepared kernel: beta shape pair with its normalizer, plus
/// the centering/scaling used inside the Sarmanov bracket.
struct AxisMargin {
  AxisMargin(const BetaParams& shape_, double center_, double scale_);

  /// Margin of the standard kernel at target x: shapes (x/h+1, (1-x)/h+1),
  /// bracket standardization (v - mu) / (sqrt(h) sigma).
  static AxisMargin standard(double x, double h);

  double pdf(double v) const;

  /// Standardized deviation (v - center) / scale.
  double dev(double v) const { return (v - center) * inv_scale; }

  BetaParams shape;
  double log_norm;   // log B(shape)
  double center;
  double scale;
  double inv_scale;
};

/// Admissible interval for the bracket coefficient c in
/// 1 + c * dev1(v1) * dev2(v2) >= 0 over the unit square (corner extremes).
Interval bracket_coef_bounds(const AxisMargin& m1, const AxisMargin& m2);

/// Admissible h12 interval at target x: the bracket constraint intersected
/// with the positive-definiteness band (-sqrt(h11 h22), sqrt(h11 h22)).
Interval bs_h12_bounds(const TargetPoint2& x, double h11, double h22);

/// Fully evaluable bivariate kernel at a fixed (target, bandwidth) pair.
class PreparedBsKernel {
 public:
  /// Standard beta-Sarmanov kernel. With checked = true (default) an h12
  /// outside bs_h12_bounds raises AdmissibilityError; checked = false
  /// evaluates the formula regardless (the result is then not a density).
  static PreparedBsKernel standard(const TargetPoint2& x,
                                   const BandwidthMatrix2& H,
                                   bool checked = true);

  /// Product of the two standard univariate margins (zero correlation).
  static PreparedBsKernel multiple(const TargetPoint2& x, double h11,
                                   double h22);

  PreparedBsKernel(const AxisMargin& m1, const AxisMargin& m2, double coef);

  double operator()(double v1, double v2) const {
    return m1_.pdf(v1) * m2_.pdf(v2) *
           (1.0 + coef_ * m1_.dev(v1) * m2_.dev(v2));
  }

  const AxisMargin& margin1() const { return m1_; }
  const AxisMargin& margin2() const { return m2_; }
  double coef() const { return coef_; }

 private:
  AxisMargin m1_;
  AxisMargin m2_;
  double coef_;
};

/// Reparametrized shape theta(x, H) = (x1/h11+1, (1-x1)/h11+1, x2/h22+1,
/// (1-x2)/h22+1, h12/sqrt(h11 h22)). Throws when h12 is inadmissible at x.
BetaSarmanovShape bs_shape_from_target(const TargetPoint2& x,
                                       const BandwidthMatrix2& H);

/// BS_theta(x,H)(v); nonnegative and mass one over the unit square.
double bs_kernel_eval(const TargetPoint2& x, const BandwidthMatrix2& H,
                      const TargetPoint2& v);

/// Same formula with the admissibility gate skipped. Values evaluated with
/// an inadmissible h12 do not form a density.
double bs_kernel_eval_unchecked(const TargetPoint2& x,
                                const BandwidthMatrix2& H,
                                const TargetPoint2& v);

/// Mean shift a(x, H) and covariance B(x, H) of the kernel.
struct KernelMoments2 {
  double a1;
  double a2;
  double b11;
  double b12;
  double b22;
};

KernelMoments2 bs_kernel_moments(const TargetPoint2& x,
                                 const BandwidthMatrix2& H);

/// Product of the two univariate beta associated kernels (diagonal case).
double multiple_kernel_eval(const TargetPoint2& x, double h11, double h22,
                            const TargetPoint2& v);

/// Classical bivariate Gaussian associated kernel
/// (1/det H) K(H^{-1}(x - v)) with K the standard bivariate normal.
double classical_gaussian_kernel(double x1, double x2,
                                 const BandwidthMatrix2& H, double v1,
                                 double v2);

}  // namespace bskde
