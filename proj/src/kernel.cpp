#include "bskde/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bskde/errors.hpp"

namespace bskde {

TargetPoint2::TargetPoint2(double x1_, double x2_) : x1(x1_), x2(x2_) {
  if (!(x1 >= 0.0 && x1 <= 1.0 && x2 >= 0.0 && x2 <= 1.0)) {
    throw ValidationError("target point (" + std::to_string(x1_) + ", " +
                          std::to_string(x2_) + ") outside the unit square");
  }
}

double margin_center(double x, double h) { return (x + h) / (1.0 + 2.0 * h); }

double margin_variance(double x, double h) {
  const double a = 1.0 + 2.0 * h;
  return (x + h) * (1.0 + h - x) * h / (a * a * (1.0 + 3.0 * h));
}

AxisMargin::AxisMargin(const BetaParams& shape_, double center_, double scale_)
    : shape(shape_),
      log_norm(log_beta(shape_.p, shape_.q)),
      center(center_),
      scale(scale_),
      inv_scale(1.0 / scale_) {}

AxisMargin AxisMargin::standard(double x, double h) {
  if (!(h > 0.0)) throw ValidationError("bandwidth must be positive");
  BetaParams shape(x / h + 1.0, (1.0 - x) / h + 1.0);
  return AxisMargin(shape, margin_center(x, h),
                    std::sqrt(h * margin_variance(x, h)));
}

double AxisMargin::pdf(double v) const {
  const double pe = shape.p - 1.0;
  const double qe = shape.q - 1.0;
  double lg = -log_norm;
  if (pe != 0.0) {
    if (v <= 0.0) {
      if (pe < 0.0) throw NumericError("margin pdf diverges at v=0");
      return 0.0;
    }
    lg += pe * std::log(v);
  }
  if (qe != 0.0) {
    if (v >= 1.0) {
      if (qe < 0.0) throw NumericError("margin pdf diverges at v=1");
      return 0.0;
    }
    lg += qe * std::log1p(-v);
  }
  return std::exp(lg);
}

Interval bracket_coef_bounds(const AxisMargin& m1, const AxisMargin& m2) {
  const double a0 = m1.dev(0.0), a1 = m1.dev(1.0);
  const double b0 = m2.dev(0.0), b1 = m2.dev(1.0);
  const double max_prod = std::max(a0 * b0, a1 * b1);
  const double min_prod = std::min(a0 * b1, a1 * b0);
  return Interval{-1.0 / max_prod, 1.0 / std::abs(min_prod)};
}

Interval bs_h12_bounds(const TargetPoint2& x, double h11, double h22) {
  if (!(h11 > 0.0) || !(h22 > 0.0)) {
    throw ValidationError("bandwidths must be positive");
  }
  Interval b = bracket_coef_bounds(AxisMargin::standard(x.x1, h11),
                                   AxisMargin::standard(x.x2, h22));
  // Keep h12 strictly inside the positive-definiteness band.
  const double r =
      std::sqrt(h11 * h22) * (1.0 - 16.0 * kAdmissibilityTol);
  return Interval{std::max(b.lo, -r), std::min(b.hi, r)};
}

PreparedBsKernel::PreparedBsKernel(const AxisMargin& m1, const AxisMargin& m2,
                                   double coef)
    : m1_(m1), m2_(m2), coef_(coef) {}

PreparedBsKernel PreparedBsKernel::standard(const TargetPoint2& x,
                                            const BandwidthMatrix2& H,
                                            bool checked) {
  if (checked) {
    const Interval bounds = bs_h12_bounds(x, H.h11(), H.h22());
    if (!bounds.contains(H.h12(), kAdmissibilityTol)) {
      throw AdmissibilityError(
          "h12=" + std::to_string(H.h12()) + " inadmissible at target (" +
          std::to_string(x.x1) + ", " + std::to_string(x.x2) +
          "); admissible interval [" + std::to_string(bounds.lo) + ", " +
          std::to_string(bounds.hi) + "]");
    }
  }
  return PreparedBsKernel(AxisMargin::standard(x.x1, H.h11()),
                          AxisMargin::standard(x.x2, H.h22()), H.h12());
}

PreparedBsKernel PreparedBsKernel::multiple(const TargetPoint2& x, double h11,
                                            double h22) {
  return PreparedBsKernel(AxisMargin::standard(x.x1, h11),
                          AxisMargin::standard(x.x2, h22), 0.0);
}

BetaSarmanovShape bs_shape_from_target(const TargetPoint2& x,
                                       const BandwidthMatrix2& H) {
  const Interval bounds = bs_h12_bounds(x, H.h11(), H.h22());
  if (!bounds.contains(H.h12(), kAdmissibilityTol)) {
    throw AdmissibilityError(
        "h12=" + std::to_string(H.h12()) + " inadmissible at target (" +
        std::to_string(x.x1) + ", " + std::to_string(x.x2) +
        "); admissible interval [" + std::to_string(bounds.lo) + ", " +
        std::to_string(bounds.hi) + "]");
  }
  return BetaSarmanovShape{
      BetaParams(x.x1 / H.h11() + 1.0, (1.0 - x.x1) / H.h11() + 1.0),
      BetaParams(x.x2 / H.h22() + 1.0, (1.0 - x.x2) / H.h22() + 1.0),
      H.h12() / std::sqrt(H.h11() * H.h22())};
}

double bs_kernel_eval(const TargetPoint2& x, const BandwidthMatrix2& H,
                      const TargetPoint2& v) {
  return PreparedBsKernel::standard(x, H)(v.x1, v.x2);
}

double bs_kernel_eval_unchecked(const TargetPoint2& x,
                                const BandwidthMatrix2& H,
                                const TargetPoint2& v) {
  return PreparedBsKernel::standard(x, H, /*checked=*/false)(v.x1, v.x2);
}

KernelMoments2 bs_kernel_moments(const TargetPoint2& x,
                                 const BandwidthMatrix2& H) {
  const Interval bounds = bs_h12_bounds(x, H.h11(), H.h22());
  if (!bounds.contains(H.h12(), kAdmissibilityTol)) {
    throw AdmissibilityError("h12 inadmissible at target for moments");
  }
  const double a1 =
      (1.0 - 2.0 * x.x1) * H.h11() / (1.0 + 2.0 * H.h11());
  const double a2 =
      (1.0 - 2.0 * x.x2) * H.h22() / (1.0 + 2.0 * H.h22());
  const double b11 = margin_variance(x.x1, H.h11());
  const double b22 = margin_variance(x.x2, H.h22());
  const double b12 = H.h12() / std::sqrt(H.h11() * H.h22()) *
                     std::sqrt(b11) * std::sqrt(b22);
  return KernelMoments2{a1, a2, b11, b12, b22};
}

double multiple_kernel_eval(const TargetPoint2& x, double h11, double h22,
                            const TargetPoint2& v) {
  return PreparedBsKernel::multiple(x, h11, h22)(v.x1, v.x2);
}

double classical_gaussian_kernel(double x1, double x2,
                                 const BandwidthMatrix2& H, double v1,
                                 double v2) {
  const double det = H.det();
  if (!(std::abs(det) > 0.0)) throw NumericError("singular bandwidth matrix");
  const double d1 = x1 - v1;
  const double d2 = x2 - v2;
  // H^{-1} (x - v) for symmetric 2x2 H.
  const double u1 = (H.h22() * d1 - H.h12() * d2) / det;
  const double u2 = (-H.h12() * d1 + H.h11() * d2) / det;
  constexpr double two_pi = 6.283185307179586476925286766559;
  return std::exp(-0.5 * (u1 * u1 + u2 * u2)) / (two_pi * det);
}

}  // namespace bskde
