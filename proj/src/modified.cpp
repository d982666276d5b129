#include "bskde/modified.hpp"

#include <cmath>
#include <string>

#include "bskde/errors.hpp"

namespace bskde {

namespace {
void check_alpha(double alpha1, double alpha2) {
  if (!(alpha1 > 0.0 && alpha1 < 0.5 && alpha2 > 0.0 && alpha2 < 0.5)) {
    throw ValidationError("region order alpha must lie in (0, 0.5)");
  }
}

double modified_rho(const BandwidthMatrix2& H) {
  return H.h12() / std::sqrt(H.h11() * H.h22());
}
}  // namespace

double boundary_psi(double z, double alpha) {
  return alpha * (z - alpha + 1.0);
}

BetaParams modified_axis_shape(double x, double h, double alpha) {
  if (!(h > 0.0)) throw ValidationError("bandwidth must be positive");
  if (x <= alpha) {
    if (x == 0.0) {
      throw ValidationError(
          "modified kernel undefined at a support corner (shape would be 0)");
    }
    return BetaParams(boundary_psi(x, alpha) / h, x / h);
  }
  if (x >= 1.0 - alpha) {
    if (x == 1.0) {
      throw ValidationError(
          "modified kernel undefined at a support corner (shape would be 0)");
    }
    return BetaParams((1.0 - x) / h, boundary_psi(1.0 - x, alpha) / h);
  }
  return BetaParams(x / h, (1.0 - x) / h);
}

AxisMargin modified_axis_margin(double x, double h, double alpha) {
  const BetaParams shape = modified_axis_shape(x, h, alpha);
  return AxisMargin(shape, beta_mean(shape),
                    std::sqrt(beta_variance(shape)));
}

BetaSarmanovShape modified_bs_shape(const TargetPoint2& x,
                                    const BandwidthMatrix2& H, double alpha1,
                                    double alpha2) {
  check_alpha(alpha1, alpha2);
  return BetaSarmanovShape{modified_axis_shape(x.x1, H.h11(), alpha1),
                           modified_axis_shape(x.x2, H.h22(), alpha2),
                           modified_rho(H)};
}

Interval modified_h12_bounds(const TargetPoint2& x, const BandwidthMatrix2& H,
                             double alpha1, double alpha2) {
  check_alpha(alpha1, alpha2);
  Interval b = bracket_coef_bounds(modified_axis_margin(x.x1, H.h11(), alpha1),
                                   modified_axis_margin(x.x2, H.h22(), alpha2));
  const double r = std::sqrt(H.h11() * H.h22());
  const double rr = r * (1.0 - 16.0 * kAdmissibilityTol);
  return Interval{std::max(b.lo * r, -rr), std::min(b.hi * r, rr)};
}

PreparedBsKernel prepared_modified_bs(const TargetPoint2& x,
                                      const BandwidthMatrix2& H, double alpha1,
                                      double alpha2, bool checked) {
  check_alpha(alpha1, alpha2);
  const AxisMargin m1 = modified_axis_margin(x.x1, H.h11(), alpha1);
  const AxisMargin m2 = modified_axis_margin(x.x2, H.h22(), alpha2);
  const double rho = modified_rho(H);
  if (checked) {
    const Interval bounds = bracket_coef_bounds(m1, m2);
    if (!bounds.contains(rho, kAdmissibilityTol)) {
      throw AdmissibilityError(
          "h12=" + std::to_string(H.h12()) +
          " inadmissible for the modified kernel at target (" +
          std::to_string(x.x1) + ", " + std::to_string(x.x2) + ")");
    }
  }
  return PreparedBsKernel(m1, m2, rho);
}

double modified_bs_eval(const TargetPoint2& x, const BandwidthMatrix2& H,
                        double alpha1, double alpha2, const TargetPoint2& v) {
  return prepared_modified_bs(x, H, alpha1, alpha2)(v.x1, v.x2);
}

namespace {
// Mean shift and variance of one modified margin. The interior branch uses
// the algebraically simplified forms: the beta mean of (x/h, (1-x)/h) is x
// exactly and its variance is h x(1-x)/(1+h).
void modified_axis_moments(double x, double h, double alpha, double& shift,
                           double& variance) {
  if (x > alpha && x < 1.0 - alpha) {
    shift = 0.0;
    variance = h * x * (1.0 - x) / (1.0 + h);
    return;
  }
  const BetaParams shape = modified_axis_shape(x, h, alpha);
  shift = beta_mean(shape) - x;
  variance = beta_variance(shape);
}
}  // namespace

KernelMoments2 modified_bs_moments(const TargetPoint2& x,
                                   const BandwidthMatrix2& H, double alpha1,
                                   double alpha2) {
  check_alpha(alpha1, alpha2);
  double a1, a2, b11, b22;
  modified_axis_moments(x.x1, H.h11(), alpha1, a1, b11);
  modified_axis_moments(x.x2, H.h22(), alpha2, a2, b22);
  return KernelMoments2{a1, a2, b11,
                        modified_rho(H) * std::sqrt(b11) * std::sqrt(b22),
                        b22};
}

FrontierJump modified_frontier_jump(double h, double alpha) {
  if (!(h > 0.0)) throw ValidationError("bandwidth must be positive");
  if (!(alpha > 0.0 && alpha < 0.5)) {
    throw ValidationError("region order alpha must lie in (0, 0.5)");
  }
  // At x = alpha the boundary branch gives (psi(alpha)/h, alpha/h) with
  // psi(alpha) = alpha; the interior limit gives (alpha/h, (1-alpha)/h).
  BetaParams boundary(boundary_psi(alpha, alpha) / h, alpha / h);
  BetaParams interior(alpha / h, (1.0 - alpha) / h);
  return FrontierJump{boundary, interior,
                      std::abs(boundary.p - interior.p),
                      std::abs(boundary.q - interior.q)};
}

}  // namespace bskde
