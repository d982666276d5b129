#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "bskde/bandwidth_matrix.hpp"
#include "bskde/grid.hpp"
#include "bskde/kernel.hpp"

namespace bskde {

/// Observations in the closed unit square.
struct Sample2 {
  Sample2() = default;
  explicit Sample2(std::vector<TargetPoint2> pts) : points(std::move(pts)) {}

  std::vector<TargetPoint2> points;
  std::size_t n() const { return points.size(); }

  /// Unbiased sample covariance as a symmetric 2x2 matrix; needs n >= 2.
  SymMatrix2 covariance() const;
};

/// (1/n) sum_i BS_theta(x, H)(X_i). Unnormalized; its integral over x is the
/// total mass Lambda, generally not 1.
double estimate_standard(const Sample2& sample, const BandwidthMatrix2& H,
                         const TargetPoint2& x);

double estimate_modified(const Sample2& sample, const BandwidthMatrix2& H,
                         double alpha1, double alpha2, const TargetPoint2& x);

/// Estimator evaluated on every node of a midpoint grid. Admissibility of
/// h12 is verified over all grid nodes up front; the error names the first
/// failing node. threads = 0 picks the default.
DensityGrid estimate_standard_grid(const Sample2& sample,
                                   const BandwidthMatrix2& H,
                                   std::size_t resolution,
                                   std::size_t threads = 0);

DensityGrid estimate_modified_grid(const Sample2& sample,
                                   const BandwidthMatrix2& H, double alpha1,
                                   double alpha2, std::size_t resolution,
                                   std::size_t threads = 0);

/// Midpoint integral over x of the standard estimate: the total mass Lambda.
double total_mass(const Sample2& sample, const BandwidthMatrix2& H,
                  std::size_t resolution, std::size_t threads = 0);

/// Closed-form squared L2 norm of the standard kernel: the product of the
/// margins' beta-function ratios times a bracket quadratic in h12 whose
/// coefficients come from the moments of the squared margins.
double bs_norm_squared(const TargetPoint2& x, const BandwidthMatrix2& H);

/// Exact density inputs for the bias/variance/AMISE diagnostics. hess
/// returns (fxx, fxy, fyy).
struct DiagnosticsInput {
  std::function<double(double, double)> f;
  std::function<std::array<double, 2>(double, double)> grad;
  std::function<std::array<double, 3>(double, double)> hess;
};

/// Leading-order pointwise bias a' grad f + trace[(a a' + B) hess f] / 2.
double bias_diagnostic(const TargetPoint2& x, const BandwidthMatrix2& H,
                       const DiagnosticsInput& diag);

/// Leading variance term ||BS||_2^2 f(x) / n.
double variance_diagnostic(const TargetPoint2& x, const BandwidthMatrix2& H,
                           std::size_t n, double f_value);

/// Midpoint integral of squared-bias prediction plus the variance term.
double amise_diagnostic(const BandwidthMatrix2& H, std::size_t n,
                        const DiagnosticsInput& diag, std::size_t resolution,
                        std::size_t threads = 0);

/// Scott-form reference bandwidth C n^{-1/(2 r2 + 2)} H0 (dimension 2).
BandwidthMatrix2 scott_reference(std::size_t n, const SymMatrix2& H0,
                                 double r2, double C);

}  // namespace bskde
