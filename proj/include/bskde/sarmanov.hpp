#pragma once

#include "bskde/beta.hpp"

namespace bskde {

struct Interval {
  double lo;
  double hi;
  bool contains(double v, double tol = 0.0) const {
    return v >= lo - tol && v <= hi + tol;
  }
};

/// Five-parameter beta-Sarmanov type: two beta margins plus the correlation
/// parameter of the product-correction bracket.
struct BetaSarmanovShape {
  BetaParams margin1;
  BetaParams margin2;
  double rho;
};

/// Admissible correlation interval [-eps, eps'] for the given margins. The
/// standardized product z1(v1) z2(v2) is bilinear in v, so its extremes over
/// the unit square sit at the four corners; the endpoints are the reciprocal
/// corner extremes. The interval always contains 0.
Interval sarmanov_correlation_bounds(const BetaParams& m1,
                                     const BetaParams& m2);

/// g1(v1) g2(v2) [1 + rho z1(v1) z2(v2)]. Throws AdmissibilityError when
/// shape.rho lies outside sarmanov_correlation_bounds.
double sarmanov_pdf(double v1, double v2, const BetaSarmanovShape& shape);

}  // namespace bskde
