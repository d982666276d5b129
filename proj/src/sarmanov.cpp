#include "bskde/sarmanov.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bskde/errors.hpp"

namespace bskde {

namespace {
// Standardized deviations (v - mu)/sigma at the two support endpoints.
void endpoint_devs(const BetaParams& m, double& at0, double& at1) {
  const double mu = beta_mean(m);
  const double sd = std::sqrt(beta_variance(m));
  at0 = -mu / sd;
  at1 = (1.0 - mu) / sd;
}
}  // namespace

Interval sarmanov_correlation_bounds(const BetaParams& m1,
                                     const BetaParams& m2) {
  double a0, a1, b0, b1;
  endpoint_devs(m1, a0, a1);
  endpoint_devs(m2, b0, b1);
  const double max_prod = std::max(a0 * b0, a1 * b1);
  const double min_prod = std::min(a0 * b1, a1 * b0);
  return Interval{-1.0 / max_prod, 1.0 / std::abs(min_prod)};
}

double sarmanov_pdf(double v1, double v2, const BetaSarmanovShape& shape) {
  const Interval bounds =
      sarmanov_correlation_bounds(shape.margin1, shape.margin2);
  if (!bounds.contains(shape.rho, 1e-12)) {
    throw AdmissibilityError(
        "rho=" + std::to_string(shape.rho) + " outside admissible interval [" +
        std::to_string(bounds.lo) + ", " + std::to_string(bounds.hi) + "]");
  }
  const double g1 = beta_pdf(v1, shape.margin1);
  const double g2 = beta_pdf(v2, shape.margin2);
  const double z1 = (v1 - beta_mean(shape.margin1)) /
                    std::sqrt(beta_variance(shape.margin1));
  const double z2 = (v2 - beta_mean(shape.margin2)) /
                    std::sqrt(beta_variance(shape.margin2));
  return g1 * g2 * (1.0 + shape.rho * z1 * z2);
}

}  // namespace bskde
