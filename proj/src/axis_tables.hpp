#pragma once

// Internal separable evaluation tables. The bivariate kernel factors into two
// univariate margins times a bilinear bracket, so sums over a sample at many
// targets reduce to dot products of per-axis tables:
//   f_hat(x_a, x_b) = (dot(K1[a], K2[b]) + coef * dot(A1[a], A2[b])) / n
// with K*[t][j] the margin pdf at sample j for axis target t and
// A*[t][j] = K*[t][j] * standardized deviation. The transcendental work is
// O((targets + n) * n) per axis instead of O(targets^2 * n) overall.

#include <cstddef>
#include <functional>
#include <vector>

#include "bskde/kernel.hpp"

namespace bskde::detail {

struct AxisTables {
  std::size_t targets = 0;
  std::size_t m = 0;
  std::vector<double> K;
  std::vector<double> A;

  const double* k_row(std::size_t t) const { return K.data() + t * m; }
  const double* a_row(std::size_t t) const { return A.data() + t * m; }
};

using MarginFactory = std::function<AxisMargin(double)>;

AxisTables build_axis_tables(const std::vector<double>& target_coords,
                             const std::vector<double>& points,
                             const MarginFactory& margin_at);

inline double dot(const double* a, const double* b, std::size_t m) {
  double s = 0.0;
  for (std::size_t j = 0; j < m; ++j) s += a[j] * b[j];
  return s;
}

/// Largest -dev(0) and dev(1) over a set of axis targets; feeds the
/// product-set form of the intersected bracket bounds.
struct AxisDevExtremes {
  double max_neg_at0 = 0.0;  // max over targets of -dev(0), positive
  double max_pos_at1 = 0.0;  // max over targets of dev(1), positive
};

AxisDevExtremes axis_dev_extremes(const std::vector<double>& target_coords,
                                  const MarginFactory& margin_at);

/// Bracket-coefficient bounds intersected over the product set of two axis
/// target sets. Equals the node-by-node intersection because the extremes
/// factor per axis.
Interval product_set_coef_bounds(const AxisDevExtremes& e1,
                                 const AxisDevExtremes& e2);

}  // namespace bskde::detail
