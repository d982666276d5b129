#include "axis_tables.hpp"

#include <algorithm>

namespace bskde::detail {

AxisTables build_axis_tables(const std::vector<double>& target_coords,
                             const std::vector<double>& points,
                             const MarginFactory& margin_at) {
  AxisTables t;
  t.targets = target_coords.size();
  t.m = points.size();
  t.K.resize(t.targets * t.m);
  t.A.resize(t.targets * t.m);
  for (std::size_t a = 0; a < t.targets; ++a) {
    const AxisMargin margin = margin_at(target_coords[a]);
    double* krow = t.K.data() + a * t.m;
    double* arow = t.A.data() + a * t.m;
    for (std::size_t j = 0; j < t.m; ++j) {
      const double k = margin.pdf(points[j]);
      krow[j] = k;
      arow[j] = k * margin.dev(points[j]);
    }
  }
  return t;
}

AxisDevExtremes axis_dev_extremes(const std::vector<double>& target_coords,
                                  const MarginFactory& margin_at) {
  AxisDevExtremes e;
  bool first = true;
  for (double x : target_coords) {
    const AxisMargin margin = margin_at(x);
    const double neg0 = -margin.dev(0.0);
    const double pos1 = margin.dev(1.0);
    if (first) {
      e.max_neg_at0 = neg0;
      e.max_pos_at1 = pos1;
      first = false;
    } else {
      e.max_neg_at0 = std::max(e.max_neg_at0, neg0);
      e.max_pos_at1 = std::max(e.max_pos_at1, pos1);
    }
  }
  return e;
}

Interval product_set_coef_bounds(const AxisDevExtremes& e1,
                                 const AxisDevExtremes& e2) {
  const double max_prod = std::max(e1.max_neg_at0 * e2.max_neg_at0,
                                   e1.max_pos_at1 * e2.max_pos_at1);
  const double min_abs = std::max(e1.max_neg_at0 * e2.max_pos_at1,
                                  e1.max_pos_at1 * e2.max_neg_at0);
  return Interval{-1.0 / max_prod, 1.0 / min_abs};
}

}  // namespace bskde::detail
