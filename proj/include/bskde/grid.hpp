#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace bskde {

/// Tensor midpoint grid over the unit square: nodes ((i+0.5)/G, (j+0.5)/G)
/// in row-major order, cell weight 1/G^2. Midpoint nodes never touch the
/// support boundary, where boundary-region margins can diverge.
struct DensityGrid {
  explicit DensityGrid(std::size_t resolution);

  std::size_t resolution;
  std::vector<double> values;

  double node_coord(std::size_t k) const {
    return (static_cast<double>(k) + 0.5) / static_cast<double>(resolution);
  }
  double& at(std::size_t i, std::size_t j) {
    return values[i * resolution + j];
  }
  double at(std::size_t i, std::size_t j) const {
    return values[i * resolution + j];
  }

  /// Midpoint-rule integral: per-row sums first, then across rows, so the
  /// value does not depend on how the grid was computed or parallelized.
  double integral() const;
};

/// Divides values by the midpoint integral. Throws NumericError on a grid
/// with non-positive mass.
DensityGrid normalize(const DensityGrid& grid);

std::vector<double> midpoint_nodes(std::size_t resolution);

/// Endpoint-inclusive lattice i/(G-1), used for pointwise kernel reports
/// where boundary values are part of the story.
std::vector<double> inclusive_nodes(std::size_t resolution);

/// Midpoint-rule integral of f over the unit square at resolution^2 nodes,
/// row-parallel with a fixed summation order.
double integrate_midpoint(std::size_t resolution, std::size_t threads,
                          const std::function<double(double, double)>& f);

}  // namespace bskde
