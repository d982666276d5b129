#include "bskde/grid.hpp"

#include <string>

#include "bskde/errors.hpp"
#include "bskde/parallel.hpp"

namespace bskde {

DensityGrid::DensityGrid(std::size_t resolution_)
    : resolution(resolution_), values(resolution_ * resolution_, 0.0) {
  if (resolution < 2) {
    throw ValidationError("grid resolution must be at least 2");
  }
}

double DensityGrid::integral() const {
  const std::size_t g = resolution;
  double total = 0.0;
  for (std::size_t i = 0; i < g; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < g; ++j) row += values[i * g + j];
    total += row;
  }
  return total / (static_cast<double>(g) * static_cast<double>(g));
}

DensityGrid normalize(const DensityGrid& grid) {
  const double mass = grid.integral();
  if (!(mass > 0.0)) {
    throw NumericError("cannot normalize a grid with non-positive mass " +
                       std::to_string(mass));
  }
  DensityGrid out(grid.resolution);
  for (std::size_t k = 0; k < grid.values.size(); ++k) {
    out.values[k] = grid.values[k] / mass;
  }
  return out;
}

std::vector<double> midpoint_nodes(std::size_t resolution) {
  std::vector<double> nodes(resolution);
  for (std::size_t i = 0; i < resolution; ++i) {
    nodes[i] = (static_cast<double>(i) + 0.5) / static_cast<double>(resolution);
  }
  return nodes;
}

std::vector<double> inclusive_nodes(std::size_t resolution) {
  if (resolution < 2) {
    throw ValidationError("lattice resolution must be at least 2");
  }
  std::vector<double> nodes(resolution);
  for (std::size_t i = 0; i < resolution; ++i) {
    nodes[i] = static_cast<double>(i) / static_cast<double>(resolution - 1);
  }
  return nodes;
}

double integrate_midpoint(std::size_t resolution, std::size_t threads,
                          const std::function<double(double, double)>& f) {
  const std::vector<double> nodes = midpoint_nodes(resolution);
  std::vector<double> row_sums(resolution, 0.0);
  parallel_for(resolution, threads, [&](std::size_t i) {
    double row = 0.0;
    for (std::size_t j = 0; j < resolution; ++j) {
      row += f(nodes[i], nodes[j]);
    }
    row_sums[i] = row;
  });
  double total = 0.0;
  for (double r : row_sums) total += r;
  return total / (static_cast<double>(resolution) *
                  static_cast<double>(resolution));
}

}  // namespace bskde
