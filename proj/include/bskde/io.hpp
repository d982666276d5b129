#pragma once

#include <string>
#include <vector>

#include "bskde/estimator.hpp"
#include "bskde/grid.hpp"

namespace bskde {

/// Shortest round-trippable decimal form (17 significant digits).
std::string format_double(double v);

/// Reads a sample from CSV with header "x1,x2"; accepts LF or CRLF. Errors
/// carry the 1-based physical line number.
Sample2 read_sample_csv(const std::string& path);

/// Writes "x1,x2,fhat" rows over the midpoint grid in row-major order.
void write_density_grid_csv(const std::string& path, const DensityGrid& grid);

/// Reads a grid written by write_density_grid_csv; values reproduce exactly.
DensityGrid read_density_grid_csv(const std::string& path);

}  // namespace bskde
