#pragma once

#include <cstdint>
#include <string>

#include "bskde/kernel.hpp"

namespace bskde {

/// Nine-way decomposition of the unit square of order alpha: one open
/// interior region plus eight closed boundary bands.
enum class RegionLabel {
  Interior,
  EdgeLeft,
  EdgeRight,
  EdgeBottom,
  EdgeTop,
  AngleBL,
  AngleBR,
  AngleTL,
  AngleTR,
};

std::string to_string(RegionLabel label);

/// Interior iff x_j in (alpha_j, 1 - alpha_j) for both axes; the frontier
/// x_j = alpha_j belongs to the boundary bands. Requires 0 < alpha_j < 0.5.
RegionLabel classify_region(const TargetPoint2& x, double alpha1,
                            double alpha2);

/// Count of boundary subregions 1^d_inf 2^d_z 3^d_uw - 1 for a support with
/// d_inf unbounded, d_z half-bounded and d_uw totally bounded axes.
std::uint64_t boundary_region_count(unsigned d_inf, unsigned d_z,
                                    unsigned d_uw);

/// Boundary-band order for a bandwidth component: 2h clamped into (0, 0.45].
double default_alpha(double h);

}  // namespace bskde
