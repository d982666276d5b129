#include "bskde/regions.hpp"

#include <algorithm>

#include "bskde/errors.hpp"

namespace bskde {

std::string to_string(RegionLabel label) {
  switch (label) {
    case RegionLabel::Interior: return "interior";
    case RegionLabel::EdgeLeft: return "edge-left";
    case RegionLabel::EdgeRight: return "edge-right";
    case RegionLabel::EdgeBottom: return "edge-bottom";
    case RegionLabel::EdgeTop: return "edge-top";
    case RegionLabel::AngleBL: return "angle-bottom-left";
    case RegionLabel::AngleBR: return "angle-bottom-right";
    case RegionLabel::AngleTL: return "angle-top-left";
    case RegionLabel::AngleTR: return "angle-top-right";
  }
  return "?";
}

namespace {
enum class Band { Low, Mid, High };

Band band_of(double x, double alpha) {
  if (x <= alpha) return Band::Low;
  if (x >= 1.0 - alpha) return Band::High;
  return Band::Mid;
}
}  // namespace

RegionLabel classify_region(const TargetPoint2& x, double alpha1,
                            double alpha2) {
  if (!(alpha1 > 0.0 && alpha1 < 0.5 && alpha2 > 0.0 && alpha2 < 0.5)) {
    throw ValidationError("region order alpha must lie in (0, 0.5)");
  }
  const Band b1 = band_of(x.x1, alpha1);
  const Band b2 = band_of(x.x2, alpha2);
  if (b1 == Band::Mid && b2 == Band::Mid) return RegionLabel::Interior;
  if (b1 == Band::Low && b2 == Band::Mid) return RegionLabel::EdgeLeft;
  if (b1 == Band::High && b2 == Band::Mid) return RegionLabel::EdgeRight;
  if (b1 == Band::Mid && b2 == Band::Low) return RegionLabel::EdgeBottom;
  if (b1 == Band::Mid && b2 == Band::High) return RegionLabel::EdgeTop;
  if (b1 == Band::Low && b2 == Band::Low) return RegionLabel::AngleBL;
  if (b1 == Band::High && b2 == Band::Low) return RegionLabel::AngleBR;
  if (b1 == Band::Low && b2 == Band::High) return RegionLabel::AngleTL;
  return RegionLabel::AngleTR;
}

std::uint64_t boundary_region_count(unsigned d_inf, unsigned d_z,
                                    unsigned d_uw) {
  (void)d_inf;  // factor 1^d_inf
  std::uint64_t total = 1;
  for (unsigned i = 0; i < d_z; ++i) total *= 2;
  for (unsigned i = 0; i < d_uw; ++i) total *= 3;
  return total - 1;
}

double default_alpha(double h) {
  if (!(h > 0.0)) throw ValidationError("bandwidth must be positive");
  return std::min(2.0 * h, 0.45);
}

}  // namespace bskde
