#include "bskde/bandwidth_matrix.hpp"

#include <cmath>

#include "bskde/errors.hpp"

namespace bskde {

std::string to_string(BandwidthFamily family) {
  switch (family) {
    case BandwidthFamily::Full:
      return "full";
    case BandwidthFamily::Scott:
      return "scott";
    case BandwidthFamily::Diagonal:
      return "diagonal";
  }
  return "?";
}

BandwidthFamily parse_family(const std::string& name) {
  if (name == "full") return BandwidthFamily::Full;
  if (name == "scott") return BandwidthFamily::Scott;
  if (name == "diagonal") return BandwidthFamily::Diagonal;
  throw ValidationError("unknown bandwidth family '" + name +
                        "' (expected full|scott|diagonal)");
}

BandwidthMatrix2::BandwidthMatrix2(double h11, double h22, double h12,
                                   BandwidthFamily family)
    : h11_(h11), h22_(h22), h12_(h12), family_(family) {
  if (!(h11 > 0.0) || !(h22 > 0.0) || !std::isfinite(h11) ||
      !std::isfinite(h22) || !std::isfinite(h12)) {
    throw ValidationError("bandwidth diagonal entries must be positive finite");
  }
  if (!(h12 * h12 < h11 * h22)) {
    throw ValidationError("bandwidth matrix not positive definite: h12^2 >= h11*h22");
  }
}

BandwidthMatrix2 BandwidthMatrix2::full(double h11, double h22, double h12) {
  return BandwidthMatrix2(h11, h22, h12, BandwidthFamily::Full);
}

BandwidthMatrix2 BandwidthMatrix2::diagonal(double h11, double h22) {
  return BandwidthMatrix2(h11, h22, 0.0, BandwidthFamily::Diagonal);
}

BandwidthMatrix2 BandwidthMatrix2::scott(double h, const SymMatrix2& H0) {
  if (!(h > 0.0)) throw ValidationError("Scott scale h must be positive");
  BandwidthMatrix2 m(h * H0.a11, h * H0.a22, h * H0.a12,
                     BandwidthFamily::Scott);
  m.scott_h_ = h;
  m.scott_base_ = H0;
  return m;
}

BandwidthMatrix2 BandwidthMatrix2::scott_clamped(double h, const SymMatrix2& H0,
                                                 double h12) {
  if (!(h > 0.0)) throw ValidationError("Scott scale h must be positive");
  BandwidthMatrix2 m(h * H0.a11, h * H0.a22, h12, BandwidthFamily::Scott);
  m.scott_h_ = h;
  m.scott_base_ = H0;
  return m;
}

double BandwidthMatrix2::scott_h() const {
  if (family_ != BandwidthFamily::Scott) {
    throw ValidationError("scott_h() on a non-Scott bandwidth matrix");
  }
  return scott_h_;
}

const SymMatrix2& BandwidthMatrix2::scott_base() const {
  if (family_ != BandwidthFamily::Scott) {
    throw ValidationError("scott_base() on a non-Scott bandwidth matrix");
  }
  return scott_base_;
}

}  // namespace bskde
