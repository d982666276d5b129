#pragma once

#include <string>

namespace bskde {

/// Symmetric 2x2 matrix, stored as (a11, a12, a22).
struct SymMatrix2 {
  double a11 = 0.0;
  double a12 = 0.0;
  double a22 = 0.0;
};

enum class BandwidthFamily { Full, Scott, Diagonal };

std::string to_string(BandwidthFamily family);
BandwidthFamily parse_family(const std::string& name);

/// 2x2 symmetric positive-definite smoothing matrix H, tagged with the
/// parametrization family it was drawn from. Scott matrices remember the
/// scale h and the fixed base H0 with H = h * H0.
class BandwidthMatrix2 {
 public:
  static BandwidthMatrix2 full(double h11, double h22, double h12);
  static BandwidthMatrix2 diagonal(double h11, double h22);
  static BandwidthMatrix2 scott(double h, const SymMatrix2& H0);

  /// Scott matrix whose off-diagonal was replaced after composition; keeps
  /// the (h, H0) provenance.
  static BandwidthMatrix2 scott_clamped(double h, const SymMatrix2& H0,
                                        double h12);

  double h11() const { return h11_; }
  double h22() const { return h22_; }
  double h12() const { return h12_; }
  BandwidthFamily family() const { return family_; }

  double scott_h() const;
  const SymMatrix2& scott_base() const;

  double det() const { return h11_ * h22_ - h12_ * h12_; }

 private:
  BandwidthMatrix2(double h11, double h22, double h12, BandwidthFamily family);
  double h11_;
  double h22_;
  double h12_;
  BandwidthFamily family_;
  double scott_h_ = 0.0;
  SymMatrix2 scott_base_{};
};

}  // namespace bskde
