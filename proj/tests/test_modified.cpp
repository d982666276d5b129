#include <doctest.h>

#include <cmath>

#include "bskde/errors.hpp"
#include "bskde/modified.hpp"
#include "oracles.hpp"

using namespace bskde;

namespace {

// Longhand modified kernel: region shapes plus the Sarmanov bracket
// standardized by the shapes' own beta moments.
double modified_oracle(double x1, double x2, double h11, double h22,
                       double h12, double a1, double a2, double v1,
                       double v2) {
  const auto shapes = [](double x, double h, double a) {
    if (x <= a) return std::pair{a * (x - a + 1.0) / h, x / h};
    if (x >= 1.0 - a) {
      return std::pair{(1.0 - x) / h, a * (1.0 - x - a + 1.0) / h};
    }
    return std::pair{x / h, (1.0 - x) / h};
  };
  const auto [p1, q1] = shapes(x1, h11, a1);
  const auto [p2, q2] = shapes(x2, h22, a2);
  const auto stats = [](double p, double q) {
    const double m = p / (p + q);
    const double v = p * q / ((p + q) * (p + q) * (p + q + 1.0));
    return std::pair{m, std::sqrt(v)};
  };
  const auto [m1, s1] = stats(p1, q1);
  const auto [m2, s2] = stats(p2, q2);
  const double rho = h12 / std::sqrt(h11 * h22);
  return oracle::beta_pdf(v1, p1, q1) * oracle::beta_pdf(v2, p2, q2) *
         (1.0 + rho * (v1 - m1) / s1 * (v2 - m2) / s2);
}

}  // namespace

TEST_SUITE_BEGIN("modified");

TEST_CASE("psi map") {
  CHECK(boundary_psi(0.2, 0.2) == doctest::Approx(0.2));
  CHECK(boundary_psi(0.05, 0.2) == doctest::Approx(0.2 * 0.85));
  for (double a : {0.05, 0.2, 0.45}) {
    CHECK(boundary_psi(a, a) == doctest::Approx(a));
  }
}

TEST_CASE("per-region shapes") {
  SUBCASE("interior at the center") {
    const BetaSarmanovShape s = modified_bs_shape(
        TargetPoint2(0.5, 0.5), BandwidthMatrix2::full(0.5, 0.5, 0.1), 0.1,
        0.1);
    CHECK(s.margin1.p == doctest::Approx(1.0));
    CHECK(s.margin1.q == doctest::Approx(1.0));
    CHECK(s.margin2.p == doctest::Approx(1.0));
    CHECK(s.margin2.q == doctest::Approx(1.0));
    CHECK(s.rho == doctest::Approx(0.1 / 0.5));
  }
  SUBCASE("left boundary margin") {
    const BetaSarmanovShape s = modified_bs_shape(
        TargetPoint2(0.05, 0.5), BandwidthMatrix2::diagonal(0.1, 0.1), 0.2,
        0.2);
    CHECK(s.margin1.p == doctest::Approx(1.7));
    CHECK(s.margin1.q == doctest::Approx(0.5));
    CHECK(s.margin2.p == doctest::Approx(5.0));
    CHECK(s.margin2.q == doctest::Approx(5.0));
  }
  SUBCASE("right boundary margin mirrors the left one") {
    const BetaSarmanovShape s = modified_bs_shape(
        TargetPoint2(0.95, 0.5), BandwidthMatrix2::diagonal(0.1, 0.1), 0.2,
        0.2);
    CHECK(s.margin1.p == doctest::Approx(0.5));
    CHECK(s.margin1.q == doctest::Approx(1.7));
  }
  SUBCASE("support corners are rejected") {
    const BandwidthMatrix2 H = BandwidthMatrix2::diagonal(0.1, 0.1);
    CHECK_THROWS_AS(modified_bs_shape(TargetPoint2(0.0, 0.5), H, 0.2, 0.2),
                    ValidationError);
    CHECK_THROWS_AS(modified_bs_shape(TargetPoint2(0.5, 1.0), H, 0.2, 0.2),
                    ValidationError);
  }
  SUBCASE("alpha outside (0, 0.5) is rejected") {
    const BandwidthMatrix2 H = BandwidthMatrix2::diagonal(0.1, 0.1);
    CHECK_THROWS_AS(modified_bs_shape(TargetPoint2(0.5, 0.5), H, 0.0, 0.2),
                    ValidationError);
    CHECK_THROWS_AS(modified_bs_shape(TargetPoint2(0.5, 0.5), H, 0.2, 0.5),
                    ValidationError);
  }
}

TEST_CASE("evaluation matches the longhand oracle in all nine regions") {
  const double h11 = 0.08, h22 = 0.06, a1 = 0.16, a2 = 0.12;
  const double h12 = 0.002;
  const BandwidthMatrix2 H = BandwidthMatrix2::full(h11, h22, h12);
  const double band1[] = {0.08, 0.5, 0.92};
  const double band2[] = {0.06, 0.5, 0.94};
  for (double x1 : band1) {
    for (double x2 : band2) {
      const TargetPoint2 x(x1, x2);
      for (double v1 : {0.11, 0.47, 0.83}) {
        for (double v2 : {0.2, 0.69}) {
          CHECK(modified_bs_eval(x, H, a1, a2, TargetPoint2(v1, v2)) ==
                doctest::Approx(modified_oracle(x1, x2, h11, h22, h12, a1, a2,
                                                v1, v2))
                    .epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("interior moments are exact") {
  const BandwidthMatrix2 H = BandwidthMatrix2::full(0.1, 0.2, 0.02);
  for (double x1 : {0.3, 0.5, 0.62}) {
    for (double x2 : {0.45, 0.7}) {
      const KernelMoments2 m =
          modified_bs_moments(TargetPoint2(x1, x2), H, 0.2, 0.2);
      CHECK(m.a1 == 0.0);
      CHECK(m.a2 == 0.0);
      CHECK(std::abs(m.b11 - 0.1 * x1 * (1.0 - x1) / 1.1) < 1e-15);
      CHECK(std::abs(m.b22 - 0.2 * x2 * (1.0 - x2) / 1.2) < 1e-15);
    }
  }
}

TEST_CASE("boundary moments follow the beta closed forms") {
  // Shapes (1.9, 1.5) on axis 1: both above 1, so plain quadrature converges.
  const double h11 = 0.1, h22 = 0.1, a = 0.2, h12 = 0.01;
  const TargetPoint2 x(0.15, 0.5);
  const BandwidthMatrix2 H = BandwidthMatrix2::full(h11, h22, h12);
  const KernelMoments2 m = modified_bs_moments(x, H, a, a);

  const auto kernel = [&](double v1, double v2) {
    return modified_oracle(x.x1, x.x2, h11, h22, h12, a, a, v1, v2);
  };
  const double mass = oracle::integrate(2048, kernel);
  CHECK(mass == doctest::Approx(1.0).epsilon(2e-4));
  const double e1 = oracle::integrate(
      2048, [&](double v1, double v2) { return v1 * kernel(v1, v2); });
  const double c11 = oracle::integrate(2048, [&](double v1, double v2) {
    return (v1 - e1) * (v1 - e1) * kernel(v1, v2);
  });
  const double e2 = oracle::integrate(
      2048, [&](double v1, double v2) { return v2 * kernel(v1, v2); });
  const double c12 = oracle::integrate(2048, [&](double v1, double v2) {
    return (v1 - e1) * (v2 - e2) * kernel(v1, v2);
  });
  CHECK(x.x1 + m.a1 == doctest::Approx(e1).epsilon(1e-4));
  CHECK(m.b11 == doctest::Approx(c11).epsilon(1e-3));
  CHECK(m.b12 == doctest::Approx(c12).epsilon(2e-2));

  // With a shape below 1 the pdf has an integrable singularity; quadrature
  // only approaches the closed forms slowly.
  const KernelMoments2 msing =
      modified_bs_moments(TargetPoint2(0.05, 0.5), H, a, a);
  const auto ksing = [&](double v1, double v2) {
    return modified_oracle(0.05, 0.5, h11, h22, h12, a, a, v1, v2);
  };
  const double esing = oracle::integrate(
      2048, [&](double v1, double v2) { return v1 * ksing(v1, v2); });
  CHECK(0.05 + msing.a1 == doctest::Approx(esing).epsilon(2e-2));
}

TEST_CASE("inadmissible correlation for the modified margins is rejected") {
  const TargetPoint2 x(0.05, 0.95);
  const BandwidthMatrix2 H = BandwidthMatrix2::full(0.1, 0.1, 0.09);
  const Interval b = modified_h12_bounds(x, H, 0.2, 0.2);
  CHECK(b.lo < 0.0);
  CHECK(b.hi > 0.0);
  CHECK(b.hi < 0.09);  // 0.09 is PD-feasible yet bracket-inadmissible here
  CHECK_THROWS_AS(modified_bs_eval(x, H, 0.2, 0.2, TargetPoint2(0.5, 0.5)),
                  AdmissibilityError);
}

TEST_CASE("frontier jump diagnostic") {
  for (double h : {0.05, 0.1, 0.3}) {
    for (double alpha : {0.1, 0.2, 0.4}) {
      const FrontierJump j = modified_frontier_jump(h, alpha);
      CHECK(j.p_jump == doctest::Approx(0.0));
      CHECK(j.q_jump == doctest::Approx((1.0 - 2.0 * alpha) / h));
      CHECK(j.boundary_side.p == doctest::Approx(alpha / h));
      CHECK(j.interior_side.q == doctest::Approx((1.0 - alpha) / h));
    }
  }
}

TEST_SUITE_END();
