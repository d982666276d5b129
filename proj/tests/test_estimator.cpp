#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "bskde/errors.hpp"
#include "bskde/estimator.hpp"
#include "bskde/simulation.hpp"
#include "oracles.hpp"

using namespace bskde;

namespace {

Sample2 uniform_sample(std::size_t n, std::uint64_t seed) {
  oracle::TestRng rng(seed);
  std::vector<TargetPoint2> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    pts.emplace_back(rng.uniform(), rng.uniform());
  }
  return Sample2(std::move(pts));
}

}  // namespace

TEST_SUITE_BEGIN("estimator");

TEST_CASE("single-point samples reduce to the kernel") {
  const BandwidthMatrix2 H = BandwidthMatrix2::diagonal(0.6, 0.6);
  const Sample2 s({TargetPoint2(0.0, 0.0)});
  CHECK(estimate_standard(s, H, TargetPoint2(0.0, 0.0)) ==
        doctest::Approx(64.0 / 9.0).epsilon(1e-12));

  const Sample2 sc({TargetPoint2(0.4, 0.6)});
  CHECK(estimate_standard(sc, H, TargetPoint2(0.4, 0.6)) ==
        doctest::Approx(bs_kernel_eval(TargetPoint2(0.4, 0.6), H,
                                       TargetPoint2(0.4, 0.6))));
}

TEST_CASE("averaging is order- and duplication-invariant") {
  const BandwidthMatrix2 H = BandwidthMatrix2::full(0.2, 0.3, 0.01);
  Sample2 s = uniform_sample(40, 7);
  const TargetPoint2 x(0.37, 0.61);
  const double base = estimate_standard(s, H, x);

  std::reverse(s.points.begin(), s.points.end());
  CHECK(estimate_standard(s, H, x) == doctest::Approx(base).epsilon(1e-13));

  std::vector<TargetPoint2> doubled = s.points;
  doubled.insert(doubled.end(), s.points.begin(), s.points.end());
  CHECK(estimate_standard(Sample2(doubled), H, x) ==
        doctest::Approx(base).epsilon(1e-13));
}

TEST_CASE("grid evaluation matches pointwise evaluation") {
  const Sample2 s = uniform_sample(25, 99);
  const BandwidthMatrix2 H = BandwidthMatrix2::full(0.15, 0.22, 0.002);
  const DensityGrid g = estimate_standard_grid(s, H, 33);
  for (std::size_t i : {0u, 7u, 16u, 32u}) {
    for (std::size_t j : {0u, 11u, 32u}) {
      const TargetPoint2 x(g.node_coord(i), g.node_coord(j));
      CHECK(g.at(i, j) ==
            doctest::Approx(estimate_standard(s, H, x)).epsilon(1e-12));
    }
  }

  const DensityGrid gm = estimate_modified_grid(s, H, 0.2, 0.2, 33);
  for (std::size_t i : {0u, 16u, 32u}) {
    const TargetPoint2 x(gm.node_coord(i), gm.node_coord(i));
    CHECK(gm.at(i, i) ==
          doctest::Approx(estimate_modified(s, H, 0.2, 0.2, x))
              .epsilon(1e-12));
  }
}

TEST_CASE("estimate integrates to the total mass") {
  const Sample2 s = uniform_sample(60, 3);
  const BandwidthMatrix2 H = BandwidthMatrix2::diagonal(0.12, 0.09);
  const DensityGrid g = estimate_standard_grid(s, H, 128);
  const double lambda = total_mass(s, H, 128);
  CHECK(lambda == doctest::Approx(g.integral()));
  CHECK(lambda > 0.0);
}

TEST_CASE("total mass of a large uniform sample is near one") {
  const Sample2 s = uniform_sample(1000, 2024);
  const double lambda =
      total_mass(s, BandwidthMatrix2::full(0.10, 0.07, 0.0004), 101);
  CHECK(lambda > 0.9);
  CHECK(lambda < 1.1);
}

TEST_CASE("inadmissible h12 on the evaluation grid names the failing node") {
  const Sample2 s({TargetPoint2(0.5, 0.5), TargetPoint2(0.52, 0.48)});
  // PD-feasible but far outside the bracket interval at boundary nodes.
  const BandwidthMatrix2 H = BandwidthMatrix2::full(0.3, 0.3, 0.25);
  try {
    total_mass(s, H, 64);
    FAIL("expected AdmissibilityError");
  } catch (const AdmissibilityError& e) {
    CHECK(std::string(e.what()).find("grid node") != std::string::npos);
  }
}

TEST_CASE("normalization") {
  const Sample2 s = uniform_sample(30, 5);
  const DensityGrid g =
      estimate_standard_grid(s, BandwidthMatrix2::diagonal(0.2, 0.2), 64);

  const DensityGrid n1 = normalize(g);
  CHECK(n1.integral() == doctest::Approx(1.0).epsilon(1e-12));

  SUBCASE("idempotent") {
    const DensityGrid n2 = normalize(n1);
    for (std::size_t k = 0; k < n1.values.size(); ++k) {
      CHECK(n2.values[k] == doctest::Approx(n1.values[k]).epsilon(1e-12));
    }
  }
  SUBCASE("scale invariant") {
    DensityGrid scaled = g;
    for (double& v : scaled.values) v *= 3.0;
    const DensityGrid n3 = normalize(scaled);
    for (std::size_t k = 0; k < n1.values.size(); ++k) {
      CHECK(n3.values[k] == doctest::Approx(n1.values[k]).epsilon(1e-12));
    }
  }
  SUBCASE("constant grid becomes one") {
    DensityGrid c(16);
    for (double& v : c.values) v = 4.2;
    const DensityGrid nc = normalize(c);
    for (double v : nc.values) CHECK(v == doctest::Approx(1.0));
  }
  SUBCASE("zero mass is rejected") {
    DensityGrid z(8);
    CHECK_THROWS_AS(normalize(z), NumericError);
  }
}

TEST_CASE("closed-form squared norm") {
  SUBCASE("zero correlation reduces to the univariate ratio product") {
    const double x1 = 0.3, x2 = 0.8, h11 = 0.2, h22 = 0.15;
    const auto ratio = [](double x, double h) {
      const double p = x / h + 1.0, q = (1.0 - x) / h + 1.0;
      return std::exp(oracle::log_beta(2.0 * p - 1.0, 2.0 * q - 1.0) -
                      2.0 * oracle::log_beta(p, q));
    };
    CHECK(bs_norm_squared(TargetPoint2(x1, x2),
                          BandwidthMatrix2::diagonal(h11, h22)) ==
          doctest::Approx(ratio(x1, h11) * ratio(x2, h22)).epsilon(1e-12));
  }
  SUBCASE("even in h12 at the center") {
    const TargetPoint2 x(0.5, 0.5);
    const double plus =
        bs_norm_squared(x, BandwidthMatrix2::full(0.5, 0.5, 0.08));
    const double minus =
        bs_norm_squared(x, BandwidthMatrix2::full(0.5, 0.5, -0.08));
    CHECK(plus == doctest::Approx(minus).epsilon(1e-13));
  }
  SUBCASE("quadrature of the squared kernel agrees") {
    oracle::TestRng rng(13);
    for (int k = 0; k < 5; ++k) {
      const double x1 = rng.uniform(), x2 = rng.uniform();
      const double h11 = rng.uniform(0.05, 0.6);
      const double h22 = rng.uniform(0.05, 0.6);
      const Interval b = bs_h12_bounds(TargetPoint2(x1, x2), h11, h22);
      const double h12 = rng.uniform(0.8 * b.lo, 0.8 * b.hi);
      const double closed = bs_norm_squared(
          TargetPoint2(x1, x2), BandwidthMatrix2::full(h11, h22, h12));
      const oracle::BsKernel kernel{x1, x2, h11, h22, h12};
      const double quad = oracle::integrate(1024, [&](double v1, double v2) {
        const double val = kernel(v1, v2);
        return val * val;
      });
      CHECK(std::abs(closed - quad) / quad < 1e-3);
    }
  }
  SUBCASE("inadmissible h12 is rejected") {
    CHECK_THROWS_AS(bs_norm_squared(TargetPoint2(0.0, 0.0),
                                    BandwidthMatrix2::full(0.6, 0.6, 0.2)),
                    AdmissibilityError);
  }
}

TEST_CASE("bias diagnostic") {
  SUBCASE("zero at the center for a flat density") {
    DiagnosticsInput flat;
    flat.f = [](double, double) { return 1.0; };
    flat.grad = [](double, double) { return std::array<double, 2>{0.0, 0.0}; };
    flat.hess = [](double, double) {
      return std::array<double, 3>{0.0, 0.0, 0.0};
    };
    CHECK(bias_diagnostic(TargetPoint2(0.5, 0.5),
                          BandwidthMatrix2::diagonal(0.1, 0.1),
                          flat) == 0.0);
  }
  SUBCASE("prediction shrinks with the bandwidth") {
    const DiagnosticsInput diag = target_diagnostics(TargetModel::A);
    double prev = INFINITY;
    double first = 0.0;
    for (int k = 4; k <= 64; k *= 2) {
      const double h = 1.0 / static_cast<double>(k);
      const double b = std::abs(bias_diagnostic(
          TargetPoint2(0.5, 0.5), BandwidthMatrix2::diagonal(h, h), diag));
      CHECK(b < prev);
      if (first == 0.0) first = b;
      prev = b;
    }
    // The leading term decays linearly in h, so compare against the start.
    CHECK(prev < 0.15 * first);
  }
}

TEST_CASE("variance diagnostic scales exactly as 1/n") {
  const TargetPoint2 x(0.4, 0.6);
  const BandwidthMatrix2 H = BandwidthMatrix2::diagonal(0.08, 0.08);
  const double v100 = variance_diagnostic(x, H, 100, 2.5);
  const double v200 = variance_diagnostic(x, H, 200, 2.5);
  CHECK(v100 > 0.0);
  CHECK(v100 == doctest::Approx(2.0 * v200).epsilon(1e-14));
}

TEST_CASE("AMISE diagnostic") {
  const DiagnosticsInput diag = target_diagnostics(TargetModel::A);
  SUBCASE("positive and finite") {
    const double a = amise_diagnostic(BandwidthMatrix2::diagonal(0.05, 0.05),
                                      100, diag, 128);
    CHECK(a > 0.0);
    CHECK(std::isfinite(a));
  }
  SUBCASE("U-shape in the scale: interior minimum") {
    std::vector<double> values;
    const std::vector<double> hs = {0.005, 0.01, 0.02, 0.04, 0.08,
                                    0.16, 0.32, 0.5};
    for (double h : hs) {
      values.push_back(amise_diagnostic(BandwidthMatrix2::diagonal(h, h), 100,
                                        diag, 128));
    }
    const auto it = std::min_element(values.begin(), values.end());
    CHECK(it != values.begin());
    CHECK(it != values.end() - 1);
  }
}

TEST_CASE("Scott reference bandwidth") {
  const SymMatrix2 I2{1.0, 0.0, 1.0};
  SUBCASE("n = 8 with r2 = 1/2 gives scale 1/2") {
    const BandwidthMatrix2 H = scott_reference(8, I2, 0.5, 1.0);
    CHECK(H.scott_h() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(H.h11() == doctest::Approx(0.5));
    CHECK(H.family() == BandwidthFamily::Scott);
  }
  SUBCASE("quadrupling n with r2 = 1 shrinks the scale by 4^(-1/4)") {
    const double h1 = scott_reference(100, I2, 1.0, 2.0).scott_h();
    const double h2 = scott_reference(400, I2, 1.0, 2.0).scott_h();
    CHECK(h2 == doctest::Approx(h1 * std::pow(4.0, -0.25)).epsilon(1e-13));
  }
  SUBCASE("base matrix is preserved") {
    const SymMatrix2 S{0.07, 0.001, 0.05};
    const BandwidthMatrix2 H = scott_reference(50, S, 0.5, 1.0);
    CHECK(H.h12() == doctest::Approx(H.scott_h() * 0.001));
  }
}

TEST_SUITE_END();
