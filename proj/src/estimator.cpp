#include "bskde/estimator.hpp"

#include <cmath>
#include <string>

#include "axis_tables.hpp"
#include "bskde/errors.hpp"
#include "bskde/modified.hpp"
#include "bskde/parallel.hpp"

namespace bskde {

namespace {

std::vector<double> axis_coords(const Sample2& sample, int axis) {
  std::vector<double> out(sample.n());
  for (std::size_t i = 0; i < sample.n(); ++i) {
    out[i] = axis == 0 ? sample.points[i].x1 : sample.points[i].x2;
  }
  return out;
}

void require_nonempty(const Sample2& sample) {
  if (sample.n() == 0) throw ValidationError("sample is empty");
}

// Estimator on a midpoint grid through the separable tables. coef is the
// bracket coefficient (h12 for the standard kernel, h12/sqrt(h11 h22) for
// the modified one); admissibility over every node is checked first.
DensityGrid grid_estimate(const Sample2& sample, std::size_t resolution,
                          const detail::MarginFactory& margin1,
                          const detail::MarginFactory& margin2, double coef,
                          std::size_t threads, const char* kernel_name) {
  require_nonempty(sample);
  DensityGrid grid(resolution);
  const std::vector<double> nodes = midpoint_nodes(resolution);

  const Interval bounds = detail::product_set_coef_bounds(
      detail::axis_dev_extremes(nodes, margin1),
      detail::axis_dev_extremes(nodes, margin2));
  if (!bounds.contains(coef, kAdmissibilityTol)) {
    for (std::size_t i = 0; i < resolution; ++i) {
      for (std::size_t j = 0; j < resolution; ++j) {
        const Interval node_bounds = bracket_coef_bounds(
            margin1(nodes[i]), margin2(nodes[j]));
        if (!node_bounds.contains(coef, kAdmissibilityTol)) {
          throw AdmissibilityError(
              std::string(kernel_name) +
              " correlation component inadmissible at grid node (" +
              std::to_string(i) + ", " + std::to_string(j) + ") = (" +
              std::to_string(nodes[i]) + ", " + std::to_string(nodes[j]) +
              "); admissible interval [" + std::to_string(node_bounds.lo) +
              ", " + std::to_string(node_bounds.hi) + "]");
        }
      }
    }
  }

  const std::vector<double> xs1 = axis_coords(sample, 0);
  const std::vector<double> xs2 = axis_coords(sample, 1);
  const detail::AxisTables t1 = detail::build_axis_tables(nodes, xs1, margin1);
  const detail::AxisTables t2 = detail::build_axis_tables(nodes, xs2, margin2);
  const double inv_n = 1.0 / static_cast<double>(sample.n());
  const std::size_t m = sample.n();

  parallel_for(resolution, threads, [&](std::size_t a) {
    const double* k1 = t1.k_row(a);
    const double* a1 = t1.a_row(a);
    for (std::size_t b = 0; b < resolution; ++b) {
      double s = detail::dot(k1, t2.k_row(b), m);
      if (coef != 0.0) s += coef * detail::dot(a1, t2.a_row(b), m);
      grid.at(a, b) = s * inv_n;
    }
  });
  return grid;
}

}  // namespace

SymMatrix2 Sample2::covariance() const {
  if (n() < 2) throw ValidationError("covariance needs at least 2 points");
  double m1 = 0.0, m2 = 0.0;
  for (const auto& p : points) {
    m1 += p.x1;
    m2 += p.x2;
  }
  m1 /= static_cast<double>(n());
  m2 /= static_cast<double>(n());
  double c11 = 0.0, c12 = 0.0, c22 = 0.0;
  for (const auto& p : points) {
    const double d1 = p.x1 - m1;
    const double d2 = p.x2 - m2;
    c11 += d1 * d1;
    c12 += d1 * d2;
    c22 += d2 * d2;
  }
  const double denom = static_cast<double>(n()) - 1.0;
  return SymMatrix2{c11 / denom, c12 / denom, c22 / denom};
}

double estimate_standard(const Sample2& sample, const BandwidthMatrix2& H,
                         const TargetPoint2& x) {
  require_nonempty(sample);
  const PreparedBsKernel kernel = PreparedBsKernel::standard(x, H);
  double sum = 0.0;
  for (const auto& p : sample.points) sum += kernel(p.x1, p.x2);
  return sum / static_cast<double>(sample.n());
}

double estimate_modified(const Sample2& sample, const BandwidthMatrix2& H,
                         double alpha1, double alpha2, const TargetPoint2& x) {
  require_nonempty(sample);
  const PreparedBsKernel kernel = prepared_modified_bs(x, H, alpha1, alpha2);
  double sum = 0.0;
  for (const auto& p : sample.points) sum += kernel(p.x1, p.x2);
  return sum / static_cast<double>(sample.n());
}

DensityGrid estimate_standard_grid(const Sample2& sample,
                                   const BandwidthMatrix2& H,
                                   std::size_t resolution,
                                   std::size_t threads) {
  const double h11 = H.h11();
  const double h22 = H.h22();
  return grid_estimate(
      sample, resolution,
      [h11](double x) { return AxisMargin::standard(x, h11); },
      [h22](double x) { return AxisMargin::standard(x, h22); }, H.h12(),
      threads, "standard kernel");
}

DensityGrid estimate_modified_grid(const Sample2& sample,
                                   const BandwidthMatrix2& H, double alpha1,
                                   double alpha2, std::size_t resolution,
                                   std::size_t threads) {
  const double h11 = H.h11();
  const double h22 = H.h22();
  const double rho = H.h12() / std::sqrt(h11 * h22);
  return grid_estimate(
      sample, resolution,
      [h11, alpha1](double x) { return modified_axis_margin(x, h11, alpha1); },
      [h22, alpha2](double x) { return modified_axis_margin(x, h22, alpha2); },
      rho, threads, "modified kernel");
}

double total_mass(const Sample2& sample, const BandwidthMatrix2& H,
                  std::size_t resolution, std::size_t threads) {
  const double mass =
      estimate_standard_grid(sample, H, resolution, threads).integral();
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw NumericError("total mass is not a positive finite value: " +
                       std::to_string(mass));
  }
  return mass;
}

double bs_norm_squared(const TargetPoint2& x, const BandwidthMatrix2& H) {
  const Interval bounds = bs_h12_bounds(x, H.h11(), H.h22());
  if (!bounds.contains(H.h12(), kAdmissibilityTol)) {
    throw AdmissibilityError("h12 inadmissible at target for bs_norm_squared");
  }
  double ratio = 1.0;   // product of beta-function ratios B(2p-1,2q-1)/B(p,q)^2
  double delta[2];      // mean of the squared margin minus the margin mean
  double var2[2];       // variance of the squared margin's beta law
  double sd[2];
  const double xs[2] = {x.x1, x.x2};
  const double hs[2] = {H.h11(), H.h22()};
  for (int j = 0; j < 2; ++j) {
    const double p = xs[j] / hs[j] + 1.0;
    const double q = (1.0 - xs[j]) / hs[j] + 1.0;
    ratio *= std::exp(log_beta(2.0 * p - 1.0, 2.0 * q - 1.0) -
                      2.0 * log_beta(p, q));
    const double P = 2.0 * p - 1.0;
    const double Q = 2.0 * q - 1.0;
    delta[j] = P / (P + Q) - margin_center(xs[j], hs[j]);
    var2[j] = P * Q / ((P + Q) * (P + Q) * (P + Q + 1.0));
    sd[j] = std::sqrt(margin_variance(xs[j], hs[j]));
  }
  const double c =
      H.h12() / (std::sqrt(H.h11() * H.h22()) * sd[0] * sd[1]);
  const double bracket =
      1.0 + 2.0 * c * delta[0] * delta[1] +
      c * c * (var2[0] + delta[0] * delta[0]) * (var2[1] + delta[1] * delta[1]);
  return ratio * bracket;
}

double bias_diagnostic(const TargetPoint2& x, const BandwidthMatrix2& H,
                       const DiagnosticsInput& diag) {
  const KernelMoments2 m = bs_kernel_moments(x, H);
  const std::array<double, 2> g = diag.grad(x.x1, x.x2);
  const std::array<double, 3> h = diag.hess(x.x1, x.x2);
  return m.a1 * g[0] + m.a2 * g[1] +
         0.5 * ((m.a1 * m.a1 + m.b11) * h[0] +
                2.0 * (m.a1 * m.a2 + m.b12) * h[1] +
                (m.a2 * m.a2 + m.b22) * h[2]);
}

double variance_diagnostic(const TargetPoint2& x, const BandwidthMatrix2& H,
                           std::size_t n, double f_value) {
  if (n == 0) throw ValidationError("sample size must be positive");
  return bs_norm_squared(x, H) * f_value / static_cast<double>(n);
}

double amise_diagnostic(const BandwidthMatrix2& H, std::size_t n,
                        const DiagnosticsInput& diag, std::size_t resolution,
                        std::size_t threads) {
  if (n == 0) throw ValidationError("sample size must be positive");
  return integrate_midpoint(resolution, threads, [&](double v1, double v2) {
    const TargetPoint2 x(v1, v2);
    const double b = bias_diagnostic(x, H, diag);
    const double var = bs_norm_squared(x, H) * diag.f(v1, v2) /
                       static_cast<double>(n);
    return b * b + var;
  });
}

BandwidthMatrix2 scott_reference(std::size_t n, const SymMatrix2& H0,
                                 double r2, double C) {
  if (n == 0) throw ValidationError("sample size must be positive");
  if (!(r2 > 0.0)) throw ValidationError("r2 must be positive");
  if (!(C > 0.0)) throw ValidationError("C must be positive");
  const double h =
      C * std::pow(static_cast<double>(n), -1.0 / (2.0 * r2 + 2.0));
  return BandwidthMatrix2::scott(h, H0);
}

}  // namespace bskde
