#include "bskde/bandwidth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "axis_tables.hpp"
#include "bskde/errors.hpp"
#include "bskde/parallel.hpp"

namespace bskde {

namespace {

using detail::AxisTables;

std::vector<double> axis_coords(const Sample2& sample, int axis) {
  std::vector<double> out(sample.n());
  for (std::size_t i = 0; i < sample.n(); ++i) {
    out[i] = axis == 0 ? sample.points[i].x1 : sample.points[i].x2;
  }
  return out;
}

void check_sample(const Sample2& sample) {
  if (sample.n() < 2) {
    throw ValidationError("LSCV needs a sample of at least 2 points");
  }
}

void check_increasing(const std::vector<double>& values, const char* what) {
  if (values.empty()) {
    throw ValidationError(std::string(what) + " grid is empty");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0)) {
      throw ValidationError(std::string(what) + " values must be positive");
    }
    if (i > 0 && !(values[i] > values[i - 1])) {
      throw ValidationError(std::string(what) +
                            " values must be strictly increasing");
    }
  }
}

// Everything about one diagonal entry value h on one axis: the separable
// tables plus endpoint deviations for the admissibility intersection.
struct AxisData {
  AxisTables grid;    // targets = quadrature nodes
  AxisTables samp;    // targets = sample coordinates
  detail::AxisDevExtremes node_ex;
  detail::AxisDevExtremes extra_ex;
  bool has_extra = false;
  std::vector<double> dev0;  // per sample point, dev at v=0
  std::vector<double> dev1;  // per sample point, dev at v=1
};

AxisData build_axis_data(const std::vector<double>& nodes,
                         const std::vector<double>& coords, double h,
                         const std::vector<double>& extra_nodes) {
  const auto margin = [h](double x) { return AxisMargin::standard(x, h); };
  AxisData d;
  d.grid = detail::build_axis_tables(nodes, coords, margin);
  d.samp = detail::build_axis_tables(coords, coords, margin);
  d.node_ex = detail::axis_dev_extremes(nodes, margin);
  if (!extra_nodes.empty()) {
    d.extra_ex = detail::axis_dev_extremes(extra_nodes, margin);
    d.has_extra = true;
  }
  d.dev0.resize(coords.size());
  d.dev1.resize(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const AxisMargin m = margin(coords[i]);
    d.dev0[i] = m.dev(0.0);
    d.dev1[i] = m.dev(1.0);
  }
  return d;
}

// h12 interval intersected over quadrature nodes, sample points, optional
// extra nodes, and the positive-definiteness band.
Interval cell_h12_interval(const AxisData& a1, const AxisData& a2, double h11,
                           double h22) {
  Interval iv = detail::product_set_coef_bounds(a1.node_ex, a2.node_ex);
  if (a1.has_extra) {
    const Interval ex = detail::product_set_coef_bounds(a1.extra_ex, a2.extra_ex);
    iv.lo = std::max(iv.lo, ex.lo);
    iv.hi = std::min(iv.hi, ex.hi);
  }
  for (std::size_t i = 0; i < a1.dev0.size(); ++i) {
    const double max_prod = std::max(a1.dev0[i] * a2.dev0[i],
                                     a1.dev1[i] * a2.dev1[i]);
    const double min_prod = std::min(a1.dev0[i] * a2.dev1[i],
                                     a1.dev1[i] * a2.dev0[i]);
    iv.lo = std::max(iv.lo, -1.0 / max_prod);
    iv.hi = std::min(iv.hi, 1.0 / std::abs(min_prod));
  }
  const double r = std::sqrt(h11 * h22) * (1.0 - 16.0 * kAdmissibilityTol);
  iv.lo = std::max(iv.lo, -r);
  iv.hi = std::min(iv.hi, r);
  return iv;
}

// m values spanning [lo, hi] with the entry closest to zero snapped to
// exactly 0; m == 1 degenerates to {0}.
std::vector<double> discretize_h12(const Interval& iv, std::size_t m) {
  if (m <= 1) return {0.0};
  std::vector<double> values(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double t = static_cast<double>(k) / static_cast<double>(m - 1);
    values[k] = iv.lo + t * (iv.hi - iv.lo);
  }
  std::size_t closest = 0;
  for (std::size_t k = 1; k < m; ++k) {
    if (std::abs(values[k]) < std::abs(values[closest])) closest = k;
  }
  values[closest] = 0.0;
  return values;
}

// LSCV value from prepared tables; shared by every selector and by the
// standalone objective so scores agree bitwise.
double objective_from_tables(const AxisData& a1, const AxisData& a2,
                             std::size_t G, std::size_t n, double h12) {
  const double inv_n = 1.0 / static_cast<double>(n);
  double total = 0.0;
  for (std::size_t a = 0; a < G; ++a) {
    const double* k1 = a1.grid.k_row(a);
    const double* c1 = a1.grid.a_row(a);
    double row = 0.0;
    for (std::size_t b = 0; b < G; ++b) {
      double f = detail::dot(k1, a2.grid.k_row(b), n);
      if (h12 != 0.0) f += h12 * detail::dot(c1, a2.grid.a_row(b), n);
      f *= inv_n;
      row += f * f;
    }
    total += row;
  }
  const double term1 = total / (static_cast<double>(G) * static_cast<double>(G));

  double loo_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double* k1 = a1.samp.k_row(i);
    const double* c1 = a1.samp.a_row(i);
    const double* k2 = a2.samp.k_row(i);
    const double* c2 = a2.samp.a_row(i);
    double row = 0.0;
    double diag = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double v = k1[j] * k2[j];
      if (h12 != 0.0) v += h12 * c1[j] * c2[j];
      row += v;
      if (j == i) diag = v;
    }
    loo_sum += (row - diag) / (static_cast<double>(n) - 1.0);
  }
  return term1 - 2.0 * loo_sum * inv_n;
}

LscvResult finalize(std::vector<LscvCandidate> trace) {
  const LscvCandidate* best = nullptr;
  for (const auto& c : trace) {
    // Strict comparison over the enumeration order implements the
    // lexicographic (h11, h22, h12) tie-break.
    if (c.admissible && std::isfinite(c.objective) &&
        (best == nullptr || c.objective < best->objective)) {
      best = &c;
    }
  }
  if (best == nullptr) {
    throw NumericError("no admissible bandwidth candidate was scored");
  }
  return LscvResult{best->H, best->objective, std::move(trace)};
}

}  // namespace

SearchGrid SearchGrid::defaults() {
  SearchGrid g;
  g.h11_values = log_spaced(0.01, 0.8, 20);
  g.h22_values = log_spaced(0.01, 0.8, 20);
  g.h12_points_per_cell = 9;
  g.h_values = lin_spaced(0.05, 2.0, 40);
  return g;
}

std::vector<double> log_spaced(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 1) {
    throw ValidationError("log_spaced needs 0 < lo < hi and count >= 1");
  }
  std::vector<double> v(count);
  if (count == 1) {
    v[0] = lo;
    return v;
  }
  const double la = std::log(lo), lb = std::log(hi);
  for (std::size_t i = 0; i < count; ++i) {
    v[i] = std::exp(la + (lb - la) * static_cast<double>(i) /
                             static_cast<double>(count - 1));
  }
  return v;
}

std::vector<double> lin_spaced(double lo, double hi, std::size_t count) {
  if (!(hi > lo) || count < 1) {
    throw ValidationError("lin_spaced needs lo < hi and count >= 1");
  }
  std::vector<double> v(count);
  if (count == 1) {
    v[0] = lo;
    return v;
  }
  for (std::size_t i = 0; i < count; ++i) {
    v[i] = lo + (hi - lo) * static_cast<double>(i) /
                    static_cast<double>(count - 1);
  }
  return v;
}

double lscv_objective(const Sample2& sample, const BandwidthMatrix2& H,
                      std::size_t grid_resolution, std::size_t threads) {
  (void)threads;
  check_sample(sample);
  const std::vector<double> nodes = midpoint_nodes(grid_resolution);
  const AxisData a1 =
      build_axis_data(nodes, axis_coords(sample, 0), H.h11(), {});
  const AxisData a2 =
      build_axis_data(nodes, axis_coords(sample, 1), H.h22(), {});
  const Interval iv = cell_h12_interval(a1, a2, H.h11(), H.h22());
  if (!iv.contains(H.h12(), kAdmissibilityTol)) {
    throw AdmissibilityError(
        "h12=" + std::to_string(H.h12()) +
        " inadmissible over the quadrature nodes and sample; interval [" +
        std::to_string(iv.lo) + ", " + std::to_string(iv.hi) + "]");
  }
  return objective_from_tables(a1, a2, grid_resolution, sample.n(), H.h12());
}

LscvResult select_full(const Sample2& sample, const SearchGrid& grid,
                       std::size_t grid_resolution, std::size_t threads,
                       const std::vector<double>& extra_product_nodes) {
  check_sample(sample);
  check_increasing(grid.h11_values, "h11");
  check_increasing(grid.h22_values, "h22");
  if (grid.h12_points_per_cell < 1) {
    throw ValidationError("h12_points_per_cell must be >= 1");
  }
  const std::vector<double> nodes = midpoint_nodes(grid_resolution);
  const std::vector<double> xs1 = axis_coords(sample, 0);
  const std::vector<double> xs2 = axis_coords(sample, 1);

  std::vector<AxisData> ax1(grid.h11_values.size());
  std::vector<AxisData> ax2(grid.h22_values.size());
  parallel_for(ax1.size() + ax2.size(), threads, [&](std::size_t k) {
    if (k < ax1.size()) {
      ax1[k] = build_axis_data(nodes, xs1, grid.h11_values[k],
                               extra_product_nodes);
    } else {
      ax2[k - ax1.size()] = build_axis_data(nodes, xs2,
                                            grid.h22_values[k - ax1.size()],
                                            extra_product_nodes);
    }
  });

  struct Entry {
    std::size_t i, j;
    double h12;
  };
  std::vector<Entry> entries;
  entries.reserve(grid.h11_values.size() * grid.h22_values.size() *
                  grid.h12_points_per_cell);
  for (std::size_t i = 0; i < grid.h11_values.size(); ++i) {
    for (std::size_t j = 0; j < grid.h22_values.size(); ++j) {
      const Interval iv = cell_h12_interval(ax1[i], ax2[j],
                                            grid.h11_values[i],
                                            grid.h22_values[j]);
      for (double h12 : discretize_h12(iv, grid.h12_points_per_cell)) {
        entries.push_back(Entry{i, j, h12});
      }
    }
  }

  std::vector<double> scores(entries.size());
  parallel_for(entries.size(), threads, [&](std::size_t k) {
    const Entry& e = entries[k];
    scores[k] = objective_from_tables(ax1[e.i], ax2[e.j], grid_resolution,
                                      sample.n(), e.h12);
  });

  std::vector<LscvCandidate> trace;
  trace.reserve(entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const Entry& e = entries[k];
    BandwidthMatrix2 H = BandwidthMatrix2::full(
        grid.h11_values[e.i], grid.h22_values[e.j], e.h12);
    trace.push_back(LscvCandidate{H, e.h12, scores[k], true});
  }
  return finalize(std::move(trace));
}

LscvResult select_scott(const Sample2& sample, const SearchGrid& grid,
                        std::size_t grid_resolution, std::size_t threads,
                        const std::vector<double>& extra_product_nodes) {
  check_sample(sample);
  check_increasing(grid.h_values, "Scott h");
  const SymMatrix2 H0 =
      grid.H0_from_sample ? sample.covariance() : grid.H0;
  if (!(H0.a11 > 0.0) || !(H0.a22 > 0.0) ||
      !(H0.a12 * H0.a12 < H0.a11 * H0.a22)) {
    throw NumericError("Scott base matrix is not positive definite");
  }
  const std::vector<double> nodes = midpoint_nodes(grid_resolution);
  const std::vector<double> xs1 = axis_coords(sample, 0);
  const std::vector<double> xs2 = axis_coords(sample, 1);

  const std::size_t count = grid.h_values.size();
  struct Scored {
    double h;
    double raw_h12;
    double h12;
    double objective;
  };
  std::vector<Scored> scored(count);
  parallel_for(count, threads, [&](std::size_t k) {
    const double h = grid.h_values[k];
    const double h11 = h * H0.a11;
    const double h22 = h * H0.a22;
    const AxisData a1 = build_axis_data(nodes, xs1, h11, extra_product_nodes);
    const AxisData a2 = build_axis_data(nodes, xs2, h22, extra_product_nodes);
    const Interval iv = cell_h12_interval(a1, a2, h11, h22);
    const double raw = h * H0.a12;
    const double h12 = std::clamp(raw, iv.lo, iv.hi);
    scored[k] = Scored{h, raw, h12,
                       objective_from_tables(a1, a2, grid_resolution,
                                             sample.n(), h12)};
  });

  std::vector<LscvCandidate> trace;
  trace.reserve(count);
  for (const Scored& s : scored) {
    BandwidthMatrix2 H =
        s.h12 == s.raw_h12
            ? BandwidthMatrix2::scott(s.h, H0)
            : BandwidthMatrix2::scott_clamped(s.h, H0, s.h12);
    trace.push_back(LscvCandidate{H, s.raw_h12, s.objective, true});
  }
  return finalize(std::move(trace));
}

LscvResult select_diagonal(const Sample2& sample, const SearchGrid& grid,
                           std::size_t grid_resolution, std::size_t threads) {
  check_sample(sample);
  check_increasing(grid.h11_values, "h11");
  check_increasing(grid.h22_values, "h22");
  const std::vector<double> nodes = midpoint_nodes(grid_resolution);
  const std::vector<double> xs1 = axis_coords(sample, 0);
  const std::vector<double> xs2 = axis_coords(sample, 1);

  std::vector<AxisData> ax1(grid.h11_values.size());
  std::vector<AxisData> ax2(grid.h22_values.size());
  parallel_for(ax1.size() + ax2.size(), threads, [&](std::size_t k) {
    if (k < ax1.size()) {
      ax1[k] = build_axis_data(nodes, xs1, grid.h11_values[k], {});
    } else {
      ax2[k - ax1.size()] =
          build_axis_data(nodes, xs2, grid.h22_values[k - ax1.size()], {});
    }
  });

  const std::size_t cells = ax1.size() * ax2.size();
  std::vector<double> scores(cells);
  parallel_for(cells, threads, [&](std::size_t k) {
    const std::size_t i = k / ax2.size();
    const std::size_t j = k % ax2.size();
    scores[k] = objective_from_tables(ax1[i], ax2[j], grid_resolution,
                                      sample.n(), 0.0);
  });

  std::vector<LscvCandidate> trace;
  trace.reserve(cells);
  for (std::size_t k = 0; k < cells; ++k) {
    const std::size_t i = k / ax2.size();
    const std::size_t j = k % ax2.size();
    BandwidthMatrix2 H = BandwidthMatrix2::diagonal(grid.h11_values[i],
                                                    grid.h22_values[j]);
    trace.push_back(LscvCandidate{H, 0.0, scores[k], true});
  }
  return finalize(std::move(trace));
}

}  // namespace bskde
