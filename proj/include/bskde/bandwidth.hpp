#pragma once

#include <cstddef>
#include <vector>

#include "bskde/bandwidth_matrix.hpp"
#include "bskde/estimator.hpp"

namespace bskde {

/// Candidate grids for the three bandwidth-matrix searches. h11/h22 lists
/// must be strictly increasing. The Scott base H0 defaults to the sample
/// covariance matrix.
struct SearchGrid {
  std::vector<double> h11_values;
  std::vector<double> h22_values;
  std::size_t h12_points_per_cell = 9;
  std::vector<double> h_values;
  bool H0_from_sample = true;
  SymMatrix2 H0{};

  /// Desk-scale defaults: 20 log-spaced points in [0.01, 0.8] per diagonal
  /// axis, 9 off-diagonal points per cell, 40 Scott scales in (0, 2].
  static SearchGrid defaults();
};

std::vector<double> log_spaced(double lo, double hi, std::size_t count);
std::vector<double> lin_spaced(double lo, double hi, std::size_t count);

struct LscvCandidate {
  BandwidthMatrix2 H;
  double raw_h12;    // off-diagonal before any clamping (Scott composition)
  double objective;
  bool admissible;
};

struct LscvResult {
  BandwidthMatrix2 best;
  double objective;
  std::vector<LscvCandidate> trace;
};

/// LSCV(H) = integral of the squared unnormalized estimate (midpoint rule at
/// grid_resolution^2) minus (2/n) times the exact leave-one-out sums.
/// Requires n >= 2 and h12 admissible at every quadrature node and sample
/// point.
double lscv_objective(const Sample2& sample, const BandwidthMatrix2& H,
                      std::size_t grid_resolution, std::size_t threads = 0);

/// Full bandwidth matrices: per (h11, h22) cell the h12 interval is the
/// intersection of the admissible intervals over all quadrature nodes,
/// sample points and extra_product_nodes (a per-axis node list, e.g. a finer
/// output grid), discretized into h12_points_per_cell values always
/// containing 0. Ties break to the lexicographically smallest (h11, h22,
/// h12).
LscvResult select_full(const Sample2& sample, const SearchGrid& grid,
                       std::size_t grid_resolution, std::size_t threads = 0,
                       const std::vector<double>& extra_product_nodes = {});

/// Scott matrices h * H0: the composed off-diagonal h * h0_12 is clamped to
/// the admissible interval endpoint when it falls outside; the trace records
/// the raw value.
LscvResult select_scott(const Sample2& sample, const SearchGrid& grid,
                        std::size_t grid_resolution, std::size_t threads = 0,
                        const std::vector<double>& extra_product_nodes = {});

/// Diagonal matrices: exhaustive (h11, h22) scan with h12 = 0, which is
/// admissible everywhere.
LscvResult select_diagonal(const Sample2& sample, const SearchGrid& grid,
                           std::size_t grid_resolution,
                           std::size_t threads = 0);

}  // namespace bskde
