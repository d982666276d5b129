#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "bskde/bandwidth.hpp"
#include "bskde/estimator.hpp"
#include "bskde/grid.hpp"

namespace bskde {

/// Six synthetic targets on the unit square: product betas (A, C), Dirichlet
/// pairs on the simplex (B, D) and beta mixtures (E, F).
enum class TargetModel { A, B, C, D, E, F };

std::string to_string(TargetModel model);
TargetModel parse_model(const std::string& name);

double target_pdf(TargetModel model, double v1, double v2);
std::array<double, 2> target_grad(TargetModel model, double v1, double v2);
/// (fxx, fxy, fyy), defined in the interior of the support.
std::array<double, 3> target_hessian(TargetModel model, double v1, double v2);
DiagnosticsInput target_diagnostics(TargetModel model);

/// Correlation of the (V1, V2) margins of a Dirichlet(a1, a2, a3):
/// -sqrt(a1 a2) / sqrt((a1 + a3)(a2 + a3)).
double dirichlet_correlation(double a1, double a2, double a3);

/// n iid draws from the model, deterministic in (model, seed); beta margins
/// by gamma ratios, Dirichlet by normalized gamma triplets, mixtures by a
/// component indicator.
Sample2 target_sample(TargetModel model, std::size_t n, std::uint64_t seed);

/// Midpoint-rule integral of (fitted - f)^2 at the grid's own resolution.
double ise_hat(const DensityGrid& fitted, TargetModel model);

struct IseSummary {
  TargetModel model;
  BandwidthFamily family;
  std::size_t n;
  std::size_t replications;
  double mean_ise;
  double sd_ise;
  std::vector<double> per_rep;
};

struct StudyConfig {
  std::vector<TargetModel> models;
  std::vector<BandwidthFamily> families;
  std::size_t n = 100;
  std::size_t replications = 10;
  std::uint64_t seed = 42;
  SearchGrid grid = SearchGrid::defaults();
  std::size_t lscv_resolution = 64;
  std::size_t ise_resolution = 201;
  bool normalize = false;
  std::size_t threads = 0;
};

/// Replications keyed by (model, family, replication) substreams run as
/// independent tasks; summaries are computed from the sorted per-replication
/// list, so output is identical for any thread count.
std::vector<IseSummary> run_study(const StudyConfig& config);

}  // namespace bskde
