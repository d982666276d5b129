#include "bskde/simulation.hpp"

#include <algorithm>
#include <cmath>

#include "bskde/errors.hpp"
#include "bskde/parallel.hpp"
#include "bskde/rng.hpp"

namespace bskde {

namespace {

struct WeightedBeta {
  double weight;
  double p;
  double q;
};

// Mixture of beta densities on one axis.
struct MarginSpec {
  std::vector<WeightedBeta> components;

  double pdf(double t) const {
    double s = 0.0;
    for (const auto& c : components) {
      s += c.weight * beta_pdf(t, BetaParams(c.p, c.q));
    }
    return s;
  }

  // First and second derivatives in the open interval (0, 1).
  void derivatives(double t, double& g, double& g1, double& g2) const {
    g = g1 = g2 = 0.0;
    for (const auto& c : components) {
      const double v = c.weight * beta_pdf(t, BetaParams(c.p, c.q));
      const double d = (c.p - 1.0) / t - (c.q - 1.0) / (1.0 - t);
      const double d2 =
          -(c.p - 1.0) / (t * t) - (c.q - 1.0) / ((1.0 - t) * (1.0 - t));
      g += v;
      g1 += v * d;
      g2 += v * (d * d + d2);
    }
  }

  double sample(SplitMix64& rng) const {
    double u = rng.uniform01();
    for (const auto& c : components) {
      if (u < c.weight || &c == &components.back()) {
        return rng.beta(c.p, c.q);
      }
      u -= c.weight;
    }
    return rng.beta(components.back().p, components.back().q);
  }
};

struct ProductSpec {
  MarginSpec m1;
  MarginSpec m2;
};

struct DirichletSpec {
  double a1, a2, a3;
};

ProductSpec product_spec(TargetModel model) {
  switch (model) {
    case TargetModel::A:
      return {{{{1.0, 3.0, 3.0}}}, {{{1.0, 5.0, 5.0}}}};
    case TargetModel::C:
      return {{{{1.0, 3.0, 2.0}}}, {{{1.0, 2.0, 5.0}}}};
    case TargetModel::E:
      return {{{{3.0 / 7.0, 2.0, 7.0}, {4.0 / 7.0, 7.0, 2.0}}},
              {{{1.0, 6.0, 6.0}}}};
    case TargetModel::F:
      return {{{{8.0 / 11.0, 3.5, 7.0}, {3.0 / 11.0, 7.0, 3.5}}},
              {{{5.0 / 7.0, 7.0, 2.0}, {2.0 / 7.0, 2.0, 7.0}}}};
    default:
      throw ValidationError("not a product-form model");
  }
}

DirichletSpec dirichlet_spec(TargetModel model) {
  if (model == TargetModel::B) return {2.0, 2.0, 7.0};
  if (model == TargetModel::D) return {10.0, 10.0, 3.0};
  throw ValidationError("not a Dirichlet model");
}

bool is_dirichlet(TargetModel model) {
  return model == TargetModel::B || model == TargetModel::D;
}

double dirichlet_pdf(const DirichletSpec& s, double v1, double v2) {
  const double rest = 1.0 - v1 - v2;
  if (v1 < 0.0 || v2 < 0.0 || rest < 0.0) return 0.0;
  const double lc = std::lgamma(s.a1 + s.a2 + s.a3) - std::lgamma(s.a1) -
                    std::lgamma(s.a2) - std::lgamma(s.a3);
  double lg = lc;
  if (s.a1 != 1.0) {
    if (v1 == 0.0) return 0.0;
    lg += (s.a1 - 1.0) * std::log(v1);
  }
  if (s.a2 != 1.0) {
    if (v2 == 0.0) return 0.0;
    lg += (s.a2 - 1.0) * std::log(v2);
  }
  if (s.a3 != 1.0) {
    if (rest == 0.0) return 0.0;
    lg += (s.a3 - 1.0) * std::log(rest);
  }
  return std::exp(lg);
}

}  // namespace

std::string to_string(TargetModel model) {
  switch (model) {
    case TargetModel::A: return "A";
    case TargetModel::B: return "B";
    case TargetModel::C: return "C";
    case TargetModel::D: return "D";
    case TargetModel::E: return "E";
    case TargetModel::F: return "F";
  }
  return "?";
}

TargetModel parse_model(const std::string& name) {
  if (name == "A" || name == "a") return TargetModel::A;
  if (name == "B" || name == "b") return TargetModel::B;
  if (name == "C" || name == "c") return TargetModel::C;
  if (name == "D" || name == "d") return TargetModel::D;
  if (name == "E" || name == "e") return TargetModel::E;
  if (name == "F" || name == "f") return TargetModel::F;
  throw ValidationError("unknown target model '" + name + "' (expected A-F)");
}

double target_pdf(TargetModel model, double v1, double v2) {
  if (is_dirichlet(model)) return dirichlet_pdf(dirichlet_spec(model), v1, v2);
  const ProductSpec s = product_spec(model);
  return s.m1.pdf(v1) * s.m2.pdf(v2);
}

std::array<double, 2> target_grad(TargetModel model, double v1, double v2) {
  if (is_dirichlet(model)) {
    const DirichletSpec s = dirichlet_spec(model);
    const double rest = 1.0 - v1 - v2;
    if (v1 <= 0.0 || v2 <= 0.0 || rest <= 0.0) return {0.0, 0.0};
    const double f = dirichlet_pdf(s, v1, v2);
    const double d1 = (s.a1 - 1.0) / v1 - (s.a3 - 1.0) / rest;
    const double d2 = (s.a2 - 1.0) / v2 - (s.a3 - 1.0) / rest;
    return {f * d1, f * d2};
  }
  const ProductSpec s = product_spec(model);
  double g1, g1d, g1dd, g2, g2d, g2dd;
  s.m1.derivatives(v1, g1, g1d, g1dd);
  s.m2.derivatives(v2, g2, g2d, g2dd);
  return {g1d * g2, g1 * g2d};
}

std::array<double, 3> target_hessian(TargetModel model, double v1, double v2) {
  if (is_dirichlet(model)) {
    const DirichletSpec s = dirichlet_spec(model);
    const double rest = 1.0 - v1 - v2;
    if (v1 <= 0.0 || v2 <= 0.0 || rest <= 0.0) return {0.0, 0.0, 0.0};
    const double f = dirichlet_pdf(s, v1, v2);
    const double d1 = (s.a1 - 1.0) / v1 - (s.a3 - 1.0) / rest;
    const double d2 = (s.a2 - 1.0) / v2 - (s.a3 - 1.0) / rest;
    const double d11 =
        -(s.a1 - 1.0) / (v1 * v1) - (s.a3 - 1.0) / (rest * rest);
    const double d22 =
        -(s.a2 - 1.0) / (v2 * v2) - (s.a3 - 1.0) / (rest * rest);
    const double d12 = -(s.a3 - 1.0) / (rest * rest);
    return {f * (d1 * d1 + d11), f * (d1 * d2 + d12), f * (d2 * d2 + d22)};
  }
  const ProductSpec s = product_spec(model);
  double g1, g1d, g1dd, g2, g2d, g2dd;
  s.m1.derivatives(v1, g1, g1d, g1dd);
  s.m2.derivatives(v2, g2, g2d, g2dd);
  return {g1dd * g2, g1d * g2d, g1 * g2dd};
}

DiagnosticsInput target_diagnostics(TargetModel model) {
  DiagnosticsInput d;
  d.f = [model](double v1, double v2) { return target_pdf(model, v1, v2); };
  d.grad = [model](double v1, double v2) {
    return target_grad(model, v1, v2);
  };
  d.hess = [model](double v1, double v2) {
    return target_hessian(model, v1, v2);
  };
  return d;
}

double dirichlet_correlation(double a1, double a2, double a3) {
  if (!(a1 > 0.0 && a2 > 0.0 && a3 > 0.0)) {
    throw ValidationError("Dirichlet parameters must be positive");
  }
  return -std::sqrt(a1 * a2) / std::sqrt((a1 + a3) * (a2 + a3));
}

Sample2 target_sample(TargetModel model, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw ValidationError("sample size must be at least 1");
  SplitMix64 rng = SplitMix64::substream(
      seed, {static_cast<std::uint64_t>(model)});
  std::vector<TargetPoint2> pts;
  pts.reserve(n);
  if (is_dirichlet(model)) {
    const DirichletSpec s = dirichlet_spec(model);
    for (std::size_t i = 0; i < n; ++i) {
      double v1, v2;
      rng.dirichlet3(s.a1, s.a2, s.a3, v1, v2);
      pts.emplace_back(v1, v2);
    }
  } else {
    const ProductSpec s = product_spec(model);
    for (std::size_t i = 0; i < n; ++i) {
      const double v1 = s.m1.sample(rng);
      const double v2 = s.m2.sample(rng);
      pts.emplace_back(v1, v2);
    }
  }
  return Sample2(std::move(pts));
}

double ise_hat(const DensityGrid& fitted, TargetModel model) {
  const std::size_t g = fitted.resolution;
  double total = 0.0;
  for (std::size_t i = 0; i < g; ++i) {
    const double v1 = fitted.node_coord(i);
    double row = 0.0;
    for (std::size_t j = 0; j < g; ++j) {
      const double d = fitted.at(i, j) - target_pdf(model, v1,
                                                    fitted.node_coord(j));
      row += d * d;
    }
    total += row;
  }
  return total / (static_cast<double>(g) * static_cast<double>(g));
}

std::vector<IseSummary> run_study(const StudyConfig& config) {
  if (config.models.empty() || config.families.empty()) {
    throw ValidationError("study needs at least one model and one family");
  }
  if (config.replications < 1) {
    throw ValidationError("study needs at least one replication");
  }
  const std::size_t reps = config.replications;
  const std::size_t tasks =
      config.models.size() * config.families.size() * reps;
  std::vector<double> ises(tasks, 0.0);
  const std::vector<double> ise_nodes = midpoint_nodes(config.ise_resolution);

  parallel_for(tasks, config.threads, [&](std::size_t k) {
    const std::size_t mi = k / (config.families.size() * reps);
    const std::size_t fi = (k / reps) % config.families.size();
    const std::size_t rep = k % reps;
    const TargetModel model = config.models[mi];
    const BandwidthFamily family = config.families[fi];

    // Replication substream keyed by (model, replication); the model key is
    // applied inside target_sample. Families share each replication's sample
    // so their ISE summaries compare like for like.
    const std::uint64_t rep_seed =
        SplitMix64::substream(config.seed, {rep}).next();
    const Sample2 sample = target_sample(model, config.n, rep_seed);

    LscvResult sel = [&] {
      switch (family) {
        case BandwidthFamily::Full:
          return select_full(sample, config.grid, config.lscv_resolution, 1,
                             ise_nodes);
        case BandwidthFamily::Scott:
          return select_scott(sample, config.grid, config.lscv_resolution, 1,
                              ise_nodes);
        case BandwidthFamily::Diagonal:
          return select_diagonal(sample, config.grid, config.lscv_resolution,
                                 1);
      }
      throw ValidationError("unknown bandwidth family");
    }();

    DensityGrid fitted =
        estimate_standard_grid(sample, sel.best, config.ise_resolution, 1);
    if (config.normalize) fitted = normalize(fitted);
    ises[k] = ise_hat(fitted, model);
  });

  std::vector<IseSummary> out;
  out.reserve(config.models.size() * config.families.size());
  for (std::size_t mi = 0; mi < config.models.size(); ++mi) {
    for (std::size_t fi = 0; fi < config.families.size(); ++fi) {
      IseSummary s;
      s.model = config.models[mi];
      s.family = config.families[fi];
      s.n = config.n;
      s.replications = reps;
      const std::size_t base = (mi * config.families.size() + fi) * reps;
      s.per_rep.assign(ises.begin() + base, ises.begin() + base + reps);
      std::vector<double> sorted = s.per_rep;
      std::sort(sorted.begin(), sorted.end());
      double mean = 0.0;
      for (double v : sorted) mean += v;
      mean /= static_cast<double>(reps);
      double ss = 0.0;
      for (double v : sorted) ss += (v - mean) * (v - mean);
      s.mean_ise = mean;
      s.sd_ise = reps > 1 ? std::sqrt(ss / (static_cast<double>(reps) - 1.0))
                          : 0.0;
      out.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace bskde
