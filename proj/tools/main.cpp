#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bskde/bandwidth.hpp"
#include "bskde/errors.hpp"
#include "bskde/estimator.hpp"
#include "bskde/io.hpp"
#include "bskde/kernel.hpp"
#include "bskde/modified.hpp"
#include "bskde/parallel.hpp"
#include "bskde/regions.hpp"
#include "bskde/simulation.hpp"

namespace {

using json = nlohmann::json;

struct Options {
  std::string input;
  std::string output;
  std::string family = "full";
  std::size_t grid = 201;
  std::size_t lscv_grid = 64;
  std::string lscv_h11 = "0.01:0.8:20";
  std::string lscv_h22 = "0.01:0.8:20";
  std::size_t h12_points = 9;
  std::string scott_h = "0.05:2:40";
  std::string alpha;
  std::string x_point;
  std::string v_point;
  std::string models = "A";
  double h11 = 0.0;
  double h22 = 0.0;
  double h12 = 0.0;
  std::size_t n = 100;
  std::size_t reps = 10;
  std::uint64_t seed = 42;
  std::size_t parallelism = 0;
  bool normalize = false;
  bool modified = false;
  bool allow_inadmissible = false;
};

struct RangeSpec {
  double lo;
  double hi;
  std::size_t count;
};

RangeSpec parse_range(const std::string& text, const char* what) {
  RangeSpec r{};
  const auto c1 = text.find(':');
  const auto c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos) {
    throw bskde::ValidationError(std::string(what) + " expects 'lo:hi:count', got '" +
                                 text + "'");
  }
  try {
    r.lo = std::stod(text.substr(0, c1));
    r.hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    r.count = static_cast<std::size_t>(std::stoul(text.substr(c2 + 1)));
  } catch (const std::exception&) {
    throw bskde::ValidationError(std::string(what) + " expects 'lo:hi:count', got '" +
                                 text + "'");
  }
  return r;
}

std::pair<double, double> parse_pair(const std::string& text, const char* what) {
  const auto c = text.find(',');
  if (c == std::string::npos) {
    throw bskde::ValidationError(std::string(what) + " expects 'a,b', got '" +
                                 text + "'");
  }
  try {
    return {std::stod(text.substr(0, c)), std::stod(text.substr(c + 1))};
  } catch (const std::exception&) {
    throw bskde::ValidationError(std::string(what) + " expects 'a,b', got '" +
                                 text + "'");
  }
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

bskde::SearchGrid make_search_grid(const Options& opt) {
  bskde::SearchGrid grid;
  const RangeSpec r1 = parse_range(opt.lscv_h11, "--lscv-h11");
  const RangeSpec r2 = parse_range(opt.lscv_h22, "--lscv-h22");
  const RangeSpec rs = parse_range(opt.scott_h, "--scott-h");
  grid.h11_values = bskde::log_spaced(r1.lo, r1.hi, r1.count);
  grid.h22_values = bskde::log_spaced(r2.lo, r2.hi, r2.count);
  grid.h12_points_per_cell = opt.h12_points;
  grid.h_values = bskde::lin_spaced(rs.lo, rs.hi, rs.count);
  return grid;
}

json config_json(const Options& opt, const std::string& command) {
  return json{{"command", command},
              {"input", opt.input},
              {"output", opt.output},
              {"family", opt.family},
              {"grid", opt.grid},
              {"lscv_grid", opt.lscv_grid},
              {"lscv_h11", opt.lscv_h11},
              {"lscv_h22", opt.lscv_h22},
              {"h12_points", opt.h12_points},
              {"scott_h", opt.scott_h},
              {"alpha", opt.alpha},
              {"seed", opt.seed},
              {"parallelism", opt.parallelism},
              {"normalize", opt.normalize},
              {"modified", opt.modified}};
}

json bandwidth_json(const bskde::BandwidthMatrix2& H) {
  json j{{"h11", H.h11()}, {"h22", H.h22()}, {"h12", H.h12()},
         {"family", bskde::to_string(H.family())}};
  if (H.family() == bskde::BandwidthFamily::Scott) {
    j["scott_h"] = H.scott_h();
    j["scott_base"] = {H.scott_base().a11, H.scott_base().a12,
                       H.scott_base().a22};
  }
  return j;
}

void write_sidecar(const Options& opt, const json& summary) {
  if (opt.output.empty()) return;
  std::ofstream out(opt.output + ".summary.json");
  if (!out) {
    throw bskde::ValidationError("cannot write sidecar next to '" +
                                 opt.output + "'");
  }
  out << summary.dump(2) << '\n';
}

bskde::LscvResult run_selection(const Options& opt, const bskde::Sample2& sample,
                                const std::vector<double>& extra_nodes) {
  const bskde::SearchGrid grid = make_search_grid(opt);
  const bskde::BandwidthFamily family = bskde::parse_family(opt.family);
  switch (family) {
    case bskde::BandwidthFamily::Full:
      return bskde::select_full(sample, grid, opt.lscv_grid, opt.parallelism,
                                extra_nodes);
    case bskde::BandwidthFamily::Scott:
      return bskde::select_scott(sample, grid, opt.lscv_grid, opt.parallelism,
                                 extra_nodes);
    case bskde::BandwidthFamily::Diagonal:
      return bskde::select_diagonal(sample, grid, opt.lscv_grid,
                                    opt.parallelism);
  }
  throw bskde::ValidationError("unknown family");
}

std::pair<double, double> resolve_alpha(const Options& opt,
                                        const bskde::BandwidthMatrix2& H) {
  if (!opt.alpha.empty()) return parse_pair(opt.alpha, "--alpha");
  return {bskde::default_alpha(H.h11()), bskde::default_alpha(H.h22())};
}

int cmd_fit(const Options& opt) {
  if (opt.input.empty() || opt.output.empty()) {
    throw bskde::ValidationError("fit requires --input and --output");
  }
  const bskde::Sample2 sample = bskde::read_sample_csv(opt.input);
  const std::vector<double> out_nodes = bskde::midpoint_nodes(opt.grid);
  const bskde::LscvResult sel = run_selection(opt, sample, out_nodes);

  bskde::DensityGrid fitted(opt.grid);
  json summary = config_json(opt, "fit");
  if (opt.modified) {
    const auto [a1, a2] = resolve_alpha(opt, sel.best);
    fitted = bskde::estimate_modified_grid(sample, sel.best, a1, a2, opt.grid,
                                           opt.parallelism);
    summary["alpha_effective"] = {a1, a2};
  } else {
    fitted = bskde::estimate_standard_grid(sample, sel.best, opt.grid,
                                           opt.parallelism);
  }
  const double lambda = fitted.integral();
  if (opt.normalize) fitted = bskde::normalize(fitted);
  bskde::write_density_grid_csv(opt.output, fitted);

  summary["n"] = sample.n();
  summary["bandwidth"] = bandwidth_json(sel.best);
  summary["lscv_objective"] = sel.objective;
  summary["total_mass"] = lambda;
  summary["candidates_scored"] = sel.trace.size();
  write_sidecar(opt, summary);
  std::cout << "fit: n=" << sample.n() << " family=" << opt.family
            << " h11=" << bskde::format_double(sel.best.h11())
            << " h22=" << bskde::format_double(sel.best.h22())
            << " h12=" << bskde::format_double(sel.best.h12())
            << " objective=" << bskde::format_double(sel.objective)
            << " lambda=" << bskde::format_double(lambda) << '\n';
  return 0;
}

int cmd_select(const Options& opt) {
  if (opt.input.empty()) {
    throw bskde::ValidationError("select requires --input");
  }
  const bskde::Sample2 sample = bskde::read_sample_csv(opt.input);
  const bskde::LscvResult sel = run_selection(opt, sample, {});

  if (!opt.output.empty()) {
    std::ofstream out(opt.output);
    if (!out) {
      throw bskde::ValidationError("cannot open output file '" + opt.output +
                                   "'");
    }
    out << "family,h11,h22,h12,raw_h12,objective,admissible\n";
    for (const auto& c : sel.trace) {
      out << bskde::to_string(c.H.family()) << ','
          << bskde::format_double(c.H.h11()) << ','
          << bskde::format_double(c.H.h22()) << ','
          << bskde::format_double(c.H.h12()) << ','
          << bskde::format_double(c.raw_h12) << ','
          << bskde::format_double(c.objective) << ','
          << (c.admissible ? 1 : 0) << '\n';
    }
  }
  json summary = config_json(opt, "select");
  summary["n"] = sample.n();
  summary["bandwidth"] = bandwidth_json(sel.best);
  summary["lscv_objective"] = sel.objective;
  summary["candidates_scored"] = sel.trace.size();
  write_sidecar(opt, summary);
  std::cout << "select: family=" << opt.family
            << " h11=" << bskde::format_double(sel.best.h11())
            << " h22=" << bskde::format_double(sel.best.h22())
            << " h12=" << bskde::format_double(sel.best.h12())
            << " objective=" << bskde::format_double(sel.objective) << '\n';
  return 0;
}

int cmd_eval_kernel(const Options& opt) {
  if (opt.x_point.empty() || !(opt.h11 > 0.0) || !(opt.h22 > 0.0)) {
    throw bskde::ValidationError(
        "eval-kernel requires --x plus positive --h11 and --h22");
  }
  const auto [x1, x2] = parse_pair(opt.x_point, "--x");
  const bskde::TargetPoint2 x(x1, x2);
  const bskde::BandwidthMatrix2 H =
      opt.h12 == 0.0 ? bskde::BandwidthMatrix2::diagonal(opt.h11, opt.h22)
                     : bskde::BandwidthMatrix2::full(opt.h11, opt.h22, opt.h12);

  const auto kernel = [&]() -> bskde::PreparedBsKernel {
    if (opt.modified) {
      const auto [a1, a2] = resolve_alpha(opt, H);
      return bskde::prepared_modified_bs(x, H, a1, a2,
                                         !opt.allow_inadmissible);
    }
    return bskde::PreparedBsKernel::standard(x, H, !opt.allow_inadmissible);
  }();

  const std::vector<double> nodes = bskde::inclusive_nodes(opt.grid);
  double best_val = -std::numeric_limits<double>::infinity();
  double best_v1 = 0.0, best_v2 = 0.0;
  std::ofstream out;
  if (!opt.output.empty()) {
    out.open(opt.output);
    if (!out) {
      throw bskde::ValidationError("cannot open output file '" + opt.output +
                                   "'");
    }
    out << "x1,x2,value\n";
  }
  for (double v1 : nodes) {
    for (double v2 : nodes) {
      double val;
      try {
        val = kernel(v1, v2);
      } catch (const bskde::NumericError&) {
        val = std::numeric_limits<double>::infinity();  // divergent endpoint
      }
      if (out.is_open()) {
        out << bskde::format_double(v1) << ',' << bskde::format_double(v2)
            << ',' << bskde::format_double(val) << '\n';
      }
      if (std::isfinite(val) && val > best_val) {
        best_val = val;
        best_v1 = v1;
        best_v2 = v2;
      }
    }
  }

  json summary = config_json(opt, "eval-kernel");
  summary["x"] = {x.x1, x.x2};
  summary["bandwidth"] = bandwidth_json(H);
  summary["grid_max"] = best_val;
  summary["grid_argmax"] = {best_v1, best_v2};
  const bskde::Interval bounds = bskde::bs_h12_bounds(x, opt.h11, opt.h22);
  summary["h12_interval"] = {bounds.lo, bounds.hi};
  if (!opt.v_point.empty()) {
    const auto [v1, v2] = parse_pair(opt.v_point, "--v");
    summary["value_at_v"] = kernel(v1, v2);
    std::cout << "value(" << v1 << ", " << v2
              << ") = " << bskde::format_double(kernel(v1, v2)) << '\n';
  }
  write_sidecar(opt, summary);
  std::cout << "h12 interval: [" << bskde::format_double(bounds.lo) << ", "
            << bskde::format_double(bounds.hi) << "]\n";
  std::cout << "max " << bskde::format_double(best_val) << " at ("
            << bskde::format_double(best_v1) << ", "
            << bskde::format_double(best_v2) << ")\n";
  return 0;
}

int cmd_mass(const Options& opt) {
  if (opt.input.empty() || !(opt.h11 > 0.0) || !(opt.h22 > 0.0)) {
    throw bskde::ValidationError(
        "mass requires --input plus positive --h11 and --h22");
  }
  const bskde::Sample2 sample = bskde::read_sample_csv(opt.input);
  const bskde::BandwidthMatrix2 H =
      opt.h12 == 0.0 ? bskde::BandwidthMatrix2::diagonal(opt.h11, opt.h22)
                     : bskde::BandwidthMatrix2::full(opt.h11, opt.h22, opt.h12);
  const double lambda =
      bskde::total_mass(sample, H, opt.grid, opt.parallelism);
  json summary = config_json(opt, "mass");
  summary["n"] = sample.n();
  summary["bandwidth"] = bandwidth_json(H);
  summary["total_mass"] = lambda;
  write_sidecar(opt, summary);
  std::cout << "lambda=" << bskde::format_double(lambda) << '\n';
  return 0;
}

int cmd_diagnose(const Options& opt) {
  if (!(opt.h11 > 0.0) || !(opt.h22 > 0.0)) {
    throw bskde::ValidationError("diagnose requires positive --h11 and --h22");
  }
  const auto models = split_list(opt.models);
  if (models.size() != 1) {
    throw bskde::ValidationError("diagnose expects exactly one --model");
  }
  const bskde::TargetModel model = bskde::parse_model(models[0]);
  const bskde::BandwidthMatrix2 H =
      opt.h12 == 0.0 ? bskde::BandwidthMatrix2::diagonal(opt.h11, opt.h22)
                     : bskde::BandwidthMatrix2::full(opt.h11, opt.h22, opt.h12);
  double x1 = 0.5, x2 = 0.5;
  if (!opt.x_point.empty()) std::tie(x1, x2) = parse_pair(opt.x_point, "--x");
  const bskde::TargetPoint2 x(x1, x2);
  const bskde::DiagnosticsInput diag = bskde::target_diagnostics(model);

  const double f_at_x = diag.f(x1, x2);
  const double bias = bskde::bias_diagnostic(x, H, diag);
  const double var = bskde::variance_diagnostic(x, H, opt.n, f_at_x);
  const double amise =
      bskde::amise_diagnostic(H, opt.n, diag, opt.grid, opt.parallelism);

  json summary = config_json(opt, "diagnose");
  summary["model"] = bskde::to_string(model);
  summary["x"] = {x1, x2};
  summary["n"] = opt.n;
  summary["bandwidth"] = bandwidth_json(H);
  summary["f_at_x"] = f_at_x;
  summary["bias_prediction"] = bias;
  summary["variance_term"] = var;
  summary["amise"] = amise;
  write_sidecar(opt, summary);
  std::cout << "model=" << bskde::to_string(model) << " f(x)="
            << bskde::format_double(f_at_x)
            << " bias=" << bskde::format_double(bias)
            << " variance=" << bskde::format_double(var)
            << " amise=" << bskde::format_double(amise) << '\n';
  return 0;
}

int cmd_simulate(const Options& opt) {
  bskde::StudyConfig cfg;
  for (const auto& m : split_list(opt.models)) {
    cfg.models.push_back(bskde::parse_model(m));
  }
  for (const auto& f : split_list(opt.family)) {
    cfg.families.push_back(bskde::parse_family(f));
  }
  cfg.n = opt.n;
  cfg.replications = opt.reps;
  cfg.seed = opt.seed;
  cfg.grid = make_search_grid(opt);
  cfg.lscv_resolution = opt.lscv_grid;
  cfg.ise_resolution = opt.grid;
  cfg.normalize = opt.normalize;
  cfg.threads = opt.parallelism;

  const std::vector<bskde::IseSummary> rows = bskde::run_study(cfg);

  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!opt.output.empty()) {
    file.open(opt.output);
    if (!file) {
      throw bskde::ValidationError("cannot open output file '" + opt.output +
                                   "'");
    }
    out = &file;
  }
  *out << "model,family,n,replications,mean_ise,sd_ise,per_rep\n";
  for (const auto& r : rows) {
    *out << bskde::to_string(r.model) << ',' << bskde::to_string(r.family)
         << ',' << r.n << ',' << r.replications << ','
         << bskde::format_double(r.mean_ise) << ','
         << bskde::format_double(r.sd_ise) << ',';
    for (std::size_t i = 0; i < r.per_rep.size(); ++i) {
      if (i) *out << ';';
      *out << bskde::format_double(r.per_rep[i]);
    }
    *out << '\n';
  }
  json summary = config_json(opt, "simulate");
  summary["models"] = opt.models;
  summary["n"] = opt.n;
  summary["replications"] = opt.reps;
  write_sidecar(opt, summary);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bivariate bounded-support density estimation with "
               "beta-Sarmanov associated kernels"};
  app.require_subcommand(1);
  Options opt;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--input", opt.input, "input CSV with header x1,x2");
    cmd->add_option("--output", opt.output, "output file path");
    cmd->add_option("--family", opt.family, "full|scott|diagonal");
    cmd->add_option("--grid", opt.grid, "evaluation grid resolution");
    cmd->add_option("--lscv-grid", opt.lscv_grid,
                    "quadrature resolution inside LSCV");
    cmd->add_option("--lscv-h11", opt.lscv_h11,
                    "h11 grid lo:hi:count (log spaced)");
    cmd->add_option("--lscv-h22", opt.lscv_h22,
                    "h22 grid lo:hi:count (log spaced)");
    cmd->add_option("--h12-points", opt.h12_points,
                    "off-diagonal points per (h11,h22) cell");
    cmd->add_option("--scott-h", opt.scott_h,
                    "Scott scale grid lo:hi:count (linear)");
    cmd->add_option("--alpha", opt.alpha, "boundary band orders a1,a2");
    cmd->add_option("--seed", opt.seed, "RNG seed");
    cmd->add_option("--parallelism", opt.parallelism,
                    "worker threads (0 = hardware)");
    cmd->add_flag("--normalize", opt.normalize,
                  "normalize the exported density grid");
    cmd->add_flag("--modified", opt.modified,
                  "use the boundary-corrected kernel");
  };

  CLI::App* fit = app.add_subcommand("fit", "estimate a density from CSV data");
  add_common(fit);
  CLI::App* sel = app.add_subcommand("select", "run bandwidth selection only");
  add_common(sel);
  CLI::App* evalk =
      app.add_subcommand("eval-kernel", "evaluate one kernel on a lattice");
  add_common(evalk);
  evalk->add_option("--x", opt.x_point, "target point a,b");
  evalk->add_option("--v", opt.v_point, "report value at this point a,b");
  evalk->add_option("--h11", opt.h11, "bandwidth h11");
  evalk->add_option("--h22", opt.h22, "bandwidth h22");
  evalk->add_option("--h12", opt.h12, "bandwidth h12");
  evalk->add_flag("--allow-inadmissible", opt.allow_inadmissible,
                  "evaluate the formula even for an inadmissible h12 "
                  "(result is not a density)");
  CLI::App* mass = app.add_subcommand("mass", "total mass of the estimate");
  add_common(mass);
  mass->add_option("--h11", opt.h11, "bandwidth h11");
  mass->add_option("--h22", opt.h22, "bandwidth h22");
  mass->add_option("--h12", opt.h12, "bandwidth h12");
  CLI::App* diag =
      app.add_subcommand("diagnose", "bias/variance/AMISE against a model");
  add_common(diag);
  diag->add_option("--model", opt.models, "target model A-F");
  diag->add_option("--x", opt.x_point, "diagnostic point a,b");
  diag->add_option("--h11", opt.h11, "bandwidth h11");
  diag->add_option("--h22", opt.h22, "bandwidth h22");
  diag->add_option("--h12", opt.h12, "bandwidth h12");
  diag->add_option("--n", opt.n, "sample size entering the variance term");
  CLI::App* sim = app.add_subcommand("simulate", "replication study");
  add_common(sim);
  sim->add_option("--model", opt.models, "comma list of models A-F");
  sim->add_option("--n", opt.n, "sample size per replication");
  sim->add_option("--reps", opt.reps, "number of replications");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(fit)) return cmd_fit(opt);
    if (app.got_subcommand(sel)) return cmd_select(opt);
    if (app.got_subcommand(evalk)) return cmd_eval_kernel(opt);
    if (app.got_subcommand(mass)) return cmd_mass(opt);
    if (app.got_subcommand(diag)) return cmd_diagnose(opt);
    if (app.got_subcommand(sim)) return cmd_simulate(opt);
  } catch (const bskde::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const bskde::NumericError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
