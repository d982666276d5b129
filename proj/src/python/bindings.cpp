#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bskde/bandwidth.hpp"
#include "bskde/beta.hpp"
#include "bskde/errors.hpp"
#include "bskde/estimator.hpp"
#include "bskde/grid.hpp"
#include "bskde/io.hpp"
#include "bskde/kernel.hpp"
#include "bskde/modified.hpp"
#include "bskde/regions.hpp"
#include "bskde/sarmanov.hpp"
#include "bskde/simulation.hpp"

namespace py = pybind11;
using namespace bskde;

namespace {

Sample2 sample_from_pairs(const std::vector<std::pair<double, double>>& pts) {
  std::vector<TargetPoint2> points;
  points.reserve(pts.size());
  for (const auto& [a, b] : pts) points.emplace_back(a, b);
  return Sample2(std::move(points));
}

std::vector<std::pair<double, double>> sample_to_pairs(const Sample2& s) {
  std::vector<std::pair<double, double>> out;
  out.reserve(s.n());
  for (const auto& p : s.points) out.emplace_back(p.x1, p.x2);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bivariate bounded-support density estimation with beta-Sarmanov "
            "associated kernels";

  py::register_exception<ValidationError>(m, "ValidationError",
                                          PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

  py::class_<BetaParams>(m, "BetaParams")
      .def(py::init<double, double>(), py::arg("p"), py::arg("q"))
      .def_readonly("p", &BetaParams::p)
      .def_readonly("q", &BetaParams::q);

  py::class_<BetaMoments>(m, "BetaMoments")
      .def_readonly("mean", &BetaMoments::mean)
      .def_readonly("variance", &BetaMoments::variance)
      .def_readonly("mode", &BetaMoments::mode)
      .def_readonly("dispersion", &BetaMoments::dispersion);

  py::class_<Interval>(m, "Interval")
      .def_readonly("lo", &Interval::lo)
      .def_readonly("hi", &Interval::hi)
      .def("contains", &Interval::contains, py::arg("v"), py::arg("tol") = 0.0);

  py::class_<BetaSarmanovShape>(m, "BetaSarmanovShape")
      .def(py::init<BetaParams, BetaParams, double>(), py::arg("margin1"),
           py::arg("margin2"), py::arg("rho"))
      .def_readonly("margin1", &BetaSarmanovShape::margin1)
      .def_readonly("margin2", &BetaSarmanovShape::margin2)
      .def_readonly("rho", &BetaSarmanovShape::rho);

  py::class_<TargetPoint2>(m, "TargetPoint2")
      .def(py::init<double, double>(), py::arg("x1"), py::arg("x2"))
      .def_readonly("x1", &TargetPoint2::x1)
      .def_readonly("x2", &TargetPoint2::x2);

  py::class_<SymMatrix2>(m, "SymMatrix2")
      .def(py::init([](double a11, double a12, double a22) {
             return SymMatrix2{a11, a12, a22};
           }),
           py::arg("a11"), py::arg("a12"), py::arg("a22"))
      .def_readwrite("a11", &SymMatrix2::a11)
      .def_readwrite("a12", &SymMatrix2::a12)
      .def_readwrite("a22", &SymMatrix2::a22);

  py::enum_<BandwidthFamily>(m, "BandwidthFamily")
      .value("Full", BandwidthFamily::Full)
      .value("Scott", BandwidthFamily::Scott)
      .value("Diagonal", BandwidthFamily::Diagonal);

  py::class_<BandwidthMatrix2>(m, "BandwidthMatrix2")
      .def_static("full", &BandwidthMatrix2::full, py::arg("h11"),
                  py::arg("h22"), py::arg("h12"))
      .def_static("diagonal", &BandwidthMatrix2::diagonal, py::arg("h11"),
                  py::arg("h22"))
      .def_static("scott", &BandwidthMatrix2::scott, py::arg("h"),
                  py::arg("H0"))
      .def_property_readonly("h11", &BandwidthMatrix2::h11)
      .def_property_readonly("h22", &BandwidthMatrix2::h22)
      .def_property_readonly("h12", &BandwidthMatrix2::h12)
      .def_property_readonly("family", &BandwidthMatrix2::family)
      .def("det", &BandwidthMatrix2::det);

  py::class_<KernelMoments2>(m, "KernelMoments2")
      .def_readonly("a1", &KernelMoments2::a1)
      .def_readonly("a2", &KernelMoments2::a2)
      .def_readonly("b11", &KernelMoments2::b11)
      .def_readonly("b12", &KernelMoments2::b12)
      .def_readonly("b22", &KernelMoments2::b22);

  py::enum_<RegionLabel>(m, "RegionLabel")
      .value("Interior", RegionLabel::Interior)
      .value("EdgeLeft", RegionLabel::EdgeLeft)
      .value("EdgeRight", RegionLabel::EdgeRight)
      .value("EdgeBottom", RegionLabel::EdgeBottom)
      .value("EdgeTop", RegionLabel::EdgeTop)
      .value("AngleBL", RegionLabel::AngleBL)
      .value("AngleBR", RegionLabel::AngleBR)
      .value("AngleTL", RegionLabel::AngleTL)
      .value("AngleTR", RegionLabel::AngleTR);

  py::class_<FrontierJump>(m, "FrontierJump")
      .def_readonly("boundary_side", &FrontierJump::boundary_side)
      .def_readonly("interior_side", &FrontierJump::interior_side)
      .def_readonly("p_jump", &FrontierJump::p_jump)
      .def_readonly("q_jump", &FrontierJump::q_jump);

  py::class_<Sample2>(m, "Sample2")
      .def(py::init(&sample_from_pairs), py::arg("points"))
      .def_property_readonly("points", &sample_to_pairs)
      .def_property_readonly("n", &Sample2::n)
      .def("covariance", &Sample2::covariance);

  py::class_<DensityGrid>(m, "DensityGrid")
      .def(py::init<std::size_t>(), py::arg("resolution"))
      .def_readonly("resolution", &DensityGrid::resolution)
      .def_readwrite("values", &DensityGrid::values)
      .def("node_coord", &DensityGrid::node_coord)
      .def("at",
           [](const DensityGrid& g, std::size_t i, std::size_t j) {
             return g.at(i, j);
           })
      .def("integral", &DensityGrid::integral);

  py::class_<DiagnosticsInput>(m, "DiagnosticsInput")
      .def(py::init([](std::function<double(double, double)> f,
                       std::function<std::array<double, 2>(double, double)> g,
                       std::function<std::array<double, 3>(double, double)> h) {
             return DiagnosticsInput{std::move(f), std::move(g), std::move(h)};
           }),
           py::arg("f"), py::arg("grad"), py::arg("hess"));

  py::class_<SearchGrid>(m, "SearchGrid")
      .def(py::init<>())
      .def_static("defaults", &SearchGrid::defaults)
      .def_readwrite("h11_values", &SearchGrid::h11_values)
      .def_readwrite("h22_values", &SearchGrid::h22_values)
      .def_readwrite("h12_points_per_cell", &SearchGrid::h12_points_per_cell)
      .def_readwrite("h_values", &SearchGrid::h_values)
      .def_readwrite("H0_from_sample", &SearchGrid::H0_from_sample)
      .def_readwrite("H0", &SearchGrid::H0);

  py::class_<LscvCandidate>(m, "LscvCandidate")
      .def_readonly("H", &LscvCandidate::H)
      .def_readonly("raw_h12", &LscvCandidate::raw_h12)
      .def_readonly("objective", &LscvCandidate::objective)
      .def_readonly("admissible", &LscvCandidate::admissible);

  py::class_<LscvResult>(m, "LscvResult")
      .def_readonly("best", &LscvResult::best)
      .def_readonly("objective", &LscvResult::objective)
      .def_readonly("trace", &LscvResult::trace);

  py::enum_<TargetModel>(m, "TargetModel")
      .value("A", TargetModel::A)
      .value("B", TargetModel::B)
      .value("C", TargetModel::C)
      .value("D", TargetModel::D)
      .value("E", TargetModel::E)
      .value("F", TargetModel::F);

  py::class_<IseSummary>(m, "IseSummary")
      .def_readonly("model", &IseSummary::model)
      .def_readonly("family", &IseSummary::family)
      .def_readonly("n", &IseSummary::n)
      .def_readonly("replications", &IseSummary::replications)
      .def_readonly("mean_ise", &IseSummary::mean_ise)
      .def_readonly("sd_ise", &IseSummary::sd_ise)
      .def_readonly("per_rep", &IseSummary::per_rep);

  py::class_<StudyConfig>(m, "StudyConfig")
      .def(py::init<>())
      .def_readwrite("models", &StudyConfig::models)
      .def_readwrite("families", &StudyConfig::families)
      .def_readwrite("n", &StudyConfig::n)
      .def_readwrite("replications", &StudyConfig::replications)
      .def_readwrite("seed", &StudyConfig::seed)
      .def_readwrite("grid", &StudyConfig::grid)
      .def_readwrite("lscv_resolution", &StudyConfig::lscv_resolution)
      .def_readwrite("ise_resolution", &StudyConfig::ise_resolution)
      .def_readwrite("normalize", &StudyConfig::normalize)
      .def_readwrite("threads", &StudyConfig::threads);

  m.def("beta_pdf", &beta_pdf, py::arg("t"), py::arg("params"));
  m.def("beta_moments", &beta_moments, py::arg("params"));
  m.def("beta_mean", &beta_mean, py::arg("params"));
  m.def("beta_variance", &beta_variance, py::arg("params"));
  m.def("sarmanov_correlation_bounds", &sarmanov_correlation_bounds,
        py::arg("m1"), py::arg("m2"));
  m.def("sarmanov_pdf", &sarmanov_pdf, py::arg("v1"), py::arg("v2"),
        py::arg("shape"));
  m.def("bs_h12_bounds", &bs_h12_bounds, py::arg("x"), py::arg("h11"),
        py::arg("h22"));
  m.def("bs_shape_from_target", &bs_shape_from_target, py::arg("x"),
        py::arg("H"));
  m.def("bs_kernel_eval", &bs_kernel_eval, py::arg("x"), py::arg("H"),
        py::arg("v"));
  m.def("bs_kernel_eval_unchecked", &bs_kernel_eval_unchecked, py::arg("x"),
        py::arg("H"), py::arg("v"));
  m.def("bs_kernel_moments", &bs_kernel_moments, py::arg("x"), py::arg("H"));
  m.def("multiple_kernel_eval", &multiple_kernel_eval, py::arg("x"),
        py::arg("h11"), py::arg("h22"), py::arg("v"));
  m.def("classical_gaussian_kernel", &classical_gaussian_kernel, py::arg("x1"),
        py::arg("x2"), py::arg("H"), py::arg("v1"), py::arg("v2"));
  m.def("classify_region", &classify_region, py::arg("x"), py::arg("alpha1"),
        py::arg("alpha2"));
  m.def("boundary_region_count", &boundary_region_count, py::arg("d_inf"),
        py::arg("d_z"), py::arg("d_uw"));
  m.def("default_alpha", &default_alpha, py::arg("h"));
  m.def("modified_bs_shape", &modified_bs_shape, py::arg("x"), py::arg("H"),
        py::arg("alpha1"), py::arg("alpha2"));
  m.def("modified_h12_bounds", &modified_h12_bounds, py::arg("x"), py::arg("H"),
        py::arg("alpha1"), py::arg("alpha2"));
  m.def("modified_bs_eval", &modified_bs_eval, py::arg("x"), py::arg("H"),
        py::arg("alpha1"), py::arg("alpha2"), py::arg("v"));
  m.def("modified_bs_moments", &modified_bs_moments, py::arg("x"), py::arg("H"),
        py::arg("alpha1"), py::arg("alpha2"));
  m.def("modified_frontier_jump", &modified_frontier_jump, py::arg("h"),
        py::arg("alpha"));
  m.def("estimate_standard", &estimate_standard, py::arg("sample"),
        py::arg("H"), py::arg("x"));
  m.def("estimate_modified", &estimate_modified, py::arg("sample"),
        py::arg("H"), py::arg("alpha1"), py::arg("alpha2"), py::arg("x"));
  m.def("estimate_standard_grid", &estimate_standard_grid, py::arg("sample"),
        py::arg("H"), py::arg("resolution"), py::arg("threads") = 0);
  m.def("estimate_modified_grid", &estimate_modified_grid, py::arg("sample"),
        py::arg("H"), py::arg("alpha1"), py::arg("alpha2"),
        py::arg("resolution"), py::arg("threads") = 0);
  m.def("total_mass", &total_mass, py::arg("sample"), py::arg("H"),
        py::arg("resolution"), py::arg("threads") = 0);
  m.def("normalize", &normalize, py::arg("grid"));
  m.def("bs_norm_squared", &bs_norm_squared, py::arg("x"), py::arg("H"));
  m.def("bias_diagnostic", &bias_diagnostic, py::arg("x"), py::arg("H"),
        py::arg("diag"));
  m.def("variance_diagnostic", &variance_diagnostic, py::arg("x"), py::arg("H"),
        py::arg("n"), py::arg("f_value"));
  // Diagnostics callables may be python functions; keep their evaluation on
  // the calling thread.
  m.def("amise_diagnostic",
        [](const BandwidthMatrix2& H, std::size_t n,
           const DiagnosticsInput& diag, std::size_t resolution) {
          return amise_diagnostic(H, n, diag, resolution, 1);
        },
        py::arg("H"), py::arg("n"), py::arg("diag"), py::arg("resolution"));
  m.def("scott_reference", &scott_reference, py::arg("n"), py::arg("H0"),
        py::arg("r2"), py::arg("C"));
  m.def("lscv_objective", &lscv_objective, py::arg("sample"), py::arg("H"),
        py::arg("grid_resolution"), py::arg("threads") = 0);
  m.def("select_full", &select_full, py::arg("sample"), py::arg("grid"),
        py::arg("grid_resolution"), py::arg("threads") = 0,
        py::arg("extra_product_nodes") = std::vector<double>{});
  m.def("select_scott", &select_scott, py::arg("sample"), py::arg("grid"),
        py::arg("grid_resolution"), py::arg("threads") = 0,
        py::arg("extra_product_nodes") = std::vector<double>{});
  m.def("select_diagonal", &select_diagonal, py::arg("sample"), py::arg("grid"),
        py::arg("grid_resolution"), py::arg("threads") = 0);
  m.def("target_pdf", &target_pdf, py::arg("model"), py::arg("v1"),
        py::arg("v2"));
  m.def("target_grad", &target_grad, py::arg("model"), py::arg("v1"),
        py::arg("v2"));
  m.def("target_hessian", &target_hessian, py::arg("model"), py::arg("v1"),
        py::arg("v2"));
  m.def("target_diagnostics", &target_diagnostics, py::arg("model"));
  m.def("dirichlet_correlation", &dirichlet_correlation, py::arg("a1"),
        py::arg("a2"), py::arg("a3"));
  m.def("target_sample", &target_sample, py::arg("model"), py::arg("n"),
        py::arg("seed"));
  m.def("ise_hat", &ise_hat, py::arg("fitted"), py::arg("model"));
  m.def("run_study", &run_study, py::arg("config"),
        py::call_guard<py::gil_scoped_release>());
  m.def("read_sample_csv", &read_sample_csv, py::arg("path"));
  m.def("write_density_grid_csv", &write_density_grid_csv, py::arg("path"),
        py::arg("grid"));
  m.def("read_density_grid_csv", &read_density_grid_csv, py::arg("path"));
}
