#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "aplab/ap_scheme.hpp"
#include "aplab/complexity.hpp"
#include "aplab/config_io.hpp"
#include "aplab/errors.hpp"
#include "aplab/explicit_scheme.hpp"
#include "aplab/fourier.hpp"
#include "aplab/quadrature.hpp"
#include "aplab/report_io.hpp"
#include "aplab/spacetime.hpp"
#include "aplab/spectral.hpp"

namespace py = pybind11;
using namespace aplab;

namespace {

// Rows are time levels 0..Nt, columns the interior grid points.
Eigen::MatrixXd stack(const std::vector<Eigen::VectorXd>& levels) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(levels.size()), levels.empty() ? 0 : levels.front().size());
  for (std::size_t n = 0; n < levels.size(); ++n) out.row(static_cast<Eigen::Index>(n)) = levels[n].transpose();
  return out;
}

Eigen::MatrixXd step_density(const GridConfig& cfg) {
  enforce_config(cfg);
  const auto rule = velocity_rule(cfg);
  std::vector<Eigen::VectorXd> rho;
  if (cfg.scheme == Scheme::ap) {
    for (const auto& s : ap_evolve(initial_parity_field(cfg), cfg, rule)) rho.push_back(density(s, rule));
  } else {
    for (const auto& s : explicit_evolve(initial_kinetic_field(cfg), cfg, rule)) rho.push_back(density(s, rule));
  }
  return stack(rho);
}

BlockSystem assemble(const GridConfig& cfg, bool rescaled) {
  enforce_config(cfg);
  const auto rule = velocity_rule(cfg);
  if (cfg.scheme == Scheme::ap) return assemble_ap_system(cfg, rule, rescaled, initial_parity_field(cfg));
  return assemble_explicit_system(cfg, rule, initial_kinetic_field(cfg));
}

Eigen::MatrixXd solve_density(const GridConfig& cfg, bool rescaled) {
  const BlockSystem sys = assemble(cfg, rescaled);
  const Eigen::VectorXd s = solve_system(sys);
  const auto rule = velocity_rule(cfg);
  std::vector<Eigen::VectorXd> rho;
  if (cfg.scheme == Scheme::ap) {
    for (const auto& l : unpack_ap_solution(sys, s, initial_parity_field(cfg))) rho.push_back(density(l, rule));
  } else {
    for (const auto& l : unpack_explicit_solution(sys, s, initial_kinetic_field(cfg))) rho.push_back(density(l, rule));
  }
  return stack(rho);
}

}  // namespace

PYBIND11_MODULE(_aplab, m) {
  m.doc() = "Kinetic transport schemes, their space-time linear systems and spectral diagnostics";
  m.attr("__version__") = APLAB_VERSION;

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<UnsupportedConfiguration>(m, "UnsupportedConfiguration", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);
  py::register_exception<DivergenceError>(m, "DivergenceError", PyExc_ArithmeticError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_ArithmeticError);

  py::enum_<Scheme>(m, "Scheme").value("ap", Scheme::ap).value("explicit", Scheme::explicit_upwind);
  py::enum_<InitialProfile>(m, "InitialProfile")
      .value("gaussian", InitialProfile::gaussian)
      .value("constant", InitialProfile::constant)
      .value("step", InitialProfile::step);
  py::enum_<SweepMode>(m, "SweepMode").value("fixed_grid", SweepMode::fixed_grid).value("cfl_driven", SweepMode::cfl_driven);

  py::class_<GridConfig>(m, "GridConfig")
      .def(py::init<>())
      .def_readwrite("scheme", &GridConfig::scheme)
      .def_readwrite("epsilon", &GridConfig::epsilon)
      .def_readwrite("phi", &GridConfig::phi)
      .def_readwrite("tau", &GridConfig::tau)
      .def_readwrite("h", &GridConfig::h)
      .def_readwrite("N", &GridConfig::N)
      .def_readwrite("Nx", &GridConfig::Nx)
      .def_readwrite("Nt", &GridConfig::Nt)
      .def_readwrite("x_left", &GridConfig::x_left)
      .def_readwrite("x_right", &GridConfig::x_right)
      .def_readwrite("bc_left", &GridConfig::bc_left)
      .def_readwrite("bc_right", &GridConfig::bc_right)
      .def_readwrite("init", &GridConfig::init)
      .def_readwrite("allow_unstable", &GridConfig::allow_unstable)
      .def_property_readonly("level_size", &GridConfig::level_size)
      .def_static(
          "from_json",
          [](const std::string& text) {
            const auto doc = nlohmann::json::parse(text, nullptr, false);
            if (doc.is_discarded()) throw std::invalid_argument("configuration is not valid JSON");
            return config_from_json(doc);
          },
          py::arg("text"), "Parse a JSON configuration document; unknown keys are rejected.")
      .def("to_json", [](const GridConfig& c) { return config_to_json(c).dump(); })
      .def("__repr__", [](const GridConfig& c) { return "GridConfig(" + config_to_json(c).dump() + ")"; });

  py::class_<QuadratureRule>(m, "QuadratureRule")
      .def_readonly("nodes", &QuadratureRule::nodes)
      .def_readonly("weights", &QuadratureRule::weights)
      .def_readonly("a", &QuadratureRule::a)
      .def_readonly("b", &QuadratureRule::b);
  m.def("gauss_rule", &gauss_rule, py::arg("n"), py::arg("a"), py::arg("b"));
  m.def("velocity_rule", &velocity_rule, py::arg("cfg"));

  py::class_<ValidationReport>(m, "ValidationReport")
      .def_readonly("ok", &ValidationReport::ok)
      .def_readonly("violated", &ValidationReport::violated)
      .def_readonly("lhs", &ValidationReport::lhs)
      .def_readonly("rhs", &ValidationReport::rhs);
  m.def("validate_config", &validate_config, py::arg("cfg"));
  m.def("max_stable_tau", &max_stable_tau, py::arg("cfg"));

  m.def("evolve_density", &step_density, py::arg("cfg"),
        "Density at every time level from the time stepper, shape (Nt+1, Nx).");
  m.def("solve_density", &solve_density, py::arg("cfg"), py::arg("rescaled") = true,
        "Density at every time level from one sparse solve of the space-time system.");

  py::class_<BlockSystem>(m, "BlockSystem")
      .def_readonly("L", &BlockSystem::L)
      .def_readonly("F", &BlockSystem::F)
      .def_readonly("rescaled", &BlockSystem::rescaled)
      .def_property_readonly("order", &BlockSystem::order)
      .def_property_readonly("sparsity", [](const BlockSystem& s) { return sparsity(s.L); });
  m.def("assemble", &assemble, py::arg("cfg"), py::arg("rescaled") = true);
  m.def("solve_system", &solve_system, py::arg("system"));

  py::class_<SpectralOptions>(m, "SpectralOptions")
      .def(py::init<>())
      .def_readwrite("dense_limit", &SpectralOptions::dense_limit)
      .def_readwrite("tolerance", &SpectralOptions::tolerance)
      .def_readwrite("residual_tolerance", &SpectralOptions::residual_tolerance)
      .def_readwrite("max_iterations", &SpectralOptions::max_iterations);
  py::class_<SpectrumReport>(m, "SpectrumReport")
      .def_readonly("sigma_min", &SpectrumReport::sigma_min)
      .def_readonly("sigma_max", &SpectrumReport::sigma_max)
      .def_readonly("kappa", &SpectrumReport::kappa)
      .def_readonly("sparsity", &SpectrumReport::sparsity)
      .def_readonly("residual", &SpectrumReport::residual)
      .def_readonly("singular", &SpectrumReport::singular)
      .def_readonly("iterations", &SpectrumReport::iterations)
      .def_property_readonly("method", [](const SpectrumReport& r) { return to_string(r.method); });
  m.def(
      "singular_extremes", [](const RealSparse& L, SpectralOptions o) { return singular_extremes(L, o); },
      py::arg("L"), py::arg("options") = SpectralOptions{});
  m.def("alpha_bound", &alpha_bound, py::arg("epsilon"), py::arg("tau"), py::arg("N"));

  m.def(
      "fourier_symbols",
      [](const GridConfig& cfg, double v, double xi) {
        const FourierSymbols s = fourier_symbols(cfg, v, xi);
        return py::dict(py::arg("c1") = s.c1, py::arg("c2") = s.c2, py::arg("d1") = s.d1, py::arg("d2") = s.d2,
                        py::arg("gamma_c1") = s.gamma_c1, py::arg("gamma_d2") = s.gamma_d2,
                        py::arg("gamma0_c1_0") = s.gamma0_c1_0, py::arg("gamma0_d2_0") = s.gamma0_d2_0);
      },
      py::arg("cfg"), py::arg("v"), py::arg("xi"));
  m.def("frequency_samples", &frequency_samples, py::arg("h"), py::arg("count") = 64);

  py::class_<ComplexityRow>(m, "ComplexityRow")
      .def_readonly("scheme", &ComplexityRow::scheme)
      .def_readonly("epsilon", &ComplexityRow::epsilon)
      .def_readonly("tau", &ComplexityRow::tau)
      .def_readonly("h", &ComplexityRow::h)
      .def_readonly("N", &ComplexityRow::N)
      .def_readonly("Nx", &ComplexityRow::Nx)
      .def_readonly("Nt", &ComplexityRow::Nt)
      .def_readonly("delta", &ComplexityRow::delta)
      .def_readonly("sigma_min", &ComplexityRow::sigma_min)
      .def_readonly("sigma_max", &ComplexityRow::sigma_max)
      .def_readonly("kappa", &ComplexityRow::kappa)
      .def_readonly("sparsity", &ComplexityRow::sparsity)
      .def_readonly("alpha", &ComplexityRow::alpha)
      .def_readonly("classical_cost", &ComplexityRow::classical_cost)
      .def_readonly("quantum_queries", &ComplexityRow::quantum_queries)
      .def_readonly("status", &ComplexityRow::status)
      .def("csv", &format_row);

  m.def(
      "complexity_row",
      [](const GridConfig& cfg, double delta, bool compute_spectrum, bool rescaled) {
        SweepOptions o;
        o.delta = delta;
        o.compute_spectrum = compute_spectrum;
        o.rescaled = rescaled;
        return complexity_row(cfg, o);
      },
      py::arg("cfg"), py::arg("delta") = 0.1, py::arg("compute_spectrum") = true, py::arg("rescaled") = true);
  m.def(
      "sweep_epsilon",
      [](const GridConfig& base, const std::vector<double>& eps, SweepMode mode, double delta, double final_time,
         bool compute_spectrum) {
        SweepOptions o;
        o.delta = delta;
        o.final_time = final_time;
        o.compute_spectrum = compute_spectrum;
        py::gil_scoped_release release;
        return sweep_epsilon(base, eps, mode, o);
      },
      py::arg("base"), py::arg("epsilons"), py::arg("mode") = SweepMode::fixed_grid, py::arg("delta") = 0.1,
      py::arg("final_time") = 0.1, py::arg("compute_spectrum") = true);
  m.def(
      "report_csv",
      [](const std::vector<ComplexityRow>& rows) {
        std::ostringstream os;
        write_report(os, rows);
        return os.str();
      },
      py::arg("rows"));
  m.def("qlsa_queries", &qlsa_queries, py::arg("s"), py::arg("kappa"), py::arg("delta"));
  m.def("classical_cost", &classical_cost, py::arg("cfg"));
}
