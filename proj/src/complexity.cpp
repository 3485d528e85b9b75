#include "aplab/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "aplab/ap_scheme.hpp"
#include "aplab/explicit_scheme.hpp"
#include "aplab/spacetime.hpp"

namespace aplab {

double qlsa_queries(std::size_t s, double kappa, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("qlsa_queries: delta must lie in (0, 1)");
  if (s == 0) throw std::invalid_argument("qlsa_queries: sparsity must be positive");
  if (!(kappa >= 1.0)) throw std::invalid_argument("qlsa_queries: kappa must be >= 1");
  return static_cast<double>(s) * kappa * std::log2(1.0 / delta);
}

std::uint64_t classical_cost(const GridConfig& cfg) {
  const auto v = static_cast<std::uint64_t>(cfg.velocity_count());
  return v * v * static_cast<std::uint64_t>(cfg.Nt) * static_cast<std::uint64_t>(cfg.Nx);
}

ClosedFormCost explicit_closed_form(int N, double epsilon, double delta) {
  if (!(epsilon > 0.0) || !(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("explicit_closed_form: need epsilon > 0 and delta in (0, 1)");
  }
  const double n2 = static_cast<double>(N) * N;
  ClosedFormCost c;
  c.classical = n2 / (epsilon * epsilon * epsilon * delta);
  c.quantum = n2 / (epsilon * epsilon) * std::log2(1.0 / (epsilon * delta));
  return c;
}

SweepMode parse_sweep_mode(const std::string& s) {
  if (s == "fixed_grid") return SweepMode::fixed_grid;
  if (s == "cfl_driven") return SweepMode::cfl_driven;
  throw std::invalid_argument("unknown sweep mode '" + s + "' (expected fixed_grid or cfl_driven)");
}

std::string to_string(SweepMode m) {
  return m == SweepMode::fixed_grid ? "fixed_grid" : "cfl_driven";
}

GridConfig cfl_driven_grid(const GridConfig& base, double epsilon, const SweepOptions& opt) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("cfl_driven_grid: epsilon must be positive");
  if (!(opt.delta > 0.0 && opt.delta < 1.0) || !(opt.final_time > 0.0)) {
    throw std::invalid_argument("cfl_driven_grid: need delta in (0, 1) and T > 0");
  }
  GridConfig cfg = base;
  cfg.epsilon = epsilon;
  const double length = base.x_right - base.x_left;
  const double target =
      base.scheme == Scheme::explicit_upwind ? opt.h_factor * epsilon * opt.delta : opt.delta;
  cfg.Nx = std::max(1, static_cast<int>(std::lround(length / target)) - 1);
  cfg.h = length / (cfg.Nx + 1);
  cfg.x_right = cfg.x_left + (cfg.Nx + 1) * cfg.h;
  if (base.scheme == Scheme::explicit_upwind) {
    cfg.tau = opt.tau_factor * cfg.h * epsilon * epsilon / (epsilon + cfg.h);
  } else {
    cfg.tau = 0.9 * cfg.h * cfg.h / (1.0 + cfg.h);
  }
  cfg.Nt = static_cast<int>(std::ceil(opt.final_time / cfg.tau));
  return cfg;
}

namespace {

std::string clean_status(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  std::replace(s.begin(), s.end(), '\r', ' ');
  std::replace(s.begin(), s.end(), '"', '\'');
  return s;
}

ComplexityRow blank_row(const GridConfig& cfg, const SweepOptions& opt) {
  ComplexityRow row;
  row.scheme = cfg.scheme;
  row.epsilon = cfg.epsilon;
  row.phi = cfg.phi;
  row.tau = cfg.tau;
  row.h = cfg.h;
  row.N = cfg.N;
  row.Nx = cfg.Nx;
  row.Nt = cfg.Nt;
  row.delta = opt.delta;
  return row;
}

}  // namespace

ComplexityRow complexity_row(const GridConfig& cfg, const SweepOptions& opt) {
  ComplexityRow row = blank_row(cfg, opt);
  enforce_config(cfg);
  const QuadratureRule rule = velocity_rule(cfg);
  row.classical_cost = classical_cost(cfg);
  const AssemblyLimits limits{opt.max_order};
  // Without a spectrum only the sparsity is needed, and two time levels
  // already contain every distinct row and column pattern.
  GridConfig structure_cfg = cfg;
  if (!opt.compute_spectrum) structure_cfg.Nt = std::min(cfg.Nt, 2);

  BlockSystem sys;
  if (cfg.scheme == Scheme::ap) {
    row.alpha = alpha_bound(cfg.epsilon, cfg.tau, cfg.N);
    const ParityField init = initial_parity_field(cfg);
    sys = assemble_ap_system(structure_cfg, rule, opt.rescaled, init, limits);
    if (opt.run_stepper) {
      OpCounter counter;
      ap_evolve(init, cfg, rule, &counter);
      row.stepper_ops = counter.ops;
    }
  } else {
    row.alpha = cfg.tau / (cfg.epsilon * cfg.epsilon);
    row.closed_form = explicit_closed_form(cfg.N, cfg.epsilon, opt.delta);
    const KineticField init = initial_kinetic_field(cfg);
    sys = assemble_explicit_system(structure_cfg, rule, init, limits);
    if (opt.run_stepper) {
      OpCounter counter;
      explicit_evolve(init, cfg, rule, &counter);
      row.stepper_ops = counter.ops;
    }
  }
  row.sparsity = sparsity(sys.L);

  if (opt.compute_spectrum) {
    const SpectrumReport rep = singular_extremes(sys.L, opt.spectral);
    row.sigma_min = rep.sigma_min;
    row.sigma_max = rep.sigma_max;
    row.kappa = rep.kappa;
    row.quantum_queries = rep.singular ? std::numeric_limits<double>::infinity()
                                       : qlsa_queries(row.sparsity, rep.kappa, opt.delta);
    if (rep.singular) row.status = "singular";
  } else {
    row.sigma_min = std::numeric_limits<double>::quiet_NaN();
    row.sigma_max = std::numeric_limits<double>::quiet_NaN();
    row.kappa = std::numeric_limits<double>::quiet_NaN();
    row.quantum_queries = std::numeric_limits<double>::quiet_NaN();
    row.status = "no_spectrum";
  }
  return row;
}

std::vector<ComplexityRow> sweep_epsilon(const GridConfig& base, const std::vector<double>& epsilons,
                                         SweepMode mode, const SweepOptions& opt) {
  std::vector<ComplexityRow> rows;
  rows.reserve(epsilons.size());
  for (double eps : epsilons) {
    GridConfig cfg = base;
    cfg.epsilon = eps;
    ComplexityRow row;
    try {
      if (mode == SweepMode::cfl_driven) cfg = cfl_driven_grid(base, eps, opt);
      row = complexity_row(cfg, opt);
    } catch (const std::exception& e) {
      row = blank_row(cfg, opt);
      row.sigma_min = row.sigma_max = row.kappa = row.quantum_queries =
          std::numeric_limits<double>::quiet_NaN();
      row.status = "failed: " + clean_status(e.what());
    }
    if (opt.on_row) opt.on_row(row);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace aplab
