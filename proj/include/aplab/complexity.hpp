#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "aplab/spectral.hpp"
#include "aplab/transport_model.hpp"

namespace aplab {

/// Q = s * kappa * log2(1/delta), big-O constant 1.
double qlsa_queries(std::size_t s, double kappa, double delta);

/// N^2 Nt Nx (AP) or (2N)^2 Nt Nx (explicit), constant 1.
std::uint64_t classical_cost(const GridConfig& cfg);

/// Closed-form explicit-scheme costs with constants 1:
/// N^2 eps^-3 delta^-1 and N^2 eps^-2 log2(1/(eps delta)).
struct ClosedFormCost {
  double classical = 0.0;
  double quantum = 0.0;
};
ClosedFormCost explicit_closed_form(int N, double epsilon, double delta);

struct ComplexityRow {
  Scheme scheme = Scheme::ap;
  double epsilon = 0.0;
  double phi = 1.0;
  double tau = 0.0;
  double h = 0.0;
  int N = 0;
  int Nx = 0;
  int Nt = 0;
  double delta = 0.1;
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  double kappa = 0.0;
  std::size_t sparsity = 0;
  double alpha = 0.0;
  std::uint64_t classical_cost = 0;
  double quantum_queries = 0.0;
  std::string status = "ok";
  // Not part of the CSV row.
  ClosedFormCost closed_form;
  std::uint64_t stepper_ops = 0;
};

enum class SweepMode { fixed_grid, cfl_driven };
SweepMode parse_sweep_mode(const std::string& s);
std::string to_string(SweepMode m);

struct SweepOptions {
  double delta = 0.1;
  double final_time = 0.1;
  // Constants of the explicit grid rule h = h_factor*eps*delta,
  // tau = tau_factor * h eps^2/(eps+h).
  double h_factor = 1.0;
  double tau_factor = 0.9;
  bool compute_spectrum = true;
  bool rescaled = true;
  bool run_stepper = false;
  SpectralOptions spectral;
  std::size_t max_order = 200000;
  // Called with each row as soon as it is finished.
  std::function<void(const ComplexityRow&)> on_row;
};

/// Grid used by the cfl_driven mode at one epsilon.
///
/// Explicit: h = h_factor eps delta, tau = tau_factor h eps^2/(eps+h).
/// AP: h = delta, tau = 0.9 h^2/(1+h) (independent of eps).
/// Both keep x_left and the domain length of `base` (Nx = round(L/h) - 1)
/// and set Nt = ceil(T/tau).
GridConfig cfl_driven_grid(const GridConfig& base, double epsilon, const SweepOptions& opt);

/// One row per epsilon, in input order. Per-row failures are recorded in
/// the status field and the sweep continues.
std::vector<ComplexityRow> sweep_epsilon(const GridConfig& base,
                                         const std::vector<double>& epsilons,
                                         SweepMode mode, const SweepOptions& opt = {});

/// Spectrum and both cost figures for a single configuration.
ComplexityRow complexity_row(const GridConfig& cfg, const SweepOptions& opt = {});

}  // namespace aplab
