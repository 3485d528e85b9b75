#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "aplab/quadrature.hpp"

namespace aplab {

enum class Scheme { ap, explicit_upwind };
enum class InitialProfile { gaussian, constant, step };

std::string to_string(Scheme s);
std::string to_string(InitialProfile p);
Scheme parse_scheme(const std::string& s);
InitialProfile parse_initial_profile(const std::string& s);

/// Problem and discretization parameters for one run.
///
/// Spatial nodes are x_m = x_left + m h for m = 0..Nx+1; m = 0 and m = Nx+1
/// are boundary (ghost) points. The AP scheme uses N velocity nodes on
/// [0, 1], the explicit scheme 2N nodes on [-1, 1].
struct GridConfig {
  Scheme scheme = Scheme::ap;
  double epsilon = 1.0;
  double phi = 1.0;
  double tau = 0.005;
  double h = 0.1;
  int N = 4;
  int Nx = 8;
  int Nt = 16;
  double x_left = 0.0;
  double x_right = 0.9;
  // Isotropic Dirichlet inflow value at each end.
  double bc_left = 0.0;
  double bc_right = 0.0;
  InitialProfile init = InitialProfile::gaussian;
  // Lets stability probes run outside the CFL region.
  bool allow_unstable = false;

  double lambda() const { return tau / h; }
  double gamma() const { return tau / (epsilon * epsilon); }
  double x(int m) const { return x_left + m * h; }
  int velocity_count() const { return scheme == Scheme::ap ? N : 2 * N; }
  // Length of one time level of the unknown vector.
  int level_size() const { return velocity_count() * Nx; }
};

struct ValidationReport {
  bool ok = true;
  // Human readable inequality that failed, empty when ok.
  std::string violated;
  double lhs = 0.0;
  double rhs = 0.0;
};

/// Checks the scheme's CFL condition and the relaxation-parameter bound.
///
/// AP: tau/h^2 <= 1/(1+h). Explicit: tau <= h eps^2/(eps+h). Both:
/// 0 <= phi <= 1/eps^2. Throws std::invalid_argument when tau, h or eps is
/// non-finite or non-positive, or when the grid sizes are not positive.
ValidationReport validate_config(const GridConfig& cfg);

/// Throws ValidationError unless validate_config passes. A CFL failure is
/// tolerated when cfg.allow_unstable is set; a phi failure never is.
void enforce_config(const GridConfig& cfg);

/// Largest tau admitted by the scheme's CFL condition.
double max_stable_tau(const GridConfig& cfg);

/// Throws UnsupportedConfiguration unless phi == 1.
void require_unit_phi(const GridConfig& cfg);

/// Rule matching the scheme: N points on [0,1] (AP) or 2N on [-1,1].
QuadratureRule velocity_rule(const GridConfig& cfg);

/// Even/odd parities (r, j) of one velocity pair.
///
/// forward: (f+, f-) -> ((f+ + f-)/2, (f+ - f-)/(2 eps)).
/// inverse: (r, j)   -> (r + eps j, r - eps j).
enum class ParityDirection { forward, inverse };
std::pair<double, double> parity_transform(double a, double b, double epsilon,
                                           ParityDirection direction);

/// (r, j) on the interior grid, velocity-major: entry k*Nx + m holds
/// the value at v_k, x_{m+1}. Ghost arrays hold the values at x_0 and
/// x_{Nx+1} for each velocity.
struct ParityField {
  int N = 0;
  int Nx = 0;
  Eigen::VectorXd r;
  Eigen::VectorXd j;
  Eigen::VectorXd r_left, r_right;
  Eigen::VectorXd j_left, j_right;

  ParityField() = default;
  ParityField(int n_velocities, int n_space);

  int index(int k, int m) const { return k * Nx + m; }
  // m ranges over 0..Nx+1 including ghosts.
  double r_at(int k, int m) const;
  double j_at(int k, int m) const;
  void check_shape() const;
};

/// f on the interior grid, space-major: entry m*2N + k holds the value at
/// x_{m+1} and the k-th velocity in increasing order.
struct KineticField {
  int V = 0;  // number of velocities (2N)
  int Nx = 0;
  Eigen::VectorXd f;
  Eigen::VectorXd f_left, f_right;

  KineticField() = default;
  KineticField(int n_velocities, int n_space);

  int index(int m, int k) const { return m * V + k; }
  double at(int k, int m) const;
  void check_shape() const;
};

/// rho_m = sum_k w_k r_{k,m}. Throws std::invalid_argument on a size mismatch.
Eigen::VectorXd density(const ParityField& field, const QuadratureRule& rule);

/// rho_m = (1/2) sum_k w_k f_{k,m}, the same macroscopic density.
Eigen::VectorXd density(const KineticField& field, const QuadratureRule& rule);

/// Initial profile f(0, x, v) = p(x), isotropic in v.
double initial_profile(const GridConfig& cfg, double x);

/// Initial (r, j) = (p(x), 0) with ghosts from the boundary data.
ParityField initial_parity_field(const GridConfig& cfg);

/// Initial f = p(x) with ghost blocks from the boundary data.
KineticField initial_kinetic_field(const GridConfig& cfg);

}  // namespace aplab
