#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "aplab/quadrature.hpp"
#include "aplab/sparse.hpp"
#include "aplab/transport_model.hpp"

namespace aplab {

enum class SpectralMethod { dense, iterative };
std::string to_string(SpectralMethod m);

struct SpectrumReport {
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  double kappa = 1.0;  // +inf when singular
  std::size_t sparsity = 0;
  SpectralMethod method = SpectralMethod::dense;
  // Backward-error estimate of the extreme singular pairs.
  double residual = 0.0;
  bool singular = false;
  int iterations = 0;
};

struct SpectralOptions {
  Eigen::Index dense_limit = 4096;
  // Relative change of the extreme eigenvalue of M^H M between iterations.
  double tolerance = 1e-10;
  // Backward error of the singular pair required before stopping.
  double residual_tolerance = 1e-8;
  int max_iterations = 10000;
};

/// All singular values of a dense matrix, descending (LAPACK gesdd).
Eigen::VectorXd singular_values(const Eigen::MatrixXd& m);
Eigen::VectorXd singular_values(const Eigen::MatrixXcd& m);

/// Extreme singular values and condition number.
///
/// Orders up to options.dense_limit use a full dense decomposition. Larger
/// real matrices use power iteration on M^T M for sigma_max and inverse
/// iteration through a sparse LU of M for sigma_min, both started from the
/// normalized all-ones vector. A matrix that is singular to working
/// precision reports sigma_min = 0 and kappa = +inf. Non-convergence throws
/// ConvergenceError.
SpectrumReport singular_extremes(const RealSparse& m, SpectralOptions options = {});
SpectrumReport singular_extremes(const ComplexSparse& m, SpectralOptions options = {});

/// 2-norm of a sparse matrix (dense decomposition).
double norm2(const RealSparse& m);
double norm2(const ComplexSparse& m);

/// Upper bound on ||L_eps - L_0||_2 for the per-frequency AP matrix.
double alpha_bound(double epsilon, double tau, int N);

struct PerturbationSample {
  double xi = 0.0;
  double norm_E = 0.0;
  double sigma_max_eps = 0.0;
  double sigma_min_eps = 0.0;
  double sigma_max_0 = 0.0;
  double sigma_min_0 = 0.0;
  bool weyl_upper = true;  // sigma_max(L_eps) <= sigma_max(L_0) + ||E||
  bool weyl_lower = true;  // sigma_min(L_eps) >= sigma_min(L_0) - ||E||
};

struct PerturbationReport {
  std::vector<PerturbationSample> samples;
  double alpha = 0.0;
  double max_norm_E = 0.0;
  double max_ratio = 0.0;  // max over xi of ||E|| / alpha; 0 when alpha == 0
  bool weyl_holds = true;
};

/// Weyl slack is 1e-10.
PerturbationReport perturbation_check(const GridConfig& cfg, const QuadratureRule& rule,
                                      std::span<const double> xi_samples);

struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  // Half-width of the 95% confidence interval of the slope.
  double slope_halfwidth = 0.0;
  double residual_rms = 0.0;
  std::size_t points = 0;
};

/// Least-squares fit of log(y) = slope*log(x) + intercept. Requires at least
/// four points with positive coordinates spanning a factor of four in x.
ScalingFit scaling_regression(std::span<const std::pair<double, double>> points);

}  // namespace aplab
