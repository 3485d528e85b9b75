#pragma once

#include <iosfwd>
#include <vector>

#include "aplab/ap_scheme.hpp"
#include "aplab/quadrature.hpp"
#include "aplab/sparse.hpp"
#include "aplab/transport_model.hpp"

namespace aplab {

/// Explicit upwind scheme on the full velocity grid.
///
/// With lambda = tau/h, alpha = tau/eps^2 and c_k = 1 - (lambda/eps)|v_k| - alpha,
/// one step reads f^{n+1} = B f^n + b^n where B is block tridiagonal in
/// space with 2N x 2N blocks
///
///   diagonal  C + (alpha/2) W,   sub  (lambda/eps) V+,   super  -(lambda/eps) V-,
///
/// and B = B1 + alpha B2 with B2 = (1/2) blockdiag(W, ..., W).
struct ExplicitStepMatrix {
  RealSparse B;
  RealSparse B1;
  RealSparse B2;
  double alpha = 0.0;
  Eigen::VectorXd c;        // diagonal of C
  Eigen::VectorXd v_plus;   // diagonal of V+
  Eigen::VectorXd v_minus;  // diagonal of V-
  Eigen::MatrixXd W;        // rows all equal to the weights
};

/// Builds B from the stencil and B1, B2 separately. When the CFL condition
/// holds, also checks sigma_max(B1) <= 1 - alpha (dense, small orders only)
/// and throws std::logic_error if that bound is broken.
ExplicitStepMatrix explicit_matrix(const GridConfig& cfg, const QuadratureRule& rule);

/// Boundary vector b^n from the ghost blocks of `state`.
Eigen::VectorXd explicit_boundary_vector(const GridConfig& cfg,
                                         const QuadratureRule& rule,
                                         const KineticField& state);

KineticField explicit_step(const KineticField& f, const GridConfig& cfg,
                           const QuadratureRule& rule, OpCounter* counter = nullptr);

std::vector<KineticField> explicit_evolve(const KineticField& initial,
                                          const GridConfig& cfg,
                                          const QuadratureRule& rule,
                                          OpCounter* counter = nullptr);

/// CSV with columns step,k,m,f; k runs over -N..-1,1..N.
void write_explicit_trajectory_csv(std::ostream& os,
                                   const std::vector<KineticField>& trajectory);

}  // namespace aplab
