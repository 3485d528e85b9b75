#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "aplab/quadrature.hpp"
#include "aplab/sparse.hpp"
#include "aplab/transport_model.hpp"

namespace aplab {

/// Spatial building blocks of the diffusive relaxation scheme, all of
/// order Nx (per velocity) or N*Nx (velocity-major).
struct ApOperators {
  RealSparse Mh;  // skew tridiagonal, +1 above and -1 below the diagonal
  RealSparse Lh;  // tridiagonal (1, -2, 1)
  RealSparse Mv;  // blockdiag(v_k Mh)
  RealSparse Lv;  // blockdiag(v_k Lh)
  RealSparse G;   // block (i, j) = w_j I
};

ApOperators ap_operators(const GridConfig& cfg, const QuadratureRule& rule);

/// One-step matrices of the combined relaxation + transport update
///
///   r^{n+1} = B1 r^n - A1 j^n + f~,   j^{n+1} = A2 j^n - B2 r^n + g~
///
/// with A = (lambda/2) Mv, B = I + (lambda/2) Lv, gamma = tau/eps^2 and
/// q = (1 - eps^2)/(tau + eps^2):
///
///   B1 = (B + q A^2)(I + gamma G)/(1+gamma),   A1 = A/(1+gamma),
///   B2 = (A + q B A)(I + gamma G)/(1+gamma),   A2 = B/(1+gamma).
///
/// limit_B2 = (A + B A / tau) G is the eps -> 0 limit of B2.
struct ApStepMatrices {
  RealSparse A, B, G;
  RealSparse B1, A1, B2, A2;
  RealSparse limit_B2;
};

ApStepMatrices ap_step_matrices(const GridConfig& cfg, const QuadratureRule& rule);

/// Boundary forcing (f~, g~) of the one-step update, built from the ghost
/// values stored in `state`. Zero for zero Dirichlet data.
struct ApForcing {
  Eigen::VectorXd f;
  Eigen::VectorXd g;
};

ApForcing ap_boundary_forcing(const GridConfig& cfg, const QuadratureRule& rule,
                              const ParityField& state);

/// Multiply-add tally of the steppers. The relaxation step applies the
/// quadrature coupling row by row, so each AP step costs Theta(N^2 Nx).
struct OpCounter {
  std::uint64_t ops = 0;
};

/// Implicit relaxation step, computable explicitly because the discrete
/// density is unchanged by it.
ParityField relaxation_step(const ParityField& state, const GridConfig& cfg,
                            const QuadratureRule& rule, OpCounter* counter = nullptr);

/// Upwind transport step (phi = 1). Ghost values carry over from `star`.
ParityField transport_step(const ParityField& star, const GridConfig& cfg,
                           OpCounter* counter = nullptr);

/// One full step through the assembled matrices, for cross-checking.
ParityField ap_matrix_step(const ParityField& state, const ApStepMatrices& mats,
                           const ApForcing& forcing);

/// N_t relaxation + transport steps; returns all N_t + 1 levels.
/// Throws DivergenceError naming the first level containing NaN/Inf.
std::vector<ParityField> ap_evolve(const ParityField& initial, const GridConfig& cfg,
                                   const QuadratureRule& rule,
                                   OpCounter* counter = nullptr);

/// CSV with columns step,k,m,r,j (m is the 1-based interior index).
void write_ap_trajectory_csv(std::ostream& os, const std::vector<ParityField>& trajectory);

}  // namespace aplab
