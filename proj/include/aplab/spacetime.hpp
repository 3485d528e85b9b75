#pragma once

#include <cstddef>
#include <vector>

#include "aplab/quadrature.hpp"
#include "aplab/sparse.hpp"
#include "aplab/transport_model.hpp"

namespace aplab {

/// All-at-once system L S = F over time levels 1..N_t.
///
/// AP: S = [r^1; ...; r^{Nt}; j^1; ...; j^{Nt}] and
///   L = [[L11, L12], [L21, L22]] with L11 = I - kron(P, B1),
///   L12 = kron(P, A1), L21 = kron(P, B2), L22 = I - kron(P, A2),
/// P the lower shift. The rescaled variant solves for [S1/tau; S2] with
/// blocks [[L11, L12/tau], [tau L21, L22]].
///
/// Explicit: S = [f^1; ...; f^{Nt}], L = I - kron(P, B).
struct BlockSystem {
  RealSparse L;
  Eigen::VectorXd F;
  Scheme scheme = Scheme::ap;
  bool rescaled = false;
  GridConfig cfg;

  Eigen::Index order() const { return L.rows(); }
};

struct AssemblyLimits {
  std::size_t max_order = 200000;
};

BlockSystem assemble_ap_system(const GridConfig& cfg, const QuadratureRule& rule,
                               bool rescaled, const ParityField& initial,
                               AssemblyLimits limits = {});

BlockSystem assemble_explicit_system(const GridConfig& cfg, const QuadratureRule& rule,
                                     const KineticField& initial,
                                     AssemblyLimits limits = {});

/// Direct sparse LU solve of L S = F.
Eigen::VectorXd solve_system(const BlockSystem& system);

/// Splits an AP solution into levels 0..Nt (level 0 is `initial`).
/// Undoes the rescaling when system.rescaled is set.
std::vector<ParityField> unpack_ap_solution(const BlockSystem& system,
                                            const Eigen::VectorXd& solution,
                                            const ParityField& initial);

std::vector<KineticField> unpack_explicit_solution(const BlockSystem& system,
                                                   const Eigen::VectorXd& solution,
                                                   const KineticField& initial);

}  // namespace aplab
