#pragma once

#include <vector>

#include "aplab/quadrature.hpp"
#include "aplab/sparse.hpp"
#include "aplab/transport_model.hpp"

namespace aplab {

/// Amplification coefficients of one velocity node at frequency xi for the
/// AP scheme, from r^{n+1} + c1 r^n + c2 j^n + gamma c1 sum w r^n = 0 and
/// j^{n+1} + d1 j^n + d2 r^n + gamma d2 sum w r^n = 0.
///
/// gamma_c1 and gamma_d2 are the products gamma*c1, gamma*d2, evaluated in a
/// form that stays finite as eps -> 0; gamma0_c1_0 and gamma0_d2_0 are their
/// eps = 0 limits.
struct FourierSymbols {
  Complex c1, c2, d1, d2;
  Complex gamma_c1, gamma_d2;
  Complex gamma0_c1_0, gamma0_d2_0;
};

/// Symbols at cfg.epsilon. epsilon == 0 is accepted and yields the limits.
FourierSymbols fourier_symbols(const GridConfig& cfg, double v, double xi);

/// Per-frequency coefficient matrix of the rescaled AP system, order 2 N Nt.
///
/// Unknowns are [r_1; ...; r_N; j_1; ...; j_N], each a vector over Nt time
/// levels. With P the Nt-order lower shift and W the N-order matrix whose
/// rows all equal the weights, the (i, k) blocks are
///
///   top-left      delta_ik (I + c1_i P) + gamma c1_i w_k P
///   top-right     delta_ik c2_i P / tau
///   bottom-left   tau (delta_ik d2_i P + gamma d2_i w_k P)
///   bottom-right  delta_ik (I + d1_i P)
///
/// where the subscript i means "evaluated at v_i".
struct FourierMatrix {
  double xi = 0.0;
  ComplexSparse Ltilde;  // at cfg.epsilon, or the eps = 0 matrix if requested
  ComplexSparse L0;      // eps = 0 limit
  ComplexSparse E;       // L_eps - L0
  std::vector<FourierSymbols> symbols;  // one per velocity node
};

FourierMatrix assemble_fourier_matrix(const GridConfig& cfg, const QuadratureRule& rule,
                                      double xi, bool at_epsilon_zero = false);

/// xi values with xi*h spread uniformly over [0, pi], endpoints included.
std::vector<double> frequency_samples(double h, int count = 64);

/// N x N matrix with every row equal to the weights.
Eigen::MatrixXd weight_matrix(const QuadratureRule& rule);

}  // namespace aplab
