#pragma once

#include <cstddef>
#include <vector>

namespace aplab {

/// Gauss-Legendre rule on [a, b]. Nodes are strictly increasing.
///
/// The symmetric rule on [-1, 1] with 2N points is stored in the same
/// increasing order; array position i corresponds to the velocity index
/// -N..-1, 1..N (there is no zero index).
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  double a = 0.0;
  double b = 1.0;

  std::size_t size() const { return nodes.size(); }
};

/// Newton iteration on the Legendre polynomial of degree n_points, started
/// from the Chebyshev-type asymptotic guesses. Throws std::invalid_argument
/// for n_points == 0 or a >= b.
QuadratureRule gauss_rule(std::size_t n_points, double a, double b);

}  // namespace aplab
