#include "aplab/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace aplab {
namespace {

constexpr double kNewtonTolerance = 1e-15;
constexpr int kNewtonMaxIterations = 100;

// P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<double, double> legendre(std::size_t n, double x) {
  double p0 = 1.0;
  double p1 = x;
  if (n == 0) return {1.0, 0.0};
  for (std::size_t k = 2; k <= n; ++k) {
    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = pk;
  }
  const double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

}  // namespace

QuadratureRule gauss_rule(std::size_t n_points, double a, double b) {
  if (n_points == 0) throw std::invalid_argument("gauss_rule: n_points must be >= 1");
  if (!(a < b)) throw std::invalid_argument("gauss_rule: need a < b");

  const std::size_t n = n_points;
  std::vector<double> x(n), w(n);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    // i-th largest root of P_n
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < kNewtonMaxIterations; ++it) {
      const auto [p, dp] = legendre(n, z);
      const double dz = p / dp;
      z -= dz;
      if (std::abs(dz) <= kNewtonTolerance) break;
    }
    const auto [p, dp] = legendre(n, z);
    (void)p;
    const double weight = 2.0 / ((1.0 - z * z) * dp * dp);
    // Mirror to keep the rule exactly symmetric on [-1, 1].
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = weight;
    w[n - 1 - i] = weight;
  }
  if (n % 2 == 1) x[n / 2] = 0.0;

  QuadratureRule rule;
  rule.a = a;
  rule.b = b;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double mid = 0.5 * (a + b);
  const double half_len = 0.5 * (b - a);
  for (std::size_t i = 0; i < n; ++i) {
    rule.nodes[i] = mid + half_len * x[i];
    rule.weights[i] = half_len * w[i];
  }
  return rule;
}

}  // namespace aplab
