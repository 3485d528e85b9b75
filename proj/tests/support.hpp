#pragma once

#include <random>

#include <Eigen/Dense>

#include "aplab/transport_model.hpp"

namespace aplab::testing {

inline constexpr std::uint64_t kSeed = 20240917;

// Dense Kronecker product, written out entry by entry.
inline Eigen::MatrixXd dense_kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline Eigen::MatrixXd shift_down(Eigen::Index n) {
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) p(i, i - 1) = 1.0;
  return p;
}

inline Eigen::VectorXd uniform_vector(std::mt19937_64& gen, Eigen::Index n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = u(gen);
  return v;
}

inline ParityField random_parity_field(std::mt19937_64& gen, int N, int Nx) {
  ParityField f(N, Nx);
  f.r = uniform_vector(gen, f.r.size());
  f.j = uniform_vector(gen, f.j.size());
  f.r_left = uniform_vector(gen, N);
  f.r_right = uniform_vector(gen, N);
  f.j_left = uniform_vector(gen, N);
  f.j_right = uniform_vector(gen, N);
  return f;
}

inline KineticField random_kinetic_field(std::mt19937_64& gen, int V, int Nx) {
  KineticField f(V, Nx);
  f.f = uniform_vector(gen, f.f.size());
  f.f_left = uniform_vector(gen, V);
  f.f_right = uniform_vector(gen, V);
  return f;
}

inline double rel_diff(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const double scale = std::max(b.norm(), 1e-300);
  return (a - b).norm() / scale;
}

inline GridConfig ap_desk(double eps) {
  GridConfig c;
  c.scheme = Scheme::ap;
  c.epsilon = eps;
  c.tau = 0.005;
  c.h = 0.1;
  c.N = 4;
  c.Nx = 16;
  c.Nt = 8;
  c.x_left = 0.0;
  c.x_right = 1.7;
  return c;
}

inline GridConfig explicit_desk(double eps) {
  GridConfig c;
  c.scheme = Scheme::explicit_upwind;
  c.epsilon = eps;
  c.N = 4;
  c.Nx = 16;
  c.h = 1.0 / 17.0;
  c.x_left = 0.0;
  c.x_right = 1.0;
  c.tau = 0.9 * c.h * eps * eps / (eps + c.h);
  c.Nt = 8;
  return c;
}

}  // namespace aplab::testing
