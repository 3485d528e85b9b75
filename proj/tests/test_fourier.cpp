#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"

#include "aplab/ap_scheme.hpp"
#include "aplab/fourier.hpp"
#include "aplab/spectral.hpp"
#include "support.hpp"

using namespace aplab;
using cd = std::complex<double>;

namespace {

GridConfig fourier_cfg(double eps) {
  GridConfig cfg = testing::ap_desk(eps);
  cfg.tau = 1e-2;
  cfg.h = 0.2;
  cfg.Nx = 24;
  cfg.Nt = 6;
  cfg.x_right = 5.0;
  return cfg;
}

Eigen::VectorXcd plane_wave(const GridConfig& cfg, int k, double xi) {
  Eigen::VectorXcd w = Eigen::VectorXcd::Zero(cfg.N * cfg.Nx);
  for (int m = 0; m < cfg.Nx; ++m) w[k * cfg.Nx + m] = std::exp(cd(0.0, xi * (m + 1) * cfg.h));
  return w;
}

}  // namespace

TEST_CASE("symbols at zero frequency") {
  const GridConfig cfg = fourier_cfg(0.3);
  const double gamma = cfg.tau / (0.3 * 0.3);
  const FourierSymbols s = fourier_symbols(cfg, 0.7, 0.0);
  CHECK(std::abs(s.c2) == 0.0);
  CHECK(std::abs(s.d2) == 0.0);
  CHECK(s.c1.real() == doctest::Approx(-1.0 / (1.0 + gamma)));
  CHECK(s.d1.real() == doctest::Approx(-1.0 / (1.0 + gamma)));
  GridConfig zero = cfg;
  zero.epsilon = 0.0;
  const FourierSymbols z = fourier_symbols(zero, 0.7, 0.0);
  CHECK(z.gamma0_c1_0 == cd(-1.0, 0.0));
  CHECK(z.gamma0_d2_0 == cd(0.0, 0.0));
  CHECK(std::abs(z.c1) == 0.0);
  CHECK(std::abs(z.c2) == 0.0);
  CHECK(std::abs(z.d1) == 0.0);
  CHECK(std::abs(z.d2) == 0.0);
}

TEST_CASE("symbols match the step matrices acting on plane waves") {
  for (double eps : {1.0, 0.3, 0.05}) {
    const GridConfig cfg = fourier_cfg(eps);
    const auto rule = velocity_rule(cfg);
    const ApStepMatrices m = ap_step_matrices(cfg, rule);
    const ComplexSparse B1 = to_complex(m.B1), A1 = to_complex(m.A1);
    const ComplexSparse B2 = to_complex(m.B2), A2 = to_complex(m.A2);
    for (double xi_h : {0.3, 1.1, 2.9}) {
      const double xi = xi_h / cfg.h;
      for (int k = 0; k < cfg.N; ++k) {
        const Eigen::VectorXcd wave = plane_wave(cfg, k, xi);
        const Eigen::VectorXcd b1 = B1 * wave, a1 = A1 * wave, b2 = B2 * wave, a2 = A2 * wave;
        const double wk = rule.weights[k];
        for (int i = 0; i < cfg.N; ++i) {
          const FourierSymbols s = fourier_symbols(cfg, rule.nodes[i], xi);
          const cd delta = i == k ? 1.0 : 0.0;
          for (int mm = 3; mm < cfg.Nx - 3; ++mm) {
            const cd e = std::exp(cd(0.0, xi * (mm + 1) * cfg.h));
            const int idx = i * cfg.Nx + mm;
            INFO("eps " << eps << " xi h " << xi_h << " i " << i << " k " << k);
            CHECK(std::abs(b1[idx] - (-(s.c1 * delta) - s.gamma_c1 * wk) * e) < 1e-12);
            CHECK(std::abs(a1[idx] - s.c2 * delta * e) < 1e-12);
            CHECK(std::abs(b2[idx] - (s.d2 * delta + s.gamma_d2 * wk) * e) < 1e-12);
            CHECK(std::abs(a2[idx] + s.d1 * delta * e) < 1e-12);
          }
        }
      }
    }
  }
}

TEST_CASE("products with gamma match the direct form") {
  const GridConfig cfg = fourier_cfg(0.2);
  const double gamma = cfg.tau / 0.04;
  for (double xi_h : {0.0, 0.5, 2.0, std::numbers::pi}) {
    const FourierSymbols s = fourier_symbols(cfg, 0.4, xi_h / cfg.h);
    CHECK(std::abs(s.gamma_c1 - gamma * s.c1) < 1e-13);
    CHECK(std::abs(s.gamma_d2 - gamma * s.d2) < 1e-13);
  }
}

TEST_CASE("eps to zero limits") {
  GridConfig cfg = fourier_cfg(1e-8);
  GridConfig zero = cfg;
  zero.epsilon = 0.0;
  for (double xi_h : {0.4, 1.7, 3.0}) {
    const FourierSymbols s = fourier_symbols(cfg, 0.9, xi_h / cfg.h);
    const FourierSymbols z = fourier_symbols(zero, 0.9, xi_h / cfg.h);
    CHECK(std::abs(s.c1) < 1e-12);
    CHECK(std::abs(s.c2) < 1e-12);
    CHECK(std::abs(s.d1) < 1e-12);
    CHECK(std::abs(s.d2) < 1e-10);
    CHECK(std::abs(s.gamma_c1 - z.gamma0_c1_0) < 1e-12);
    CHECK(std::abs(s.gamma_d2 - z.gamma0_d2_0) < 1e-10);
  }
}

TEST_CASE("limit symbols are bounded under the CFL condition") {
  GridConfig cfg = fourier_cfg(0.0);
  cfg.tau = 0.9 * cfg.h * cfg.h / (1.0 + cfg.h);
  for (double xi : frequency_samples(cfg.h)) {
    for (int iv = 0; iv <= 20; ++iv) {
      const FourierSymbols s = fourier_symbols(cfg, iv / 20.0, xi);
      CHECK(std::abs(s.gamma0_c1_0) <= 1.0 + 1e-14);
      CHECK(std::abs(cfg.tau * s.gamma0_d2_0) <= 1.0 + cfg.tau + 1e-14);
    }
  }
}

TEST_CASE("Fourier matrix equals the Kronecker assembly") {
  const GridConfig cfg = fourier_cfg(0.1);
  const auto rule = velocity_rule(cfg);
  const double xi = 1.3 / cfg.h;
  const FourierMatrix fm = assemble_fourier_matrix(cfg, rule, xi);
  const int N = cfg.N, Nt = cfg.Nt;
  const Eigen::MatrixXcd P = testing::shift_down(Nt).cast<cd>();
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(Nt, Nt);
  Eigen::MatrixXcd L = Eigen::MatrixXcd::Zero(2 * N * Nt, 2 * N * Nt);
  for (int i = 0; i < N; ++i) {
    const FourierSymbols& s = fm.symbols[i];
    L.block(i * Nt, i * Nt, Nt, Nt) += I + s.c1 * P;
    L.block(i * Nt, (N + i) * Nt, Nt, Nt) += s.c2 * P / cfg.tau;
    L.block((N + i) * Nt, i * Nt, Nt, Nt) += cfg.tau * s.d2 * P;
    L.block((N + i) * Nt, (N + i) * Nt, Nt, Nt) += I + s.d1 * P;
    for (int k = 0; k < N; ++k) {
      L.block(i * Nt, k * Nt, Nt, Nt) += s.gamma_c1 * rule.weights[k] * P;
      L.block((N + i) * Nt, k * Nt, Nt, Nt) += cfg.tau * s.gamma_d2 * rule.weights[k] * P;
    }
  }
  CHECK((Eigen::MatrixXcd(fm.Ltilde) - L).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((Eigen::MatrixXcd(fm.Ltilde) - Eigen::MatrixXcd(fm.L0) - Eigen::MatrixXcd(fm.E)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("limit matrix is identity plus W x P in the first block column") {
  GridConfig cfg = fourier_cfg(0.0);
  const auto rule = velocity_rule(cfg);
  const FourierMatrix fm = assemble_fourier_matrix(cfg, rule, 0.9 / cfg.h, true);
  const Eigen::MatrixXcd D = Eigen::MatrixXcd(fm.Ltilde) - Eigen::MatrixXcd::Identity(fm.Ltilde.rows(), fm.Ltilde.cols());
  const int N = cfg.N, Nt = cfg.Nt;
  for (int r = 0; r < D.rows(); ++r) {
    for (int c = 0; c < D.cols(); ++c) {
      if (D(r, c) == cd(0.0)) continue;
      CHECK(c < N * Nt);
      CHECK(r % Nt == c % Nt + 1);
    }
  }
  CHECK(fm.E.nonZeros() == 0);
  const Eigen::VectorXd sv = singular_values(Eigen::MatrixXcd(fm.L0));
  double bound = 0.0;
  for (const auto& s : fm.symbols) {
    bound = std::max({bound, std::abs(s.gamma0_c1_0), std::abs(cfg.tau * s.gamma0_d2_0)});
  }
  const double normW = singular_values(weight_matrix(rule))(0);
  CHECK(sv(0) <= 1.0 + bound * normW + 1e-12);
  CHECK(sv(0) <= 1.0 + (1.0 + cfg.tau) * std::sqrt(static_cast<double>(N)) + 1e-12);
}

TEST_CASE("weight matrix") {
  for (int N : {2, 4, 8}) {
    const auto rule = gauss_rule(N, 0.0, 1.0);
    const Eigen::MatrixXd W = weight_matrix(rule);
    CHECK((W * W - W).cwiseAbs().maxCoeff() <= 1e-13);
    CHECK(singular_values(W)(0) <= std::sqrt(static_cast<double>(N)) + 1e-12);
    Eigen::VectorXd w(N);
    for (int k = 0; k < N; ++k) w[k] = rule.weights[k];
    CHECK((W * W.transpose() - w.squaredNorm() * Eigen::MatrixXd::Ones(N, N)).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("frequency samples") {
  const auto xi = frequency_samples(0.5, 64);
  REQUIRE(xi.size() == 64);
  CHECK(xi.front() == 0.0);
  CHECK(xi.back() * 0.5 == doctest::Approx(std::numbers::pi));
  CHECK_THROWS_AS(frequency_samples(0.0, 64), std::invalid_argument);
}
