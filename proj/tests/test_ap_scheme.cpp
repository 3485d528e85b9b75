#include <cmath>
#include <algorithm>
#include <random>
#include <sstream>

#include "doctest.h"

#include "aplab/ap_scheme.hpp"
#include "aplab/errors.hpp"
#include "support.hpp"

using namespace aplab;
using testing::dense_kron;

namespace {

struct DenseAp {
  Eigen::MatrixXd B1, A1, B2, A2, limit_B2;
};

// Straight from the definitions, with gamma = tau/eps^2 used as is.
DenseAp dense_ap(const GridConfig& cfg, const QuadratureRule& rule) {
  const int n = cfg.Nx;
  Eigen::MatrixXd Mh = Eigen::MatrixXd::Zero(n, n), Lh = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    Lh(i, i) = -2.0;
    if (i + 1 < n) {
      Mh(i, i + 1) = 1.0;
      Lh(i, i + 1) = 1.0;
    }
    if (i > 0) {
      Mh(i, i - 1) = -1.0;
      Lh(i, i - 1) = 1.0;
    }
  }
  Eigen::MatrixXd V = Eigen::MatrixXd::Zero(cfg.N, cfg.N), W(cfg.N, cfg.N);
  for (int k = 0; k < cfg.N; ++k) {
    V(k, k) = rule.nodes[k];
    for (int kk = 0; kk < cfg.N; ++kk) W(k, kk) = rule.weights[kk];
  }
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(cfg.N * n, cfg.N * n);
  const Eigen::MatrixXd G = dense_kron(W, Eigen::MatrixXd::Identity(n, n));
  const double lam = cfg.tau / cfg.h;
  const double gam = cfg.tau / (cfg.epsilon * cfg.epsilon);
  const double e2 = cfg.epsilon * cfg.epsilon;
  const double q = (1.0 - e2) / (cfg.tau + e2);
  const Eigen::MatrixXd A = lam / 2.0 * dense_kron(V, Mh);
  const Eigen::MatrixXd B = I + lam / 2.0 * dense_kron(V, Lh);
  const Eigen::MatrixXd R = (I + gam * G) / (1.0 + gam);
  DenseAp d;
  d.B1 = (B + q * A * A) * R;
  d.A1 = A / (1.0 + gam);
  d.B2 = (A + q * B * A) * R;
  d.A2 = B / (1.0 + gam);
  d.limit_B2 = (A + B * A / cfg.tau) * G;
  return d;
}

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("spatial operators") {
  GridConfig cfg = testing::ap_desk(0.5);
  cfg.Nx = 4;
  const auto rule = velocity_rule(cfg);
  const ApOperators ops = ap_operators(cfg, rule);
  const Eigen::MatrixXd Mh(ops.Mh), Lh(ops.Lh);
  Eigen::MatrixXd expected_M(4, 4), expected_L(4, 4);
  expected_M << 0, 1, 0, 0, -1, 0, 1, 0, 0, -1, 0, 1, 0, 0, -1, 0;
  expected_L << -2, 1, 0, 0, 1, -2, 1, 0, 0, 1, -2, 1, 0, 0, 1, -2;
  CHECK(Mh == expected_M);
  CHECK(Lh == expected_L);
  const Eigen::MatrixXd G(ops.G);
  CHECK(max_abs(G * G - G) < 1e-14);
}

TEST_CASE("step matrices agree with a dense evaluation of the definitions") {
  for (double eps : {1.0, 0.5, 1e-1, 1e-2}) {
    GridConfig cfg = testing::ap_desk(eps);
    cfg.Nx = 6;
    cfg.N = 3;
    const auto rule = velocity_rule(cfg);
    const ApStepMatrices m = ap_step_matrices(cfg, rule);
    const DenseAp d = dense_ap(cfg, rule);
    INFO("eps = " << eps);
    CHECK(max_abs(Eigen::MatrixXd(m.B1) - d.B1) < 1e-13);
    CHECK(max_abs(Eigen::MatrixXd(m.A1) - d.A1) < 1e-13);
    CHECK(max_abs(Eigen::MatrixXd(m.B2) - d.B2) < 1e-13 * std::max(1.0, max_abs(d.B2)));
    CHECK(max_abs(Eigen::MatrixXd(m.A2) - d.A2) < 1e-13);
    CHECK(max_abs(Eigen::MatrixXd(m.limit_B2) - d.limit_B2) < 1e-12 * max_abs(d.limit_B2));
  }
}

TEST_CASE("B2 tends to its limit as eps goes to zero") {
  GridConfig cfg = testing::ap_desk(1e-7);
  cfg.Nx = 6;
  const auto rule = velocity_rule(cfg);
  const ApStepMatrices m = ap_step_matrices(cfg, rule);
  const Eigen::MatrixXd diff = Eigen::MatrixXd(m.B2) - Eigen::MatrixXd(m.limit_B2);
  CHECK(max_abs(diff) < 1e-8 * max_abs(Eigen::MatrixXd(m.limit_B2)));
  CHECK(m.A1.norm() < 1e-9);
  CHECK(m.A2.norm() < 1e-9);
}

TEST_CASE("stepper matches the matrix form on random states") {
  std::mt19937_64 gen(testing::kSeed);
  for (double eps : {1.0, 1e-3, 1e-6}) {
    const GridConfig cfg = testing::ap_desk(eps);
    const auto rule = velocity_rule(cfg);
    const ApStepMatrices mats = ap_step_matrices(cfg, rule);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const ParityField s = testing::random_parity_field(gen, cfg.N, cfg.Nx);
      const ParityField a = transport_step(relaxation_step(s, cfg, rule), cfg);
      const ParityField b = ap_matrix_step(s, mats, ap_boundary_forcing(cfg, rule, s));
      worst = std::max(worst, testing::rel_diff(a.r, b.r));
      worst = std::max(worst, testing::rel_diff(a.j, b.j));
    }
    INFO("eps = " << eps);
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("relaxation preserves the density") {
  std::mt19937_64 gen(testing::kSeed + 1);
  const GridConfig cfg = testing::ap_desk(1e-2);
  const auto rule = velocity_rule(cfg);
  for (int trial = 0; trial < 100; ++trial) {
    const ParityField s = testing::random_parity_field(gen, cfg.N, cfg.Nx);
    const Eigen::VectorXd before = density(s, rule);
    const Eigen::VectorXd after = density(relaxation_step(s, cfg, rule), rule);
    CHECK((after - before).norm() <= 1e-13 * before.norm());
  }
}

TEST_CASE("relaxation drives r to the density when tau dominates") {
  const GridConfig cfg = testing::ap_desk(1e-8);
  const auto rule = velocity_rule(cfg);
  std::mt19937_64 gen(testing::kSeed + 2);
  const ParityField s = testing::random_parity_field(gen, cfg.N, cfg.Nx);
  const ParityField star = relaxation_step(s, cfg, rule);
  const Eigen::VectorXd rho = density(s, rule);
  for (int k = 0; k < cfg.N; ++k) {
    for (int m = 0; m < cfg.Nx; ++m) CHECK(star.r[star.index(k, m)] == doctest::Approx(rho[m]).epsilon(1e-10));
  }
}

TEST_CASE("zero inflow gives zero forcing") {
  const GridConfig cfg = testing::ap_desk(0.1);
  const auto rule = velocity_rule(cfg);
  ParityField s(cfg.N, cfg.Nx);
  s.r.setRandom();
  const ApForcing f = ap_boundary_forcing(cfg, rule, s);
  CHECK(f.f.isZero());
  CHECK(f.g.isZero());
}

TEST_CASE("a constant equilibrium with matching inflow is stationary") {
  for (double eps : {1.0, 1e-2, 1e-6}) {
    GridConfig cfg = testing::ap_desk(eps);
    cfg.init = InitialProfile::constant;
    cfg.bc_left = 1.0;
    cfg.bc_right = 1.0;
    const auto rule = velocity_rule(cfg);
    ParityField s = initial_parity_field(cfg);
    s.r.setOnes();
    const auto traj = ap_evolve(s, cfg, rule);
    REQUIRE(traj.size() == static_cast<std::size_t>(cfg.Nt + 1));
    CHECK((traj.back().r - s.r).cwiseAbs().maxCoeff() < 1e-13);
    CHECK(traj.back().j.cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("operation counter scales with N^2 Nx Nt") {
  GridConfig cfg = testing::ap_desk(0.1);
  auto count = [](const GridConfig& c) {
    OpCounter ops;
    ap_evolve(initial_parity_field(c), c, velocity_rule(c), &ops);
    return ops.ops;
  };
  const auto base = count(cfg);
  cfg.Nt *= 2;
  CHECK(count(cfg) == 2 * base);
  cfg.Nt /= 2;
  for (int N : {4, 16, 32}) {
    cfg.N = N;
    const double per_n2 = static_cast<double>(count(cfg)) / (double(N) * N * cfg.Nx * cfg.Nt);
    CHECK(per_n2 == doctest::Approx(1.0 + 16.0 / N));
  }
}

TEST_CASE("trajectory csv") {
  GridConfig cfg = testing::ap_desk(0.1);
  cfg.Nx = 2;
  cfg.N = 2;
  cfg.Nt = 1;
  cfg.x_right = 0.3;
  const auto traj = ap_evolve(initial_parity_field(cfg), cfg, velocity_rule(cfg));
  std::ostringstream os;
  write_ap_trajectory_csv(os, traj);
  const std::string text = os.str();
  CHECK(text.rfind("step,k,m,r,j\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 2 * 2 * 2);
}

TEST_CASE("scheme mismatch and CFL violations are rejected") {
  GridConfig cfg = testing::explicit_desk(0.5);
  CHECK_THROWS_AS(ap_step_matrices(cfg, velocity_rule(cfg)), std::invalid_argument);
  cfg = testing::ap_desk(0.1);
  cfg.tau = 0.05;
  CHECK_THROWS_AS(ap_step_matrices(cfg, velocity_rule(cfg)), ValidationError);
}
