#include <cmath>
#include <random>
#include <set>

#include "doctest.h"

#include "aplab/ap_scheme.hpp"
#include "aplab/explicit_scheme.hpp"
#include "aplab/spacetime.hpp"
#include "aplab/spectral.hpp"
#include "support.hpp"

using namespace aplab;

namespace {

// Level index pairs (row level, column level) that carry nonzeros.
std::set<std::pair<Eigen::Index, Eigen::Index>> level_pattern(const RealSparse& L, Eigen::Index block) {
  std::set<std::pair<Eigen::Index, Eigen::Index>> out;
  for (Eigen::Index i = 0; i < L.outerSize(); ++i) {
    for (RealSparse::InnerIterator it(L, i); it; ++it) out.emplace(it.row() / block, it.col() / block);
  }
  return out;
}

}  // namespace

TEST_CASE("a single time level gives the identity") {
  GridConfig cfg = testing::ap_desk(0.1);
  cfg.Nt = 1;
  const auto rule = velocity_rule(cfg);
  const ParityField init = initial_parity_field(cfg);
  const BlockSystem sys = assemble_ap_system(cfg, rule, false, init);
  CHECK(sys.order() == 2 * cfg.N * cfg.Nx);
  CHECK(sys.L.nonZeros() == sys.order());
  CHECK(Eigen::MatrixXd(sys.L).isIdentity());
  CHECK(solve_system(sys) == sys.F);

  GridConfig ex = testing::explicit_desk(0.5);
  ex.Nt = 1;
  const BlockSystem es = assemble_explicit_system(ex, velocity_rule(ex), initial_kinetic_field(ex));
  CHECK(Eigen::MatrixXd(es.L).isIdentity());
}

TEST_CASE("AP system reproduces the stepper") {
  for (bool rescaled : {false, true}) {
    for (double eps : {1.0, 1e-3, 1e-6}) {
      GridConfig cfg = testing::ap_desk(eps);
      cfg.bc_left = 0.7;
      cfg.bc_right = -0.3;
      const auto rule = velocity_rule(cfg);
      const ParityField init = initial_parity_field(cfg);
      const auto steps = ap_evolve(init, cfg, rule);
      const BlockSystem sys = assemble_ap_system(cfg, rule, rescaled, init);
      const auto levels = unpack_ap_solution(sys, solve_system(sys), init);
      REQUIRE(levels.size() == steps.size());
      INFO("eps = " << eps << ", rescaled = " << rescaled);
      for (std::size_t n = 1; n < levels.size(); ++n) {
        CHECK(testing::rel_diff(levels[n].r, steps[n].r) <= 1e-10);
        if (steps[n].j.norm() > 0) CHECK(testing::rel_diff(levels[n].j, steps[n].j) <= 1e-10);
      }
    }
  }
}

TEST_CASE("explicit system reproduces the stepper") {
  GridConfig cfg = testing::explicit_desk(0.5);
  cfg.bc_left = 1.0;
  cfg.Nt = 16;
  const auto rule = velocity_rule(cfg);
  const KineticField init = initial_kinetic_field(cfg);
  const auto steps = explicit_evolve(init, cfg, rule);
  const BlockSystem sys = assemble_explicit_system(cfg, rule, init);
  const auto levels = unpack_explicit_solution(sys, solve_system(sys), init);
  for (std::size_t n = 1; n < levels.size(); ++n) CHECK(testing::rel_diff(levels[n].f, steps[n].f) <= 1e-10);
}

TEST_CASE("block structure") {
  GridConfig cfg = testing::ap_desk(1e-2);
  cfg.Nt = 5;
  const auto rule = velocity_rule(cfg);
  const BlockSystem sys = assemble_ap_system(cfg, rule, true, initial_parity_field(cfg));
  const Eigen::Index n = cfg.N * cfg.Nx;
  for (Eigen::Index i = 0; i < sys.order(); ++i) CHECK(sys.L.coeff(i, i) == 1.0);
  for (auto [rl, cl] : level_pattern(sys.L, n)) {
    const Eigen::Index rt = rl % cfg.Nt, ct = cl % cfg.Nt;
    CHECK((rt == ct ? rl == cl : rt == ct + 1));
  }
  const ApStepMatrices m = ap_step_matrices(cfg, rule);
  const Eigen::MatrixXd L(sys.L);
  const Eigen::Index half = n * cfg.Nt;
  CHECK((L.block(n, 0, n, n) + Eigen::MatrixXd(m.B1)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((L.block(n, half, n, n) - Eigen::MatrixXd(m.A1) / cfg.tau).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((L.block(half + n, 0, n, n) - cfg.tau * Eigen::MatrixXd(m.B2)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((L.block(half + n, half, n, n) + Eigen::MatrixXd(m.A2)).cwiseAbs().maxCoeff() == 0.0);

  GridConfig ex = testing::explicit_desk(0.5);
  ex.Nt = 4;
  const BlockSystem es = assemble_explicit_system(ex, velocity_rule(ex), initial_kinetic_field(ex));
  for (auto [rl, cl] : level_pattern(es.L, 2 * ex.N * ex.Nx)) CHECK((rl == cl || rl == cl + 1));
}

TEST_CASE("sparsity is linear in N") {
  for (int N : {2, 4, 8, 16}) {
    GridConfig cfg = testing::ap_desk(1e-4);
    cfg.N = N;
    cfg.Nt = 3;
    const BlockSystem sys = assemble_ap_system(cfg, velocity_rule(cfg), true, initial_parity_field(cfg));
    CHECK(sparsity(sys.L) <= static_cast<std::size_t>(10 * N));
    GridConfig ex = testing::explicit_desk(0.5);
    ex.N = N;
    ex.Nt = 3;
    const BlockSystem es = assemble_explicit_system(ex, velocity_rule(ex), initial_kinetic_field(ex));
    CHECK(sparsity(es.L) <= static_cast<std::size_t>(3 * N));
  }
}

TEST_CASE("inverse of the explicit system is bounded by the power series") {
  GridConfig cfg = testing::explicit_desk(0.5);
  cfg.Nt = 12;
  cfg.Nx = 8;
  cfg.h = 1.0 / 9.0;
  cfg.tau = 0.9 * cfg.h * 0.25 / (0.5 + cfg.h);
  const auto rule = velocity_rule(cfg);
  const BlockSystem sys = assemble_explicit_system(cfg, rule, initial_kinetic_field(cfg));
  const Eigen::MatrixXd B(explicit_matrix(cfg, rule).B);
  double series = 0.0;
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(B.rows(), B.cols());
  for (int n = 0; n < cfg.Nt; ++n) {
    series += singular_values(power)(0);
    power = B * power;
  }
  const Eigen::MatrixXd Linv = Eigen::MatrixXd(sys.L).inverse();
  CHECK(singular_values(Linv)(0) <= series * (1.0 + 1e-12));
}

TEST_CASE("order cap") {
  GridConfig cfg = testing::ap_desk(0.1);
  cfg.Nt = 100;
  CHECK_THROWS_AS(assemble_ap_system(cfg, velocity_rule(cfg), true, initial_parity_field(cfg), {1000}),
                  std::length_error);
  CHECK_THROWS_AS(assemble_ap_system(testing::explicit_desk(0.5), velocity_rule(cfg), true,
                                     initial_parity_field(cfg)),
                  std::invalid_argument);
}

TEST_CASE("boundary data changes F but not L") {
  GridConfig a = testing::ap_desk(1e-3);
  GridConfig b = a;
  b.bc_left = 0.7;
  b.bc_right = -0.3;
  const auto rule = velocity_rule(a);
  const BlockSystem sa = assemble_ap_system(a, rule, true, initial_parity_field(a));
  const BlockSystem sb = assemble_ap_system(b, rule, true, initial_parity_field(b));
  CHECK(max_abs_difference(sa.L, sb.L) == 0.0);
  CHECK((sa.F - sb.F).norm() > 0.0);

  GridConfig ea = testing::explicit_desk(0.5);
  GridConfig eb = ea;
  eb.bc_left = 0.7;
  const auto erule = velocity_rule(ea);
  const BlockSystem xa = assemble_explicit_system(ea, erule, initial_kinetic_field(ea));
  const BlockSystem xb = assemble_explicit_system(eb, erule, initial_kinetic_field(eb));
  CHECK(max_abs_difference(xa.L, xb.L) == 0.0);
  CHECK((xa.F - xb.F).norm() > 0.0);
}
