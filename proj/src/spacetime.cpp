#include "aplab/spacetime.hpp"

#include <stdexcept>
#include <string>

#include <Eigen/SparseLU>

#include "aplab/ap_scheme.hpp"
#include "aplab/explicit_scheme.hpp"

namespace aplab {
namespace {

void check_order(std::size_t order, const AssemblyLimits& limits) {
  if (order > limits.max_order) {
    throw std::length_error("system order " + std::to_string(order) + " exceeds the cap of " +
                            std::to_string(limits.max_order));
  }
}

void require_steps(const GridConfig& cfg) {
  if (cfg.Nt < 1) throw std::invalid_argument("all-at-once assembly needs Nt >= 1");
}

}  // namespace

BlockSystem assemble_ap_system(const GridConfig& cfg, const QuadratureRule& rule, bool rescaled,
                               const ParityField& initial, AssemblyLimits limits) {
  if (cfg.scheme != Scheme::ap) throw std::invalid_argument("assemble_ap_system: not an AP configuration");
  require_steps(cfg);
  const Eigen::Index n = static_cast<Eigen::Index>(cfg.N) * cfg.Nx;
  const Eigen::Index half = n * cfg.Nt;
  check_order(static_cast<std::size_t>(2 * half), limits);

  const ApStepMatrices mats = ap_step_matrices(cfg, rule);
  const ApForcing forcing = ap_boundary_forcing(cfg, rule, initial);
  const double up = rescaled ? 1.0 / cfg.tau : 1.0;
  const double down = rescaled ? cfg.tau : 1.0;

  std::vector<Eigen::Triplet<double>> t;
  t.reserve(static_cast<std::size_t>(
      2 * half + (cfg.Nt - 1) * (mats.B1.nonZeros() + mats.A1.nonZeros() +
                                 mats.B2.nonZeros() + mats.A2.nonZeros())));
  for (Eigen::Index i = 0; i < 2 * half; ++i) t.emplace_back(i, i, 1.0);
  for (int level = 1; level < cfg.Nt; ++level) {
    const Eigen::Index row = level * n;
    const Eigen::Index col = (level - 1) * n;
    append_block(t, mats.B1, row, col, -1.0);
    append_block(t, mats.A1, row, half + col, up);
    append_block(t, mats.B2, half + row, col, down);
    append_block(t, mats.A2, half + row, half + col, -1.0);
  }

  BlockSystem sys;
  sys.L = from_triplets(2 * half, 2 * half, t);
  sys.F.resize(2 * half);
  for (int level = 0; level < cfg.Nt; ++level) {
    sys.F.segment(level * n, n) = up * forcing.f;
    sys.F.segment(half + level * n, n) = forcing.g;
  }
  sys.F.segment(0, n) += up * (mats.B1 * initial.r - mats.A1 * initial.j);
  sys.F.segment(half, n) += -(mats.B2 * initial.r) + mats.A2 * initial.j;
  sys.scheme = Scheme::ap;
  sys.rescaled = rescaled;
  sys.cfg = cfg;
  return sys;
}

BlockSystem assemble_explicit_system(const GridConfig& cfg, const QuadratureRule& rule,
                                     const KineticField& initial, AssemblyLimits limits) {
  if (cfg.scheme != Scheme::explicit_upwind) {
    throw std::invalid_argument("assemble_explicit_system: not an explicit configuration");
  }
  require_steps(cfg);
  const Eigen::Index n = static_cast<Eigen::Index>(2 * cfg.N) * cfg.Nx;
  const Eigen::Index order = n * cfg.Nt;
  check_order(static_cast<std::size_t>(order), limits);

  const ExplicitStepMatrix mats = explicit_matrix(cfg, rule);
  const Eigen::VectorXd b = explicit_boundary_vector(cfg, rule, initial);

  std::vector<Eigen::Triplet<double>> t;
  t.reserve(static_cast<std::size_t>(order + (cfg.Nt - 1) * mats.B.nonZeros()));
  for (Eigen::Index i = 0; i < order; ++i) t.emplace_back(i, i, 1.0);
  for (int level = 1; level < cfg.Nt; ++level) {
    append_block(t, mats.B, level * n, (level - 1) * n, -1.0);
  }

  BlockSystem sys;
  sys.L = from_triplets(order, order, t);
  sys.F.resize(order);
  for (int level = 0; level < cfg.Nt; ++level) sys.F.segment(level * n, n) = b;
  sys.F.segment(0, n) += mats.B * initial.f;
  sys.scheme = Scheme::explicit_upwind;
  sys.rescaled = false;
  sys.cfg = cfg;
  return sys;
}

Eigen::VectorXd solve_system(const BlockSystem& system) {
  Eigen::SparseMatrix<double, Eigen::ColMajor> L = system.L;
  L.makeCompressed();
  Eigen::SparseLU<Eigen::SparseMatrix<double, Eigen::ColMajor>> lu;
  lu.compute(L);
  if (lu.info() != Eigen::Success) throw std::runtime_error("sparse LU factorization failed");
  Eigen::VectorXd x = lu.solve(system.F);
  if (lu.info() != Eigen::Success) throw std::runtime_error("sparse LU solve failed");
  return x;
}

std::vector<ParityField> unpack_ap_solution(const BlockSystem& system,
                                            const Eigen::VectorXd& solution,
                                            const ParityField& initial) {
  const GridConfig& cfg = system.cfg;
  const Eigen::Index n = static_cast<Eigen::Index>(cfg.N) * cfg.Nx;
  const Eigen::Index half = n * cfg.Nt;
  if (solution.size() != 2 * half) throw std::invalid_argument("solution size does not match the system");
  const double scale = system.rescaled ? cfg.tau : 1.0;
  std::vector<ParityField> levels{initial};
  for (int level = 0; level < cfg.Nt; ++level) {
    ParityField f = initial;
    f.r = scale * solution.segment(level * n, n);
    f.j = solution.segment(half + level * n, n);
    levels.push_back(std::move(f));
  }
  return levels;
}

std::vector<KineticField> unpack_explicit_solution(const BlockSystem& system,
                                                   const Eigen::VectorXd& solution,
                                                   const KineticField& initial) {
  const GridConfig& cfg = system.cfg;
  const Eigen::Index n = static_cast<Eigen::Index>(2 * cfg.N) * cfg.Nx;
  if (solution.size() != n * cfg.Nt) throw std::invalid_argument("solution size does not match the system");
  std::vector<KineticField> levels{initial};
  for (int level = 0; level < cfg.Nt; ++level) {
    KineticField f = initial;
    f.f = solution.segment(level * n, n);
    levels.push_back(std::move(f));
  }
  return levels;
}

}  // namespace aplab
