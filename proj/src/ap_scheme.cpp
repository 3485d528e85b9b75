#include "aplab/ap_scheme.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "aplab/errors.hpp"

namespace aplab {
namespace {

void require_ap(const GridConfig& cfg) {
  if (cfg.scheme != Scheme::ap) throw std::invalid_argument("configuration is not for the AP scheme");
}

void require_rule(const GridConfig& cfg, const QuadratureRule& rule) {
  if (rule.size() != static_cast<std::size_t>(cfg.N) || rule.a != 0.0 || rule.b != 1.0) {
    throw std::invalid_argument("AP scheme needs the N-point rule on [0, 1]");
  }
}

void require_shape(const ParityField& field, const GridConfig& cfg) {
  field.check_shape();
  if (field.N != cfg.N || field.Nx != cfg.Nx) {
    throw std::invalid_argument("ParityField shape does not match the configuration");
  }
}

// 1/(1+gamma) and gamma/(1+gamma), written to stay accurate for tiny eps.
struct RelaxationWeights {
  double keep;
  double relax;
};

RelaxationWeights relaxation_weights(const GridConfig& cfg) {
  const double e2 = cfg.epsilon * cfg.epsilon;
  return {e2 / (e2 + cfg.tau), cfg.tau / (e2 + cfg.tau)};
}

bool all_finite(const ParityField& f) { return f.r.allFinite() && f.j.allFinite(); }

}  // namespace

ApOperators ap_operators(const GridConfig& cfg, const QuadratureRule& rule) {
  require_rule(cfg, rule);
  const int n = cfg.Nx;
  std::vector<Eigen::Triplet<double>> mh, lh;
  for (int i = 0; i < n; ++i) {
    lh.emplace_back(i, i, -2.0);
    if (i + 1 < n) {
      mh.emplace_back(i, i + 1, 1.0);
      mh.emplace_back(i + 1, i, -1.0);
      lh.emplace_back(i, i + 1, 1.0);
      lh.emplace_back(i + 1, i, 1.0);
    }
  }
  ApOperators ops;
  ops.Mh = from_triplets(n, n, mh);
  ops.Lh = from_triplets(n, n, lh);

  std::vector<Eigen::Triplet<double>> dv, ones_w;
  for (int k = 0; k < cfg.N; ++k) {
    dv.emplace_back(k, k, rule.nodes[k]);
    for (int kk = 0; kk < cfg.N; ++kk) ones_w.emplace_back(k, kk, rule.weights[kk]);
  }
  const RealSparse V = from_triplets(cfg.N, cfg.N, dv);
  const RealSparse W = from_triplets(cfg.N, cfg.N, ones_w);
  ops.Mv = kron(V, ops.Mh);
  ops.Lv = kron(V, ops.Lh);
  ops.G = kron(W, identity(n));
  return ops;
}

ApStepMatrices ap_step_matrices(const GridConfig& cfg, const QuadratureRule& rule) {
  require_ap(cfg);
  require_unit_phi(cfg);
  enforce_config(cfg);
  const ApOperators ops = ap_operators(cfg, rule);
  const Eigen::Index n = static_cast<Eigen::Index>(cfg.N) * cfg.Nx;
  const double lambda = cfg.lambda();
  const double e2 = cfg.epsilon * cfg.epsilon;
  const double q = (1.0 - e2) / (cfg.tau + e2);
  const auto [keep, relax] = relaxation_weights(cfg);

  ApStepMatrices m;
  const RealSparse I = identity(n);
  m.A = 0.5 * lambda * ops.Mv;
  m.B = I + 0.5 * lambda * ops.Lv;
  m.G = ops.G;
  // (I + gamma G)/(1 + gamma)
  const RealSparse relax_op = keep * I + relax * ops.G;

  const RealSparse A2 = m.A * m.A;
  const RealSparse BA = m.B * m.A;
  m.B1 = (m.B + q * A2) * relax_op;
  m.A1 = keep * m.A;
  m.B2 = (m.A + q * BA) * relax_op;
  m.A2 = keep * m.B;
  m.limit_B2 = (m.A + (1.0 / cfg.tau) * BA) * ops.G;
  for (auto* mat : {&m.A, &m.B, &m.B1, &m.A1, &m.B2, &m.A2, &m.limit_B2}) finalize(*mat);
  return m;
}

ApForcing ap_boundary_forcing(const GridConfig& cfg, const QuadratureRule& rule,
                              const ParityField& state) {
  require_shape(state, cfg);
  const Eigen::Index n = static_cast<Eigen::Index>(cfg.N) * cfg.Nx;
  Eigen::VectorXd b_tilde = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd f_v = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd g_v = Eigen::VectorXd::Zero(n);
  const int last = cfg.Nx - 1;
  for (int k = 0; k < cfg.N; ++k) {
    const double v = rule.nodes[k];
    const double r0 = state.r_left[k], r1 = state.r_right[k];
    const double j0 = state.j_left[k], j1 = state.j_right[k];
    // b~_k = (-r_0, 0, ..., r_{Nx+1}), b_k = (r_0, ..., r_{Nx+1}),
    // c_k = (j_0, ..., j_{Nx+1}), c~_k = (-j_0, ..., j_{Nx+1})
    b_tilde[state.index(k, 0)] += -v * r0;
    b_tilde[state.index(k, last)] += v * r1;
    f_v[state.index(k, 0)] += v * (r0 + j0);
    f_v[state.index(k, last)] += v * (r1 - j1);
    g_v[state.index(k, 0)] += v * (j0 + r0);
    g_v[state.index(k, last)] += v * (j1 - r1);
  }
  const ApOperators ops = ap_operators(cfg, rule);
  const double lambda = cfg.lambda();
  const double e2 = cfg.epsilon * cfg.epsilon;
  const double coupling = lambda * (1.0 - e2) / (2.0 * (cfg.tau + e2));
  const Eigen::VectorXd A_bt = 0.5 * lambda * (ops.Mv * b_tilde);
  const Eigen::VectorXd B_bt = b_tilde + 0.5 * lambda * (ops.Lv * b_tilde);
  ApForcing out;
  out.f = coupling * A_bt + 0.5 * lambda * f_v;
  out.g = -coupling * B_bt + 0.5 * lambda * g_v;
  return out;
}

ParityField relaxation_step(const ParityField& state, const GridConfig& cfg,
                            const QuadratureRule& rule, OpCounter* counter) {
  require_ap(cfg);
  require_rule(cfg, rule);
  require_shape(state, cfg);
  enforce_config(cfg);
  const auto [keep, relax] = relaxation_weights(cfg);
  const double e2 = cfg.epsilon * cfg.epsilon;
  const double flux = relax * (1.0 - e2) / (2.0 * cfg.h);

  ParityField star = state;
  for (int k = 0; k < cfg.N; ++k) {
    for (int m = 0; m < cfg.Nx; ++m) {
      double rho = 0.0;
      for (int kk = 0; kk < cfg.N; ++kk) rho += rule.weights[kk] * state.r[state.index(kk, m)];
      star.r[star.index(k, m)] = keep * state.r[state.index(k, m)] + relax * rho;
    }
  }
  for (int k = 0; k < cfg.N; ++k) {
    const double v = rule.nodes[k];
    for (int m = 1; m <= cfg.Nx; ++m) {
      const double dr = star.r_at(k, m + 1) - star.r_at(k, m - 1);
      star.j[star.index(k, m - 1)] = keep * state.j[state.index(k, m - 1)] - flux * v * dr;
    }
  }
  if (counter) {
    const auto nk = static_cast<std::uint64_t>(cfg.N);
    counter->ops += nk * nk * static_cast<std::uint64_t>(cfg.Nx) + 6 * nk * cfg.Nx;
  }
  return star;
}

ParityField transport_step(const ParityField& star, const GridConfig& cfg, OpCounter* counter) {
  require_ap(cfg);
  require_unit_phi(cfg);
  require_shape(star, cfg);
  const QuadratureRule rule = gauss_rule(static_cast<std::size_t>(cfg.N), 0.0, 1.0);
  const double lambda = cfg.lambda();

  ParityField next = star;
  for (int k = 0; k < cfg.N; ++k) {
    const double lv = lambda * rule.nodes[k];
    for (int m = 1; m <= cfg.Nx; ++m) {
      const double r = star.r_at(k, m), rp = star.r_at(k, m + 1), rm = star.r_at(k, m - 1);
      const double j = star.j_at(k, m), jp = star.j_at(k, m + 1), jm = star.j_at(k, m - 1);
      next.r[next.index(k, m - 1)] = (1.0 - lv) * r + 0.5 * lv * (rp + rm) - 0.5 * lv * (jp - jm);
      next.j[next.index(k, m - 1)] = (1.0 - lv) * j + 0.5 * lv * (jp + jm) - 0.5 * lv * (rp - rm);
    }
  }
  if (counter) counter->ops += 10 * static_cast<std::uint64_t>(cfg.N) * cfg.Nx;
  return next;
}

ParityField ap_matrix_step(const ParityField& state, const ApStepMatrices& mats,
                           const ApForcing& forcing) {
  ParityField next = state;
  next.r = mats.B1 * state.r - mats.A1 * state.j + forcing.f;
  next.j = mats.A2 * state.j - mats.B2 * state.r + forcing.g;
  return next;
}

std::vector<ParityField> ap_evolve(const ParityField& initial, const GridConfig& cfg,
                                   const QuadratureRule& rule, OpCounter* counter) {
  require_ap(cfg);
  require_unit_phi(cfg);
  require_shape(initial, cfg);
  enforce_config(cfg);
  std::vector<ParityField> levels;
  levels.reserve(static_cast<std::size_t>(cfg.Nt) + 1);
  levels.push_back(initial);
  for (int n = 0; n < cfg.Nt; ++n) {
    ParityField star = relaxation_step(levels.back(), cfg, rule, counter);
    ParityField next = transport_step(star, cfg, counter);
    if (!all_finite(next)) {
      throw DivergenceError(static_cast<std::size_t>(n + 1),
                            "AP evolution diverged at step " + std::to_string(n + 1));
    }
    levels.push_back(std::move(next));
  }
  return levels;
}

void write_ap_trajectory_csv(std::ostream& os, const std::vector<ParityField>& trajectory) {
  const auto old_precision = os.precision(17);
  os << "step,k,m,r,j\n";
  for (std::size_t n = 0; n < trajectory.size(); ++n) {
    const ParityField& f = trajectory[n];
    for (int k = 0; k < f.N; ++k) {
      for (int m = 0; m < f.Nx; ++m) {
        os << n << ',' << k + 1 << ',' << m + 1 << ',' << f.r[f.index(k, m)] << ','
           << f.j[f.index(k, m)] << '\n';
      }
    }
  }
  os.precision(old_precision);
}

}  // namespace aplab
