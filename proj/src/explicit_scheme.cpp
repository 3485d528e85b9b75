#include "aplab/explicit_scheme.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "aplab/errors.hpp"
#include "aplab/spectral.hpp"

namespace aplab {
namespace {

void require_explicit(const GridConfig& cfg, const QuadratureRule& rule) {
  if (cfg.scheme != Scheme::explicit_upwind) {
    throw std::invalid_argument("configuration is not for the explicit scheme");
  }
  if (rule.size() != 2 * static_cast<std::size_t>(cfg.N) || rule.a != -1.0 || rule.b != 1.0) {
    throw std::invalid_argument("explicit scheme needs the 2N-point rule on [-1, 1]");
  }
}

void require_shape(const KineticField& f, const GridConfig& cfg) {
  f.check_shape();
  if (f.V != 2 * cfg.N || f.Nx != cfg.Nx) {
    throw std::invalid_argument("KineticField shape does not match the configuration");
  }
}

// Gershgorin-type bound sqrt(||M||_1 ||M||_inf) >= ||M||_2.
double gershgorin_bound(const RealSparse& m) {
  Eigen::VectorXd col = Eigen::VectorXd::Zero(m.cols());
  double row_max = 0.0;
  for (Eigen::Index i = 0; i < m.outerSize(); ++i) {
    double row = 0.0;
    for (RealSparse::InnerIterator it(m, i); it; ++it) {
      row += std::abs(it.value());
      col[it.col()] += std::abs(it.value());
    }
    row_max = std::max(row_max, row);
  }
  return std::sqrt(row_max * col.maxCoeff());
}

constexpr Eigen::Index kDenseCheckLimit = 2048;

}  // namespace

ExplicitStepMatrix explicit_matrix(const GridConfig& cfg, const QuadratureRule& rule) {
  require_explicit(cfg, rule);
  enforce_config(cfg);
  const int V = 2 * cfg.N;
  const double courant = cfg.lambda() / cfg.epsilon;

  ExplicitStepMatrix out;
  out.alpha = cfg.tau / (cfg.epsilon * cfg.epsilon);
  out.c.resize(V);
  out.v_plus.resize(V);
  out.v_minus.resize(V);
  out.W.resize(V, V);
  for (int k = 0; k < V; ++k) {
    const double v = rule.nodes[k];
    out.v_plus[k] = std::max(v, 0.0);
    out.v_minus[k] = std::min(v, 0.0);
    out.c[k] = 1.0 - courant * (out.v_plus[k] - out.v_minus[k]) - out.alpha;
    for (int kk = 0; kk < V; ++kk) out.W(k, kk) = rule.weights[kk];
  }

  const Eigen::Index n = static_cast<Eigen::Index>(V) * cfg.Nx;
  std::vector<Eigen::Triplet<double>> tb, tb1, tb2;
  const double collision = cfg.tau / (2.0 * cfg.epsilon * cfg.epsilon);
  for (int m = 0; m < cfg.Nx; ++m) {
    const Eigen::Index row0 = static_cast<Eigen::Index>(m) * V;
    for (int k = 0; k < V; ++k) {
      for (int kk = 0; kk < V; ++kk) {
        double b = collision * out.W(k, kk);
        if (kk == k) {
          b += out.c[k];
          tb1.emplace_back(row0 + k, row0 + k, out.c[k]);
        }
        tb.emplace_back(row0 + k, row0 + kk, b);
        tb2.emplace_back(row0 + k, row0 + kk, 0.5 * out.W(k, kk));
      }
      if (m > 0 && out.v_plus[k] != 0.0) {
        tb.emplace_back(row0 + k, row0 - V + k, courant * out.v_plus[k]);
        tb1.emplace_back(row0 + k, row0 - V + k, courant * out.v_plus[k]);
      }
      if (m + 1 < cfg.Nx && out.v_minus[k] != 0.0) {
        tb.emplace_back(row0 + k, row0 + V + k, -courant * out.v_minus[k]);
        tb1.emplace_back(row0 + k, row0 + V + k, -courant * out.v_minus[k]);
      }
    }
  }
  out.B = from_triplets(n, n, tb);
  out.B1 = from_triplets(n, n, tb1);
  out.B2 = from_triplets(n, n, tb2);

  if (validate_config(cfg).ok) {
    const double limit = 1.0 - out.alpha + 1e-10;
    double norm_b1 = gershgorin_bound(out.B1);
    if (n <= kDenseCheckLimit) norm_b1 = norm2(out.B1);
    if (norm_b1 > limit) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "explicit_matrix: ||B1|| = " << norm_b1 << " exceeds 1 - tau/eps^2 = "
          << 1.0 - out.alpha;
      throw std::logic_error(msg.str());
    }
  }
  return out;
}

Eigen::VectorXd explicit_boundary_vector(const GridConfig& cfg, const QuadratureRule& rule,
                                         const KineticField& state) {
  require_explicit(cfg, rule);
  require_shape(state, cfg);
  const int V = state.V;
  const double courant = cfg.lambda() / cfg.epsilon;
  Eigen::VectorXd b = Eigen::VectorXd::Zero(state.f.size());
  const int last = cfg.Nx - 1;
  for (int k = 0; k < V; ++k) {
    const double v = rule.nodes[k];
    b[state.index(0, k)] += courant * std::max(v, 0.0) * state.f_left[k];
    b[state.index(last, k)] += -courant * std::min(v, 0.0) * state.f_right[k];
  }
  return b;
}

KineticField explicit_step(const KineticField& f, const GridConfig& cfg,
                           const QuadratureRule& rule, OpCounter* counter) {
  require_explicit(cfg, rule);
  require_shape(f, cfg);
  enforce_config(cfg);
  const int V = f.V;
  const double courant = cfg.lambda() / cfg.epsilon;
  const double alpha = cfg.tau / (cfg.epsilon * cfg.epsilon);
  const double collision = 0.5 * alpha;

  KineticField next = f;
  for (int m = 1; m <= cfg.Nx; ++m) {
    for (int k = 0; k < V; ++k) {
      const double v = rule.nodes[k];
      const double vp = std::max(v, 0.0);
      const double vm = std::min(v, 0.0);
      const double ck = 1.0 - courant * (vp - vm) - alpha;
      double sum = 0.0;
      for (int kk = 0; kk < V; ++kk) sum += rule.weights[kk] * f.at(kk, m);
      next.f[next.index(m - 1, k)] = ck * f.at(k, m) + courant * vp * f.at(k, m - 1) -
                                     courant * vm * f.at(k, m + 1) + collision * sum;
    }
  }
  if (counter) {
    const auto v = static_cast<std::uint64_t>(V);
    counter->ops += v * v * static_cast<std::uint64_t>(cfg.Nx) + 4 * v * cfg.Nx;
  }
  return next;
}

std::vector<KineticField> explicit_evolve(const KineticField& initial, const GridConfig& cfg,
                                          const QuadratureRule& rule, OpCounter* counter) {
  require_explicit(cfg, rule);
  require_shape(initial, cfg);
  enforce_config(cfg);
  std::vector<KineticField> levels;
  levels.reserve(static_cast<std::size_t>(cfg.Nt) + 1);
  levels.push_back(initial);
  for (int n = 0; n < cfg.Nt; ++n) {
    KineticField next = explicit_step(levels.back(), cfg, rule, counter);
    if (!next.f.allFinite()) {
      throw DivergenceError(static_cast<std::size_t>(n + 1),
                            "explicit evolution diverged at step " + std::to_string(n + 1));
    }
    levels.push_back(std::move(next));
  }
  return levels;
}

void write_explicit_trajectory_csv(std::ostream& os,
                                   const std::vector<KineticField>& trajectory) {
  const auto old_precision = os.precision(17);
  os << "step,k,m,f\n";
  for (std::size_t n = 0; n < trajectory.size(); ++n) {
    const KineticField& f = trajectory[n];
    const int half = f.V / 2;
    for (int k = 0; k < f.V; ++k) {
      const int label = k < half ? k - half : k - half + 1;
      for (int m = 0; m < f.Nx; ++m) {
        os << n << ',' << label << ',' << m + 1 << ',' << f.f[f.index(m, k)] << '\n';
      }
    }
  }
  os.precision(old_precision);
}

}  // namespace aplab
