#include "aplab/fourier.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace aplab {

FourierSymbols fourier_symbols(const GridConfig& cfg, double v, double xi) {
  if (!(cfg.epsilon >= 0.0)) throw std::invalid_argument("fourier_symbols: epsilon must be >= 0");
  const double lam = cfg.lambda();
  const double tau = cfg.tau;
  const double e2 = cfg.epsilon * cfg.epsilon;
  const double a = (1.0 - lam * v) + lam * v * std::cos(xi * cfg.h);
  const double s = lam * v * std::sin(xi * cfg.h);
  const Complex is{0.0, s};
  const Complex is2 = is * is;

  // 1/(1+gamma) = eps^2/(eps^2+tau), gamma/(1+gamma) = tau/(eps^2+tau)
  const double denom = e2 + tau;
  const double keep = e2 / denom;
  const double relax = tau / denom;
  const double cross = (1.0 - e2) / (denom * denom);

  FourierSymbols out;
  out.c1 = -keep * a - e2 * cross * is2;
  out.c2 = keep * is;
  out.d1 = Complex(-keep * a, 0.0);
  out.d2 = e2 * cross * a * is + keep * is;
  out.gamma_c1 = -relax * a - tau * cross * is2;
  out.gamma_d2 = tau * cross * a * is + relax * is;
  out.gamma0_c1_0 = -a - is2 / tau;
  out.gamma0_d2_0 = a * is / tau + is;
  if (e2 == 0.0) {
    out.gamma_c1 = out.gamma0_c1_0;
    out.gamma_d2 = out.gamma0_d2_0;
  }
  return out;
}

namespace {

struct Layout {
  Eigen::Index N, Nt;
  Eigen::Index r(Eigen::Index k, Eigen::Index n) const { return k * Nt + n; }
  Eigen::Index j(Eigen::Index k, Eigen::Index n) const { return N * Nt + k * Nt + n; }
  Eigen::Index order() const { return 2 * N * Nt; }
};

ComplexSparse build(const Layout& lay, const QuadratureRule& rule, double tau,
                    const std::vector<FourierSymbols>& sym, bool limit) {
  std::vector<Eigen::Triplet<Complex>> t;
  const Eigen::Index N = lay.N;
  t.reserve(static_cast<std::size_t>(lay.order() + lay.Nt * (2 * N * N + 4 * N)));
  for (Eigen::Index i = 0; i < lay.order(); ++i) t.emplace_back(i, i, Complex(1.0, 0.0));
  for (Eigen::Index i = 0; i < N; ++i) {
    const FourierSymbols& s = sym[static_cast<std::size_t>(i)];
    const Complex gc1 = limit ? s.gamma0_c1_0 : s.gamma_c1;
    const Complex gd2 = limit ? s.gamma0_d2_0 : s.gamma_d2;
    for (Eigen::Index n = 1; n < lay.Nt; ++n) {
      if (!limit) {
        t.emplace_back(lay.r(i, n), lay.r(i, n - 1), s.c1);
        t.emplace_back(lay.r(i, n), lay.j(i, n - 1), s.c2 / tau);
        t.emplace_back(lay.j(i, n), lay.r(i, n - 1), tau * s.d2);
        t.emplace_back(lay.j(i, n), lay.j(i, n - 1), s.d1);
      }
      for (Eigen::Index k = 0; k < N; ++k) {
        const double w = rule.weights[static_cast<std::size_t>(k)];
        t.emplace_back(lay.r(i, n), lay.r(k, n - 1), gc1 * w);
        t.emplace_back(lay.j(i, n), lay.r(k, n - 1), tau * gd2 * w);
      }
    }
  }
  ComplexSparse m(lay.order(), lay.order());
  m.setFromTriplets(t.begin(), t.end());
  finalize(m);
  return m;
}

}  // namespace

FourierMatrix assemble_fourier_matrix(const GridConfig& cfg, const QuadratureRule& rule,
                                      double xi, bool at_epsilon_zero) {
  if (rule.size() != static_cast<std::size_t>(cfg.N)) {
    throw std::invalid_argument("assemble_fourier_matrix: rule size differs from N");
  }
  if (cfg.Nt < 1) throw std::invalid_argument("assemble_fourier_matrix: Nt must be >= 1");
  FourierMatrix out;
  out.xi = xi;
  out.symbols.reserve(rule.size());
  for (double v : rule.nodes) out.symbols.push_back(fourier_symbols(cfg, v, xi));

  const Layout lay{cfg.N, cfg.Nt};
  out.L0 = build(lay, rule, cfg.tau, out.symbols, true);
  ComplexSparse at_eps = build(lay, rule, cfg.tau, out.symbols, false);
  out.E = at_eps - out.L0;
  finalize(out.E);
  out.Ltilde = at_epsilon_zero ? out.L0 : std::move(at_eps);
  return out;
}

std::vector<double> frequency_samples(double h, int count) {
  if (count < 2 || !(h > 0.0)) throw std::invalid_argument("frequency_samples: need h > 0 and count >= 2");
  std::vector<double> xi(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    xi[static_cast<std::size_t>(i)] = std::numbers::pi * i / (count - 1) / h;
  }
  return xi;
}

Eigen::MatrixXd weight_matrix(const QuadratureRule& rule) {
  const auto n = static_cast<Eigen::Index>(rule.size());
  Eigen::MatrixXd W(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < n; ++k) W(i, k) = rule.weights[static_cast<std::size_t>(k)];
  }
  return W;
}

}  // namespace aplab
