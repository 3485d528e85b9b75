#include "aplab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/SparseLU>
#include <boost/math/distributions/students_t.hpp>
#include <lapacke.h>

#include "aplab/errors.hpp"
#include "aplab/fourier.hpp"

namespace aplab {

std::string to_string(SpectralMethod m) {
  return m == SpectralMethod::dense ? "dense" : "iterative";
}

Eigen::VectorXd singular_values(const Eigen::MatrixXd& m) {
  const lapack_int rows = static_cast<lapack_int>(m.rows());
  const lapack_int cols = static_cast<lapack_int>(m.cols());
  Eigen::VectorXd s(std::min(rows, cols));
  if (s.size() == 0) return s;
  Eigen::MatrixXd a = m;
  const lapack_int info = LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'N', rows, cols, a.data(), rows,
                                         s.data(), nullptr, 1, nullptr, 1);
  if (info != 0) throw ConvergenceError(static_cast<int>(info), "dgesdd failed");
  return s;
}

Eigen::VectorXd singular_values(const Eigen::MatrixXcd& m) {
  const lapack_int rows = static_cast<lapack_int>(m.rows());
  const lapack_int cols = static_cast<lapack_int>(m.cols());
  Eigen::VectorXd s(std::min(rows, cols));
  if (s.size() == 0) return s;
  Eigen::MatrixXcd a = m;
  const lapack_int info =
      LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', rows, cols,
                     reinterpret_cast<lapack_complex_double*>(a.data()), rows, s.data(), nullptr,
                     1, nullptr, 1);
  if (info != 0) throw ConvergenceError(static_cast<int>(info), "zgesdd failed");
  return s;
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void mark_singular(SpectrumReport& r, Eigen::Index order) {
  const double floor = static_cast<double>(order) * kEps * r.sigma_max;
  if (r.sigma_max == 0.0 || r.sigma_min <= floor) {
    r.singular = true;
    r.sigma_min = 0.0;
    r.kappa = std::numeric_limits<double>::infinity();
  } else {
    r.kappa = r.sigma_max / r.sigma_min;
  }
}

template <typename Scalar>
SpectrumReport dense_extremes(const SparseMatrix<Scalar>& m) {
  using Dense = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::VectorXd s = singular_values(Dense(m));
  SpectrumReport r;
  r.method = SpectralMethod::dense;
  r.sigma_max = s(0);
  r.sigma_min = s(s.size() - 1);
  r.residual = static_cast<double>(std::max(m.rows(), m.cols())) * kEps;
  mark_singular(r, std::max(m.rows(), m.cols()));
  return r;
}

template <typename Scalar>
SpectrumReport iterative_extremes(const SparseMatrix<Scalar>& m, const SpectralOptions& opt) {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using ColMajor = Eigen::SparseMatrix<Scalar, Eigen::ColMajor>;
  if (m.rows() != m.cols()) throw std::invalid_argument("iterative extremes need a square matrix");
  const Eigen::Index n = m.rows();
  const SparseMatrix<Scalar> mh = m.adjoint();
  const Vec start = Vec::Ones(n) / std::sqrt(static_cast<double>(n));
  SpectrumReport r;
  r.method = SpectralMethod::iterative;

  // Power iteration on M^H M. The residual ||M^H M x - s^2 x|| / (s sigma_max)
  // is the backward error of the singular pair.
  Vec x = start;
  double lam = 0.0;
  double res_max = 0.0;
  int it = 0;
  bool done = false;
  for (; it < opt.max_iterations && !done; ++it) {
    const Vec gram = mh * (m * x);
    const double next = std::real(x.dot(gram));
    if (next <= 0.0) {
      lam = 0.0;
      done = true;
      break;
    }
    res_max = (gram - next * x).norm() / next;
    done = it > 0 && std::abs(next - lam) <= opt.tolerance * next && res_max <= opt.residual_tolerance;
    lam = next;
    if (!done) x = gram / gram.norm();
  }
  if (!done) throw ConvergenceError(it, "power iteration did not converge");
  r.sigma_max = std::sqrt(lam);
  r.iterations = it;
  r.residual = res_max;
  if (lam == 0.0) {
    mark_singular(r, n);
    return r;
  }

  ColMajor a = m;
  ColMajor ah = mh;
  a.makeCompressed();
  ah.makeCompressed();
  Eigen::SparseLU<ColMajor> lu;
  Eigen::SparseLU<ColMajor> luh;
  lu.compute(a);
  luh.compute(ah);
  if (lu.info() != Eigen::Success || luh.info() != Eigen::Success) {
    r.sigma_min = 0.0;
    mark_singular(r, n);
    return r;
  }

  // Inverse iteration: power iteration on (M^H M)^{-1}.
  x = start;
  double mu = 0.0;
  double res_min = 0.0;
  int jt = 0;
  done = false;
  for (; jt < opt.max_iterations && !done; ++jt) {
    const Vec z = lu.solve(Vec(luh.solve(x)));
    const double zn = z.norm();
    if (!std::isfinite(zn)) {
      mu = std::numeric_limits<double>::infinity();
      done = true;
      break;
    }
    const double next = std::real(x.dot(z));
    const double s2 = 1.0 / next;
    res_min = (mh * (m * x) - s2 * x).norm() / (std::sqrt(s2) * r.sigma_max);
    done = jt > 0 && std::abs(next - mu) <= opt.tolerance * next && res_min <= opt.residual_tolerance;
    mu = next;
    if (!done) x = z / zn;
  }
  if (!done) throw ConvergenceError(jt, "inverse iteration did not converge");
  r.iterations += jt;
  r.sigma_min = std::isfinite(mu) && mu > 0.0 ? 1.0 / std::sqrt(mu) : 0.0;
  r.residual = std::max(res_max, res_min);
  mark_singular(r, n);
  return r;
}

template <typename Scalar>
SpectrumReport extremes(const SparseMatrix<Scalar>& m, const SpectralOptions& opt) {
  if (m.rows() == 0 || m.cols() == 0) throw std::invalid_argument("singular_extremes: empty matrix");
  SpectrumReport r = std::max(m.rows(), m.cols()) <= opt.dense_limit ? dense_extremes(m)
                                                                      : iterative_extremes(m, opt);
  r.sparsity = sparsity(m);
  return r;
}

}  // namespace

SpectrumReport singular_extremes(const RealSparse& m, SpectralOptions options) {
  return extremes(m, options);
}

SpectrumReport singular_extremes(const ComplexSparse& m, SpectralOptions options) {
  return extremes(m, options);
}

double norm2(const RealSparse& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  return singular_values(Eigen::MatrixXd(m))(0);
}

double norm2(const ComplexSparse& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  return singular_values(Eigen::MatrixXcd(m))(0);
}

double alpha_bound(double epsilon, double tau, int N) {
  if (!(tau > 0.0) || !(epsilon >= 0.0) || N < 1) {
    throw std::invalid_argument("alpha_bound: need tau > 0, epsilon >= 0, N >= 1");
  }
  const double e2 = epsilon * epsilon;
  const double d = e2 + tau;
  const double rn = std::sqrt(static_cast<double>(N));
  const double t1 = e2 / d * (rn * tau + rn + tau + 1.0 / tau);
  const double t2 = e2 * (1.0 - e2) / (d * d) * (1.0 + tau);
  const double t3 = e2 * (e2 + 2.0 * tau + tau * tau) / (tau * d * d) * rn * (1.0 + 1.0 / tau);
  return t1 + t2 + t3;
}

PerturbationReport perturbation_check(const GridConfig& cfg, const QuadratureRule& rule,
                                      std::span<const double> xi_samples) {
  constexpr double slack = 1e-10;
  PerturbationReport out;
  out.alpha = alpha_bound(cfg.epsilon, cfg.tau, cfg.N);
  for (double xi : xi_samples) {
    const FourierMatrix fm = assemble_fourier_matrix(cfg, rule, xi);
    const Eigen::VectorXd se = singular_values(Eigen::MatrixXcd(fm.Ltilde));
    const Eigen::VectorXd s0 = singular_values(Eigen::MatrixXcd(fm.L0));
    PerturbationSample p;
    p.xi = xi;
    p.norm_E = norm2(fm.E);
    p.sigma_max_eps = se(0);
    p.sigma_min_eps = se(se.size() - 1);
    p.sigma_max_0 = s0(0);
    p.sigma_min_0 = s0(s0.size() - 1);
    p.weyl_upper = p.sigma_max_eps <= p.sigma_max_0 + p.norm_E + slack;
    p.weyl_lower = p.sigma_min_eps >= p.sigma_min_0 - p.norm_E - slack;
    out.weyl_holds = out.weyl_holds && p.weyl_upper && p.weyl_lower;
    out.max_norm_E = std::max(out.max_norm_E, p.norm_E);
    if (out.alpha > 0.0) out.max_ratio = std::max(out.max_ratio, p.norm_E / out.alpha);
    out.samples.push_back(p);
  }
  return out;
}

ScalingFit scaling_regression(std::span<const std::pair<double, double>> points) {
  if (points.size() < 4) throw std::invalid_argument("scaling_regression: need at least 4 points");
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const auto& [x, y] : points) {
    if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
      throw std::invalid_argument("scaling_regression: coordinates must be positive and finite");
    }
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  if (hi < 4.0 * lo) throw std::invalid_argument("scaling_regression: x must span a factor of 4");

  const auto n = static_cast<double>(points.size());
  double mx = 0.0;
  double my = 0.0;
  for (const auto& [x, y] : points) {
    mx += std::log(x);
    my += std::log(y);
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& [x, y] : points) {
    const double dx = std::log(x) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(y) - my);
  }
  ScalingFit fit;
  fit.points = points.size();
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double sse = 0.0;
  for (const auto& [x, y] : points) {
    const double e = std::log(y) - (fit.intercept + fit.slope * std::log(x));
    sse += e * e;
  }
  fit.residual_rms = std::sqrt(sse / n);
  const double dof = n - 2.0;
  const double se = std::sqrt(sse / dof / sxx);
  const boost::math::students_t dist(dof);
  fit.slope_halfwidth = boost::math::quantile(boost::math::complement(dist, 0.025)) * se;
  return fit;
}

}  // namespace aplab
