#include "aplab/transport_model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "aplab/errors.hpp"

namespace aplab {

std::string to_string(Scheme s) { return s == Scheme::ap ? "ap" : "explicit"; }

std::string to_string(InitialProfile p) {
  switch (p) {
    case InitialProfile::gaussian: return "gaussian";
    case InitialProfile::constant: return "constant";
    case InitialProfile::step: return "step";
  }
  return "gaussian";
}

Scheme parse_scheme(const std::string& s) {
  if (s == "ap" || s == "AP") return Scheme::ap;
  if (s == "explicit" || s == "EXPLICIT") return Scheme::explicit_upwind;
  throw std::invalid_argument("unknown scheme '" + s + "' (expected ap or explicit)");
}

InitialProfile parse_initial_profile(const std::string& s) {
  if (s == "gaussian") return InitialProfile::gaussian;
  if (s == "constant") return InitialProfile::constant;
  if (s == "step") return InitialProfile::step;
  throw std::invalid_argument("unknown init '" + s +
                              "' (expected gaussian, constant or step)");
}

namespace {

void require_positive_finite(double value, const char* name) {
  if (!std::isfinite(value) || value <= 0.0) {
    std::ostringstream msg;
    msg << name << " must be finite and positive, got " << value;
    throw std::invalid_argument(msg.str());
  }
}

std::string describe(const char* inequality, double lhs, double rhs) {
  std::ostringstream msg;
  msg.precision(6);
  msg << inequality << " violated: " << lhs << " > " << rhs;
  return msg.str();
}

}  // namespace

ValidationReport validate_config(const GridConfig& cfg) {
  require_positive_finite(cfg.tau, "tau");
  require_positive_finite(cfg.h, "h");
  require_positive_finite(cfg.epsilon, "epsilon");
  if (cfg.N < 1 || cfg.Nx < 1 || cfg.Nt < 0) {
    throw std::invalid_argument("grid sizes must satisfy N >= 1, Nx >= 1, Nt >= 0");
  }

  ValidationReport report;
  const double phi_max = 1.0 / (cfg.epsilon * cfg.epsilon);
  if (!(cfg.phi >= 0.0) || cfg.phi > phi_max) {
    report.ok = false;
    report.lhs = cfg.phi;
    report.rhs = phi_max;
    report.violated = describe("0 <= phi <= 1/eps^2", cfg.phi, phi_max);
    return report;
  }

  if (cfg.scheme == Scheme::ap) {
    const double lhs = cfg.tau / (cfg.h * cfg.h);
    const double rhs = 1.0 / (1.0 + cfg.h);
    if (lhs > rhs) {
      report = {false, describe("tau/h^2 <= 1/(1+h)", lhs, rhs), lhs, rhs};
    }
  } else {
    const double rhs = cfg.h * cfg.epsilon * cfg.epsilon / (cfg.epsilon + cfg.h);
    if (cfg.tau > rhs) {
      report = {false, describe("tau <= h eps^2/(eps+h)", cfg.tau, rhs), cfg.tau, rhs};
    }
  }
  return report;
}

void enforce_config(const GridConfig& cfg) {
  const auto report = validate_config(cfg);
  if (report.ok) return;
  const bool phi_failure = report.violated.rfind("0 <= phi", 0) == 0;
  if (phi_failure || !cfg.allow_unstable) throw ValidationError(report.violated);
}

double max_stable_tau(const GridConfig& cfg) {
  if (cfg.scheme == Scheme::ap) return cfg.h * cfg.h / (1.0 + cfg.h);
  return cfg.h * cfg.epsilon * cfg.epsilon / (cfg.epsilon + cfg.h);
}

void require_unit_phi(const GridConfig& cfg) {
  if (cfg.phi != 1.0) {
    throw UnsupportedConfiguration("only phi = 1 is implemented, got phi = " +
                                   std::to_string(cfg.phi));
  }
}

QuadratureRule velocity_rule(const GridConfig& cfg) {
  if (cfg.scheme == Scheme::ap) return gauss_rule(static_cast<std::size_t>(cfg.N), 0.0, 1.0);
  return gauss_rule(2 * static_cast<std::size_t>(cfg.N), -1.0, 1.0);
}

std::pair<double, double> parity_transform(double a, double b, double epsilon,
                                           ParityDirection direction) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("parity_transform: epsilon must be > 0");
  if (direction == ParityDirection::forward) {
    return {0.5 * (a + b), (a - b) / (2.0 * epsilon)};
  }
  return {a + epsilon * b, a - epsilon * b};
}

ParityField::ParityField(int n_velocities, int n_space)
    : N(n_velocities),
      Nx(n_space),
      r(Eigen::VectorXd::Zero(n_velocities * n_space)),
      j(Eigen::VectorXd::Zero(n_velocities * n_space)),
      r_left(Eigen::VectorXd::Zero(n_velocities)),
      r_right(Eigen::VectorXd::Zero(n_velocities)),
      j_left(Eigen::VectorXd::Zero(n_velocities)),
      j_right(Eigen::VectorXd::Zero(n_velocities)) {}

double ParityField::r_at(int k, int m) const {
  if (m == 0) return r_left[k];
  if (m == Nx + 1) return r_right[k];
  return r[index(k, m - 1)];
}

double ParityField::j_at(int k, int m) const {
  if (m == 0) return j_left[k];
  if (m == Nx + 1) return j_right[k];
  return j[index(k, m - 1)];
}

void ParityField::check_shape() const {
  const Eigen::Index n = static_cast<Eigen::Index>(N) * Nx;
  if (N < 1 || Nx < 1 || r.size() != n || j.size() != n || r_left.size() != N ||
      r_right.size() != N || j_left.size() != N || j_right.size() != N) {
    throw std::invalid_argument("ParityField: inconsistent sizes");
  }
}

KineticField::KineticField(int n_velocities, int n_space)
    : V(n_velocities),
      Nx(n_space),
      f(Eigen::VectorXd::Zero(n_velocities * n_space)),
      f_left(Eigen::VectorXd::Zero(n_velocities)),
      f_right(Eigen::VectorXd::Zero(n_velocities)) {}

double KineticField::at(int k, int m) const {
  if (m == 0) return f_left[k];
  if (m == Nx + 1) return f_right[k];
  return f[index(m - 1, k)];
}

void KineticField::check_shape() const {
  if (V < 1 || Nx < 1 || f.size() != static_cast<Eigen::Index>(V) * Nx ||
      f_left.size() != V || f_right.size() != V) {
    throw std::invalid_argument("KineticField: inconsistent sizes");
  }
}

Eigen::VectorXd density(const ParityField& field, const QuadratureRule& rule) {
  field.check_shape();
  if (rule.size() != static_cast<std::size_t>(field.N)) {
    throw std::invalid_argument("density: rule size does not match the field");
  }
  Eigen::VectorXd rho = Eigen::VectorXd::Zero(field.Nx);
  for (int k = 0; k < field.N; ++k) {
    rho += rule.weights[k] * field.r.segment(static_cast<Eigen::Index>(k) * field.Nx, field.Nx);
  }
  return rho;
}

Eigen::VectorXd density(const KineticField& field, const QuadratureRule& rule) {
  field.check_shape();
  if (rule.size() != static_cast<std::size_t>(field.V)) {
    throw std::invalid_argument("density: rule size does not match the field");
  }
  Eigen::VectorXd rho(field.Nx);
  for (int m = 0; m < field.Nx; ++m) {
    double s = 0.0;
    for (int k = 0; k < field.V; ++k) s += rule.weights[k] * field.f[field.index(m, k)];
    rho[m] = 0.5 * s;
  }
  return rho;
}

double initial_profile(const GridConfig& cfg, double x) {
  const double xc = 0.5 * (cfg.x_left + cfg.x_right);
  switch (cfg.init) {
    case InitialProfile::gaussian: return std::exp(-100.0 * (x - xc) * (x - xc));
    case InitialProfile::constant: return 1.0;
    case InitialProfile::step: return x < xc ? 1.0 : 0.0;
  }
  return 0.0;
}

ParityField initial_parity_field(const GridConfig& cfg) {
  ParityField field(cfg.N, cfg.Nx);
  for (int k = 0; k < cfg.N; ++k) {
    for (int m = 0; m < cfg.Nx; ++m) field.r[field.index(k, m)] = initial_profile(cfg, cfg.x(m + 1));
  }
  field.r_left.setConstant(cfg.bc_left);
  field.r_right.setConstant(cfg.bc_right);
  return field;
}

KineticField initial_kinetic_field(const GridConfig& cfg) {
  KineticField field(2 * cfg.N, cfg.Nx);
  for (int m = 0; m < cfg.Nx; ++m) {
    const double value = initial_profile(cfg, cfg.x(m + 1));
    for (int k = 0; k < field.V; ++k) field.f[field.index(m, k)] = value;
  }
  field.f_left.setConstant(cfg.bc_left);
  field.f_right.setConstant(cfg.bc_right);
  return field;
}

}  // namespace aplab
