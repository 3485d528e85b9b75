// aplab: command-line front end for the transport laboratory.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "aplab/ap_scheme.hpp"
#include "aplab/complexity.hpp"
#include "aplab/config_io.hpp"
#include "aplab/errors.hpp"
#include "aplab/explicit_scheme.hpp"
#include "aplab/fourier.hpp"
#include "aplab/matrix_market.hpp"
#include "aplab/report_io.hpp"
#include "aplab/spacetime.hpp"
#include "aplab/spectral.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum Exit { ok = 0, usage = 1, validation = 2, numerical = 3, io = 4 };

struct Common {
  std::string config_path;
  std::string output_dir = ".";
  std::vector<std::string> sets;
  std::map<std::string, std::string> keyed;
  bool allow_unstable = false;
};

std::string real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw aplab::IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string data = buf.str();
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return hex.str();
}

void add_common(CLI::App* cmd, Common& c) {
  // -h would clash with the grid spacing key.
  cmd->set_help_flag("--help", "Print this help message and exit");
  cmd->add_option("--config", c.config_path, "JSON config file")->required();
  cmd->add_option("--output-dir", c.output_dir, "Directory for outputs");
  cmd->add_option("--set", c.sets, "Override a config key, key=value (repeatable)");
  cmd->add_flag("--allow-unstable", c.allow_unstable, "Run even when the CFL condition fails");
  for (const auto& key : aplab::config_keys()) {
    cmd->add_option("--" + key, c.keyed[key], "Override config key " + key);
  }
}

struct Resolved {
  aplab::GridConfig cfg;
  json raw;
  std::string input_hash;
};

Resolved resolve(const Common& c, bool enforce = true) {
  const fs::path path(c.config_path);
  Resolved r;
  r.input_hash = sha256_file(path);
  std::ifstream in(path);
  try {
    r.raw = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("cannot parse config " + path.string() + ": " + e.what());
  }
  for (const auto& s : c.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw CLI::ValidationError("--set", "expected key=value, got '" + s + "'");
    aplab::apply_override(r.raw, s.substr(0, eq), s.substr(eq + 1));
  }
  for (const auto& [key, value] : c.keyed) {
    if (!value.empty()) aplab::apply_override(r.raw, key, value);
  }
  r.cfg = aplab::config_from_json(r.raw);
  r.cfg.allow_unstable = c.allow_unstable;
  if (enforce) aplab::enforce_config(r.cfg);
  return r;
}

fs::path prepare_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw aplab::IoError("cannot create output directory " + dir);
  return fs::path(dir);
}

void write_manifest(const fs::path& dir, const std::string& command, const Resolved& r,
                    const Common& c, const json& extra, const std::vector<std::string>& outputs) {
  json m;
  m["tool"] = "aplab";
  m["version"] = APLAB_VERSION;
  m["command"] = command;
  m["config"] = aplab::config_to_json(r.cfg);
  m["allow_unstable"] = r.cfg.allow_unstable;
  m["inputs"] = {{{"path", c.config_path}, {"sha256", r.input_hash}}};
  m["options"] = extra;
  m["outputs"] = outputs;
  aplab::write_file_atomic(dir / "manifest.json", m.dump(2) + "\n");
}

int run_solve(const Common& c, const std::string& trajectory) {
  const Resolved r = resolve(c);
  const fs::path dir = prepare_dir(c.output_dir);
  const aplab::QuadratureRule rule = aplab::velocity_rule(r.cfg);
  std::ostringstream density_csv;
  std::ostringstream traj_csv;
  density_csv << "x,rho\n";
  aplab::OpCounter counter;
  if (r.cfg.scheme == aplab::Scheme::ap) {
    const auto traj = aplab::ap_evolve(aplab::initial_parity_field(r.cfg), r.cfg, rule, &counter);
    const Eigen::VectorXd rho = aplab::density(traj.back(), rule);
    for (int m = 0; m < r.cfg.Nx; ++m) density_csv << real(r.cfg.x(m + 1)) << ',' << real(rho(m)) << '\n';
    if (!trajectory.empty()) aplab::write_ap_trajectory_csv(traj_csv, traj);
  } else {
    const auto traj = aplab::explicit_evolve(aplab::initial_kinetic_field(r.cfg), r.cfg, rule, &counter);
    const Eigen::VectorXd rho = aplab::density(traj.back(), rule);
    for (int m = 0; m < r.cfg.Nx; ++m) density_csv << real(r.cfg.x(m + 1)) << ',' << real(rho(m)) << '\n';
    if (!trajectory.empty()) aplab::write_explicit_trajectory_csv(traj_csv, traj);
  }
  std::vector<std::string> outputs{"density.csv"};
  aplab::write_file_atomic(dir / "density.csv", density_csv.str());
  if (!trajectory.empty()) {
    aplab::write_file_atomic(dir / trajectory, traj_csv.str());
    outputs.push_back(trajectory);
  }
  write_manifest(dir, "solve", r, c,
                 {{"trajectory", trajectory}, {"stepper_ops", counter.ops},
                  {"classical_cost", aplab::classical_cost(r.cfg)}},
                 outputs);
  std::cout << "solve: " << r.cfg.Nt << " steps, density written to " << (dir / "density.csv").string() << '\n';
  return ok;
}

aplab::BlockSystem build_system(const aplab::GridConfig& cfg, bool rescaled) {
  const aplab::QuadratureRule rule = aplab::velocity_rule(cfg);
  if (cfg.scheme == aplab::Scheme::ap) {
    return aplab::assemble_ap_system(cfg, rule, rescaled, aplab::initial_parity_field(cfg));
  }
  return aplab::assemble_explicit_system(cfg, rule, aplab::initial_kinetic_field(cfg));
}

int run_assemble(const Common& c, bool no_rescale) {
  const Resolved r = resolve(c);
  const fs::path dir = prepare_dir(c.output_dir);
  const aplab::BlockSystem sys = build_system(r.cfg, !no_rescale);
  std::ostringstream L, F;
  aplab::write_matrix_market(L, sys.L);
  aplab::write_matrix_market(F, sys.F);
  aplab::write_file_atomic(dir / "L.mtx", L.str());
  aplab::write_file_atomic(dir / "F.mtx", F.str());
  json side;
  side["config"] = aplab::config_to_json(r.cfg);
  side["scheme"] = aplab::to_string(sys.scheme);
  side["rescaled"] = sys.rescaled;
  side["order"] = sys.order();
  side["nonzeros"] = sys.L.nonZeros();
  side["sparsity"] = aplab::sparsity(sys.L);
  side["unknowns"] = sys.scheme == aplab::Scheme::ap
                         ? "[r^1..r^Nt; j^1..j^Nt], each level velocity-major k*Nx+m"
                         : "[f^1..f^Nt], each level space-major m*2N+k";
  aplab::write_file_atomic(dir / "system.json", side.dump(2) + "\n");
  write_manifest(dir, "assemble", r, c, {{"rescaled", sys.rescaled}}, {"L.mtx", "F.mtx", "system.json"});
  std::cout << "assemble: order " << sys.order() << ", " << sys.L.nonZeros() << " nonzeros\n";
  return ok;
}

int run_spectrum(const Common& c, bool no_rescale, double delta) {
  const Resolved r = resolve(c);
  const fs::path dir = prepare_dir(c.output_dir);
  aplab::SweepOptions opt;
  opt.delta = delta;
  opt.rescaled = !no_rescale;
  const aplab::ComplexityRow row = aplab::complexity_row(r.cfg, opt);
  aplab::emit_report({row}, dir / "spectrum.csv");
  write_manifest(dir, "spectrum", r, c, {{"delta", delta}, {"rescaled", opt.rescaled}}, {"spectrum.csv"});
  std::cout << aplab::format_row(row) << '\n';
  return ok;
}

int run_fourier(const Common& c, int samples) {
  Resolved r = resolve(c);
  if (r.cfg.scheme != aplab::Scheme::ap) throw std::invalid_argument("fourier analysis applies to the AP scheme only");
  const fs::path dir = prepare_dir(c.output_dir);
  const aplab::QuadratureRule rule = aplab::velocity_rule(r.cfg);
  const std::vector<double> xi = aplab::frequency_samples(r.cfg.h, samples);

  std::ostringstream sym;
  sym << "xi,xi_h,k,v,c1_re,c1_im,c2_re,c2_im,d1_re,d1_im,d2_re,d2_im,"
         "gamma_c1_re,gamma_c1_im,gamma_d2_re,gamma_d2_im,gamma0_c1_0_re,gamma0_c1_0_im,"
         "gamma0_d2_0_re,gamma0_d2_0_im\n";
  for (double x : xi) {
    for (std::size_t k = 0; k < rule.size(); ++k) {
      const aplab::FourierSymbols s = aplab::fourier_symbols(r.cfg, rule.nodes[k], x);
      sym << real(x) << ',' << real(x * r.cfg.h) << ',' << k << ',' << real(rule.nodes[k]);
      for (const auto& z : {s.c1, s.c2, s.d1, s.d2, s.gamma_c1, s.gamma_d2, s.gamma0_c1_0, s.gamma0_d2_0}) {
        sym << ',' << real(z.real()) << ',' << real(z.imag());
      }
      sym << '\n';
    }
  }
  const aplab::PerturbationReport rep = aplab::perturbation_check(r.cfg, rule, xi);
  std::ostringstream norms;
  norms << "xi,xi_h,norm_E,alpha,sigma_max_eps,sigma_min_eps,sigma_max_0,sigma_min_0,weyl_upper,weyl_lower\n";
  for (const auto& p : rep.samples) {
    norms << real(p.xi) << ',' << real(p.xi * r.cfg.h) << ',' << real(p.norm_E) << ',' << real(rep.alpha)
          << ',' << real(p.sigma_max_eps) << ',' << real(p.sigma_min_eps) << ',' << real(p.sigma_max_0)
          << ',' << real(p.sigma_min_0) << ',' << (p.weyl_upper ? 1 : 0) << ',' << (p.weyl_lower ? 1 : 0)
          << '\n';
  }
  aplab::write_file_atomic(dir / "fourier_symbols.csv", sym.str());
  aplab::write_file_atomic(dir / "fourier_norms.csv", norms.str());
  write_manifest(dir, "fourier", r, c, {{"samples", samples}}, {"fourier_symbols.csv", "fourier_norms.csv"});
  std::cout << "fourier: max ||E|| = " << real(rep.max_norm_E) << ", alpha = " << real(rep.alpha)
            << ", weyl " << (rep.weyl_holds ? "holds" : "FAILS") << '\n';
  return ok;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw CLI::ValidationError("--epsilons", "bad number '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw CLI::ValidationError("--epsilons", "empty list");
  return out;
}

int run_sweep(const Common& c, const std::string& epsilons, const std::string& mode, double delta,
              double T, bool no_rescale, bool no_spectrum) {
  const std::vector<double> eps = parse_list(epsilons);
  const aplab::SweepMode sm = aplab::parse_sweep_mode(mode);
  // Per-row epsilons and grids are validated inside the sweep.
  const Resolved r = resolve(c, false);
  const fs::path dir = prepare_dir(c.output_dir);
  aplab::SweepOptions opt;
  opt.delta = delta;
  opt.final_time = T;
  opt.rescaled = !no_rescale;
  opt.compute_spectrum = !no_spectrum;
  std::cout << aplab::report_header() << '\n';
  opt.on_row = [](const aplab::ComplexityRow& row) { std::cout << aplab::format_row(row) << std::endl; };
  const auto rows = aplab::sweep_epsilon(r.cfg, eps, sm, opt);
  aplab::emit_report(rows, dir / "sweep.csv");

  std::ostringstream closed;
  closed << "# constants 1, log base 2\n";
  closed << "epsilon,h,tau,Nx,Nt,composed_classical,closed_form_classical,closed_form_quantum\n";
  for (const auto& row : rows) {
    const auto cf = row.scheme == aplab::Scheme::explicit_upwind && row.epsilon > 0.0
                        ? aplab::explicit_closed_form(row.N, row.epsilon, delta)
                        : aplab::ClosedFormCost{std::nan(""), std::nan("")};
    closed << real(row.epsilon) << ',' << real(row.h) << ',' << real(row.tau) << ',' << row.Nx << ','
           << row.Nt << ',' << row.classical_cost << ',' << real(cf.classical) << ',' << real(cf.quantum) << '\n';
  }
  aplab::write_file_atomic(dir / "sweep_costs.csv", closed.str());
  write_manifest(dir, "sweep", r, c,
                 {{"epsilons", eps}, {"mode", aplab::to_string(sm)}, {"delta", delta}, {"T", T},
                  {"rescaled", opt.rescaled}, {"spectrum", opt.compute_spectrum},
                  {"cost_units", "big-O constants 1, log base 2"}},
                 {"sweep.csv", "sweep_costs.csv"});
  int failed = 0;
  for (const auto& row : rows) failed += row.status.rfind("failed", 0) == 0 ? 1 : 0;
  if (failed > 0) std::cerr << "sweep: " << failed << " of " << rows.size() << " rows failed\n";
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asymptotic-preserving transport laboratory"};
  app.set_version_flag("--version", APLAB_VERSION);
  app.require_subcommand(1);

  Common c;
  std::string trajectory;
  bool no_rescale = false;
  bool no_spectrum = false;
  double delta = 0.1;
  double T = 0.1;
  int samples = 64;
  std::string epsilons;
  std::string mode = "fixed_grid";

  auto* solve = app.add_subcommand("solve", "Run the time stepper and write the final density");
  add_common(solve, c);
  solve->add_option("--trajectory", trajectory, "Also write the full trajectory to this file name");

  auto* assemble = app.add_subcommand("assemble", "Write the all-at-once system in Matrix Market format");
  add_common(assemble, c);
  assemble->add_flag("--no-rescale", no_rescale, "AP: keep the unscaled block form");

  auto* spectrum = app.add_subcommand("spectrum", "Singular value extremes and cost row of one system");
  add_common(spectrum, c);
  spectrum->add_flag("--no-rescale", no_rescale, "AP: analyse the unscaled block form");
  spectrum->add_option("--delta", delta, "Target error for the query count")->check(CLI::Range(0.0, 1.0));

  auto* fourier = app.add_subcommand("fourier", "Per-frequency symbols and perturbation norms");
  add_common(fourier, c);
  fourier->add_option("--samples", samples, "Number of sampled frequencies")->check(CLI::Range(2, 100000));

  auto* sweep = app.add_subcommand("sweep", "Cost and spectrum rows over a list of epsilons");
  add_common(sweep, c);
  sweep->add_option("--epsilons", epsilons, "Comma separated epsilons")->required();
  sweep->add_option("--mode", mode, "fixed_grid or cfl_driven")
      ->check(CLI::IsMember({"fixed_grid", "cfl_driven"}));
  sweep->add_option("--delta", delta, "Target error")->check(CLI::Range(0.0, 1.0));
  sweep->add_option("--T", T, "Final time for cfl_driven grids")->check(CLI::PositiveNumber);
  sweep->add_flag("--no-rescale", no_rescale, "AP: analyse the unscaled block form");
  sweep->add_flag("--no-spectrum", no_spectrum, "Counts only, skip the singular values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ok : usage;
  }

  try {
    if (solve->parsed()) return run_solve(c, trajectory);
    if (assemble->parsed()) return run_assemble(c, no_rescale);
    if (spectrum->parsed()) return run_spectrum(c, no_rescale, delta);
    if (fourier->parsed()) return run_fourier(c, samples);
    if (sweep->parsed()) return run_sweep(c, epsilons, mode, delta, T, no_rescale, no_spectrum);
  } catch (const CLI::Error& e) {
    std::cerr << "aplab: " << e.what() << '\n';
    return usage;
  } catch (const aplab::IoError& e) {
    std::cerr << "aplab: I/O error: " << e.what() << '\n';
    return io;
  } catch (const aplab::DivergenceError& e) {
    std::cerr << "aplab: diverged at step " << e.step() << ": " << e.what() << '\n';
    return numerical;
  } catch (const aplab::ConvergenceError& e) {
    std::cerr << "aplab: no convergence after " << e.iterations() << " iterations: " << e.what() << '\n';
    return numerical;
  } catch (const aplab::ValidationError& e) {
    std::cerr << "aplab: " << e.what() << '\n';
    return validation;
  } catch (const aplab::UnsupportedConfiguration& e) {
    std::cerr << "aplab: unsupported configuration: " << e.what() << '\n';
    return validation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "aplab: invalid input: " << e.what() << '\n';
    return validation;
  } catch (const std::length_error& e) {
    std::cerr << "aplab: " << e.what() << '\n';
    return validation;
  } catch (const std::exception& e) {
    std::cerr << "aplab: numerical failure: " << e.what() << '\n';
    return numerical;
  }
  return usage;
}
