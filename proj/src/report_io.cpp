#include "aplab/report_io.hpp"

#include "aplab/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace aplab {
namespace {

std::string real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

const std::string& report_header() {
  static const std::string header =
      "scheme,epsilon,phi,tau,h,N,Nx,Nt,delta,sigma_min,sigma_max,kappa,sparsity,alpha,"
      "classical_cost,quantum_queries,status";
  return header;
}

std::string format_row(const ComplexityRow& r) {
  std::ostringstream os;
  os << to_string(r.scheme) << ',' << real(r.epsilon) << ',' << real(r.phi) << ',' << real(r.tau)
     << ',' << real(r.h) << ',' << r.N << ',' << r.Nx << ',' << r.Nt << ',' << real(r.delta) << ','
     << real(r.sigma_min) << ',' << real(r.sigma_max) << ',' << real(r.kappa) << ',' << r.sparsity
     << ',' << real(r.alpha) << ',' << r.classical_cost << ',' << real(r.quantum_queries) << ','
     << r.status;
  return os.str();
}

void write_report(std::ostream& os, const std::vector<ComplexityRow>& rows) {
  os << report_header() << '\n';
  for (const auto& r : rows) os << format_row(r) << '\n';
}

void write_file_atomic(const std::filesystem::path& destination, const std::string& contents) {
  std::filesystem::path tmp = destination;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + destination.string());
    out << contents;
    out.flush();
    if (!out) throw IoError("cannot write " + destination.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, destination, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot write " + destination.string());
  }
}

void emit_report(const std::vector<ComplexityRow>& rows, const std::filesystem::path& destination) {
  if (rows.empty()) throw std::invalid_argument("emit_report: no rows");
  std::ostringstream os;
  write_report(os, rows);
  write_file_atomic(destination, os.str());
}

}  // namespace aplab
