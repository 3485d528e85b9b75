#include "aplab/matrix_market.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "aplab/errors.hpp"

namespace aplab {
namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

void write_matrix_market(std::ostream& os, const RealSparse& m) {
  os << "%%MatrixMarket matrix coordinate real general\n";
  os << m.rows() << ' ' << m.cols() << ' ' << m.nonZeros() << '\n';
  for (Eigen::Index i = 0; i < m.outerSize(); ++i) {
    for (RealSparse::InnerIterator it(m, i); it; ++it) {
      os << it.row() + 1 << ' ' << it.col() + 1 << ' ' << num(it.value()) << '\n';
    }
  }
}

void write_matrix_market(std::ostream& os, const ComplexSparse& m) {
  os << "%%MatrixMarket matrix coordinate complex general\n";
  os << m.rows() << ' ' << m.cols() << ' ' << m.nonZeros() << '\n';
  for (Eigen::Index i = 0; i < m.outerSize(); ++i) {
    for (ComplexSparse::InnerIterator it(m, i); it; ++it) {
      os << it.row() + 1 << ' ' << it.col() + 1 << ' ' << num(it.value().real()) << ' '
         << num(it.value().imag()) << '\n';
    }
  }
}

void write_matrix_market(std::ostream& os, const Eigen::VectorXd& v) {
  os << "%%MatrixMarket matrix array real general\n";
  os << v.size() << " 1\n";
  for (Eigen::Index i = 0; i < v.size(); ++i) os << num(v(i)) << '\n';
}

RealSparse read_matrix_market(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("matrix market: empty input");
  std::istringstream banner(line);
  std::string tag, object, format, field, symmetry;
  banner >> tag >> object >> format >> field >> symmetry;
  if (tag != "%%MatrixMarket" || lower(object) != "matrix" || lower(format) != "coordinate" ||
      lower(field) != "real" || lower(symmetry) != "general") {
    throw std::runtime_error("matrix market: only real coordinate general matrices are supported");
  }
  while (std::getline(is, line)) {
    if (!line.empty() && line[0] != '%') break;
  }
  std::istringstream size(line);
  long rows = 0, cols = 0, nnz = 0;
  if (!(size >> rows >> cols >> nnz) || rows < 0 || cols < 0 || nnz < 0) {
    throw std::runtime_error("matrix market: bad size line");
  }
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(static_cast<std::size_t>(nnz));
  for (long e = 0; e < nnz; ++e) {
    long i = 0, j = 0;
    double v = 0.0;
    if (!(is >> i >> j >> v)) throw std::runtime_error("matrix market: truncated entry list");
    if (i < 1 || i > rows || j < 1 || j > cols) throw std::runtime_error("matrix market: index out of range");
    t.emplace_back(i - 1, j - 1, v);
  }
  RealSparse m(rows, cols);
  m.setFromTriplets(t.begin(), t.end());
  m.makeCompressed();
  return m;
}

RealSparse read_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return read_matrix_market(in);
}

}  // namespace aplab
