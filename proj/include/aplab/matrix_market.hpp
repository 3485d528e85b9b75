#pragma once

#include <filesystem>
#include <iosfwd>

#include <Eigen/Dense>

#include "aplab/sparse.hpp"

namespace aplab {

/// Coordinate format, 1-based indices, values printed with 17 significant
/// digits so a round trip is exact.
void write_matrix_market(std::ostream& os, const RealSparse& m);
void write_matrix_market(std::ostream& os, const ComplexSparse& m);
/// Dense column vector in array format.
void write_matrix_market(std::ostream& os, const Eigen::VectorXd& v);

/// Reads a real coordinate "general" matrix.
RealSparse read_matrix_market(std::istream& is);
RealSparse read_matrix_market(const std::filesystem::path& path);

}  // namespace aplab
