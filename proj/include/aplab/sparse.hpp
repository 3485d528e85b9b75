#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace aplab {

// Compressed-row storage; column indices are sorted within each row.
template <typename Scalar>
using SparseMatrix = Eigen::SparseMatrix<Scalar, Eigen::RowMajor>;

using RealSparse = SparseMatrix<double>;
using ComplexSparse = SparseMatrix<std::complex<double>>;
using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;

/// Drops exact zeros and compresses.
template <typename Scalar>
void finalize(SparseMatrix<Scalar>& m) {
  m.prune(Scalar(0));
  m.makeCompressed();
}

/// Max over rows and columns of the stored nonzero counts.
template <typename Scalar>
std::size_t sparsity(const SparseMatrix<Scalar>& m) {
  std::vector<std::size_t> col_counts(static_cast<std::size_t>(m.cols()), 0);
  std::size_t best = 0;
  for (Eigen::Index i = 0; i < m.outerSize(); ++i) {
    std::size_t row = 0;
    for (typename SparseMatrix<Scalar>::InnerIterator it(m, i); it; ++it) {
      if (it.value() == Scalar(0)) continue;
      ++row;
      ++col_counts[static_cast<std::size_t>(it.col())];
    }
    best = std::max(best, row);
  }
  for (auto c : col_counts) best = std::max(best, c);
  return best;
}

RealSparse identity(Eigen::Index n);
RealSparse kron(const RealSparse& a, const RealSparse& b);
ComplexSparse kron(const ComplexSparse& a, const ComplexSparse& b);

/// n x n matrix with 1 on the first subdiagonal.
RealSparse lower_shift(Eigen::Index n);

/// Places `block` at block position (row, col) of a larger matrix.
template <typename Scalar>
void append_block(std::vector<Eigen::Triplet<Scalar>>& out,
                  const SparseMatrix<Scalar>& block, Eigen::Index row0,
                  Eigen::Index col0, Scalar scale = Scalar(1)) {
  for (Eigen::Index i = 0; i < block.outerSize(); ++i) {
    for (typename SparseMatrix<Scalar>::InnerIterator it(block, i); it; ++it) {
      out.emplace_back(row0 + it.row(), col0 + it.col(), scale * it.value());
    }
  }
}

template <typename Scalar>
SparseMatrix<Scalar> from_triplets(Eigen::Index rows, Eigen::Index cols,
                                   const std::vector<Eigen::Triplet<Scalar>>& t) {
  SparseMatrix<Scalar> m(rows, cols);
  m.setFromTriplets(t.begin(), t.end());
  finalize(m);
  return m;
}

ComplexSparse to_complex(const RealSparse& m);

/// Max |a_ij - b_ij| over the union of patterns.
template <typename Scalar>
double max_abs_difference(const SparseMatrix<Scalar>& a, const SparseMatrix<Scalar>& b) {
  SparseMatrix<Scalar> d = a - b;
  double best = 0.0;
  for (Eigen::Index i = 0; i < d.outerSize(); ++i) {
    for (typename SparseMatrix<Scalar>::InnerIterator it(d, i); it; ++it) {
      best = std::max(best, static_cast<double>(std::abs(it.value())));
    }
  }
  return best;
}

}  // namespace aplab
