#include "aplab/sparse.hpp"

namespace aplab {

RealSparse identity(Eigen::Index n) {
  RealSparse m(n, n);
  m.setIdentity();
  return m;
}

namespace {

template <typename Scalar>
SparseMatrix<Scalar> kron_impl(const SparseMatrix<Scalar>& a, const SparseMatrix<Scalar>& b) {
  std::vector<Eigen::Triplet<Scalar>> t;
  t.reserve(static_cast<std::size_t>(a.nonZeros() * b.nonZeros()));
  for (Eigen::Index i = 0; i < a.outerSize(); ++i) {
    for (typename SparseMatrix<Scalar>::InnerIterator ia(a, i); ia; ++ia) {
      append_block(t, b, ia.row() * b.rows(), ia.col() * b.cols(), ia.value());
    }
  }
  return from_triplets(a.rows() * b.rows(), a.cols() * b.cols(), t);
}

}  // namespace

RealSparse kron(const RealSparse& a, const RealSparse& b) { return kron_impl(a, b); }
ComplexSparse kron(const ComplexSparse& a, const ComplexSparse& b) { return kron_impl(a, b); }

RealSparse lower_shift(Eigen::Index n) {
  std::vector<Eigen::Triplet<double>> t;
  for (Eigen::Index i = 1; i < n; ++i) t.emplace_back(i, i - 1, 1.0);
  return from_triplets(n, n, t);
}

ComplexSparse to_complex(const RealSparse& m) {
  ComplexSparse out = m.cast<Complex>();
  out.makeCompressed();
  return out;
}

}  // namespace aplab
