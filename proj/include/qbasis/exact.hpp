#pragma once

// Small dense matrices over exact or floating scalars, with the two
// exact kernels the examples need: Bareiss determinants and triangular
// back-substitution.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "qbasis/wide.hpp"

namespace qbasis {

/// Row-major matrix with 0-based (row, col) access.
template <class Scalar>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Scalar(0)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<Scalar> multiply(std::span<const Scalar> v) const {
    if (v.size() != cols_) throw std::invalid_argument("DenseMatrix::multiply: size mismatch");
    std::vector<Scalar> out(rows_, Scalar(0));
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * v[c];
    }
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// Fraction-free Gaussian elimination; exact for integer matrices.
BigInt bareiss_determinant(DenseMatrix<BigInt> m);

/// Solves U a = b for upper-triangular U by back-substitution. Entries
/// below the diagonal are ignored.
template <class Scalar>
std::vector<Scalar> solve_upper_triangular(const DenseMatrix<Scalar>& u, std::span<const Scalar> b) {
  const std::size_t n = u.rows();
  if (u.cols() != n || b.size() != n) throw std::invalid_argument("solve_upper_triangular: size mismatch");
  std::vector<Scalar> a(n, Scalar(0));
  for (std::size_t i = n; i-- > 0;) {
    Scalar acc = b[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      if (a[j] != Scalar(0)) acc -= u(i, j) * a[j];
    }
    if (u(i, i) == Scalar(0)) throw std::domain_error("solve_upper_triangular: singular diagonal");
    a[i] = acc / u(i, i);
  }
  return a;
}

}  // namespace qbasis
