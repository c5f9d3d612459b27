#pragma once

// Small dense row-major matrices and the exact linear algebra built on them:
// column echelon forms with unimodular transforms, Hermite normal form,
// integer kernels and saturations, and Gaussian elimination over Q.

#include "polytopal/arith.hpp"

#include <optional>
#include <vector>

namespace polytopal {

template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T()) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw InvalidInput("matrix: ragged rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n, T(0));
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  std::vector<T> col(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }
  std::vector<std::vector<T>> row_list() const {
    std::vector<std::vector<T>> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RationalMatrix = Matrix<Rational>;

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
IntVector multiply(const IntMatrix& a, std::span<const Int> x);
RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b);
RationalVector multiply(const RationalMatrix& a, std::span<const Rational> x);
RationalMatrix to_rational(const IntMatrix& a);

/// a * transform == reduced, with `transform` unimodular and `inverse` its
/// integer inverse. The first `rank` columns of `reduced` are in lower
/// echelon form with positive pivots; the remaining columns are zero.
struct ColumnEchelon {
  IntMatrix reduced;
  IntMatrix transform;
  IntMatrix inverse;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_rows;
};
ColumnEchelon column_echelon(const IntMatrix& a);

/// Canonical row Hermite normal form of the lattice spanned by the rows;
/// zero rows are dropped.
IntMatrix hermite_normal_form(const IntMatrix& rows);

/// Basis (as rows) of {y in Z^n : a * y = 0}.
IntMatrix integer_kernel(const IntMatrix& a);

/// Basis (as rows) of span_Q(rows) intersected with Z^n.
IntMatrix saturated_span(const IntMatrix& rows, std::size_t ambient_dim);

/// An n x n unimodular matrix whose first k rows are the given saturated basis.
IntMatrix complete_to_unimodular(const IntMatrix& saturated_basis, std::size_t ambient_dim);

/// Inverse of a unimodular integer matrix (throws if not unimodular).
IntMatrix unimodular_inverse(const IntMatrix& m);

/// Integer coordinates c with sum_i c_i * basis_row_i == target, if any.
std::optional<IntVector> integer_coordinates(const IntMatrix& basis_rows, std::span<const Int> target);

std::size_t rank(const IntMatrix& a);
std::size_t rank(const RationalMatrix& a);
Rational determinant(const RationalMatrix& a);
Int determinant(const IntMatrix& a);
std::optional<RationalMatrix> inverse(const RationalMatrix& a);
/// Some solution x of a * x = b, if the system is consistent.
std::optional<RationalVector> solve(const RationalMatrix& a, std::span<const Rational> b);
/// Basis of the right null space of a over Q.
std::vector<RationalVector> nullspace(const RationalMatrix& a);

}  // namespace polytopal
