#include "polytopal/matrix.hpp"

#include <utility>

namespace polytopal {

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidInput("matrix multiply: dimension mismatch");
  IntMatrix c(a.rows(), b.cols(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = checked_add(c(i, j), checked_mul(a(i, k), b(k, j)));
    }
  return c;
}

IntVector multiply(const IntMatrix& a, std::span<const Int> x) {
  if (a.cols() != x.size()) throw InvalidInput("matrix-vector multiply: dimension mismatch");
  IntVector y(a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] = checked_add(y[i], checked_mul(a(i, j), x[j]));
  return y;
}

RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidInput("matrix multiply: dimension mismatch");
  RationalMatrix c(a.rows(), b.cols(), Rational(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

RationalVector multiply(const RationalMatrix& a, std::span<const Rational> x) {
  if (a.cols() != x.size()) throw InvalidInput("matrix-vector multiply: dimension mismatch");
  RationalVector y(a.rows(), Rational(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

RationalMatrix to_rational(const IntMatrix& a) {
  RationalMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = Rational(static_cast<long>(a(i, j)));
  return r;
}

namespace {

// Column operation on columns p, j of `m` by the 2x2 unimodular block
// [[s, -b/g], [t, a/g]]; the inverse block is applied to rows p, j of `inv`.
void combine_columns(IntMatrix& m, IntMatrix& transform, IntMatrix& inv, std::size_t p, std::size_t j, Int s, Int t,
                     Int a_g, Int b_g) {
  auto apply = [&](IntMatrix& x) {
    for (std::size_t r = 0; r < x.rows(); ++r) {
      Int xp = x(r, p), xj = x(r, j);
      x(r, p) = checked_add(checked_mul(s, xp), checked_mul(t, xj));
      x(r, j) = checked_add(checked_mul(-b_g, xp), checked_mul(a_g, xj));
    }
  };
  apply(m);
  apply(transform);
  for (std::size_t c = 0; c < inv.cols(); ++c) {
    Int rp = inv(p, c), rj = inv(j, c);
    inv(p, c) = checked_add(checked_mul(a_g, rp), checked_mul(b_g, rj));
    inv(j, c) = checked_add(checked_mul(-t, rp), checked_mul(s, rj));
  }
}

void swap_columns(IntMatrix& m, IntMatrix& transform, IntMatrix& inv, std::size_t p, std::size_t j) {
  for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m(r, p), m(r, j));
  for (std::size_t r = 0; r < transform.rows(); ++r) std::swap(transform(r, p), transform(r, j));
  for (std::size_t c = 0; c < inv.cols(); ++c) std::swap(inv(p, c), inv(j, c));
}

void negate_column(IntMatrix& m, IntMatrix& transform, IntMatrix& inv, std::size_t p) {
  for (std::size_t r = 0; r < m.rows(); ++r) m(r, p) = -m(r, p);
  for (std::size_t r = 0; r < transform.rows(); ++r) transform(r, p) = -transform(r, p);
  for (std::size_t c = 0; c < inv.cols(); ++c) inv(p, c) = -inv(p, c);
}

}  // namespace

ColumnEchelon column_echelon(const IntMatrix& a) {
  const std::size_t n = a.cols();
  ColumnEchelon e{a, IntMatrix::identity(n), IntMatrix::identity(n), 0, {}};
  IntMatrix& m = e.reduced;
  std::size_t pivot = 0;
  for (std::size_t i = 0; i < m.rows() && pivot < n; ++i) {
    for (std::size_t j = pivot + 1; j < n; ++j) {
      if (m(i, j) == 0) continue;
      if (m(i, pivot) == 0) {
        swap_columns(m, e.transform, e.inverse, pivot, j);
        continue;
      }
      Int a_ip = m(i, pivot), b_ij = m(i, j);
      ExtendedGcd g = extended_gcd(a_ip, b_ij);
      combine_columns(m, e.transform, e.inverse, pivot, j, g.s, g.t, a_ip / g.g, b_ij / g.g);
    }
    if (m(i, pivot) != 0) {
      if (m(i, pivot) < 0) negate_column(m, e.transform, e.inverse, pivot);
      e.pivot_rows.push_back(i);
      ++pivot;
    }
  }
  e.rank = pivot;
  return e;
}

IntMatrix hermite_normal_form(const IntMatrix& rows) {
  if (rows.rows() == 0) return IntMatrix(0, rows.cols());
  ColumnEchelon e = column_echelon(rows.transposed());
  // Rows of reduced^T span the same lattice as the input rows.
  IntMatrix h(e.rank, rows.cols(), 0);
  std::vector<std::size_t> pivot_col(e.rank);
  for (std::size_t r = 0; r < e.rank; ++r) {
    for (std::size_t c = 0; c < rows.cols(); ++c) h(r, c) = e.reduced(c, r);
    pivot_col[r] = e.pivot_rows[r];
  }
  for (std::size_t r = 0; r < e.rank; ++r) {
    Int p = h(r, pivot_col[r]);
    for (std::size_t above = 0; above < r; ++above) {
      Int q = floor_div(h(above, pivot_col[r]), p);
      if (q == 0) continue;
      for (std::size_t c = 0; c < rows.cols(); ++c) h(above, c) = checked_sub(h(above, c), checked_mul(q, h(r, c)));
    }
  }
  return h;
}

IntMatrix integer_kernel(const IntMatrix& a) {
  ColumnEchelon e = column_echelon(a);
  const std::size_t n = a.cols();
  IntMatrix k(n - e.rank, n);
  for (std::size_t c = e.rank; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r) k(c - e.rank, r) = e.transform(r, c);
  return k;
}

IntMatrix saturated_span(const IntMatrix& rows, std::size_t ambient_dim) {
  if (rows.rows() == 0) return IntMatrix(0, ambient_dim);
  IntMatrix complement = integer_kernel(rows);
  if (complement.rows() == 0) return IntMatrix::identity(ambient_dim);
  return hermite_normal_form(integer_kernel(complement));
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
  auto inv = inverse(to_rational(m));
  if (!inv) throw InvalidInput("unimodular_inverse: singular matrix");
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = to_int((*inv)(i, j));
  return r;
}

IntMatrix complete_to_unimodular(const IntMatrix& basis, std::size_t n) {
  const std::size_t k = basis.rows();
  if (k == 0) return IntMatrix::identity(n);
  ColumnEchelon e = column_echelon(basis);
  if (e.rank != k) throw InvalidInput("complete_to_unimodular: dependent basis");
  IntMatrix m(n, n);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = basis(r, c);
  for (std::size_t r = k; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = e.inverse(r, c);
  Int det = determinant(m);
  if (det != 1 && det != -1) throw InvalidInput("complete_to_unimodular: basis is not saturated");
  return m;
}

std::optional<IntVector> integer_coordinates(const IntMatrix& basis_rows, std::span<const Int> target) {
  const std::size_t k = basis_rows.rows();
  if (basis_rows.cols() != target.size()) throw InvalidInput("integer_coordinates: dimension mismatch");
  if (k == 0) {
    if (is_zero(target)) return IntVector{};
    return std::nullopt;
  }
  // Solve c * B = t  <=>  B^T c = t.
  auto sol = solve(to_rational(basis_rows.transposed()), to_rational(target));
  if (!sol) return std::nullopt;
  if (rank(basis_rows) != k) throw InvalidInput("integer_coordinates: dependent basis");
  IntVector c(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (!is_integral((*sol)[i])) return std::nullopt;
    c[i] = to_int((*sol)[i]);
  }
  return c;
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> row_reduce(RationalMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t sel = r;
    while (sel < m.rows() && m(sel, c) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(sel, j), m(r, j));
    Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const RationalMatrix& a) {
  RationalMatrix m = a;
  return row_reduce(m).size();
}

std::size_t rank(const IntMatrix& a) { return column_echelon(a).rank; }

Rational determinant(const RationalMatrix& a) {
  if (a.rows() != a.cols()) throw InvalidInput("determinant: non-square matrix");
  RationalMatrix m = a;
  const std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t sel = c;
    while (sel < n && m(sel, c) == 0) ++sel;
    if (sel == n) return 0;
    if (sel != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(sel, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      Rational f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

Int determinant(const IntMatrix& a) { return to_int(determinant(to_rational(a))); }

std::optional<RationalMatrix> inverse(const RationalMatrix& a) {
  if (a.rows() != a.cols()) throw InvalidInput("inverse: non-square matrix");
  const std::size_t n = a.rows();
  RationalMatrix aug(n, 2 * n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  auto piv = row_reduce(aug);
  if (n == 0) return RationalMatrix(0, 0);
  if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  RationalMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

std::optional<RationalVector> solve(const RationalMatrix& a, std::span<const Rational> b) {
  if (a.rows() != b.size()) throw InvalidInput("solve: dimension mismatch");
  const std::size_t n = a.cols();
  RationalMatrix aug(a.rows(), n + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  auto piv = row_reduce(aug);
  if (!piv.empty() && piv.back() == n) return std::nullopt;
  RationalVector x(n, Rational(0));
  for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug(r, n);
  return x;
}

std::vector<RationalVector> nullspace(const RationalMatrix& a) {
  RationalMatrix m = a;
  auto piv = row_reduce(m);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : piv) is_pivot[c] = true;
  std::vector<RationalVector> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    RationalVector v(a.cols(), Rational(0));
    v[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace polytopal
