#pragma once

// Exact linear algebra over the integers and rationals. The dense kernels are
// templates over the Eigen scalar so the same routine serves IntMatrix and RatMatrix.

#include "tspec/errors.hpp"
#include "tspec/polynomial.hpp"
#include "tspec/scalar.hpp"

#include <vector>

namespace tspec {

namespace detail {
template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& m, const char* op) {
  if (m.rows() != m.cols())
    fail(ErrorKind::Domain, std::string(op) + ": matrix is not square");
}
}  // namespace detail

/// Fraction-free (Bareiss) determinant with row pivoting. Every division is exact,
/// over the integers as well as the rationals.
template <typename Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  detail::require_square(input, "determinant");
  Matrix<Scalar> m = input;
  const Eigen::Index n = m.rows();
  if (n == 0) return Scalar(1);
  Scalar sign(1), prev(1);
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      Eigen::Index swap = -1;
      for (Eigen::Index i = k + 1; i < n; ++i)
        if (m(i, k) != 0) {
          swap = i;
          break;
        }
      if (swap < 0) return Scalar(0);
      m.row(k).swap(m.row(swap));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

/// Exact k-th power by binary powering; k = 0 gives the identity.
template <typename Derived>
Matrix<typename Derived::Scalar> mat_pow(const Eigen::MatrixBase<Derived>& m, unsigned long k) {
  using Scalar = typename Derived::Scalar;
  detail::require_square(m, "mat_pow");
  Matrix<Scalar> result = Matrix<Scalar>::Identity(m.rows(), m.cols());
  Matrix<Scalar> base = m;
  while (k) {
    if (k & 1UL) result = result * base;
    k >>= 1UL;
    if (k) base = base * base;
  }
  return result;
}

/// Characteristic polynomial det(zI - m) by the Faddeev-LeVerrier recursion.
/// For integer matrices each division by k is exact.
template <typename Derived>
Polynomial<typename Derived::Scalar> charpoly(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  detail::require_square(a, "charpoly");
  const Eigen::Index n = a.rows();
  std::vector<Scalar> c(static_cast<std::size_t>(n) + 1, Scalar(0));
  c[static_cast<std::size_t>(n)] = 1;
  Matrix<Scalar> mk = Matrix<Scalar>::Zero(n, n);
  const Matrix<Scalar> id = Matrix<Scalar>::Identity(n, n);
  for (Eigen::Index k = 1; k <= n; ++k) {
    mk = a * mk + c[static_cast<std::size_t>(n - k + 1)] * id;
    Matrix<Scalar> amk = a * mk;
    c[static_cast<std::size_t>(n - k)] = -amk.trace() / Scalar(static_cast<long>(k));
  }
  return Polynomial<Scalar>(std::move(c));
}

/// Matrix substitution p(m) by Horner's rule.
template <typename Scalar>
Matrix<Scalar> evaluate_at(const Polynomial<Scalar>& p, const Matrix<Scalar>& m) {
  detail::require_square(m, "evaluate_at");
  Matrix<Scalar> acc = Matrix<Scalar>::Zero(m.rows(), m.cols());
  const Matrix<Scalar> id = Matrix<Scalar>::Identity(m.rows(), m.cols());
  for (int i = p.degree(); i >= 0; --i) acc = acc * m + p.coeff(static_cast<std::size_t>(i)) * id;
  return acc;
}

/// Smith normal form with unimodular transforms: U * M * V = diag(d_1, ..., d_r, 0, ...)
/// where d_1 | d_2 | ... and every d_i >= 0.
struct SNFResult {
  std::vector<Integer> diagonal;  // length min(rows, cols)
  IntMatrix U;                    // rows x rows
  IntMatrix V;                    // cols x cols
};

SNFResult smith_normal_form(const IntMatrix& m);

/// j-th exterior power: the C(n,j) x C(n,j) matrix of j x j minors, rows and columns
/// indexed by sorted index subsets in lexicographic order.
RatMatrix exterior_power(const RatMatrix& m, int j);

/// Sorted j-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> index_subsets(int n, int j);

/// Inverse of a unimodular integer matrix (Domain error if |det| != 1).
IntMatrix unimodular_inverse(const IntMatrix& m);

/// Exact inverse over the rationals (Domain error if singular).
RatMatrix inverse(const RatMatrix& m);

/// Rank over the rationals.
int rank(const RatMatrix& m);

/// Solves m * x = b over the rationals when m has full column rank and the system
/// is consistent; returns false otherwise. Overdetermined systems are allowed.
bool solve_exact(const RatMatrix& m, const RatVector& b, RatVector& x);

/// Block-diagonal direct sum.
template <typename Scalar>
Matrix<Scalar> direct_sum(const std::vector<Matrix<Scalar>>& blocks) {
  Eigen::Index n = 0;
  for (const auto& b : blocks) n += b.rows();
  Matrix<Scalar> out = Matrix<Scalar>::Zero(n, n);
  Eigen::Index at = 0;
  for (const auto& b : blocks) {
    out.block(at, at, b.rows(), b.cols()) = b;
    at += b.rows();
  }
  return out;
}

}  // namespace tspec
