#include "tspec/exactla.hpp"

#include <algorithm>

namespace tspec {

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = Rational(m(i, j));
  return out;
}

bool is_integral(const RatMatrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (!is_integral(m(i, j))) return false;
  return true;
}

IntMatrix to_integer(const RatMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (!is_integral(m(i, j))) fail(ErrorKind::Domain, "matrix entry is not an integer");
      out(i, j) = numerator(m(i, j));
    }
  return out;
}

namespace {

// Moves the nonzero entry of least absolute value in the trailing block
// starting at (t, t) to position (t, t). Returns false when the block is zero.
bool bring_min_pivot(IntMatrix& a, IntMatrix& u, IntMatrix& v, Eigen::Index t) {
  Eigen::Index bi = -1, bj = -1;
  Integer best;
  for (Eigen::Index i = t; i < a.rows(); ++i)
    for (Eigen::Index j = t; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      Integer mag = abs(a(i, j));
      if (bi < 0 || mag < best) {
        best = mag;
        bi = i;
        bj = j;
      }
    }
  if (bi < 0) return false;
  if (bi != t) {
    a.row(t).swap(a.row(bi));
    u.row(t).swap(u.row(bi));
  }
  if (bj != t) {
    a.col(t).swap(a.col(bj));
    v.col(t).swap(v.col(bj));
  }
  return true;
}

}  // namespace

SNFResult smith_normal_form(const IntMatrix& m) {
  IntMatrix a = m;
  IntMatrix u = IntMatrix::Identity(m.rows(), m.rows());
  IntMatrix v = IntMatrix::Identity(m.cols(), m.cols());
  const Eigen::Index r = std::min(a.rows(), a.cols());

  for (Eigen::Index t = 0; t < r; ++t) {
    if (!bring_min_pivot(a, u, v, t)) break;
    for (;;) {
      bool clean = true;
      // Clear column t below the pivot.
      for (Eigen::Index i = t + 1; i < a.rows(); ++i) {
        if (a(i, t) == 0) continue;
        const Integer q = floor_div(a(i, t), a(t, t));
        a.row(i) -= q * a.row(t);
        u.row(i) -= q * u.row(t);
        if (a(i, t) != 0) clean = false;
      }
      // Clear row t right of the pivot.
      for (Eigen::Index j = t + 1; j < a.cols(); ++j) {
        if (a(t, j) == 0) continue;
        const Integer q = floor_div(a(t, j), a(t, t));
        a.col(j) -= q * a.col(t);
        v.col(j) -= q * v.col(t);
        if (a(t, j) != 0) clean = false;
      }
      if (clean) {
        // Divisibility: the pivot must divide every remaining entry.
        Eigen::Index bad_row = -1;
        for (Eigen::Index i = t + 1; i < a.rows() && bad_row < 0; ++i)
          for (Eigen::Index j = t + 1; j < a.cols(); ++j)
            if (a(i, j) % a(t, t) != 0) {
              bad_row = i;
              break;
            }
        if (bad_row < 0) break;
        a.row(t) += a.row(bad_row);
        u.row(t) += u.row(bad_row);
      }
      bring_min_pivot(a, u, v, t);
    }
    if (a(t, t) < 0) {
      a.row(t) = -a.row(t);
      u.row(t) = -u.row(t);
    }
  }

  SNFResult out;
  out.diagonal.reserve(static_cast<std::size_t>(r));
  for (Eigen::Index i = 0; i < r; ++i) out.diagonal.push_back(a(i, i));
  out.U = std::move(u);
  out.V = std::move(v);
  return out;
}

std::vector<std::vector<int>> index_subsets(int n, int j) {
  std::vector<std::vector<int>> out;
  if (j < 0 || j > n) return out;
  std::vector<int> cur(static_cast<std::size_t>(j));
  for (int i = 0; i < j; ++i) cur[static_cast<std::size_t>(i)] = i;
  for (;;) {
    out.push_back(cur);
    int i = j - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - j + i) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int k = i + 1; k < j; ++k) cur[static_cast<std::size_t>(k)] = cur[static_cast<std::size_t>(k - 1)] + 1;
  }
  return out;
}

RatMatrix exterior_power(const RatMatrix& m, int j) {
  detail::require_square(m, "exterior_power");
  const int n = static_cast<int>(m.rows());
  if (j < 1 || j > n) fail(ErrorKind::Domain, "exterior_power: degree out of range");
  const auto subsets = index_subsets(n, j);
  const auto c = static_cast<Eigen::Index>(subsets.size());
  RatMatrix out(c, c);
  RatMatrix minor(j, j);
  for (Eigen::Index r = 0; r < c; ++r)
    for (Eigen::Index s = 0; s < c; ++s) {
      for (int a = 0; a < j; ++a)
        for (int b = 0; b < j; ++b)
          minor(a, b) = m(subsets[static_cast<std::size_t>(r)][static_cast<std::size_t>(a)],
                          subsets[static_cast<std::size_t>(s)][static_cast<std::size_t>(b)]);
      out(r, s) = determinant(minor);
    }
  return out;
}

namespace {

// Gauss-Jordan on an augmented rational matrix; returns the pivot columns.
std::vector<Eigen::Index> row_reduce(RatMatrix& a, Eigen::Index ncols) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < ncols && row < a.rows(); ++col) {
    Eigen::Index p = -1;
    for (Eigen::Index i = row; i < a.rows(); ++i)
      if (a(i, col) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    a.row(row).swap(a.row(p));
    const Rational inv = Rational(1) / a(row, col);
    a.row(row) *= inv;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col) == 0) continue;
      const Rational f = a(i, col);
      a.row(i) -= f * a.row(row);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

RatMatrix inverse(const RatMatrix& m) {
  detail::require_square(m, "inverse");
  const Eigen::Index n = m.rows();
  RatMatrix aug(n, 2 * n);
  aug.leftCols(n) = m;
  aug.rightCols(n) = RatMatrix::Identity(n, n);
  const auto piv = row_reduce(aug, n);
  if (static_cast<Eigen::Index>(piv.size()) != n) fail(ErrorKind::Domain, "inverse: singular matrix");
  return aug.rightCols(n);
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
  const Integer d = determinant(m);
  if (abs(d) != 1) fail(ErrorKind::Domain, "unimodular_inverse: determinant is not +-1");
  return to_integer(inverse(to_rational(m)));
}

int rank(const RatMatrix& m) {
  RatMatrix a = m;
  return static_cast<int>(row_reduce(a, a.cols()).size());
}

bool solve_exact(const RatMatrix& m, const RatVector& b, RatVector& x) {
  const Eigen::Index n = m.cols();
  RatMatrix aug(m.rows(), n + 1);
  aug.leftCols(n) = m;
  aug.col(n) = b;
  const auto piv = row_reduce(aug, n + 1);
  if (!piv.empty() && piv.back() == n) return false;  // inconsistent
  if (static_cast<Eigen::Index>(piv.size()) != n) return false;  // underdetermined
  x = aug.col(n).head(n);
  return true;
}

}  // namespace tspec
