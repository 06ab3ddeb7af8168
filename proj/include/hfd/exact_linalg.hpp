#pragma once

// Exact dense linear algebra over a field with involution. Every routine is a
// template on the scalar type so the same code runs over Q (Rational) and over
// Q(zeta_d) (Cyclotomic). Pivoting only looks for nonzero entries; there is no
// notion of magnitude.

#include <utility>
#include <vector>

#include "hfd/eigen_support.hpp"

namespace hfd {

template <class Scalar>
Scalar determinant(Matrix<Scalar> m) {
  const Index n = m.rows();
  Scalar det(1);
  for (Index col = 0; col < n; ++col) {
    Index p = col;
    while (p < n && is_zero(m(p, col))) ++p;
    if (p == n) return Scalar(0);
    if (p != col) {
      m.row(p).swap(m.row(col));
      det = -det;
    }
    det *= m(col, col);
    const Scalar inv = Scalar(1) / m(col, col);
    for (Index i = col + 1; i < n; ++i) {
      if (is_zero(m(i, col))) continue;
      const Scalar f = m(i, col) * inv;
      for (Index j = col + 1; j < n; ++j) m(i, j) -= f * m(col, j);
    }
  }
  return det;
}

/// Pivot columns of the reduced row echelon form, ascending.
template <class Scalar>
std::vector<Index> pivot_columns(Matrix<Scalar> m) {
  std::vector<Index> pivots;
  Index row = 0;
  for (Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Index p = row;
    while (p < m.rows() && is_zero(m(p, col))) ++p;
    if (p == m.rows()) continue;
    m.row(p).swap(m.row(row));
    const Scalar inv = Scalar(1) / m(row, col);
    for (Index i = row + 1; i < m.rows(); ++i) {
      if (is_zero(m(i, col))) continue;
      const Scalar f = m(i, col) * inv;
      for (Index j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class Scalar>
Index exact_rank(const Matrix<Scalar>& m) {
  return static_cast<Index>(pivot_columns(m).size());
}

template <class Scalar>
bool is_hermitian(const Matrix<Scalar>& m) {
  if (m.rows() != m.cols()) return false;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = i; j < m.cols(); ++j)
      if (!(m(i, j) == involution(m(j, i)))) return false;
  return true;
}

template <class Scalar>
Matrix<Scalar> block_diagonal(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  Matrix<Scalar> out(a.rows() + b.rows(), a.cols() + b.cols());
  out.setZero();
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

/// Result of congruence-diagonalising a hermitian matrix.
template <class Scalar>
struct HermitianDiagonalization {
  std::vector<Scalar> diagonal;  // involution-fixed, all nonzero
  Index hyperbolic_planes = 0;   // split off when requested
  Index radical_dimension = 0;
};

/// Congruence-diagonalises the hermitian matrix m by exact symmetric
/// elimination (P^* m P = diag + hyperbolic planes + zero block).
///
/// When every remaining diagonal entry vanishes but some m(i, j) does not,
/// span(e_i, e_j) is a nonsingular plane containing the isotropic vector e_i.
/// With split_hyperbolic the plane is removed (it is Witt-trivial); otherwise
/// a basis change e_i += u e_j makes the diagonal entry nonzero.
template <class Scalar>
HermitianDiagonalization<Scalar> hermitian_diagonalize(Matrix<Scalar> m, bool split_hyperbolic) {
  HermitianDiagonalization<Scalar> out;
  while (m.rows() > 0) {
    const Index n = m.rows();
    Index piv = -1;
    for (Index i = 0; i < n && piv < 0; ++i)
      if (!is_zero(m(i, i))) piv = i;

    if (piv < 0) {
      Index pi = -1, pj = -1;
      for (Index i = 0; i < n && pi < 0; ++i)
        for (Index j = i + 1; j < n; ++j)
          if (!is_zero(m(i, j))) {
            pi = i;
            pj = j;
            break;
          }
      if (pi < 0) {
        out.radical_dimension += n;
        break;
      }
      if (split_hyperbolic) {
        // Schur complement of the 2x2 block [[0, b], [conj(b), 0]].
        const Scalar b = m(pi, pj);
        const Scalar b_inv = Scalar(1) / b;
        const Scalar bc_inv = involution(b_inv);
        std::vector<Index> rest;
        for (Index k = 0; k < n; ++k)
          if (k != pi && k != pj) rest.push_back(k);
        Matrix<Scalar> next(static_cast<Index>(rest.size()), static_cast<Index>(rest.size()));
        // P^{-1} = [[0, conj(b)^-1], [b^-1, 0]]
        for (std::size_t r = 0; r < rest.size(); ++r)
          for (std::size_t c = 0; c < rest.size(); ++c) {
            const Index x = rest[r], y = rest[c];
            next(static_cast<Index>(r), static_cast<Index>(c)) =
                m(x, y) - m(x, pi) * bc_inv * m(pj, y) - m(x, pj) * b_inv * m(pi, y);
          }
        m = std::move(next);
        ++out.hyperbolic_planes;
        continue;
      }
      Scalar u(1);
      if (is_zero(m(pi, pj) + involution(m(pi, pj)))) u = non_real_unit(m(pi, pj));
      // row_i += conj(u) row_j, col_i += u col_j
      m.row(pi) += involution(u) * m.row(pj);
      m.col(pi) += m.col(pj) * u;
      piv = pi;
    }

    const Scalar pivot = m(piv, piv);
    out.diagonal.push_back(pivot);
    const Scalar inv = Scalar(1) / pivot;
    Matrix<Scalar> next(n - 1, n - 1);
    for (Index r = 0, rr = 0; r < n; ++r) {
      if (r == piv) continue;
      const Scalar f = m(r, piv) * inv;
      for (Index c = 0, cc = 0; c < n; ++c) {
        if (c == piv) continue;
        next(rr, cc) = is_zero(f) ? m(r, c) : m(r, c) - f * m(piv, c);
        ++cc;
      }
      ++rr;
    }
    m = std::move(next);
  }
  return out;
}

/// (positive, negative) inertia of a rational symmetric matrix by exact elimination.
inline std::pair<Index, Index> rational_inertia(const QMatrix& m) {
  const auto diag = hermitian_diagonalize(m, false);
  Index pos = 0, neg = 0;
  for (const auto& x : diag.diagonal) (x.sign() > 0 ? pos : neg)++;
  return {pos, neg};
}

}  // namespace hfd
