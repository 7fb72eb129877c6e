#pragma once

// Exact dense linear algebra over a field scalar (normally affcone::Rational).
// Everything here is fraction-exact Gaussian elimination; no pivoting
// heuristics are needed because there is no rounding.

#include "affcone/rational.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <optional>
#include <vector>

namespace affcone {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using VectorQ = Vector<Rational>;
using MatrixQ = Matrix<Rational>;

template <typename Scalar>
struct Echelon {
  Matrix<Scalar> reduced;           // reduced row echelon form
  std::vector<Eigen::Index> pivots;  // pivot column of each nonzero row
};

template <typename Derived>
Echelon<typename Derived::Scalar> reduced_row_echelon(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  Matrix<Scalar> m = input;
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index pivot = row;
    while (pivot < m.rows() && m(pivot, col) == Scalar(0)) ++pivot;
    if (pivot == m.rows()) continue;
    m.row(row).swap(m.row(pivot));
    const Scalar inv = Scalar(1) / m(row, col);
    for (Eigen::Index c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == Scalar(0)) continue;
      const Scalar f = m(r, col);
      for (Eigen::Index c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

template <typename Derived>
Eigen::Index rank(const Eigen::MatrixBase<Derived>& m) {
  return static_cast<Eigen::Index>(reduced_row_echelon(m).pivots.size());
}

template <typename Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  eigen_assert(input.rows() == input.cols());
  Matrix<Scalar> m = input;
  const Eigen::Index n = m.rows();
  Scalar det(1);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = col;
    while (pivot < n && m(pivot, col) == Scalar(0)) ++pivot;
    if (pivot == n) return Scalar(0);
    if (pivot != col) {
      m.row(col).swap(m.row(pivot));
      det = -det;
    }
    det *= m(col, col);
    for (Eigen::Index r = col + 1; r < n; ++r) {
      if (m(r, col) == Scalar(0)) continue;
      const Scalar f = m(r, col) / m(col, col);
      for (Eigen::Index c = col; c < n; ++c) m(r, c) -= f * m(col, c);
    }
  }
  return det;
}

/// D_1, ..., D_n where D_k is the determinant of the top-left k x k block.
template <typename Derived>
std::vector<typename Derived::Scalar> leading_principal_minors(
    const Eigen::MatrixBase<Derived>& m) {
  std::vector<typename Derived::Scalar> minors;
  for (Eigen::Index k = 1; k <= m.rows(); ++k)
    minors.push_back(determinant(m.topLeftCorner(k, k)));
  return minors;
}

/// Sylvester's criterion for a symmetric matrix: (-1)^k D_k > 0 for all k.
/// The empty matrix counts as negative definite.
template <typename Derived>
bool is_negative_definite(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const auto minors = leading_principal_minors(m);
  for (std::size_t k = 0; k < minors.size(); ++k) {
    const bool odd = (k % 2) == 0;  // minors[k] has order k + 1
    if (odd ? !(minors[k] < Scalar(0)) : !(minors[k] > Scalar(0))) return false;
  }
  return true;
}

enum class SolveStatus { unique, inconsistent, underdetermined };

template <typename Scalar>
struct LinearSolution {
  SolveStatus status;
  Vector<Scalar> x;  // meaningful only when status == unique
};

/// Solves A x = b for a possibly non-square A.
template <typename DerivedA, typename DerivedB>
LinearSolution<typename DerivedA::Scalar> solve_exact(const Eigen::MatrixBase<DerivedA>& a,
                                                      const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  eigen_assert(a.rows() == b.rows());
  Matrix<Scalar> augmented(a.rows(), a.cols() + 1);
  augmented.leftCols(a.cols()) = a;
  augmented.col(a.cols()) = b;
  const auto ech = reduced_row_echelon(augmented);
  for (auto p : ech.pivots)
    if (p == a.cols()) return {SolveStatus::inconsistent, {}};
  if (static_cast<Eigen::Index>(ech.pivots.size()) < a.cols())
    return {SolveStatus::underdetermined, {}};
  Vector<Scalar> x(a.cols());
  for (std::size_t r = 0; r < ech.pivots.size(); ++r)
    x(ech.pivots[r]) = ech.reduced(static_cast<Eigen::Index>(r), a.cols());
  return {SolveStatus::unique, std::move(x)};
}

}  // namespace affcone
