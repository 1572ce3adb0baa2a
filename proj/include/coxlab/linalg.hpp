#pragma once

// Exact dense linear algebra over a field: row reduction, rank, kernel.

#include "coxlab/scalar.hpp"

#include <Eigen/Core>

#include <vector>

namespace coxlab {

template <class S>
using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vector = Eigen::Matrix<S, Eigen::Dynamic, 1>;

template <class S>
struct RowEchelon {
  Matrix<S> reduced;                 // reduced row echelon form
  std::vector<Eigen::Index> pivots;  // pivot column of row i, for i < rank

  Eigen::Index rank() const { return static_cast<Eigen::Index>(pivots.size()); }
};

template <class S>
RowEchelon<S> row_reduce(Matrix<S> a) {
  RowEchelon<S> out;
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < cols && row < rows; ++col) {
    Eigen::Index pivot = row;
    while (pivot < rows && is_zero(a(pivot, col))) ++pivot;
    if (pivot == rows) continue;
    if (pivot != row) a.row(pivot).swap(a.row(row));
    const S inv = S(1) / a(row, col);
    for (Eigen::Index c = col; c < cols; ++c) {
      if (!is_zero(a(row, c))) a(row, c) *= inv;
    }
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (r == row || is_zero(a(r, col))) continue;
      const S factor = a(r, col);
      for (Eigen::Index c = col; c < cols; ++c) {
        if (!is_zero(a(row, c))) a(r, c) -= factor * a(row, c);
      }
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(a);
  return out;
}

template <class S>
Eigen::Index rank(const Matrix<S>& a) {
  return row_reduce<S>(a).rank();
}

/// Basis of the right nullspace, one column per free column of the echelon form,
/// with a 1 in that free position.
template <class S>
Matrix<S> kernel(const Matrix<S>& a) {
  const RowEchelon<S> ech = row_reduce<S>(a);
  const Eigen::Index cols = a.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (Eigen::Index p : ech.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<Eigen::Index> free_cols;
  for (Eigen::Index c = 0; c < cols; ++c) {
    if (!is_pivot[static_cast<std::size_t>(c)]) free_cols.push_back(c);
  }
  Matrix<S> basis = Matrix<S>::Zero(cols, static_cast<Eigen::Index>(free_cols.size()));
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const Eigen::Index f = free_cols[k];
    const auto kk = static_cast<Eigen::Index>(k);
    basis(f, kk) = S(1);
    for (Eigen::Index i = 0; i < ech.rank(); ++i) {
      const S& entry = ech.reduced(i, f);
      if (!is_zero(entry)) basis(ech.pivots[static_cast<std::size_t>(i)], kk) = -entry;
    }
  }
  return basis;
}

template <class S>
bool is_zero_vector(const Vector<S>& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!is_zero(v(i))) return false;
  }
  return true;
}

}  // namespace coxlab
