#include "coxlab/lp.hpp"

namespace coxlab {

std::optional<Vector<Rational>> nonnegative_solution(const Matrix<Rational>& a, const Vector<Rational>& b) {
  const auto m = static_cast<std::size_t>(a.rows());
  const auto n = static_cast<std::size_t>(a.cols());
  if (static_cast<std::size_t>(b.size()) != m) throw std::invalid_argument("right-hand side has the wrong length");
  const std::size_t width = n + m + 1;  // variables, artificials, rhs
  std::vector<std::vector<Rational>> t(m, std::vector<Rational>(width));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = b(static_cast<Eigen::Index>(i)) < Rational(0);
    for (std::size_t j = 0; j < n; ++j) {
      const Rational& v = a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      t[i][j] = flip ? -v : v;
    }
    t[i][n + i] = Rational(1);
    t[i][width - 1] = flip ? -b(static_cast<Eigen::Index>(i)) : b(static_cast<Eigen::Index>(i));
    basis[i] = n + i;
  }
  // Reduced costs of the phase-one objective (sum of artificials).
  std::vector<Rational> cost(width);
  for (std::size_t j = 0; j < width; ++j) {
    if (j >= n && j < n + m) continue;
    for (std::size_t i = 0; i < m; ++i) cost[j] -= t[i][j];
  }
  while (true) {
    std::size_t enter = width;
    for (std::size_t j = 0; j + 1 < width; ++j) {
      if (cost[j] < Rational(0)) {
        enter = j;
        break;
      }
    }
    if (enter == width) break;
    std::size_t leave = m;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (!(t[i][enter] > Rational(0))) continue;
      const Rational ratio = t[i][width - 1] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) break;  // unbounded direction; cannot happen for a bounded-below objective
    const Rational piv = t[leave][enter];
    for (auto& v : t[leave]) v = v / piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter].is_zero()) continue;
      const Rational f = t[i][enter];
      for (std::size_t j = 0; j < width; ++j) {
        if (!t[leave][j].is_zero()) t[i][j] -= f * t[leave][j];
      }
    }
    if (!cost[enter].is_zero()) {
      const Rational f = cost[enter];
      for (std::size_t j = 0; j < width; ++j) {
        if (!t[leave][j].is_zero()) cost[j] -= f * t[leave][j];
      }
    }
    basis[leave] = enter;
  }
  // The objective value is minus the rhs entry of the cost row.
  if (!cost[width - 1].is_zero()) return std::nullopt;
  Vector<Rational> x = Vector<Rational>::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) x(static_cast<Eigen::Index>(basis[i])) = t[i][width - 1];
  }
  return x;
}

InequalityResult solve_inequalities(const Matrix<Rational>& a, const Vector<Rational>& b) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  InequalityResult res;
  // A (u - v) - s = b with u, v, s >= 0.
  Matrix<Rational> eq = Matrix<Rational>::Zero(m, 2 * n + m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      eq(i, j) = a(i, j);
      eq(i, n + j) = -a(i, j);
    }
    eq(i, 2 * n + i) = Rational(-1);
  }
  if (const auto sol = nonnegative_solution(eq, b)) {
    res.feasible = true;
    res.point = sol->head(n) - sol->segment(n, n);
    return res;
  }
  // A^T y = 0, b^T y = 1, y >= 0.
  Matrix<Rational> dual(n + 1, m);
  dual.topRows(n) = a.transpose();
  dual.row(n) = b.transpose();
  Vector<Rational> rhs = Vector<Rational>::Zero(n + 1);
  rhs(n) = Rational(1);
  const auto y = nonnegative_solution(dual, rhs);
  if (!y) throw std::logic_error("linear system is neither feasible nor certified infeasible");
  res.certificate = *y;
  return res;
}

bool verify_inequality_result(const Matrix<Rational>& a, const Vector<Rational>& b, const InequalityResult& res) {
  if (res.feasible) {
    if (res.point.size() != a.cols()) return false;
    const Vector<Rational> ax = a * res.point;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (ax(i) < b(i)) return false;
    }
    return true;
  }
  if (res.certificate.size() != a.rows()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    if (res.certificate(i) < Rational(0)) return false;
  }
  const Vector<Rational> ya = a.transpose() * res.certificate;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    if (!ya(j).is_zero()) return false;
  }
  return b.dot(res.certificate) == Rational(1);
}

}  // namespace coxlab
