#pragma once

// Exact rational linear feasibility by the simplex method (Bland's rule).

#include "coxlab/linalg.hpp"
#include "coxlab/scalar.hpp"

#include <optional>
#include <vector>

namespace coxlab {

/// Some x >= 0 with A x = b, or nothing.
std::optional<Vector<Rational>> nonnegative_solution(const Matrix<Rational>& a, const Vector<Rational>& b);

struct InequalityResult {
  bool feasible = false;
  Vector<Rational> point;        // A point >= b when feasible
  Vector<Rational> certificate;  // y >= 0, y^T A = 0, y^T b = 1 when infeasible
};

/// Decides A x >= b for free x. Either answer comes with its own checkable witness.
InequalityResult solve_inequalities(const Matrix<Rational>& a, const Vector<Rational>& b);

/// Checks a result against the system without trusting the solver.
bool verify_inequality_result(const Matrix<Rational>& a, const Vector<Rational>& b, const InequalityResult& res);

}  // namespace coxlab
