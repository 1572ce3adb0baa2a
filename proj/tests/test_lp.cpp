#include "coxlab/lp.hpp"

#include <doctest.h>

#include <random>

using namespace coxlab;

namespace {

using Q = Rational;
using Row = std::vector<Q>;  // coefficients then right-hand side: a.x >= b

// Fourier-Motzkin elimination; true when the system a.x >= b has a real solution.
bool fm_feasible(std::vector<Row> rows, int n) {
  for (int k = n - 1; k >= 0; --k) {
    std::vector<Row> pos, neg, next;
    for (Row& row : rows) {
      const Q& c = row[static_cast<std::size_t>(k)];
      if (c.is_zero()) next.push_back(row);
      else if (c > Q(0)) pos.push_back(row);
      else neg.push_back(row);
    }
    for (const Row& p : pos) {
      for (const Row& q : neg) {
        const Q cp = p[static_cast<std::size_t>(k)];
        const Q cq = -q[static_cast<std::size_t>(k)];
        Row combined(p.size());
        for (std::size_t j = 0; j < p.size(); ++j) combined[j] = cq * p[j] + cp * q[j];
        next.push_back(combined);
      }
    }
    rows = std::move(next);
  }
  for (const Row& row : rows) {
    if (row.back() > Q(0)) return false;  // 0 >= positive
  }
  return true;
}

Q small(std::mt19937_64& rng, int span) { return Q(static_cast<long>(rng() % (2 * span + 1)) - span); }

}  // namespace

TEST_CASE("nonnegative solutions") {
  Matrix<Q> a(2, 3);
  a << Q(1), Q(1), Q(0), Q(0), Q(1), Q(1);
  Vector<Q> b(2);
  b << Q(2), Q(3);
  const auto x = nonnegative_solution(a, b);
  REQUIRE(x.has_value());
  const Vector<Q> ax = a * *x;
  for (Eigen::Index i = 0; i < 2; ++i) CHECK(ax(i) == b(i));
  for (Eigen::Index i = 0; i < 3; ++i) CHECK((*x)(i) >= Q(0));
  b << Q(-1), Q(3);
  CHECK_FALSE(nonnegative_solution(a, b).has_value());
  CHECK_THROWS(nonnegative_solution(a, Vector<Q>::Zero(3)));
}

TEST_CASE("inequality systems") {
  // x >= 1, -x >= 0 is infeasible with multipliers (1, 1).
  Matrix<Q> a(2, 1);
  a << Q(1), Q(-1);
  Vector<Q> b(2);
  b << Q(1), Q(0);
  const auto res = solve_inequalities(a, b);
  CHECK_FALSE(res.feasible);
  CHECK(verify_inequality_result(a, b, res));
  CHECK(res.certificate(0) == res.certificate(1));

  b << Q(1), Q(-5);
  const auto ok = solve_inequalities(a, b);
  CHECK(ok.feasible);
  CHECK(verify_inequality_result(a, b, ok));
  // A tampered witness is rejected.
  InequalityResult bad = ok;
  bad.point(0) = Q(0);
  CHECK_FALSE(verify_inequality_result(a, b, bad));
}

TEST_CASE("random systems agree with Fourier-Motzkin") {
  std::mt19937_64 rng(2024);
  int feasible = 0;
  int infeasible = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const int m = 1 + static_cast<int>(rng() % 6);
    Matrix<Q> a(m, n);
    Vector<Q> b(m);
    std::vector<Row> rows;
    for (int i = 0; i < m; ++i) {
      Row row;
      for (int j = 0; j < n; ++j) {
        a(i, j) = small(rng, 3);
        row.push_back(a(i, j));
      }
      b(i) = small(rng, 4);
      row.push_back(b(i));
      rows.push_back(row);
    }
    const auto res = solve_inequalities(a, b);
    CHECK(verify_inequality_result(a, b, res));
    CHECK(res.feasible == fm_feasible(rows, n));
    ++(res.feasible ? feasible : infeasible);
  }
  // Both outcomes are exercised.
  CHECK(feasible > 10);
  CHECK(infeasible > 10);
}
