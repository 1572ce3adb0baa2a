#pragma once

// Plane-geometric realization of the Cox ring: each exceptional-curve variable maps to
// a plane form (lines through pairs of points, conics through five points), and
// relations in a Pic degree are the kernel of the resulting coefficient matrix.

#include "coxlab/linalg.hpp"
#include "coxlab/ring.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace coxlab {

class DegenerateConfiguration : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class S>
using PlanePoint = std::array<S, 3>;

/// Exponents (a, b, c) of x^a y^b z^c for degree d, ordered x^d, x^{d-1}y, x^{d-1}z,
/// x^{d-2}y^2, ..., z^d.
inline std::vector<std::array<int, 3>> form_basis(int d) {
  std::vector<std::array<int, 3>> out;
  for (int a = d; a >= 0; --a) {
    for (int b = d - a; b >= 0; --b) out.push_back({a, b, d - a - b});
  }
  return out;
}

inline Eigen::Index form_index(int d, int a, int b) {
  return static_cast<Eigen::Index>((d - a) * (d - a + 1) / 2 + (d - a - b));
}

inline Eigen::Index form_dimension(int d) { return static_cast<Eigen::Index>((d + 1) * (d + 2) / 2); }

template <class S>
struct PlaneForm {
  int degree = 0;
  Vector<S> coeffs;  // over form_basis(degree)

  static PlaneForm constant(S c) {
    PlaneForm f;
    f.coeffs = Vector<S>::Constant(1, c);
    return f;
  }

  bool is_zero() const { return is_zero_vector<S>(coeffs); }

  /// Scales so the first nonzero coefficient is 1.
  PlaneForm normalized() const {
    PlaneForm f = *this;
    for (Eigen::Index k = 0; k < f.coeffs.size(); ++k) {
      if (!coxlab::is_zero(f.coeffs(k))) {
        const S inv = S(1) / f.coeffs(k);
        for (Eigen::Index j = 0; j < f.coeffs.size(); ++j) f.coeffs(j) = f.coeffs(j) * inv;
        break;
      }
    }
    return f;
  }

  S operator()(const PlanePoint<S>& p) const {
    S sum(0);
    const auto basis = form_basis(degree);
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const S& c = coeffs(static_cast<Eigen::Index>(k));
      if (coxlab::is_zero(c)) continue;
      S term = c;
      for (int i = 0; i < 3; ++i) {
        for (int e = 0; e < basis[k][static_cast<std::size_t>(i)]; ++e) term = term * p[static_cast<std::size_t>(i)];
      }
      sum = sum + term;
    }
    return sum;
  }

  friend PlaneForm operator*(const PlaneForm& f, const PlaneForm& g) {
    PlaneForm h;
    h.degree = f.degree + g.degree;
    h.coeffs = Vector<S>::Zero(form_dimension(h.degree));
    const auto bf = form_basis(f.degree);
    const auto bg = form_basis(g.degree);
    for (std::size_t i = 0; i < bf.size(); ++i) {
      const S& a = f.coeffs(static_cast<Eigen::Index>(i));
      if (coxlab::is_zero(a)) continue;
      for (std::size_t j = 0; j < bg.size(); ++j) {
        const S& b = g.coeffs(static_cast<Eigen::Index>(j));
        if (coxlab::is_zero(b)) continue;
        const Eigen::Index k = form_index(h.degree, bf[i][0] + bg[j][0], bf[i][1] + bg[j][1]);
        h.coeffs(k) = h.coeffs(k) + a * b;
      }
    }
    return h;
  }

  friend bool operator==(const PlaneForm& f, const PlaneForm& g) {
    return f.degree == g.degree && f.coeffs == g.coeffs;
  }

  /// E.g. "x*y - x*z".
  std::string str() const {
    const char* names[] = {"x", "y", "z"};
    std::string out;
    const auto basis = form_basis(degree);
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const S& c = coeffs(static_cast<Eigen::Index>(k));
      if (coxlab::is_zero(c)) continue;
      std::string cs = c.str();
      const bool negative = cs[0] == '-';
      if (negative) cs.erase(0, 1);
      out += out.empty() ? (negative ? "-" : "") : (negative ? " - " : " + ");
      std::string mono;
      for (int i = 0; i < 3; ++i) {
        const int e = basis[k][static_cast<std::size_t>(i)];
        if (e == 0) continue;
        if (!mono.empty()) mono += '*';
        mono += names[i];
        if (e > 1) mono += "^" + std::to_string(e);
      }
      if (mono.empty()) {
        out += cs;
      } else {
        out += (cs == "1" ? "" : cs + "*") + mono;
      }
    }
    return out.empty() ? "0" : out;
  }
};

template <class S>
PlaneForm<S> linear_form(const S& a, const S& b, const S& c) {
  PlaneForm<S> f;
  f.degree = 1;
  f.coeffs.resize(3);
  f.coeffs << a, b, c;
  return f;
}

template <class S>
S det3(const PlanePoint<S>& p, const PlanePoint<S>& q, const PlanePoint<S>& s) {
  return p[0] * (q[1] * s[2] - q[2] * s[1]) - p[1] * (q[0] * s[2] - q[2] * s[0]) +
         p[2] * (q[0] * s[1] - q[1] * s[0]);
}

template <class S>
PlanePoint<S> cross(const PlanePoint<S>& p, const PlanePoint<S>& q) {
  return {p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0]};
}

/// Row of conic monomials x^2, xy, xz, y^2, yz, z^2 evaluated at p.
template <class S>
std::array<S, 6> conic_row(const PlanePoint<S>& p) {
  return {p[0] * p[0], p[0] * p[1], p[0] * p[2], p[1] * p[1], p[1] * p[2], p[2] * p[2]};
}

struct GeneralPositionReport {
  bool ok = true;
  std::vector<std::vector<int>> violations;  // 0-based point indices
};

template <class S>
void check_point_list(const std::vector<PlanePoint<S>>& points, int r) {
  check_point_count(r);
  if (static_cast<int>(points.size()) != r) {
    throw std::invalid_argument("expected " + std::to_string(r) + " points, got " + std::to_string(points.size()));
  }
  for (const auto& p : points) {
    if (coxlab::is_zero(p[0]) && coxlab::is_zero(p[1]) && coxlab::is_zero(p[2])) {
      throw std::invalid_argument("point with all coordinates zero");
    }
  }
}

/// Collinear triples, and for six points also co-conic sextuples.
template <class S>
GeneralPositionReport check_general_position(const std::vector<PlanePoint<S>>& points) {
  check_point_list(points, static_cast<int>(points.size()));
  const int n = static_cast<int>(points.size());
  GeneralPositionReport report;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        if (coxlab::is_zero(det3(points[static_cast<std::size_t>(i)], points[static_cast<std::size_t>(j)],
                                 points[static_cast<std::size_t>(k)]))) {
          report.violations.push_back({i, j, k});
        }
      }
    }
  }
  if (n >= 6) {
    std::vector<int> idx(6);
    auto rec = [&](auto&& self, int start, int depth) -> void {
      if (depth == 6) {
        Matrix<S> m(6, 6);
        for (int a = 0; a < 6; ++a) {
          const auto row = conic_row(points[static_cast<std::size_t>(idx[static_cast<std::size_t>(a)])]);
          for (int b = 0; b < 6; ++b) m(a, b) = row[static_cast<std::size_t>(b)];
        }
        if (rank<S>(m) < 6) report.violations.push_back(idx);
        return;
      }
      for (int i = start; i < n; ++i) {
        idx[static_cast<std::size_t>(depth)] = i;
        self(self, i + 1, depth + 1);
      }
    };
    rec(rec, 0, 0);
  }
  report.ok = report.violations.empty();
  return report;
}

template <class S>
PlaneForm<S> line_through(const PlanePoint<S>& p, const PlanePoint<S>& q) {
  const auto c = cross(p, q);
  const PlaneForm<S> f = linear_form(c[0], c[1], c[2]);
  if (f.is_zero()) throw DegenerateConfiguration("coincident points");
  return f.normalized();
}

/// The unique conic through five points; throws DegenerateConfiguration otherwise.
template <class S>
PlaneForm<S> conic_through(const std::vector<PlanePoint<S>>& five) {
  Matrix<S> m(static_cast<Eigen::Index>(five.size()), 6);
  for (std::size_t a = 0; a < five.size(); ++a) {
    const auto row = conic_row(five[a]);
    for (int b = 0; b < 6; ++b) m(static_cast<Eigen::Index>(a), b) = row[static_cast<std::size_t>(b)];
  }
  const Matrix<S> ker = kernel<S>(m);
  if (ker.cols() != 1) {
    throw DegenerateConfiguration("conic through five points is not unique (kernel dimension " +
                                  std::to_string(ker.cols()) + ")");
  }
  PlaneForm<S> f;
  f.degree = 2;
  f.coeffs = ker.col(0);
  return f.normalized();
}

template <class S>
struct Realization {
  int r = 0;
  std::vector<PlanePoint<S>> points;
  std::vector<PlaneForm<S>> forms;  // indexed by ring variable
};

template <class S>
Realization<S> realize(const std::vector<PlanePoint<S>>& points) {
  const int r = static_cast<int>(points.size());
  check_point_list(points, r);
  const CoxRing& ring = cox_ring(r);
  Realization<S> real{r, points, {}};
  for (const Curve& c : ring.curves()) {
    const auto pt = [&](int i) { return points[static_cast<std::size_t>(i - 1)]; };
    switch (c.kind) {
      case CurveKind::exceptional_divisor:
        real.forms.push_back(PlaneForm<S>::constant(S(1)));
        break;
      case CurveKind::line:
        real.forms.push_back(line_through(pt(c.indices[0]), pt(c.indices[1])));
        break;
      case CurveKind::conic: {
        std::vector<PlanePoint<S>> five;
        for (int i = 1; i <= r; ++i) {
          if (i != c.indices[0]) five.push_back(pt(i));
        }
        real.forms.push_back(conic_through(five));
        break;
      }
    }
  }
  return real;
}

/// Product of the variable forms; e-variables contribute the constant 1, so this is
/// defined for every monomial and has degree equal to its l-coefficient.
template <class S>
PlaneForm<S> monomial_to_form(const Realization<S>& real, const Monomial& m) {
  PlaneForm<S> f = PlaneForm<S>::constant(S(1));
  for (std::size_t v = 0; v < real.forms.size(); ++v) {
    for (int e = 0; e < m[static_cast<int>(v)]; ++e) f = f * real.forms[v];
  }
  return f;
}

/// Columns are the forms of the given monomials.
template <class S>
Matrix<S> form_matrix(const Realization<S>& real, const std::vector<Monomial>& monos, int degree) {
  Matrix<S> m = Matrix<S>::Zero(form_dimension(std::max(degree, 0)), static_cast<Eigen::Index>(monos.size()));
  for (std::size_t j = 0; j < monos.size(); ++j) {
    m.col(static_cast<Eigen::Index>(j)) = monomial_to_form(real, monos[j]).coeffs;
  }
  return m;
}

/// Basis of the linear relations among the distinguished sections of degree d (the
/// degree-d piece of the Cox ideal), from the kernel of the form matrix. Kernel vectors
/// carry a 1 at their free column.
template <class S>
std::vector<Polynomial<S>> relations_in_degree(const Realization<S>& real, const DivisorClass& d) {
  const CoxRing& ring = cox_ring(real.r);
  const std::vector<Monomial> monos = ring.enumerate_monomials(d);
  std::vector<Polynomial<S>> out;
  if (monos.empty()) return out;
  const Matrix<S> ker = kernel<S>(form_matrix(real, monos, d.line_degree()));
  for (Eigen::Index k = 0; k < ker.cols(); ++k) {
    std::vector<Term<S>> terms;
    for (std::size_t j = 0; j < monos.size(); ++j) terms.push_back({ker(static_cast<Eigen::Index>(j), k), monos[j]});
    out.push_back(Polynomial<S>::from_terms(std::move(terms)));
  }
  return out;
}

/// Dimension of the span of the distinguished sections of degree d.
template <class S>
Eigen::Index section_rank(const Realization<S>& real, const DivisorClass& d) {
  const std::vector<Monomial> monos = cox_ring(real.r).enumerate_monomials(d);
  if (monos.empty()) return 0;
  return rank<S>(form_matrix(real, monos, d.line_degree()));
}

/// Substitutes the realized forms into f.
template <class S>
PlaneForm<S> evaluate_polynomial(const Realization<S>& real, const Polynomial<S>& f) {
  PlaneForm<S> sum;
  bool first = true;
  for (const auto& t : f) {
    PlaneForm<S> g = monomial_to_form(real, t.mono);
    for (Eigen::Index k = 0; k < g.coeffs.size(); ++k) g.coeffs(k) = g.coeffs(k) * t.coeff;
    if (first) {
      sum = g;
      first = false;
    } else {
      if (g.degree != sum.degree) throw std::invalid_argument("polynomial is not homogeneous");
      sum.coeffs += g.coeffs;
    }
  }
  return sum;
}

template <class S>
struct ConicRelations {
  DivisorClass conic;
  std::vector<Polynomial<S>> relations;
};

/// Generators of Q_r grouped by conic class, conics in sorted order.
template <class S>
std::vector<ConicRelations<S>> build_qr_blocks(const Realization<S>& real) {
  std::vector<ConicRelations<S>> out;
  for (const DivisorClass& c : enumerate_conics(real.r)) out.push_back({c, relations_in_degree(real, c)});
  return out;
}

template <class S>
std::vector<Polynomial<S>> build_qr(const Realization<S>& real) {
  std::vector<Polynomial<S>> gens;
  for (auto& block : build_qr_blocks(real)) {
    for (auto& f : block.relations) gens.push_back(std::move(f));
  }
  return gens;
}

/// Throws DegenerateConfiguration unless the points are in general position.
template <class S>
std::vector<Polynomial<S>> build_qr(const std::vector<PlanePoint<S>>& points) {
  if (!check_general_position(points).ok) throw DegenerateConfiguration("points are not in general position");
  return build_qr(realize(points));
}

template <class S>
struct EckartWitness {
  std::array<int, 3> curves;  // ring variable indices
  /// Concurrent lines: the common plane point.  Tangency type {e_i, f_ij, g_j}: the
  /// blown-up point p_i, where the three curves meet on e_i.
  PlanePoint<S> point;
};

/// Searches the 45 triangles of the intersection graph for three concurrent curves.
template <class S>
std::optional<EckartWitness<S>> has_eckart_point(const Realization<S>& real) {
  if (real.r < 6) return std::nullopt;
  const CoxRing& ring = cox_ring(real.r);
  const CurveSet& curves = ring.curves();
  const int n = ring.num_variables();
  auto meets = [&](int a, int b) {
    return intersect(curves[static_cast<std::size_t>(a)].cls, curves[static_cast<std::size_t>(b)].cls) == 1;
  };
  auto coeffs3 = [&](int v) -> PlanePoint<S> {
    const auto& c = real.forms[static_cast<std::size_t>(v)].coeffs;
    return {c(0), c(1), c(2)};
  };
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (!meets(a, b)) continue;
      for (int c = b + 1; c < n; ++c) {
        if (!meets(a, c) || !meets(b, c)) continue;
        const std::array<int, 3> tri{a, b, c};
        int e = -1, f = -1, g = -1;
        for (int v : tri) {
          switch (curves[static_cast<std::size_t>(v)].kind) {
            case CurveKind::exceptional_divisor: e = v; break;
            case CurveKind::line: f = f < 0 ? v : f; break;
            case CurveKind::conic: g = v; break;
          }
        }
        if (e < 0) {
          if (coxlab::is_zero(det3(coeffs3(a), coeffs3(b), coeffs3(c)))) {
            return EckartWitness<S>{tri, cross(coeffs3(a), coeffs3(b))};
          }
          continue;
        }
        // {e_i, f_ij, g_j}: the line p_i p_j is tangent to the conic g_j at p_i.
        const int i = curves[static_cast<std::size_t>(e)].indices[0];
        const int j = curves[static_cast<std::size_t>(g)].indices[0];
        const PlanePoint<S>& pi = real.points[static_cast<std::size_t>(i - 1)];
        const PlanePoint<S>& pj = real.points[static_cast<std::size_t>(j - 1)];
        const auto& q = real.forms[static_cast<std::size_t>(g)].coeffs;  // x^2, xy, xz, y^2, yz, z^2
        const PlanePoint<S> grad{S(2) * q(0) * pi[0] + q(1) * pi[1] + q(2) * pi[2],
                                 q(1) * pi[0] + S(2) * q(3) * pi[1] + q(4) * pi[2],
                                 q(2) * pi[0] + q(4) * pi[1] + S(2) * q(5) * pi[2]};
        const S tangent_at_pj = grad[0] * pj[0] + grad[1] * pj[1] + grad[2] * pj[2];
        if (coxlab::is_zero(tangent_at_pj)) return EckartWitness<S>{tri, pi};
      }
    }
  }
  return std::nullopt;
}

}  // namespace coxlab
