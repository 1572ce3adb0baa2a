#pragma once

// Buchberger's algorithm with the Gebauer-Moeller criteria, normal forms, and
// graded pieces of polynomial ideals.

#include "coxlab/linalg.hpp"
#include "coxlab/monomial_ideal.hpp"
#include "coxlab/ring.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>
#include <vector>

namespace coxlab {

namespace detail {

// Terms sorted descending under a fixed order.
template <class S>
using Sorted = std::vector<Term<S>>;

template <class S>
Sorted<S> sorted_terms(const Polynomial<S>& f, const MonomialOrder& ord) {
  Sorted<S> t(f.begin(), f.end());
  std::sort(t.begin(), t.end(), [&](const Term<S>& a, const Term<S>& b) { return ord.less(b.mono, a.mono); });
  return t;
}

// a - c * u * b, both sorted descending.
template <class S>
Sorted<S> sub_mul(const Sorted<S>& a, std::size_t a_start, const S& c, const Monomial& u, const Sorted<S>& b,
                  const MonomialOrder& ord) {
  Sorted<S> out;
  out.reserve(a.size() - a_start + b.size());
  std::size_t i = a_start, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size()) {
      out.push_back(a[i++]);
      continue;
    }
    const Monomial m = u * b[j].mono;
    if (i == a.size()) {
      out.push_back({-(c * b[j].coeff), m});
      ++j;
      continue;
    }
    const auto cmp = ord.compare(a[i].mono, m);
    if (cmp > 0) {
      out.push_back(a[i++]);
    } else if (cmp < 0) {
      out.push_back({-(c * b[j].coeff), m});
      ++j;
    } else {
      S s = a[i].coeff - c * b[j].coeff;
      if (!coxlab::is_zero(s)) out.push_back({std::move(s), m});
      ++i;
      ++j;
    }
  }
  return out;
}

// Full reduction of f by the reducers (arbitrary leading coefficients).
template <class S>
Sorted<S> reduce(Sorted<S> f, const std::vector<const Sorted<S>*>& reducers, const MonomialOrder& ord) {
  Sorted<S> rem;
  std::vector<std::uint32_t> masks;
  for (const auto* g : reducers) masks.push_back(g->front().mono.support_mask());
  std::size_t start = 0;
  while (start < f.size()) {
    const Term<S>& lt = f[start];
    const std::uint32_t mask = lt.mono.support_mask();
    const Sorted<S>* by = nullptr;
    for (std::size_t k = 0; k < reducers.size(); ++k) {
      if ((masks[k] & ~mask) == 0 && reducers[k]->front().mono.divides(lt.mono)) {
        by = reducers[k];
        break;
      }
    }
    if (by == nullptr) {
      rem.push_back(lt);
      ++start;
      continue;
    }
    const S c = lt.coeff / by->front().coeff;
    const Monomial u = lt.mono / by->front().mono;
    f = sub_mul(f, start, c, u, *by, ord);
    start = 0;
  }
  return rem;
}

template <class S>
void make_monic(Sorted<S>& f) {
  if (f.empty()) return;
  const S inv = S(1) / f.front().coeff;
  for (auto& t : f) t.coeff = t.coeff * inv;
}

template <class S>
Polynomial<S> to_polynomial(const Sorted<S>& t) {
  return Polynomial<S>::from_terms(std::vector<Term<S>>(t.begin(), t.end()));
}

}  // namespace detail

/// Remainder of f on division by G: no term is divisible by a leading monomial of G.
template <class S>
Polynomial<S> normal_form(const Polynomial<S>& f, const std::vector<Polynomial<S>>& g, const MonomialOrder& ord) {
  std::vector<detail::Sorted<S>> sorted;
  for (const auto& p : g) {
    if (p.is_zero()) throw std::invalid_argument("normal form by the zero polynomial");
    sorted.push_back(detail::sorted_terms(p, ord));
  }
  std::vector<const detail::Sorted<S>*> reducers;
  for (const auto& s : sorted) reducers.push_back(&s);
  return detail::to_polynomial(detail::reduce(detail::sorted_terms(f, ord), reducers, ord));
}

template <class S>
struct GroebnerBasis {
  MonomialOrder order;
  std::vector<Polynomial<S>> basis;  // reduced, monic, sorted by descending leading monomial

  std::vector<Monomial> leading_monomials() const {
    std::vector<Monomial> out;
    for (const auto& g : basis) out.push_back(g.leading_term(order).mono);
    return out;
  }
  MonomialIdeal initial() const { return MonomialIdeal(leading_monomials()); }
  int max_degree() const {
    int d = 0;
    for (const auto& m : leading_monomials()) d = std::max(d, m.degree());
    return d;
  }
  /// True iff every member has a unique heaviest monomial under the weights alone.
  bool weight_generic() const {
    for (const auto& g : basis) {
      const auto lead = g.leading_term(order).mono;
      for (const auto& t : g) {
        if (t.mono != lead && order.weight(t.mono) == order.weight(lead)) return false;
      }
    }
    return true;
  }
};

struct BuchbergerStats {
  std::size_t pairs_considered = 0;
  std::size_t zero_reductions = 0;
};

/// Reduced Groebner basis of homogeneous generators. Pairs are processed by coarse
/// degree of their lcm, then by the order; the result is the unique reduced basis.
template <class S>
GroebnerBasis<S> buchberger(const std::vector<Polynomial<S>>& gens, const MonomialOrder& ord,
                            BuchbergerStats* stats = nullptr) {
  using detail::Sorted;
  struct Pair {
    int degree;
    Monomial lcm;
    int i, j;  // j < 0: input generator i
  };
  std::vector<Sorted<S>> polys;
  std::vector<Monomial> lm;
  std::vector<bool> active;
  std::vector<Sorted<S>> inputs;
  auto pair_less = [&](const Pair& a, const Pair& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    if (auto c = ord.compare(a.lcm, b.lcm); c != 0) return c < 0;
    return std::tie(a.i, a.j) < std::tie(b.i, b.j);
  };
  std::set<Pair, decltype(pair_less)> queue(pair_less);
  for (const auto& f : gens) {
    if (f.is_zero()) continue;
    inputs.push_back(detail::sorted_terms(f, ord));
    const Monomial lead = inputs.back().front().mono;
    queue.insert({lead.degree(), lead, static_cast<int>(inputs.size()) - 1, -1});
  }

  auto add = [&](Sorted<S> h) {
    detail::make_monic(h);
    const int hi = static_cast<int>(polys.size());
    const Monomial lh = h.front().mono;
    polys.push_back(std::move(h));
    lm.push_back(lh);
    active.push_back(false);
    // Gebauer-Moeller update.
    std::vector<int> c;
    for (int g = 0; g < hi; ++g) {
      if (active[static_cast<std::size_t>(g)]) c.push_back(g);
    }
    std::vector<int> d;
    for (std::size_t k = 0; k < c.size(); ++k) {
      const int g1 = c[k];
      const Monomial l1 = lcm(lh, lm[static_cast<std::size_t>(g1)]);
      bool keep = coprime(lh, lm[static_cast<std::size_t>(g1)]);
      if (!keep) {
        keep = true;
        for (std::size_t q = k + 1; q < c.size() && keep; ++q) {
          if (lcm(lh, lm[static_cast<std::size_t>(c[q])]).divides(l1)) keep = false;
        }
        for (std::size_t q = 0; q < d.size() && keep; ++q) {
          if (lcm(lh, lm[static_cast<std::size_t>(d[q])]).divides(l1)) keep = false;
        }
      }
      if (keep) d.push_back(g1);
    }
    std::erase_if(queue, [&](const Pair& p) {
      if (p.j < 0 || !lh.divides(p.lcm)) return false;
      const Monomial a = lcm(lm[static_cast<std::size_t>(p.i)], lh);
      const Monomial b = lcm(lm[static_cast<std::size_t>(p.j)], lh);
      return a != p.lcm && b != p.lcm;
    });
    for (int g : d) {
      if (coprime(lh, lm[static_cast<std::size_t>(g)])) continue;
      const Monomial l = lcm(lh, lm[static_cast<std::size_t>(g)]);
      queue.insert({l.degree(), l, g, hi});
    }
    for (int g = 0; g < hi; ++g) {
      if (active[static_cast<std::size_t>(g)] && lh.divides(lm[static_cast<std::size_t>(g)])) {
        active[static_cast<std::size_t>(g)] = false;
      }
    }
    active[static_cast<std::size_t>(hi)] = true;
  };

  while (!queue.empty()) {
    const Pair p = *queue.begin();
    queue.erase(queue.begin());
    if (stats != nullptr) ++stats->pairs_considered;
    Sorted<S> s;
    if (p.j < 0) {
      s = inputs[static_cast<std::size_t>(p.i)];
    } else {
      const auto& f = polys[static_cast<std::size_t>(p.i)];
      const auto& g = polys[static_cast<std::size_t>(p.j)];
      // Both monic: S = (lcm/lm f) f - (lcm/lm g) g.
      Sorted<S> left;
      const Monomial uf = p.lcm / f.front().mono;
      for (const auto& t : f) left.push_back({t.coeff, uf * t.mono});
      s = detail::sub_mul(left, 0, S(1), p.lcm / g.front().mono, g, ord);
    }
    std::vector<const Sorted<S>*> reducers;
    for (std::size_t k = 0; k < polys.size(); ++k) {
      if (active[k]) reducers.push_back(&polys[k]);
    }
    Sorted<S> h = detail::reduce(std::move(s), reducers, ord);
    if (h.empty()) {
      if (stats != nullptr) ++stats->zero_reductions;
      continue;
    }
    add(std::move(h));
  }

  // Interreduce into the reduced basis.
  std::vector<std::size_t> keep;
  for (std::size_t k = 0; k < polys.size(); ++k) {
    if (!active[k]) continue;
    bool redundant = false;
    for (std::size_t q = 0; q < polys.size() && !redundant; ++q) {
      if (q != k && active[q] && lm[q].divides(lm[k]) && (lm[q] != lm[k] || q < k)) redundant = true;
    }
    if (!redundant) keep.push_back(k);
  }
  GroebnerBasis<S> out{ord, {}};
  std::vector<Sorted<S>> reduced;
  for (std::size_t k : keep) {
    std::vector<const Sorted<S>*> others;
    for (std::size_t q : keep) {
      if (q != k) others.push_back(&polys[q]);
    }
    Sorted<S> tail(polys[k].begin() + 1, polys[k].end());
    Sorted<S> rem = detail::reduce(std::move(tail), others, ord);
    rem.insert(rem.begin(), polys[k].front());
    reduced.push_back(std::move(rem));
  }
  std::sort(reduced.begin(), reduced.end(),
            [&](const Sorted<S>& a, const Sorted<S>& b) { return ord.less(b.front().mono, a.front().mono); });
  for (const auto& r : reduced) out.basis.push_back(detail::to_polynomial(r));
  return out;
}

/// Rows of `basis` span the degree-d piece of the ideal generated by gens, written in
/// the coordinates `monomials` (canonical storage order). basis is in reduced row
/// echelon form with no zero rows.
template <class S>
struct GradedPiece {
  DivisorClass degree;
  std::vector<Monomial> monomials;
  Matrix<S> basis;

  Eigen::Index dimension() const { return basis.rows(); }
  Eigen::Index codimension() const { return static_cast<Eigen::Index>(monomials.size()) - basis.rows(); }
  Vector<S> coordinates(const Polynomial<S>& f) const {
    Vector<S> v = Vector<S>::Zero(static_cast<Eigen::Index>(monomials.size()));
    for (const auto& t : f) {
      const auto it = std::lower_bound(monomials.begin(), monomials.end(), t.mono, std::greater<>());
      if (it == monomials.end() || *it != t.mono) throw std::invalid_argument("polynomial has the wrong degree");
      v(it - monomials.begin()) = t.coeff;
    }
    return v;
  }
  /// True iff f lies in the piece.
  bool contains(const Polynomial<S>& f) const {
    Matrix<S> m(basis.rows() + 1, static_cast<Eigen::Index>(monomials.size()));
    if (basis.rows() > 0) m.topRows(basis.rows()) = basis;
    m.row(basis.rows()) = coordinates(f).transpose();
    return rank<S>(m) == basis.rows();
  }
};

namespace detail {

template <class S>
void fill_piece(GradedPiece<S>& piece, const std::vector<Vector<S>>& rows) {
  Matrix<S> m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(piece.monomials.size()));
  for (std::size_t k = 0; k < rows.size(); ++k) m.row(static_cast<Eigen::Index>(k)) = rows[k].transpose();
  const RowEchelon<S> ech = row_reduce<S>(m);
  piece.basis = ech.reduced.topRows(ech.rank());
}

}  // namespace detail

/// Degree-d piece of the ideal generated by gens.
template <class S>
GradedPiece<S> graded_piece(const CoxRing& ring, const std::vector<Polynomial<S>>& gens, const DivisorClass& d) {
  GradedPiece<S> piece{d, ring.enumerate_monomials(d), {}};
  std::vector<Vector<S>> rows;
  for (const auto& f : gens) {
    const auto df = homogeneous_degree(ring, f);
    if (!df) throw std::invalid_argument("graded piece of an inhomogeneous generator");
    for (const Monomial& u : ring.enumerate_monomials(d - *df)) rows.push_back(piece.coordinates(u * f));
  }
  detail::fill_piece(piece, rows);
  return piece;
}

/// Leading monomials under ord of the piece's elements: the initial ideal in that degree.
template <class S>
std::vector<Monomial> initial_terms(const GradedPiece<S>& piece, const MonomialOrder& ord) {
  const auto n = static_cast<Eigen::Index>(piece.monomials.size());
  std::vector<Eigen::Index> cols(static_cast<std::size_t>(n));
  std::iota(cols.begin(), cols.end(), Eigen::Index{0});
  std::sort(cols.begin(), cols.end(), [&](Eigen::Index a, Eigen::Index b) {
    return ord.less(piece.monomials[static_cast<std::size_t>(b)], piece.monomials[static_cast<std::size_t>(a)]);
  });
  Matrix<S> m(piece.basis.rows(), n);
  for (Eigen::Index j = 0; j < n; ++j) m.col(j) = piece.basis.col(cols[static_cast<std::size_t>(j)]);
  std::vector<Monomial> out;
  for (Eigen::Index p : row_reduce<S>(m).pivots) out.push_back(piece.monomials[static_cast<std::size_t>(cols[static_cast<std::size_t>(p)])]);
  return out;
}

/// The span of degree-d elements, e.g. a relation basis from a realization.
template <class S>
GradedPiece<S> spanned_piece(const CoxRing& ring, const std::vector<Polynomial<S>>& elements, const DivisorClass& d) {
  GradedPiece<S> piece{d, ring.enumerate_monomials(d), {}};
  std::vector<Vector<S>> rows;
  for (const auto& f : elements) rows.push_back(piece.coordinates(f));
  detail::fill_piece(piece, rows);
  return piece;
}

}  // namespace coxlab
