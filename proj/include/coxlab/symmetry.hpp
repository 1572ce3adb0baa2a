#pragma once

// The Weyl group acting on ideals: invariance of Hilbert series, monomial-action
// witnesses, initial ideals under twisted orders, and weight vectors.

#include "coxlab/geometry.hpp"
#include "coxlab/groebner.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace coxlab {

/// True iff the K-polynomial of M is fixed by every element of gens.
bool hs_invariant(const CoxRing& ring, const MonomialIdeal& m, const std::vector<WeylElement>& gens);

/// w'_v = w_{g(v)}.
std::vector<std::int64_t> weight_action(const WeylElement& g, const std::vector<std::int64_t>& w);

template <class S>
Polynomial<S> piece_element(const GradedPiece<S>& piece, const Vector<S>& coords) {
  std::vector<Term<S>> terms;
  for (std::size_t j = 0; j < piece.monomials.size(); ++j) {
    const S& c = coords(static_cast<Eigen::Index>(j));
    if (!coxlab::is_zero(c)) terms.push_back({c, piece.monomials[j]});
  }
  return Polynomial<S>::from_terms(std::move(terms));
}

/// Basis (as coordinate rows) of the elements of the piece supported inside `support`.
template <class S>
Matrix<S> supported_subspace(const GradedPiece<S>& piece, const std::vector<Monomial>& support) {
  const auto n = static_cast<Eigen::Index>(piece.monomials.size());
  std::vector<bool> inside(static_cast<std::size_t>(n), false);
  for (const Monomial& m : support) {
    const auto it = std::find(piece.monomials.begin(), piece.monomials.end(), m);
    if (it == piece.monomials.end()) throw std::invalid_argument("support monomial of the wrong degree");
    inside[static_cast<std::size_t>(it - piece.monomials.begin())] = true;
  }
  std::vector<Eigen::Index> outside;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (!inside[static_cast<std::size_t>(j)]) outside.push_back(j);
  }
  const Eigen::Index d = piece.basis.rows();
  if (d == 0) return Matrix<S>(0, n);
  Matrix<S> out_cols(static_cast<Eigen::Index>(outside.size()), d);
  for (std::size_t k = 0; k < outside.size(); ++k) out_cols.row(static_cast<Eigen::Index>(k)) = piece.basis.col(outside[k]).transpose();
  const Matrix<S> combos = kernel<S>(out_cols);  // d x k
  const Matrix<S> rows = combos.transpose() * piece.basis;
  const RowEchelon<S> ech = row_reduce<S>(rows);
  return ech.reduced.topRows(ech.rank());
}

/// An element of the piece whose support is exactly `support`, if one exists.
template <class S>
std::optional<Polynomial<S>> element_with_support(const GradedPiece<S>& piece, const std::vector<Monomial>& support) {
  const Matrix<S> sub = supported_subspace(piece, support);
  if (sub.rows() == 0) return std::nullopt;
  std::vector<Eigen::Index> cols;
  for (const Monomial& m : support) {
    cols.push_back(std::find(piece.monomials.begin(), piece.monomials.end(), m) - piece.monomials.begin());
  }
  for (Eigen::Index c : cols) {
    bool hit = false;
    for (Eigen::Index i = 0; i < sub.rows() && !hit; ++i) hit = !coxlab::is_zero(sub(i, c));
    if (!hit) return std::nullopt;
  }
  // sum_i t^i row_i vanishes at a column for at most rows-1 values of t.
  for (long t = 1;; ++t) {
    Vector<S> v = Vector<S>::Zero(sub.cols());
    S power(1);
    for (Eigen::Index i = 0; i < sub.rows(); ++i) {
      v += power * sub.row(i).transpose();
      power = power * S(t);
    }
    bool full = true;
    for (Eigen::Index c : cols) full = full && !coxlab::is_zero(v(c));
    if (full) return piece_element(piece, v);
  }
}

template <class S>
using PieceProvider = std::function<GradedPiece<S>(const DivisorClass&)>;

/// Pieces of the ideal generated by gens.
template <class S>
PieceProvider<S> pieces_of_generators(const CoxRing& ring, std::vector<Polynomial<S>> gens) {
  return [&ring, gens = std::move(gens)](const DivisorClass& d) { return graded_piece(ring, gens, d); };
}

/// Pieces of the Cox ideal of a realization (all relations among sections).
template <class S>
PieceProvider<S> pieces_of_realization(const Realization<S>& real) {
  return [real](const DivisorClass& d) { return spanned_piece(cox_ring(real.r), relations_in_degree(real, d), d); };
}

template <class S>
struct ActionReport {
  WeylElement g;
  std::vector<Monomial> support;         // g applied to the support of f
  std::optional<Polynomial<S>> witness;  // ideal element with exactly that support
  Eigen::Index subspace_dimension = 0;   // elements of the piece inside the support
  Eigen::Index support_rank = 0;         // rank of the mapped monomials modulo the ideal
  bool found() const { return witness.has_value(); }
};

/// Looks for h in I with mon(h) = g(mon(f)). Throws if f is not in I.
template <class S>
ActionReport<S> monomial_action_witness(const CoxRing& ring, const PieceProvider<S>& pieces, const WeylElement& g,
                                        const Polynomial<S>& f) {
  const auto d = homogeneous_degree(ring, f);
  if (!d) throw std::invalid_argument("witness search needs a homogeneous polynomial");
  if (!pieces(*d).contains(f)) throw std::invalid_argument("polynomial is not in the ideal");
  ActionReport<S> report{g, {}, std::nullopt, 0, 0};
  for (const Monomial& m : f.support()) report.support.push_back(ring.act(g, m));
  const GradedPiece<S> target = pieces(act(g, *d));
  report.subspace_dimension = supported_subspace(target, report.support).rows();
  report.support_rank = static_cast<Eigen::Index>(report.support.size()) - report.subspace_dimension;
  report.witness = element_with_support(target, report.support);
  return report;
}

template <class S>
struct TwistReport {
  MonomialIdeal image;    // g applied to in(I)
  MonomialIdeal twisted;  // in(I) under the order twisted by g^{-1}
  bool equal() const { return image == twisted; }
};

/// Compares g(in_ord(I)) with in_{ord twisted by g^{-1}}(I).
template <class S>
TwistReport<S> twisted_initial_check(const CoxRing& ring, const std::vector<Polynomial<S>>& gens,
                                     const MonomialOrder& ord, const WeylElement& g) {
  const auto lhs = buchberger(gens, ord);
  const auto rhs = buchberger(gens, ord.twisted(inverse(g)));
  return {act(ring, g, lhs.initial()), rhs.initial()};
}

/// True iff every reduced basis element of gens under ord has a witness under g.
template <class S>
bool acts_monomially_on_basis(const CoxRing& ring, const std::vector<Polynomial<S>>& gens, const MonomialOrder& ord,
                              const WeylElement& g) {
  const auto provider = pieces_of_generators(ring, gens);
  for (const auto& b : buchberger(gens, ord).basis) {
    if (!monomial_action_witness(ring, provider, g, b).found()) return false;
  }
  return true;
}

template <class S>
struct ConeReport {
  bool generic = false;         // the weight picks monomial initial ideals on both sides
  MonomialIdeal image;          // g applied to in_w(I)
  MonomialIdeal moved;          // in_{w'}(I) with w' = weight_action(g^{-1}, w)
  bool holds() const { return generic && image == moved; }
};

/// Sampled form of "the group permutes the Groebner cones": g(in_w(I)) = in_{g^{-1}w}(I).
/// Both weights are refined by the canonical revlex order.
template <class S>
ConeReport<S> groebner_cone_spotcheck(const CoxRing& ring, const std::vector<Polynomial<S>>& gens,
                                      const std::vector<std::int64_t>& w, const WeylElement& g) {
  const MonomialOrder canonical = MonomialOrder::canonical(ring.num_variables());
  const auto a = buchberger(gens, MonomialOrder::weighted(w, canonical.sequence()));
  const auto b = buchberger(gens, MonomialOrder::weighted(weight_action(inverse(g), w), canonical.sequence()));
  return {a.weight_generic() && b.weight_generic(), act(ring, g, a.initial()), b.initial()};
}

}  // namespace coxlab
