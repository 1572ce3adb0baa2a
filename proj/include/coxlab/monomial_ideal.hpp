#pragma once

// Monomial ideals in k[E_r]: membership, saturation, multigraded Hilbert values,
// K-polynomials, codimension, and the Weyl action.

#include "coxlab/ring.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace coxlab {

class MonomialIdeal {
 public:
  MonomialIdeal() = default;
  /// Keeps the minimal generators, sorted in canonical storage order (descending).
  explicit MonomialIdeal(std::vector<Monomial> gens);

  const std::vector<Monomial>& generators() const { return gens_; }
  std::size_t size() const { return gens_.size(); }
  bool is_zero() const { return gens_.empty(); }
  bool contains(const Monomial& m) const;
  bool is_squarefree() const;
  /// Maximal total degree of a minimal generator (0 for the zero ideal).
  int max_degree() const;
  /// Union of generator supports.
  std::uint32_t support_mask() const;

  friend MonomialIdeal operator+(const MonomialIdeal& a, const MonomialIdeal& b);
  friend bool operator==(const MonomialIdeal&, const MonomialIdeal&) = default;

 private:
  std::vector<Monomial> gens_;
};

bool monomial_membership(const MonomialIdeal& m, const Monomial& u);

/// (M : (prod of vars)^infinity): drops the listed variables from every generator.
MonomialIdeal colon_saturate(const MonomialIdeal& m, const std::vector<int>& vars);
/// (M : u) for a monomial u.
MonomialIdeal colon(const MonomialIdeal& m, const Monomial& u);

MonomialIdeal act(const CoxRing& ring, const WeylElement& g, const MonomialIdeal& m);

/// dim (k[E_r]/M)_D: monomials of degree D outside M.
std::int64_t hilbert_at(const CoxRing& ring, const MonomialIdeal& m, const DivisorClass& d);

struct StableCount {
  std::int64_t value = 0;
  bool stable = false;  // all probes agreed
  std::vector<DivisorClass> probes;
  std::vector<std::int64_t> saturated_values;  // hilbert_at of the saturation at each probe
  std::vector<std::int64_t> ideal_values;      // hilbert_at of M itself at each probe
};

/// Value of |k[E_r]/M|_{m l + sum a_i e_i} for all a_i large. Probes two offsets past
/// a = (max e-exponent in M) + m + 1, on both M and its e-saturation.
StableCount stable_count(const CoxRing& ring, const MonomialIdeal& m, int line_degree);

/// Laurent polynomial in Pic degrees with integer coefficients.
using KPolynomial = std::map<DivisorClass, std::int64_t>;

/// Numerator of the multigraded Hilbert series of k[E_r]/M over prod_v (1 - t^{deg v}).
KPolynomial k_polynomial(const CoxRing& ring, const MonomialIdeal& m);
/// Exponents moved by D -> g D.
KPolynomial act(const WeylElement& g, const KPolynomial& k);
/// "1 - t^(l-e1) + ..." with degrees in symbolic form, terms in class order.
std::string format_kpolynomial(const KPolynomial& k);
/// sum_{d'} K[d'] * #monomials of degree d - d'; equals hilbert_at(M, d).
std::int64_t hilbert_from_k_polynomial(const CoxRing& ring, const KPolynomial& k, const DivisorClass& d);

/// Number of variables minus the largest set of variables containing no generator
/// support; throws std::invalid_argument for non-squarefree input.
int codimension(const CoxRing& ring, const MonomialIdeal& m);
/// A largest independent variable set (bitmask) for squarefree M.
std::uint32_t max_independent_set(int num_variables, const MonomialIdeal& m);

/// Parses one monomial per line ("#" comments and blank lines skipped), or a JSON list
/// of monomial strings.
MonomialIdeal parse_monomial_ideal(const CoxRing& ring, std::string_view text);
std::string format(const CoxRing& ring, const MonomialIdeal& m);

}  // namespace coxlab
