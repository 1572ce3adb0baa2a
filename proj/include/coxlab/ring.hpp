#pragma once

// The Pic-graded polynomial ring k[E_r] on the exceptional-curve variables,
// monomial orders refined by weights, and exact polynomial arithmetic.

#include "coxlab/picard.hpp"
#include "coxlab/scalar.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace coxlab {

inline constexpr int kMaxVariables = 32;

/// Dense exponent vector indexed by the canonical curve order.
class Monomial {
 public:
  using Exponents = std::array<std::uint8_t, kMaxVariables>;

  Monomial() { exps_.fill(0); }
  explicit Monomial(const Exponents& e) : exps_(e) {}
  static Monomial variable(int v, int power = 1) {
    Monomial m;
    m.exps_[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(power);
    return m;
  }

  int operator[](int v) const { return exps_[static_cast<std::size_t>(v)]; }
  void set(int v, int e) { exps_[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(e); }
  const Exponents& exponents() const { return exps_; }

  /// Total exponent sum, which is also the coarse degree.
  int degree() const {
    int d = 0;
    for (auto e : exps_) d += e;
    return d;
  }
  bool is_one() const { return degree() == 0; }
  bool is_squarefree() const {
    return std::all_of(exps_.begin(), exps_.end(), [](auto e) { return e <= 1; });
  }
  std::uint32_t support_mask() const {
    std::uint32_t mask = 0;
    for (int v = 0; v < kMaxVariables; ++v) {
      if (exps_[static_cast<std::size_t>(v)] != 0) mask |= 1u << v;
    }
    return mask;
  }

  bool divides(const Monomial& o) const {
    for (std::size_t v = 0; v < exps_.size(); ++v) {
      if (exps_[v] > o.exps_[v]) return false;
    }
    return true;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t v = 0; v < a.exps_.size(); ++v) {
      m.exps_[v] = static_cast<std::uint8_t>(a.exps_[v] + b.exps_[v]);
    }
    return m;
  }
  /// a / b; requires b | a.
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t v = 0; v < a.exps_.size(); ++v) {
      m.exps_[v] = static_cast<std::uint8_t>(a.exps_[v] - b.exps_[v]);
    }
    return m;
  }
  friend Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t v = 0; v < a.exps_.size(); ++v) m.exps_[v] = std::max(a.exps_[v], b.exps_[v]);
    return m;
  }
  friend Monomial gcd(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (std::size_t v = 0; v < a.exps_.size(); ++v) m.exps_[v] = std::min(a.exps_[v], b.exps_[v]);
    return m;
  }
  friend bool coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t v = 0; v < a.exps_.size(); ++v) {
      if (a.exps_[v] != 0 && b.exps_[v] != 0) return false;
    }
    return true;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  /// Lexicographic on exponents with variable 0 most significant; used only for
  /// canonical storage, never as a monomial order.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    return a.exps_ <=> b.exps_;
  }

 private:
  Exponents exps_;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const {
    std::size_t h = 1469598103934665603ULL;
    for (auto e : m.exponents()) {
      h ^= e;
      h *= 1099511628211ULL;
    }
    return h;
  }
};

/// k[E_r]: one variable per exceptional curve, graded by the curve class.
class CoxRing {
 public:
  explicit CoxRing(int r);

  int r() const { return curves_.r(); }
  int num_variables() const { return static_cast<int>(curves_.size()); }
  const CurveSet& curves() const { return curves_; }
  const std::string& name(int v) const { return curves_[static_cast<std::size_t>(v)].label; }
  /// Throws std::invalid_argument for unknown names.
  int index(std::string_view name) const;
  const DivisorClass& variable_degree(int v) const {
    return curves_[static_cast<std::size_t>(v)].cls;
  }
  bool is_e_variable(int v) const {
    return curves_[static_cast<std::size_t>(v)].kind == CurveKind::exceptional_divisor;
  }
  /// Indices of e_1..e_r.
  std::vector<int> e_variables() const;

  DivisorClass pic_degree(const Monomial& m) const;
  /// Every monomial of Pic degree d, in canonical storage order.
  std::vector<Monomial> enumerate_monomials(const DivisorClass& d) const;
  /// Every monomial of total degree k (all Pic degrees).
  std::vector<Monomial> monomials_of_degree(int k) const;

  /// Exponent of v moves to curve_perm[v].
  Monomial act(const WeylElement& g, const Monomial& m) const;

  Monomial parse_monomial(std::string_view text) const;
  /// "f12*e1^2"; the unit monomial prints as "1".
  std::string format(const Monomial& m) const;

 private:
  CurveSet curves_;
  std::vector<int> line_weight_;  // l-coefficient of each variable class
};

/// Shared ring for each r.
const CoxRing& cox_ring(int r);

/// Coarse degree, then weight, then reverse lexicographic on a declared variable
/// sequence (first entry biggest): at the last differing variable of the sequence the
/// monomial with the smaller exponent is bigger.
class MonomialOrder {
 public:
  MonomialOrder() = default;
  /// sequence lists variables from biggest to smallest; it must be a permutation.
  static MonomialOrder revlex(std::vector<int> sequence);
  static MonomialOrder weighted(std::vector<std::int64_t> weights, std::vector<int> sequence);
  /// Revlex on the canonical variable order.
  static MonomialOrder canonical(int num_variables);

  /// "revlex:e1>e2>..." or "weights:[w1,...];tiebreak:revlex:e1>..."; weights are
  /// either one value per variable in canonical order or name=value pairs (missing
  /// names weigh 0). Variables left out of a sequence follow in canonical order.
  static MonomialOrder parse(std::string_view spec, const CoxRing& ring);
  std::string spec(const CoxRing& ring) const;

  int num_variables() const { return static_cast<int>(sequence_.size()); }
  const std::vector<std::int64_t>& weights() const { return weights_; }
  const std::vector<int>& sequence() const { return sequence_; }

  std::int64_t weight(const Monomial& m) const {
    std::int64_t s = 0;
    for (std::size_t v = 0; v < weights_.size(); ++v) s += weights_[v] * m[static_cast<int>(v)];
    return s;
  }

  std::strong_ordering compare(const Monomial& a, const Monomial& b) const {
    if (auto c = a.degree() <=> b.degree(); c != 0) return c;
    if (!weights_.empty()) {
      if (auto c = weight(a) <=> weight(b); c != 0) return c;
    }
    for (auto it = sequence_.rbegin(); it != sequence_.rend(); ++it) {
      if (auto c = b[*it] <=> a[*it]; c != 0) return c;
    }
    return std::strong_ordering::equal;
  }
  bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }

  /// The order a <=_g b iff g(a) <= g(b).
  MonomialOrder twisted(const WeylElement& g) const;

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

 private:
  std::vector<std::int64_t> weights_;  // empty means all zero
  std::vector<int> sequence_;
};

/// Comparator form of MonomialOrder::twisted.
inline MonomialOrder twist_order(const MonomialOrder& ord, const WeylElement& g) {
  return ord.twisted(g);
}

template <class S>
struct Term {
  S coeff;
  Monomial mono;
};

/// Sparse polynomial; terms are kept sorted by descending canonical storage order
/// with no zero coefficients.
template <class S>
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(S c, Monomial m) {
    if (!coxlab::is_zero(c)) terms_.push_back({std::move(c), m});
  }
  static Polynomial monomial(const Monomial& m) { return Polynomial(S(1), m); }
  /// Combines duplicates and drops zeros.
  static Polynomial from_terms(std::vector<Term<S>> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const Term<S>& a, const Term<S>& b) { return a.mono > b.mono; });
    Polynomial p;
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
        p.terms_.back().coeff += t.coeff;
      } else {
        if (!p.terms_.empty() && coxlab::is_zero(p.terms_.back().coeff)) p.terms_.pop_back();
        p.terms_.push_back(std::move(t));
      }
    }
    if (!p.terms_.empty() && coxlab::is_zero(p.terms_.back().coeff)) p.terms_.pop_back();
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term<S>>& terms() const { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  std::vector<Monomial> support() const {
    std::vector<Monomial> out;
    for (const auto& t : terms_) out.push_back(t.mono);
    return out;
  }
  S coefficient(const Monomial& m) const {
    for (const auto& t : terms_) {
      if (t.mono == m) return t.coeff;
    }
    return S(0);
  }

  /// Largest term under ord; requires a nonzero polynomial.
  const Term<S>& leading_term(const MonomialOrder& ord) const {
    if (terms_.empty()) throw std::invalid_argument("leading term of the zero polynomial");
    auto best = terms_.begin();
    for (auto it = terms_.begin() + 1; it != terms_.end(); ++it) {
      if (ord.less(best->mono, it->mono)) best = it;
    }
    return *best;
  }

  Polynomial& operator+=(const Polynomial& o) { return *this = combine(*this, o, S(1)); }
  Polynomial& operator-=(const Polynomial& o) { return *this = combine(*this, o, S(-1)); }
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return combine(a, b, S(1)); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return combine(a, b, S(-1)); }
  friend Polynomial operator-(const Polynomial& a) { return S(-1) * a; }
  friend Polynomial operator*(const S& c, const Polynomial& a) {
    Polynomial p;
    if (coxlab::is_zero(c)) return p;
    p.terms_ = a.terms_;
    for (auto& t : p.terms_) t.coeff *= c;
    return p;
  }
  friend Polynomial operator*(const Monomial& m, const Polynomial& a) {
    Polynomial p = a;
    for (auto& t : p.terms_) t.mono = t.mono * m;
    return p;  // multiplying by a monomial preserves the storage order
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    std::vector<Term<S>> terms;
    terms.reserve(a.size() * b.size());
    for (const auto& s : a.terms_) {
      for (const auto& t : b.terms_) terms.push_back({s.coeff * t.coeff, s.mono * t.mono});
    }
    return from_terms(std::move(terms));
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      if (a.terms_[i].mono != b.terms_[i].mono || !(a.terms_[i].coeff == b.terms_[i].coeff)) {
        return false;
      }
    }
    return true;
  }

 private:
  static Polynomial combine(const Polynomial& a, const Polynomial& b, const S& sign) {
    Polynomial p;
    p.terms_.reserve(a.size() + b.size());
    auto i = a.terms_.begin();
    auto j = b.terms_.begin();
    while (i != a.terms_.end() || j != b.terms_.end()) {
      if (j == b.terms_.end() || (i != a.terms_.end() && i->mono > j->mono)) {
        p.terms_.push_back(*i++);
      } else if (i == a.terms_.end() || j->mono > i->mono) {
        p.terms_.push_back({sign * j->coeff, j->mono});
        ++j;
      } else {
        S c = i->coeff + sign * j->coeff;
        if (!coxlab::is_zero(c)) p.terms_.push_back({std::move(c), i->mono});
        ++i;
        ++j;
      }
    }
    return p;
  }

  std::vector<Term<S>> terms_;
};

/// Pic degree shared by all terms, or nullopt for the zero or an inhomogeneous polynomial.
template <class S>
std::optional<DivisorClass> homogeneous_degree(const CoxRing& ring, const Polynomial<S>& f) {
  if (f.is_zero()) return std::nullopt;
  const DivisorClass d = ring.pic_degree(f.terms().front().mono);
  for (const auto& t : f) {
    if (ring.pic_degree(t.mono) != d) return std::nullopt;
  }
  return d;
}

template <class S>
Polynomial<S> act(const CoxRing& ring, const WeylElement& g, const Polynomial<S>& f) {
  std::vector<Term<S>> terms;
  for (const auto& t : f) terms.push_back({t.coeff, ring.act(g, t.mono)});
  return Polynomial<S>::from_terms(std::move(terms));
}

/// Terms in canonical storage order, e.g. "-3*f12*e1^2 + f34*g5"; zero prints as "0".
template <class S>
std::string format(const CoxRing& ring, const Polynomial<S>& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : f) {
    std::string c = t.coeff.str();
    bool negative = !c.empty() && c[0] == '-';
    if (negative) c.erase(0, 1);
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    if (t.mono.is_one()) {
      out += c;
    } else {
      if (c != "1") out += c + "*";
      out += ring.format(t.mono);
    }
  }
  return out;
}

/// Inverse of format; also accepts any arrangement of factors within a term.
template <class S>
Polynomial<S> parse_polynomial(const CoxRing& ring, std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s.empty()) throw std::invalid_argument("empty polynomial");
  std::vector<Term<S>> terms;
  std::size_t pos = 0;
  while (pos < s.size()) {
    S sign(1);
    if (s[pos] == '+' || s[pos] == '-') {
      if (s[pos] == '-') sign = S(-1);
      ++pos;
    }
    std::size_t end = pos;
    while (end < s.size() && s[end] != '+' && s[end] != '-') {
      ++end;
    }
    const std::string_view body = std::string_view(s).substr(pos, end - pos);
    if (body.empty()) throw std::invalid_argument("bad polynomial '" + std::string(text) + "'");
    S coeff = sign;
    Monomial mono;
    std::size_t start = 0;
    while (start <= body.size()) {
      const std::size_t star = body.find('*', start);
      const std::string_view factor = body.substr(start, star == std::string_view::npos ? body.size() - start : star - start);
      if (factor.empty()) throw std::invalid_argument("bad polynomial '" + std::string(text) + "'");
      if (std::isdigit(static_cast<unsigned char>(factor[0]))) {
        coeff = coeff * S::parse(factor);
      } else {
        mono = mono * ring.parse_monomial(factor);
      }
      if (star == std::string_view::npos) break;
      start = star + 1;
    }
    terms.push_back({coeff, mono});
    pos = end;
  }
  return Polynomial<S>::from_terms(std::move(terms));
}

}  // namespace coxlab
