#pragma once

// Exact coefficient fields: unbounded rationals and small prime fields.

#include <Eigen/Core>
#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace coxlab {

class Rational {
 public:
  Rational() = default;
  template <std::integral I>
  Rational(I n) : value_(static_cast<long>(n)) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
  }
  explicit Rational(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }

  /// Parses "n" or "n/d" with optional sign; throws std::invalid_argument.
  static Rational parse(std::string_view text);
  static std::string field_name() { return "QQ"; }

  const mpq_class& value() const { return value_; }
  bool is_zero() const { return sgn(value_) == 0; }
  int sign() const { return sgn(value_); }
  std::string str() const { return value_.get_str(); }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    value_ /= o.value_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_;
};

/// Integers modulo a prime P < 2^31.
template <std::uint32_t P>
class Fp {
  static_assert(P > 2 && P < (1u << 31), "modulus must be an odd prime below 2^31");

 public:
  static constexpr std::uint32_t modulus = P;

  constexpr Fp() = default;
  template <std::integral I>
  constexpr Fp(I n) : v_(reduce(static_cast<std::int64_t>(n))) {}  // NOLINT(google-explicit-constructor)
  explicit Fp(const Rational& q) {
    Fp num = from_mpz(q.value().get_num());
    Fp den = from_mpz(q.value().get_den());
    *this = num / den;
  }

  static Fp parse(std::string_view text) { return Fp(Rational::parse(text)); }
  static std::string field_name() { return "ZZ/" + std::to_string(P); }

  constexpr std::uint32_t value() const { return v_; }
  constexpr bool is_zero() const { return v_ == 0; }
  /// Symmetric representative in (-P/2, P/2].
  std::int64_t signed_value() const {
    return v_ > P / 2 ? static_cast<std::int64_t>(v_) - P : static_cast<std::int64_t>(v_);
  }
  std::string str() const { return std::to_string(signed_value()); }

  Fp inverse() const {
    if (v_ == 0) throw std::domain_error("division by zero in prime field");
    std::int64_t a = v_, b = P, x0 = 1, x1 = 0;
    while (b != 0) {
      const std::int64_t q = a / b;
      a -= q * b; std::swap(a, b);
      x0 -= q * x1; std::swap(x0, x1);
    }
    return Fp(x0);
  }

  Fp& operator+=(Fp o) { v_ = (v_ + o.v_) % P; return *this; }
  Fp& operator-=(Fp o) { v_ = (v_ + P - o.v_) % P; return *this; }
  Fp& operator*=(Fp o) {
    v_ = static_cast<std::uint32_t>((static_cast<std::uint64_t>(v_) * o.v_) % P);
    return *this;
  }
  Fp& operator/=(Fp o) { return *this *= o.inverse(); }

  friend Fp operator+(Fp a, Fp b) { return a += b; }
  friend Fp operator-(Fp a, Fp b) { return a -= b; }
  friend Fp operator*(Fp a, Fp b) { return a *= b; }
  friend Fp operator/(Fp a, Fp b) { return a /= b; }
  friend Fp operator-(Fp a) { return Fp() - a; }
  friend constexpr bool operator==(Fp a, Fp b) = default;

 private:
  static constexpr std::uint32_t reduce(std::int64_t n) {
    n %= static_cast<std::int64_t>(P);
    return static_cast<std::uint32_t>(n < 0 ? n + P : n);
  }
  static Fp from_mpz(const mpz_class& z) {
    return Fp(static_cast<std::int64_t>(mpz_fdiv_ui(z.get_mpz_t(), P)));
  }

  std::uint32_t v_ = 0;
};

using Fp32003 = Fp<32003>;
using Fp65521 = Fp<65521>;

template <class S>
concept ExactField = requires(S a, S b, std::string_view text) {
  { S(0) } -> std::convertible_to<S>;
  { a + b } -> std::convertible_to<S>;
  { a - b } -> std::convertible_to<S>;
  { a * b } -> std::convertible_to<S>;
  { a / b } -> std::convertible_to<S>;
  { -a } -> std::convertible_to<S>;
  { a == b } -> std::convertible_to<bool>;
  { a.is_zero() } -> std::convertible_to<bool>;
  { a.str() } -> std::convertible_to<std::string>;
  { S::parse(text) } -> std::convertible_to<S>;
  { S::field_name() } -> std::convertible_to<std::string>;
};

inline bool is_zero(const Rational& a) { return a.is_zero(); }
template <std::uint32_t P>
bool is_zero(Fp<P> a) { return a.is_zero(); }

}  // namespace coxlab

namespace Eigen {

template <>
struct NumTraits<coxlab::Rational> : GenericNumTraits<coxlab::Rational> {
  using Real = coxlab::Rational;
  using NonInteger = coxlab::Rational;
  using Nested = coxlab::Rational;
  using Literal = coxlab::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 100,
    MulCost = 100
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

template <std::uint32_t P>
struct NumTraits<coxlab::Fp<P>> : GenericNumTraits<coxlab::Fp<P>> {
  using Real = coxlab::Fp<P>;
  using NonInteger = coxlab::Fp<P>;
  using Nested = coxlab::Fp<P>;
  using Literal = coxlab::Fp<P>;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 0,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 4
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
