#include "coxlab/scalar.hpp"

#include <cctype>

namespace coxlab {

namespace {

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  std::size_t k = 0;
  if (k < s.size() && (s[k] == '+' || s[k] == '-')) ++k;
  if (k == s.size()) throw std::invalid_argument("bad rational '" + std::string(whole) + "'");
  for (std::size_t i = k; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
      throw std::invalid_argument("bad rational '" + std::string(whole) + "'");
    }
  }
  std::string digits(s[0] == '+' ? s.substr(1) : s);
  return mpz_class(digits, 10);
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  const std::size_t slash = s.find('/');
  if (slash == std::string::npos) return Rational(mpq_class(parse_integer(s, text)));
  const mpz_class num = parse_integer(std::string_view(s).substr(0, slash), text);
  const mpz_class den = parse_integer(std::string_view(s).substr(slash + 1), text);
  if (den == 0) throw std::domain_error("rational with zero denominator");
  return Rational(mpq_class(num, den));
}

}  // namespace coxlab
