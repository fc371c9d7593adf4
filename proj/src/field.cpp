#include "hwv/field.hpp"

#include <cctype>

namespace hwv {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Integer parse_integer(std::string_view text) {
  if (!is_integer_literal(text)) {
    throw DomainError("not an integer literal: '" + std::string(text) + "'");
  }
  std::string s(text);
  if (s[0] == '+') s.erase(0, 1);
  return Integer(s, 10);
}

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
  return make_rational(num, den);
}

Rational make_rational(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Integer& value) { return value.get_str(10); }

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str(10);
  return value.get_num().get_str(10) + "/" + value.get_den().get_str(10);
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (p < 3 || p >= (std::uint64_t{1} << 63) || !is_probable_prime(p)) {
    throw DomainError("modulus " + std::to_string(p) + " is not an odd prime below 2^63");
  }
}

PrimeField::value_type PrimeField::pow(value_type a, std::uint64_t e) const {
  value_type result = 1;
  while (e != 0) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

PrimeField::value_type PrimeField::inv(value_type a) const {
  if (a == 0) throw DomainError("division by zero in F_" + std::to_string(p_));
  return pow(a, p_ - 2);
}

PrimeField::value_type PrimeField::from_integer(const Integer& z) const {
  static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
  return mpz_fdiv_ui(z.get_mpz_t(), p_);
}

PrimeField::value_type PrimeField::from_rational(const Rational& q) const {
  value_type den = from_integer(q.get_den());
  if (den == 0) {
    throw DomainError("denominator of " + to_string(q) + " vanishes mod " + std::to_string(p_));
  }
  return div(from_integer(q.get_num()), den);
}

PrimeField::value_type PrimeField::from_int(std::int64_t v) const {
  if (v >= 0) return static_cast<value_type>(v) % p_;
  auto mag = static_cast<value_type>(-(v + 1)) + 1;
  return neg(mag % p_);
}

Rational PrimeField::to_rational(value_type a) const { return Rational(Integer(static_cast<unsigned long>(a))); }

Integer PrimeField::to_signed(value_type a) const {
  Integer z(static_cast<unsigned long>(a));
  if (a > p_ / 2) z -= Integer(static_cast<unsigned long>(p_));
  return z;
}

std::string PrimeField::name() const { return "F_" + std::to_string(p_); }

bool is_probable_prime(std::uint64_t n) {
  Integer z(static_cast<unsigned long>(n));
  return mpz_probab_prime_p(z.get_mpz_t(), 40) != 0;
}

}  // namespace hwv
