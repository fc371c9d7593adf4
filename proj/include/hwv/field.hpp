#pragma once

// Exact scalar domains: arbitrary-precision integers and rationals (GMP), and
// prime fields with word-sized moduli.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace hwv {

using Integer = mpz_class;
using Rational = mpq_class;

/// Raised when an operation's precondition on its inputs does not hold.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parses "123", "-4/6" or "7/1" into a canonical rational.
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

/// Canonical decimal form: "n" for integers, "n/d" otherwise.
std::string to_string(const Rational& value);
std::string to_string(const Integer& value);

Rational make_rational(const Integer& num, const Integer& den);

/// The field of rationals. Values are always canonical (gcd 1, den > 0).
class RationalField {
 public:
  using value_type = Rational;

  value_type zero() const { return Rational(0); }
  value_type one() const { return Rational(1); }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type div(const value_type& a, const value_type& b) const {
    if (b == 0) throw DomainError("division by zero");
    return a / b;
  }
  value_type inv(const value_type& a) const { return div(one(), a); }
  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  bool equal(const value_type& a, const value_type& b) const { return a == b; }

  value_type from_rational(const Rational& q) const { return q; }
  value_type from_int(std::int64_t v) const { return Rational(static_cast<long>(v)); }
  Rational to_rational(const value_type& a) const { return a; }
  std::string name() const { return "rational"; }
};

/// Z/pZ for an odd prime p < 2^63. Residues are kept in [0, p).
class PrimeField {
 public:
  using value_type = std::uint64_t;

  explicit PrimeField(std::uint64_t p);

  std::uint64_t modulus() const { return p_; }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type add(value_type a, value_type b) const {
    value_type s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + (p_ - b); }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>(static_cast<unsigned __int128>(a) * b % p_);
  }
  value_type pow(value_type a, std::uint64_t e) const;
  value_type inv(value_type a) const;
  value_type div(value_type a, value_type b) const { return mul(a, inv(b)); }
  bool is_zero(value_type a) const { return a == 0; }
  bool equal(value_type a, value_type b) const { return a == b; }

  value_type from_integer(const Integer& z) const;
  /// Throws DomainError when p divides the denominator.
  value_type from_rational(const Rational& q) const;
  value_type from_int(std::int64_t v) const;
  /// The residue as an integer in [0, p).
  Rational to_rational(value_type a) const;
  /// Symmetric representative in (-p/2, p/2].
  Integer to_signed(value_type a) const;
  std::string name() const;

 private:
  std::uint64_t p_;
};

bool is_probable_prime(std::uint64_t n);

/// Two fixed 62-bit primes used as the default evaluation moduli.
inline constexpr std::uint64_t kDefaultPrimeA = (std::uint64_t{1} << 62) - 57;
inline constexpr std::uint64_t kDefaultPrimeB = (std::uint64_t{1} << 62) - 87;

}  // namespace hwv
