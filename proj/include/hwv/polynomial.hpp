#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hwv/field.hpp"

namespace hwv {

/// Univariate polynomial with rational coefficients, lowest degree first.
/// The coefficient list never has a trailing zero; the zero polynomial is empty.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coefficients);

  static UniPoly constant(const Rational& c) { return UniPoly({c}); }
  static UniPoly monomial(const Rational& c, std::size_t degree);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  Rational coefficient(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }
  Rational leading() const { return is_zero() ? Rational(0) : coeffs_.back(); }

  Rational operator()(const Rational& x) const;

  UniPoly derivative() const;
  UniPoly monic() const;
  /// Coprime integer coefficients with a positive leading coefficient.
  UniPoly primitive() const;

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const Rational& c, const UniPoly& a);
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }

  /// Human-readable form, e.g. "-730140480*q^3 - 730140480*q^2".
  std::string to_string(const std::string& var = "q") const;

 private:
  std::vector<Rational> coeffs_;
};

/// Quotient and remainder of Euclidean division; throws on a zero divisor.
std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);

/// Monic gcd; gcd(0, 0) = 0.
UniPoly gcd(const UniPoly& a, const UniPoly& b);

/// Minimal-degree polynomial through the points. Repeated abscissae must carry
/// equal values. With `max_degree`, a result of higher degree is reported as
/// inconsistent data.
UniPoly interpolate(std::span<const std::pair<Rational, Rational>> points,
                    std::optional<int> max_degree = std::nullopt);

/// Distinct rational roots in increasing order.
std::vector<Rational> rational_roots(const UniPoly& p);

struct CommonRoots {
  std::vector<Rational> roots;
  UniPoly gcd;
};

/// Rational roots shared by all inputs, together with their monic gcd.
CommonRoots common_roots(std::span<const UniPoly> polys);

}  // namespace hwv
