#include "hwv/matrix.hpp"

namespace hwv {

namespace {

// Clears denominators row by row; returns the per-row scale factors.
Matrix<Integer> integer_rows(const Matrix<Rational>& m, std::vector<Integer>* scales) {
  Matrix<Integer> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Rational scaled = m(i, j) * l;
      out(i, j) = scaled.get_num();
    }
    if (scales) scales->push_back(l);
  }
  return out;
}

}  // namespace

std::vector<std::size_t> bareiss_echelon(Matrix<Integer>& m) {
  std::vector<std::size_t> pivots;
  Integer prev = 1;
  Integer tmp;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, r);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      for (std::size_t j = c + 1; j < m.cols(); ++j) {
        tmp = m(r, c) * m(i, j) - m(i, c) * m(r, j);
        mpz_divexact(m(i, j).get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
      }
      m(i, c) = 0;
    }
    prev = m(r, c);
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(const RationalField&, const Matrix<Rational>& m) {
  auto z = integer_rows(m, nullptr);
  return bareiss_echelon(z).size();
}

std::vector<std::vector<Rational>> nullspace(const RationalField&, const Matrix<Rational>& m) {
  auto z = integer_rows(m, nullptr);
  auto pivots = bareiss_echelon(z);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;

  std::vector<std::vector<Rational>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> x(m.cols(), Rational(0));
    x[f] = 1;
    for (std::size_t k = pivots.size(); k-- > 0;) {
      const std::size_t pc = pivots[k];
      Rational acc = 0;
      for (std::size_t j = pc + 1; j < m.cols(); ++j) {
        if (sgn(x[j]) != 0) acc += Rational(z(k, j)) * x[j];
      }
      x[pc] = -acc / Rational(z(k, pc));
    }
    auto ints = primitive_integer_vector(x);
    std::vector<Rational> v;
    v.reserve(ints.size());
    for (auto& e : ints) v.emplace_back(e);
    basis.push_back(std::move(v));
  }
  return basis;
}

Rational determinant(const RationalField&, const Matrix<Rational>& m) {
  if (m.rows() != m.cols()) throw DomainError("determinant of a non-square matrix");
  if (m.rows() == 0) return 1;
  std::vector<Integer> scales;
  auto z = integer_rows(m, &scales);
  // Track row swaps separately: Bareiss with pivoting permutes rows.
  const std::size_t n = m.rows();
  int sign = 1;
  Integer prev = 1;
  Integer tmp;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(z(p, c)) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      z.swap_rows(p, c);
      sign = -sign;
    }
    for (std::size_t i = c + 1; i < n; ++i) {
      for (std::size_t j = c + 1; j < n; ++j) {
        tmp = z(c, c) * z(i, j) - z(i, c) * z(c, j);
        mpz_divexact(z(i, j).get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
      }
      z(i, c) = 0;
    }
    prev = z(c, c);
  }
  Rational det(z(n - 1, n - 1));
  if (sign < 0) det = -det;
  Integer scale = 1;
  for (const auto& s : scales) scale *= s;
  return det / Rational(scale);
}

std::vector<Integer> primitive_integer_vector(std::span<const Rational> v) {
  Integer l = 1;
  for (const auto& q : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  std::vector<Integer> out;
  out.reserve(v.size());
  Integer g = 0;
  for (const auto& q : v) {
    Rational scaled = q * l;
    out.push_back(scaled.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.back().get_mpz_t());
  }
  if (g == 0) return out;
  int lead = 0;
  for (const auto& e : out) {
    if (sgn(e) != 0) {
      lead = sgn(e);
      break;
    }
  }
  for (auto& e : out) {
    mpz_divexact(e.get_mpz_t(), e.get_mpz_t(), g.get_mpz_t());
    if (lead < 0) e = -e;
  }
  return out;
}

}  // namespace hwv
