#include "hwv/modular.hpp"

namespace hwv {

Integer crt(std::span<const std::uint64_t> residues, std::span<const std::uint64_t> moduli) {
  if (residues.size() != moduli.size() || moduli.empty()) {
    throw DomainError("crt needs one residue per modulus");
  }
  Integer value(static_cast<unsigned long>(residues[0] % moduli[0]));
  Integer modulus(static_cast<unsigned long>(moduli[0]));
  Integer p, inv, diff;
  for (std::size_t i = 1; i < moduli.size(); ++i) {
    p = static_cast<unsigned long>(moduli[i]);
    if (mpz_invert(inv.get_mpz_t(), modulus.get_mpz_t(), p.get_mpz_t()) == 0) {
      throw DomainError("crt moduli are not coprime");
    }
    diff = Integer(static_cast<unsigned long>(residues[i])) - value;
    diff *= inv;
    mpz_fdiv_r(diff.get_mpz_t(), diff.get_mpz_t(), p.get_mpz_t());
    value += modulus * diff;
    modulus *= p;
  }
  return value;
}

Integer symmetric_lift(const Integer& residue, const Integer& modulus) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), residue.get_mpz_t(), modulus.get_mpz_t());
  if (2 * r > modulus) r -= modulus;
  return r;
}

std::optional<Rational> rational_reconstruct(const Integer& residue, const Integer& modulus) {
  Integer bound;
  Integer half = modulus / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());

  Integer r0 = modulus, r1;
  mpz_fdiv_r(r1.get_mpz_t(), residue.get_mpz_t(), modulus.get_mpz_t());
  Integer t0 = 0, t1 = 1, q, tmp;
  while (r1 > bound) {
    mpz_fdiv_q(q.get_mpz_t(), r0.get_mpz_t(), r1.get_mpz_t());
    tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (sgn(t1) == 0 || abs(t1) > bound) return std::nullopt;
  Integer g;
  mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
  if (g != 1) return std::nullopt;
  return make_rational(r1, t1);
}

std::vector<std::uint64_t> default_primes(std::size_t count) {
  std::vector<std::uint64_t> primes;
  std::uint64_t candidate = kDefaultPrimeA;
  while (primes.size() < count) {
    if (is_probable_prime(candidate)) primes.push_back(candidate);
    candidate -= 2;
  }
  return primes;
}

}  // namespace hwv
