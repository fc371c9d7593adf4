#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hwv/field.hpp"

namespace hwv {

/// Combines residues r_i mod p_i (pairwise coprime) into the unique value in [0, prod p_i).
Integer crt(std::span<const std::uint64_t> residues, std::span<const std::uint64_t> moduli);

/// Symmetric lift of a residue modulo m into (-m/2, m/2].
Integer symmetric_lift(const Integer& residue, const Integer& modulus);

/// Wang's rational reconstruction: finds n/d with |n|, d <= sqrt(m/2) and
/// n = d * residue (mod m). Empty when no such fraction exists.
std::optional<Rational> rational_reconstruct(const Integer& residue, const Integer& modulus);

/// Consecutive primes below 2^62, starting at the default primes.
std::vector<std::uint64_t> default_primes(std::size_t count);

}  // namespace hwv
