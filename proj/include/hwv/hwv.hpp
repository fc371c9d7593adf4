#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hwv/combinatorics.hpp"
#include "hwv/field.hpp"

namespace hwv {

/// A highest-weight vector phi_lambda (e, tau1, tau2) P_d, stored as its
/// weight and the permutations acting on legs 2 and 3.
class HwvSpec {
 public:
  HwvSpec() = default;
  HwvSpec(PartitionTriple lambda, Permutation tau1, Permutation tau2);

  const PartitionTriple& lambda() const { return lambda_; }
  const Permutation& tau1() const { return tau1_; }
  const Permutation& tau2() const { return tau2_; }
  int degree() const { return lambda_.degree(); }

  auto operator<=>(const HwvSpec&) const = default;

 private:
  PartitionTriple lambda_;
  Permutation tau1_, tau2_;
};

/// The determinant blocks of one leg. Block b holds `blocks[b]` (slots in
/// column order); `block_of` and `position_of` invert that map.
struct LegBlocks {
  std::vector<std::vector<int>> blocks;
  std::vector<int> block_of;
  std::vector<int> position_of;
};

struct BlockStructure {
  int degree = 0;
  std::array<LegBlocks, 3> legs;
};

/// Leg l splits positions 0..d-1 into consecutive runs whose lengths are the
/// parts of the transpose of lambda^(l), shortest first (the column order of
/// the dual weight lambda*). Position p of leg 2 (resp. 3) holds the tensor
/// factor in slot tau1(p) (resp. tau2(p)); leg 1 uses the identity.
///
/// A run of length m contributes the Slater determinant e*_n ^ ... ^ e*_{n-m+1},
/// the minor on coordinates n, n-1, ..., n-m+1 in that order. This is the top
/// m x m minor after reversing the coordinate order (see reversed_coordinates),
/// and makes the evaluation invariant under upper unitriangular matrices.
BlockStructure block_structure(const HwvSpec& spec);

/// Vector with its coordinates in reverse order.
template <class T>
std::vector<T> reversed_coordinates(const std::vector<T>& v) {
  return std::vector<T>(v.rbegin(), v.rend());
}

/// Scalar domain for evaluations: the rationals, or F_p when a prime is set.
struct EvalDomain {
  std::optional<std::uint64_t> prime;

  static EvalDomain rational() { return {}; }
  static EvalDomain modular(std::uint64_t p) { return {p}; }
  std::string name() const;
};

}  // namespace hwv
