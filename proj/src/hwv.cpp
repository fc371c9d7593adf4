#include "hwv/hwv.hpp"

#include <algorithm>

namespace hwv {

HwvSpec::HwvSpec(PartitionTriple lambda, Permutation tau1, Permutation tau2)
    : lambda_(std::move(lambda)), tau1_(std::move(tau1)), tau2_(std::move(tau2)) {
  const auto d = static_cast<std::size_t>(lambda_.degree());
  if (tau1_.size() != d || tau2_.size() != d) {
    throw DomainError("permutations of length " + std::to_string(tau1_.size()) + "/" + std::to_string(tau2_.size()) +
                      " for a weight of degree " + std::to_string(d));
  }
}

BlockStructure block_structure(const HwvSpec& spec) {
  const int d = spec.degree();
  BlockStructure bs;
  bs.degree = d;
  const Permutation identity = Permutation::identity(d);
  const std::array<const Permutation*, 3> taus = {&identity, &spec.tau1(), &spec.tau2()};
  for (std::size_t leg = 0; leg < 3; ++leg) {
    LegBlocks& lb = bs.legs[leg];
    lb.block_of.assign(static_cast<std::size_t>(d), -1);
    lb.position_of.assign(static_cast<std::size_t>(d), -1);
    std::size_t position = 0;
    // Columns of the dual weight: the transpose's parts, shortest first.
    std::vector<int> sizes = spec.lambda()[leg].transpose().parts();
    std::reverse(sizes.begin(), sizes.end());
    for (int size : sizes) {
      std::vector<int> block;
      for (int i = 0; i < size; ++i, ++position) {
        const int slot = (*taus[leg])(position);
        lb.block_of[static_cast<std::size_t>(slot)] = static_cast<int>(lb.blocks.size());
        lb.position_of[static_cast<std::size_t>(slot)] = i;
        block.push_back(slot);
      }
      lb.blocks.push_back(std::move(block));
    }
  }
  return bs;
}

std::string EvalDomain::name() const { return prime ? "F_" + std::to_string(*prime) : "rational"; }

}  // namespace hwv
