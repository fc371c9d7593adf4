#include "hwv/evaluate.hpp"

namespace hwv {

std::vector<int> greedy_visit_order(const BlockStructure& bs) {
  const auto d = static_cast<std::size_t>(bs.degree);
  std::array<std::vector<std::size_t>, 3> filled;
  for (std::size_t leg = 0; leg < 3; ++leg) filled[leg].assign(bs.legs[leg].blocks.size(), 0);
  std::vector<bool> visited(d, false);
  std::vector<int> order;
  order.reserve(d);
  for (std::size_t step = 0; step < d; ++step) {
    std::size_t best = d;
    std::array<long, 3> best_score{};
    for (std::size_t s = 0; s < d; ++s) {
      if (visited[s]) continue;
      long closes = 0, fill = 0, opens = 0;
      for (std::size_t leg = 0; leg < 3; ++leg) {
        const auto b = static_cast<std::size_t>(bs.legs[leg].block_of[s]);
        const std::size_t have = filled[leg][b];
        if (have + 1 == bs.legs[leg].blocks[b].size()) ++closes;
        if (have == 0) ++opens;
        fill += static_cast<long>(have);
      }
      std::array<long, 3> score = {closes, fill, -opens};
      if (best == d || score > best_score) {
        best = s;
        best_score = score;
      }
    }
    visited[best] = true;
    order.push_back(static_cast<int>(best));
    for (std::size_t leg = 0; leg < 3; ++leg) ++filled[leg][static_cast<std::size_t>(bs.legs[leg].block_of[best])];
  }
  return order;
}

Rational evaluate(const HwvSpec& spec, const RankDecomposedTensor& t, const EvalDomain& domain,
                  const EvalOptions& options) {
  if (domain.prime) {
    PrimeField field(*domain.prime);
    return field.to_rational(evaluate(spec, t, field, options));
  }
  return evaluate(spec, t, RationalField{}, options);
}

}  // namespace hwv
