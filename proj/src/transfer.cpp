#include "hwv/transfer.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "hwv/random.hpp"

namespace hwv {

namespace {

std::size_t binomial(std::size_t m, std::size_t s) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < s; ++i) out = out * (m - i) / (i + 1);
  return out;
}

struct GlobalBlocks {
  std::vector<std::size_t> size;                 // by global block id
  std::vector<std::array<int, 3>> of_slot;       // global block per leg
  std::vector<std::array<int, 3>> position;      // position inside that block
};

GlobalBlocks globalize(const BlockStructure& bs) {
  GlobalBlocks g;
  const auto d = static_cast<std::size_t>(bs.degree);
  g.of_slot.assign(d, {});
  g.position.assign(d, {});
  int offset = 0;
  for (std::size_t leg = 0; leg < 3; ++leg) {
    const auto& lb = bs.legs[leg];
    for (const auto& block : lb.blocks) g.size.push_back(block.size());
    for (std::size_t s = 0; s < d; ++s) {
      g.of_slot[s][leg] = offset + lb.block_of[s];
      g.position[s][leg] = lb.position_of[s];
    }
    offset += static_cast<int>(lb.blocks.size());
  }
  return g;
}

// Sum over steps of log(state width) for a candidate order, and the order itself.
double greedy_pass(const GlobalBlocks& g, std::size_t d, Rng* rng, std::vector<int>& order) {
  std::vector<std::size_t> filled(g.size.size(), 0);
  std::vector<bool> used(d, false);
  order.clear();
  double total = 0;
  auto log_width = [&](const std::vector<std::size_t>& f) {
    double w = 0;
    for (std::size_t b = 0; b < f.size(); ++b) {
      if (f[b] > 0 && f[b] < g.size[b]) w += std::log(static_cast<double>(binomial(g.size[b], f[b])));
    }
    return w;
  };
  for (std::size_t step = 0; step < d; ++step) {
    int best = -1;
    double best_score = std::numeric_limits<double>::infinity();
    std::uint64_t best_key = 0;
    for (std::size_t s = 0; s < d; ++s) {
      if (used[s]) continue;
      for (int b : g.of_slot[s]) ++filled[static_cast<std::size_t>(b)];
      const double score = log_width(filled);
      for (int b : g.of_slot[s]) --filled[static_cast<std::size_t>(b)];
      const std::uint64_t key = rng ? rng->next() : 0;
      if (score < best_score - 1e-9 || (std::abs(score - best_score) <= 1e-9 && rng && key < best_key)) {
        best = static_cast<int>(s);
        best_score = score;
        best_key = key;
      }
    }
    used[static_cast<std::size_t>(best)] = true;
    for (int b : g.of_slot[static_cast<std::size_t>(best)]) ++filled[static_cast<std::size_t>(b)];
    order.push_back(best);
    total += std::exp(best_score);
  }
  return total;
}

}  // namespace

std::vector<int> transfer_visit_order(const BlockStructure& bs) {
  const auto d = static_cast<std::size_t>(bs.degree);
  const GlobalBlocks g = globalize(bs);
  std::vector<int> best, candidate;
  double best_cost = greedy_pass(g, d, nullptr, best);
  for (std::uint64_t attempt = 1; attempt <= 24; ++attempt) {
    Rng rng(derive_seed(0x7472616e73666572ULL, {attempt}));
    const double cost = greedy_pass(g, d, &rng, candidate);
    if (cost < best_cost) {
      best_cost = cost;
      best = candidate;
    }
  }
  return best;
}

TransferPlan::TransferPlan(const HwvSpec& spec, int n, const std::vector<int>& visit_order)
    : d_(spec.degree()), n_(n), bs_(block_structure(spec)) {
  if (n < 1) throw DomainError("tensor dimension must be positive");
  if (static_cast<int>(spec.lambda().max_length()) > n) {
    throw DomainError("weight has more parts than the tensor dimension n = " + std::to_string(n));
  }
  order_ = visit_order.empty() ? transfer_visit_order(bs_) : visit_order;
  std::vector<bool> seen(static_cast<std::size_t>(d_), false);
  if (order_.size() != static_cast<std::size_t>(d_)) throw DomainError("visit order has wrong length");
  for (int s : order_) {
    if (s < 0 || s >= d_ || seen[static_cast<std::size_t>(s)]) throw DomainError("visit order is not a permutation");
    seen[static_cast<std::size_t>(s)] = true;
  }

  // Subset codes of {0..m-1} with s elements, in increasing mask order.
  const auto nn = static_cast<std::size_t>(n);
  std::vector<std::vector<std::vector<std::uint32_t>>> masks(nn + 1);
  std::vector<std::vector<std::vector<std::uint32_t>>> index(nn + 1);
  moves_.assign(nn + 1, {});
  for (std::size_t m = 1; m <= nn; ++m) {
    masks[m].assign(m + 1, {});
    index[m].assign(m + 1, std::vector<std::uint32_t>(std::size_t{1} << m, 0));
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
      const auto s = static_cast<std::size_t>(std::popcount(mask));
      index[m][s][mask] = static_cast<std::uint32_t>(masks[m][s].size());
      masks[m][s].push_back(mask);
    }
    moves_[m].assign(m, {});
    for (std::size_t s = 0; s < m; ++s) {
      for (std::uint32_t mask : masks[m][s]) {
        std::vector<Move> mv;
        for (std::uint32_t i = 0; i < m; ++i) {
          if (mask & (1u << i)) continue;
          const int below = std::popcount(mask & ((1u << i) - 1));
          mv.push_back({i, index[m][s + 1][mask | (1u << i)], (below % 2) ? -1 : 1});
        }
        moves_[m][s].push_back(std::move(mv));
      }
    }
  }
  build(order_);
}

void TransferPlan::build(const std::vector<int>& order) {
  const GlobalBlocks g = globalize(bs_);
  std::vector<std::size_t> filled(g.size.size(), 0);
  std::vector<std::vector<int>> filled_positions(g.size.size());
  std::vector<int> layout;  // open global blocks, in opening order
  steps_.clear();
  max_width_ = 1;

  auto strides_of = [&](const std::vector<int>& lay, const std::vector<std::size_t>& f) {
    std::vector<std::int64_t> stride(lay.size(), 1);
    std::int64_t acc = 1;
    for (std::size_t i = lay.size(); i-- > 0;) {
      stride[i] = acc;
      const auto b = static_cast<std::size_t>(lay[i]);
      acc *= static_cast<std::int64_t>(binomial(g.size[b], f[b]));
    }
    return std::pair{stride, static_cast<std::size_t>(acc)};
  };

  for (int slot_i : order) {
    const auto slot = static_cast<std::size_t>(slot_i);
    Step st;
    for (int b : layout) {
      st.old_radix.push_back(static_cast<std::uint32_t>(binomial(g.size[static_cast<std::size_t>(b)], filled[static_cast<std::size_t>(b)])));
    }
    st.old_size = strides_of(layout, filled).second;

    std::vector<std::size_t> after = filled;
    for (int b : g.of_slot[slot]) ++after[static_cast<std::size_t>(b)];
    std::vector<int> new_layout;
    for (int b : layout) {
      if (after[static_cast<std::size_t>(b)] < g.size[static_cast<std::size_t>(b)]) new_layout.push_back(b);
    }
    for (int b : g.of_slot[slot]) {
      const auto bb = static_cast<std::size_t>(b);
      if (filled[bb] == 0 && after[bb] < g.size[bb]) new_layout.push_back(b);
    }
    const auto [new_stride, new_size] = strides_of(new_layout, after);
    st.new_size = new_size;
    max_width_ = std::max({max_width_, st.old_size, st.new_size});

    auto new_pos = [&](int b) -> int {
      auto it = std::find(new_layout.begin(), new_layout.end(), b);
      return it == new_layout.end() ? -1 : static_cast<int>(it - new_layout.begin());
    };
    st.carry_stride.assign(layout.size(), 0);
    for (std::size_t i = 0; i < layout.size(); ++i) {
      const int b = layout[i];
      const auto& touched = g.of_slot[slot];
      if (std::find(touched.begin(), touched.end(), b) != touched.end()) continue;
      st.carry_stride[i] = new_stride[static_cast<std::size_t>(new_pos(b))];
    }
    for (std::size_t leg = 0; leg < 3; ++leg) {
      const int b = g.of_slot[slot][leg];
      const auto bb = static_cast<std::size_t>(b);
      Touch& tc = st.touch[leg];
      tc.leg_block = b;
      auto it = std::find(layout.begin(), layout.end(), b);
      tc.old_digit = it == layout.end() ? -1 : static_cast<int>(it - layout.begin());
      const int np = new_pos(b);
      tc.new_stride = np < 0 ? 0 : new_stride[static_cast<std::size_t>(np)];
      const int p = g.position[slot][leg];
      int before = 0;
      for (int q : filled_positions[bb]) before += (q < p) ? 1 : 0;
      tc.sign = (before % 2) ? -1 : 1;
      tc.m = static_cast<std::uint32_t>(g.size[bb]);
      tc.s = static_cast<std::uint32_t>(filled[bb]);
      filled_positions[bb].push_back(p);
    }
    filled = std::move(after);
    layout = std::move(new_layout);
    steps_.push_back(std::move(st));
  }
}

}  // namespace hwv
