#pragma once

// Evaluation of a highest-weight vector at a rank-decomposed tensor:
//
//   f(t) = sum over j in [r]^d of  prod over legs l, blocks B of leg l:
//            det_|B| ( t^l_{j_s} : s in B, in block order )
//
// where det_m is the top m x m minor of the vectors with their coordinates
// reversed (block_structure in hwv.hpp explains why), and term coefficients
// are folded into the leg-1 vectors. The sum is walked
// depth-first over the slots; a partial assignment is abandoned as soon as the
// columns already placed in some block are linearly dependent in their top
// |B| coordinates, since that block's determinant is then zero whatever the
// remaining choices are.

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "hwv/hwv.hpp"
#include "hwv/matrix.hpp"
#include "hwv/tensor.hpp"
#include "hwv/transfer.hpp"

namespace hwv {

enum class Strategy {
  /// Exterior-power transfer (transfer.hpp): cost set by the block layout only.
  Transfer,
  /// Depth-first search over index assignments with determinant pruning.
  Backtrack,
};

struct EvalOptions {
  Strategy strategy = Strategy::Transfer;
  /// Slot visit order; empty selects the strategy's default heuristic.
  std::vector<int> visit_order;
  /// Skip the minor tables and use per-block incremental elimination.
  bool force_incremental = false;
  /// Largest (r+1)^m minor table built before falling back to elimination.
  std::size_t table_limit = std::size_t{1} << 22;
};

struct EvalStats {
  std::uint64_t nodes = 0;
  std::uint64_t leaves = 0;
  bool used_tables = false;
};

/// Static order that greedily closes blocks: at each step pick the slot that
/// completes the most blocks, then the one whose blocks are most filled, then
/// the one opening the fewest new blocks.
std::vector<int> greedy_visit_order(const BlockStructure& bs);

template <class Field>
class Evaluator {
 public:
  using T = typename Field::value_type;

  Evaluator(const Field& field, const HwvSpec& spec, const RankDecomposedTensor& t, EvalOptions options = {})
      : field_(field), bs_(block_structure(spec)), d_(spec.degree()), n_(t.n()), sum_(field.zero()) {
    if (static_cast<int>(spec.lambda().max_length()) > n_) {
      throw DomainError("weight has more parts than the tensor dimension n = " + std::to_string(n_));
    }
    load_terms(t);
    order_ = options.visit_order.empty() ? greedy_visit_order(bs_) : options.visit_order;
    check_order();
    build_plan();
    use_tables_ = !options.force_incremental && tables_fit(options.table_limit);
    stats_.used_tables = use_tables_;
    if (use_tables_) build_tables();
  }

  T run() {
    sum_ = field_.zero();
    stats_ = {0, 0, use_tables_};
    if (d_ == 0) return field_.one();
    if (r_ == 0) return field_.zero();
    if (use_tables_) {
      for (std::size_t leg = 0; leg < 3; ++leg) {
        for (std::size_t b = 0; b < codes_[leg].size(); ++b) codes_[leg][b] = empty_code_[leg][b];
      }
      dfs_tables(0, field_.one());
    } else {
      for (auto& per_leg : states_) {
        for (auto& st : per_leg) st.count = 0;
      }
      dfs_incremental(0, field_.one());
    }
    return sum_;
  }

  const EvalStats& stats() const { return stats_; }
  const std::vector<int>& visit_order() const { return order_; }
  std::size_t active_terms() const { return r_; }

 private:
  struct Step {
    std::array<std::uint32_t, 3> block{};
    std::array<std::uint32_t, 3> position{};
    std::array<std::uint64_t, 3> weight{};
    std::array<bool, 3> closes{};
  };

  // Minor table for one (leg, block size): codes are base-(r+1) digit strings
  // over block positions, digit r meaning "not yet assigned".
  struct MinorTable {
    std::size_t size = 0;
    std::vector<std::uint8_t> viable;
    std::vector<T> det;
  };

  struct BlockState {
    std::size_t m = 0;
    std::size_t count = 0;
    std::vector<T> columns;  // m x m, column i reduced against columns < i
    std::vector<std::uint32_t> pivot_row;
    std::vector<T> pivot_inv;
    int order_sign = 1;  // sign relating visit order to block order
  };

  void load_terms(const RankDecomposedTensor& t) {
    for (const auto& term : t.terms()) {
      T c = field_.from_rational(term.coeff);
      if (field_.is_zero(c)) continue;
      std::array<std::vector<T>, 3> legs;
      for (std::size_t leg = 0; leg < 3; ++leg) {
        legs[leg].reserve(static_cast<std::size_t>(n_));
        for (const auto& x : reversed_coordinates(term.leg(leg))) legs[leg].push_back(field_.from_rational(x));
      }
      for (auto& x : legs[0]) x = field_.mul(x, c);
      for (std::size_t leg = 0; leg < 3; ++leg) vectors_[leg].push_back(std::move(legs[leg]));
    }
    r_ = vectors_[0].size();
  }

  void check_order() const {
    std::vector<bool> seen(static_cast<std::size_t>(d_), false);
    if (order_.size() != static_cast<std::size_t>(d_)) throw DomainError("visit order has wrong length");
    for (int s : order_) {
      if (s < 0 || s >= d_ || seen[static_cast<std::size_t>(s)]) throw DomainError("visit order is not a permutation");
      seen[static_cast<std::size_t>(s)] = true;
    }
  }

  void build_plan() {
    plan_.resize(static_cast<std::size_t>(d_));
    for (std::size_t leg = 0; leg < 3; ++leg) {
      const auto& lb = bs_.legs[leg];
      std::vector<std::size_t> filled(lb.blocks.size(), 0);
      std::vector<std::vector<int>> insertion(lb.blocks.size());
      for (std::size_t depth = 0; depth < order_.size(); ++depth) {
        const auto slot = static_cast<std::size_t>(order_[depth]);
        const auto b = static_cast<std::size_t>(lb.block_of[slot]);
        const std::size_t m = lb.blocks[b].size();
        Step& st = plan_[depth];
        st.block[leg] = static_cast<std::uint32_t>(b);
        st.position[leg] = static_cast<std::uint32_t>(lb.position_of[slot]);
        st.weight[leg] = ipow(r_ + 1, m - 1 - static_cast<std::size_t>(lb.position_of[slot]));
        st.closes[leg] = (++filled[b] == m);
        insertion[b].push_back(lb.position_of[slot]);
      }
      codes_[leg].assign(lb.blocks.size(), 0);
      empty_code_[leg].assign(lb.blocks.size(), 0);
      states_[leg].resize(lb.blocks.size());
      for (std::size_t b = 0; b < lb.blocks.size(); ++b) {
        const std::size_t m = lb.blocks[b].size();
        empty_code_[leg][b] = ipow(r_ + 1, m) - 1;
        auto& st = states_[leg][b];
        st.m = m;
        st.columns.assign(m * m, field_.zero());
        st.pivot_row.assign(m, 0);
        st.pivot_inv.assign(m, field_.zero());
        st.order_sign = Permutation(insertion[b]).sign();
      }
    }
  }

  static std::uint64_t ipow(std::uint64_t base, std::size_t e) {
    std::uint64_t out = 1;
    for (std::size_t i = 0; i < e; ++i) out *= base;
    return out;
  }

  bool tables_fit(std::size_t limit) const {
    if (r_ == 0) return false;
    for (const auto& lb : bs_.legs) {
      for (const auto& block : lb.blocks) {
        double size = 1;
        for (std::size_t i = 0; i < block.size(); ++i) size *= static_cast<double>(r_ + 1);
        if (size > static_cast<double>(limit)) return false;
      }
    }
    return true;
  }

  void build_tables() {
    for (std::size_t leg = 0; leg < 3; ++leg) {
      tables_[leg].clear();
      for (const auto& block : bs_.legs[leg].blocks) {
        const std::size_t m = block.size();
        if (tables_[leg].size() <= m) tables_[leg].resize(m + 1);
        if (tables_[leg][m].size == 0) tables_[leg][m] = make_table(leg, m);
      }
      table_of_block_[leg].clear();
      for (const auto& block : bs_.legs[leg].blocks) table_of_block_[leg].push_back(&tables_[leg][block.size()]);
    }
  }

  MinorTable make_table(std::size_t leg, std::size_t m) {
    MinorTable tab;
    tab.size = static_cast<std::size_t>(ipow(r_ + 1, m));
    tab.viable.assign(tab.size, 0);
    tab.det.assign(tab.size, field_.zero());
    std::vector<std::size_t> digits(m);
    for (std::size_t code = 0; code < tab.size; ++code) {
      std::size_t c = code;
      for (std::size_t pos = m; pos-- > 0;) {
        digits[pos] = c % (r_ + 1);
        c /= r_ + 1;
      }
      std::vector<std::size_t> assigned;
      for (auto dgt : digits) {
        if (dgt != r_) assigned.push_back(dgt);
      }
      Matrix<T> cols(m, assigned.size(), field_.zero());
      for (std::size_t i = 0; i < assigned.size(); ++i) {
        for (std::size_t row = 0; row < m; ++row) cols(row, i) = vectors_[leg][assigned[i]][row];
      }
      if (assigned.size() == m) {
        tab.det[code] = determinant(field_, cols);
        tab.viable[code] = field_.is_zero(tab.det[code]) ? 0 : 1;
      } else {
        tab.viable[code] = (rank(field_, cols) == assigned.size()) ? 1 : 0;
      }
    }
    return tab;
  }

  void dfs_tables(std::size_t depth, const T& prod) {
    if (depth == static_cast<std::size_t>(d_)) {
      sum_ = field_.add(sum_, prod);
      ++stats_.leaves;
      return;
    }
    const Step& st = plan_[depth];
    const MinorTable& t0 = *table_of_block_[0][st.block[0]];
    const MinorTable& t1 = *table_of_block_[1][st.block[1]];
    const MinorTable& t2 = *table_of_block_[2][st.block[2]];
    std::uint64_t& code0 = codes_[0][st.block[0]];
    std::uint64_t& code1 = codes_[1][st.block[1]];
    std::uint64_t& code2 = codes_[2][st.block[2]];
    const std::uint64_t base0 = code0 - r_ * st.weight[0];
    const std::uint64_t base1 = code1 - r_ * st.weight[1];
    const std::uint64_t base2 = code2 - r_ * st.weight[2];
    const std::uint64_t saved0 = code0, saved1 = code1, saved2 = code2;
    for (std::uint64_t j = 0; j < r_; ++j) {
      const std::uint64_t c0 = base0 + j * st.weight[0];
      if (!t0.viable[c0]) continue;
      const std::uint64_t c1 = base1 + j * st.weight[1];
      if (!t1.viable[c1]) continue;
      const std::uint64_t c2 = base2 + j * st.weight[2];
      if (!t2.viable[c2]) continue;
      ++stats_.nodes;
      T p = prod;
      if (st.closes[0]) p = field_.mul(p, t0.det[c0]);
      if (st.closes[1]) p = field_.mul(p, t1.det[c1]);
      if (st.closes[2]) p = field_.mul(p, t2.det[c2]);
      code0 = c0;
      code1 = c1;
      code2 = c2;
      dfs_tables(depth + 1, p);
    }
    code0 = saved0;
    code1 = saved1;
    code2 = saved2;
  }

  // Appends column j of `leg` to the block state; false when it is dependent.
  bool push_column(BlockState& st, std::size_t leg, std::size_t j) {
    const std::size_t m = st.m;
    T* x = &st.columns[st.count * m];
    for (std::size_t row = 0; row < m; ++row) x[row] = vectors_[leg][j][row];
    for (std::size_t i = 0; i < st.count; ++i) {
      const T& f = x[st.pivot_row[i]];
      if (field_.is_zero(f)) continue;
      const T factor = field_.mul(f, st.pivot_inv[i]);
      const T* y = &st.columns[i * m];
      for (std::size_t row = 0; row < m; ++row) x[row] = field_.sub(x[row], field_.mul(factor, y[row]));
    }
    for (std::size_t row = 0; row < m; ++row) {
      if (!field_.is_zero(x[row])) {
        st.pivot_row[st.count] = static_cast<std::uint32_t>(row);
        st.pivot_inv[st.count] = field_.inv(x[row]);
        ++st.count;
        return true;
      }
    }
    return false;
  }

  T closed_determinant(const BlockState& st) const {
    T det = field_.one();
    int sign = st.order_sign;
    for (std::size_t i = 0; i < st.m; ++i) {
      det = field_.mul(det, st.columns[i * st.m + st.pivot_row[i]]);
      for (std::size_t k = i + 1; k < st.m; ++k) {
        if (st.pivot_row[k] < st.pivot_row[i]) sign = -sign;
      }
    }
    return sign < 0 ? field_.neg(det) : det;
  }

  void dfs_incremental(std::size_t depth, const T& prod) {
    if (depth == static_cast<std::size_t>(d_)) {
      sum_ = field_.add(sum_, prod);
      ++stats_.leaves;
      return;
    }
    const Step& st = plan_[depth];
    BlockState& s0 = states_[0][st.block[0]];
    BlockState& s1 = states_[1][st.block[1]];
    BlockState& s2 = states_[2][st.block[2]];
    for (std::size_t j = 0; j < r_; ++j) {
      if (!push_column(s0, 0, j)) continue;
      if (!push_column(s1, 1, j)) {
        --s0.count;
        continue;
      }
      if (!push_column(s2, 2, j)) {
        --s0.count;
        --s1.count;
        continue;
      }
      ++stats_.nodes;
      T p = prod;
      if (st.closes[0]) p = field_.mul(p, closed_determinant(s0));
      if (st.closes[1]) p = field_.mul(p, closed_determinant(s1));
      if (st.closes[2]) p = field_.mul(p, closed_determinant(s2));
      dfs_incremental(depth + 1, p);
      --s0.count;
      --s1.count;
      --s2.count;
    }
  }

  const Field& field_;
  BlockStructure bs_;
  int d_;
  int n_;
  std::size_t r_ = 0;
  std::array<std::vector<std::vector<T>>, 3> vectors_;
  std::vector<int> order_;
  std::vector<Step> plan_;
  bool use_tables_ = false;
  std::array<std::vector<MinorTable>, 3> tables_;
  std::array<std::vector<const MinorTable*>, 3> table_of_block_;
  std::array<std::vector<std::uint64_t>, 3> codes_;
  std::array<std::vector<std::uint64_t>, 3> empty_code_;
  std::array<std::vector<BlockState>, 3> states_;
  T sum_;
  EvalStats stats_;
};

template <class Field>
typename Field::value_type evaluate(const HwvSpec& spec, const RankDecomposedTensor& t, const Field& field,
                                    const EvalOptions& options = {}) {
  if (options.strategy == Strategy::Transfer) return TransferPlan(spec, t.n(), options.visit_order).run(field, t);
  return Evaluator<Field>(field, spec, t, options).run();
}

/// Literal sum over all j in [r]^d without pruning; the reference the pruned
/// evaluator is tested against. Refuses when r^d exceeds 10^7.
template <class Field>
typename Field::value_type evaluate_naive(const HwvSpec& spec, const RankDecomposedTensor& t, const Field& field) {
  using T = typename Field::value_type;
  const int d = spec.degree();
  const std::size_t r = t.size();
  double work = 1;
  for (int i = 0; i < d; ++i) work *= static_cast<double>(r);
  if (work > 1e7) throw DomainError("evaluate_naive: r^d exceeds the enumeration guard");
  if (d == 0) return field.one();
  if (r == 0) return field.zero();

  std::array<std::vector<std::vector<T>>, 3> vecs;
  std::vector<T> coeff;
  for (const auto& term : t.terms()) {
    coeff.push_back(field.from_rational(term.coeff));
    for (std::size_t leg = 0; leg < 3; ++leg) {
      std::vector<T> v;
      for (const auto& x : reversed_coordinates(term.leg(leg))) v.push_back(field.from_rational(x));
      vecs[leg].push_back(std::move(v));
    }
  }
  // Leg l reads the factor sequence through its permutation, then cuts it into
  // consecutive runs of the transpose's part sizes, shortest first.
  const Permutation id = Permutation::identity(d);
  const std::array<const Permutation*, 3> taus = {&id, &spec.tau1(), &spec.tau2()};
  std::array<std::vector<int>, 3> run_sizes;
  for (std::size_t leg = 0; leg < 3; ++leg) {
    run_sizes[leg] = spec.lambda()[leg].transpose().parts();
    std::reverse(run_sizes[leg].begin(), run_sizes[leg].end());
  }

  std::vector<std::size_t> j(static_cast<std::size_t>(d), 0);
  T total = field.zero();
  while (true) {
    T summand = field.one();
    for (std::size_t s = 0; s < j.size() && !field.is_zero(summand); ++s) summand = field.mul(summand, coeff[j[s]]);
    for (std::size_t leg = 0; leg < 3 && !field.is_zero(summand); ++leg) {
      std::size_t pos = 0;
      for (int m : run_sizes[leg]) {
        std::vector<std::vector<T>> cols;
        for (int i = 0; i < m; ++i, ++pos) cols.push_back(vecs[leg][j[static_cast<std::size_t>((*taus[leg])(pos))]]);
        summand = field.mul(summand, det_top_minor(field, std::span<const std::vector<T>>(cols), static_cast<std::size_t>(m)));
        if (field.is_zero(summand)) break;
      }
    }
    total = field.add(total, summand);
    std::size_t k = 0;
    while (k < j.size() && ++j[k] == r) j[k++] = 0;
    if (k == j.size()) break;
  }
  return total;
}

/// Runtime-dispatched evaluation; F_p results are returned as residues in [0, p).
Rational evaluate(const HwvSpec& spec, const RankDecomposedTensor& t, const EvalDomain& domain,
                  const EvalOptions& options = {});

}  // namespace hwv
