#pragma once

// Evaluation by transfer over exterior powers.
//
// The top m x m minor of columns x_1..x_m is the e_1 ^ ... ^ e_m coordinate of
// x_1 ^ ... ^ x_m. Walking the slots in a fixed order, every block that has
// received some but not all of its columns is summarized by the wedge of the
// columns it already holds, an element of Lambda^s(F^m) of dimension C(m, s).
// The state after a prefix of slots is the sum over all index assignments to
// that prefix of the tensor product of these wedges, so one step is a linear
// map: contract the slot against t itself (three wedge insertions weighted by
// t[a][b][c]). Cost depends on the widest state, not on the rank of t.

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

#include "hwv/hwv.hpp"
#include "hwv/tensor.hpp"

namespace hwv {

/// Field-independent schedule for one HwvSpec at tensor dimension n; reusable
/// across many tensors.
class TransferPlan {
 public:
  TransferPlan(const HwvSpec& spec, int n, const std::vector<int>& visit_order = {});

  int degree() const { return d_; }
  int dimension() const { return n_; }
  const std::vector<int>& visit_order() const { return order_; }
  /// Largest number of state entries held at once.
  std::size_t max_width() const { return max_width_; }

  template <class Field>
  typename Field::value_type run(const Field& field, const RankDecomposedTensor& t) const;

 private:
  // Inserting a column into a block held at subset `code` of size s: the new
  // subset code and the sign of e_i ^ e_S, for each coordinate i not in S.
  struct Move {
    std::uint32_t coord;
    std::uint32_t next;
    int sign;
  };

  struct Touch {
    int leg_block = -1;             // global block id
    int old_digit = -1;             // digit index in the old layout, -1 if opening
    std::int64_t new_stride = 0;    // stride in the new layout, 0 if closing
    int sign = 1;                   // (-1)^(#filled positions before this one)
    std::uint32_t m = 0, s = 0;     // block size and fill before the step
  };

  struct Step {
    std::vector<std::uint32_t> old_radix;  // layout before the step, last digit fastest
    std::vector<std::int64_t> carry_stride;  // new-layout stride of each old digit (0 if touched)
    std::size_t old_size = 1, new_size = 1;
    std::array<Touch, 3> touch;
  };

  void build(const std::vector<int>& order);

  int d_ = 0;
  int n_ = 0;
  std::vector<int> order_;
  std::vector<Step> steps_;
  std::size_t max_width_ = 1;
  // moves_[m][s][code]
  std::vector<std::vector<std::vector<std::vector<Move>>>> moves_;
  BlockStructure bs_;
};

/// Visit order that keeps the product of open-block dimensions small; a greedy
/// pass plus a few fixed-seed randomized tie-breaks, best total width kept.
std::vector<int> transfer_visit_order(const BlockStructure& bs);

template <class Field>
typename Field::value_type TransferPlan::run(const Field& field, const RankDecomposedTensor& t) const {
  using T = typename Field::value_type;
  if (t.n() != n_) throw DomainError("tensor dimension differs from the plan's");
  const auto n = static_cast<std::size_t>(n_);
  std::vector<T> dense(n * n * n, field.zero());
  for (const auto& term : t.terms()) {
    const T c = field.from_rational(term.coeff);
    if (field.is_zero(c)) continue;
    std::array<std::vector<T>, 3> legs;
    for (std::size_t leg = 0; leg < 3; ++leg) {
      for (const auto& x : reversed_coordinates(term.leg(leg))) legs[leg].push_back(field.from_rational(x));
    }
    for (std::size_t a = 0; a < n; ++a) {
      if (field.is_zero(legs[0][a])) continue;
      const T ca = field.mul(c, legs[0][a]);
      for (std::size_t b = 0; b < n; ++b) {
        if (field.is_zero(legs[1][b])) continue;
        const T cab = field.mul(ca, legs[1][b]);
        for (std::size_t k = 0; k < n; ++k) {
          if (field.is_zero(legs[2][k])) continue;
          T& e = dense[(a * n + b) * n + k];
          e = field.add(e, field.mul(cab, legs[2][k]));
        }
      }
    }
  }

  std::vector<T> cur(1, field.one()), next;
  std::vector<std::uint32_t> digit;
  for (const Step& st : steps_) {
    next.assign(st.new_size, field.zero());
    digit.assign(st.old_radix.size(), 0);
    std::int64_t carried = 0;
    for (std::size_t idx = 0; idx < st.old_size; ++idx) {
      if (idx > 0) {
        // odometer increment, last digit fastest
        std::size_t pos = digit.size();
        while (pos-- > 0) {
          carried += st.carry_stride[pos];
          if (++digit[pos] < st.old_radix[pos]) break;
          carried -= st.carry_stride[pos] * static_cast<std::int64_t>(st.old_radix[pos]);
          digit[pos] = 0;
        }
      }
      const T& v = cur[idx];
      if (field.is_zero(v)) continue;
      std::array<const std::vector<Move>*, 3> mv;
      for (std::size_t leg = 0; leg < 3; ++leg) {
        const Touch& tc = st.touch[leg];
        const std::uint32_t code = tc.old_digit < 0 ? 0 : digit[static_cast<std::size_t>(tc.old_digit)];
        mv[leg] = &moves_[tc.m][tc.s][code];
      }
      const int outer_sign = st.touch[0].sign * st.touch[1].sign * st.touch[2].sign;
      for (const Move& m0 : *mv[0]) {
        const std::int64_t i0 = carried + static_cast<std::int64_t>(m0.next) * st.touch[0].new_stride;
        const std::size_t row0 = m0.coord * n;
        for (const Move& m1 : *mv[1]) {
          const std::int64_t i1 = i0 + static_cast<std::int64_t>(m1.next) * st.touch[1].new_stride;
          const std::size_t row1 = (row0 + m1.coord) * n;
          const int s01 = outer_sign * m0.sign * m1.sign;
          for (const Move& m2 : *mv[2]) {
            const T& coeff = dense[row1 + m2.coord];
            if (field.is_zero(coeff)) continue;
            T& out = next[static_cast<std::size_t>(i1 + static_cast<std::int64_t>(m2.next) * st.touch[2].new_stride)];
            const T term = field.mul(v, coeff);
            out = (s01 * m2.sign > 0) ? field.add(out, term) : field.sub(out, term);
          }
        }
      }
    }
    std::swap(cur, next);
  }
  return cur.at(0);
}

}  // namespace hwv
