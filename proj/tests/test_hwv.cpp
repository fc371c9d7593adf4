#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "hwv/evaluate.hpp"
#include "hwv/hwv.hpp"
#include "hwv/transfer.hpp"
#include "support.hpp"

using namespace hwv;

namespace {

Partition Pa(std::vector<int> parts) { return Partition(std::move(parts)); }

std::vector<std::size_t> sizes(const LegBlocks& lb) {
  std::vector<std::size_t> out;
  for (const auto& b : lb.blocks) out.push_back(b.size());
  return out;
}

RationalField QQ;

Rational eval_q(const HwvSpec& s, const RankDecomposedTensor& t, Strategy strategy = Strategy::Transfer) {
  EvalOptions o;
  o.strategy = strategy;
  return evaluate(s, t, QQ, o);
}

Rational det2(const Rational& a, const Rational& b, const Rational& c, const Rational& d) { return a * d - b * c; }

}  // namespace

TEST_CASE("block structure") {
  const auto sq = Pa({5, 5, 5, 5});
  const HwvSpec s20(PartitionTriple(sq, sq, sq), Permutation::identity(20), Permutation::identity(20));
  const auto bs20 = block_structure(s20);
  CHECK(sizes(bs20.legs[0]) == std::vector<std::size_t>{4, 4, 4, 4, 4});
  CHECK(bs20.legs[0].blocks[1] == std::vector<int>{4, 5, 6, 7});

  // Shortest column first.
  const auto al = Pa({5, 5, 5, 4});
  Rng rng(31);
  const HwvSpec s19(PartitionTriple(al, al, al), random_permutation(19, rng), random_permutation(19, rng));
  const auto bs19 = block_structure(s19);
  for (const auto& lb : bs19.legs) CHECK(sizes(lb) == std::vector<std::size_t>{3, 4, 4, 4, 4});
  for (int p = 0; p < 19; ++p) {
    const auto& leg2 = bs19.legs[1];
    const int slot = s19.tau1()(static_cast<std::size_t>(p));
    const auto b = static_cast<std::size_t>(leg2.block_of[static_cast<std::size_t>(slot)]);
    const auto pos = static_cast<std::size_t>(leg2.position_of[static_cast<std::size_t>(slot)]);
    CHECK(leg2.blocks[b][pos] == slot);
  }

  const HwvSpec two(PartitionTriple(Pa({2}), Pa({2}), Pa({2})), Permutation::identity(2), Permutation({1, 0}));
  for (const auto& lb : block_structure(two).legs) CHECK(sizes(lb) == std::vector<std::size_t>{1, 1});
}

TEST_CASE("small closed forms") {
  const HwvSpec one(PartitionTriple(Pa({1}), Pa({1}), Pa({1})), Permutation::identity(1), Permutation::identity(1));
  const RankDecomposedTensor simple(3, {Term{2, {1, 2, 3}, {4, 5, 6}, {7, 8, 9}}});
  // One slot: the product of the last coordinates.
  CHECK(eval_q(one, simple) == 2 * 3 * 6 * 9);
  CHECK(eval_q(one, simple, Strategy::Backtrack) == 2 * 3 * 6 * 9);

  // Rank one never survives a block of size two.
  const HwvSpec col(PartitionTriple(Pa({1, 1}), Pa({2}), Pa({2})), Permutation::identity(2), Permutation::identity(2));
  CHECK(eval_q(col, simple) == 0);
  CHECK(evaluate_naive(col, simple, QQ) == 0);

  // No terms, positive degree.
  CHECK(eval_q(col, RankDecomposedTensor(3, {})) == 0);
  CHECK(evaluate_naive(col, RankDecomposedTensor(3, {}), QQ) == 0);

  // Weight (1,1),(1,1),(2): a multiple of the determinant of the last leg-3
  // slice, which vanishes at GHZ_2.
  const HwvSpec fl(PartitionTriple(Pa({1, 1}), Pa({1, 1}), Pa({2})), Permutation::identity(2),
                   Permutation::identity(2));
  CHECK(eval_q(fl, ghz(2)) == 0);
  CHECK(evaluate_naive(fl, ghz(2), QQ) == 0);
}

TEST_CASE("weight (2),(1,1),(1,1) is twice a slice determinant") {
  // Same weight up to relabeling legs: leg 1 carries the full row, so f(t) is
  // a multiple of det of the last leg-1 slice.
  Rng rng(32);
  const PartitionTriple lambda(Pa({2}), Pa({1, 1}), Pa({1, 1}));
  const HwvSpec plain(lambda, Permutation::identity(2), Permutation::identity(2));
  const HwvSpec swapped(lambda, Permutation({1, 0}), Permutation::identity(2));
  for (int trial = 0; trial < 40; ++trial) {
    const auto t = testing::random_tensor(2, 1 + static_cast<int>(rng.below(4)), 5, rng);
    const auto s = t.to_sparse();
    const Rational slice_det = det2(s.at({1, 0, 0}), s.at({1, 0, 1}), s.at({1, 1, 0}), s.at({1, 1, 1}));
    CHECK(eval_q(plain, t) == 2 * slice_det);
    CHECK(eval_q(swapped, t) == -2 * slice_det);
  }
}

TEST_CASE("evaluate agrees with the naive sum") {
  Rng rng(33);
  PrimeField fp(kDefaultPrimeA);
  int nonzero = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const int d = 1 + static_cast<int>(rng.below(4));
    const int n = 1 + static_cast<int>(rng.below(3));
    const int r = static_cast<int>(rng.below(4));
    const auto spec = testing::random_spec(d, n, rng);
    const auto t = testing::random_tensor(n, r, 4, rng);
    const Rational naive = evaluate_naive(spec, t, QQ);
    nonzero += sgn(naive) != 0;
    CHECK(eval_q(spec, t) == naive);
    CHECK(eval_q(spec, t, Strategy::Backtrack) == naive);
    EvalOptions inc;
    inc.strategy = Strategy::Backtrack;
    inc.force_incremental = true;
    CHECK(evaluate(spec, t, QQ, inc) == naive);
    CHECK(evaluate(spec, t, fp) == fp.from_rational(naive));
    CHECK(evaluate(spec, t, EvalDomain::rational()) == naive);
  }
  CHECK(nonzero > 40);
}

TEST_CASE("visit order does not change the value") {
  Rng rng(34);
  for (int trial = 0; trial < 30; ++trial) {
    const auto spec = testing::random_spec(4, 3, rng);
    const auto t = testing::random_tensor(3, 3, 4, rng);
    const Rational base = eval_q(spec, t);
    EvalOptions o;
    o.visit_order = random_permutation(4, rng).images();
    CHECK(evaluate(spec, t, QQ, o) == base);
    o.strategy = Strategy::Backtrack;
    CHECK(evaluate(spec, t, QQ, o) == base);
  }
}

TEST_CASE("homogeneity") {
  Rng rng(35);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 1 + static_cast<int>(rng.below(5));
    const auto spec = testing::random_spec(d, 3, rng);
    const auto t = testing::random_tensor(3, 3, 4, rng);
    const Rational alpha = testing::random_nonzero(rng);
    Rational pw = 1;
    for (int i = 0; i < d; ++i) pw *= alpha;
    CHECK(eval_q(spec, t.scaled(alpha)) == pw * eval_q(spec, t));
  }
}

TEST_CASE("torus covariance: part i of each weight sits on coordinate n+1-i") {
  Rng rng(36);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(2));
    const auto spec = testing::random_spec(1 + static_cast<int>(rng.below(5)), n, rng);
    const auto t = testing::random_tensor(n, 3, 4, rng);
    DiagonalTriple g;
    Rational factor = 1;
    for (std::size_t leg = 0; leg < 3; ++leg) {
      for (int i = 0; i < n; ++i) g.diagonals[leg].push_back(testing::random_nonzero(rng));
      const auto& parts = spec.lambda()[leg].parts();
      for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto coord = static_cast<std::size_t>(n) - 1 - i;
        for (int e = 0; e < parts[i]; ++e) factor *= g.diagonals[leg][coord];
      }
    }
    CHECK(eval_q(spec, apply_group(g, t)) == factor * eval_q(spec, t));
  }
}

TEST_CASE("invariance under upper unitriangular matrices") {
  Rng rng(37);
  int nonzero = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(2));
    const auto spec = testing::random_spec(1 + static_cast<int>(rng.below(5)), n, rng);
    const auto t = testing::random_tensor(n, 3, 4, rng);
    const MatrixTriple u = {testing::random_unitriangular(n, rng), testing::random_unitriangular(n, rng),
                            testing::random_unitriangular(n, rng)};
    const Rational base = eval_q(spec, t);
    nonzero += sgn(base) != 0;
    CHECK(eval_q(spec, apply_group(u, t)) == base);
  }
  CHECK(nonzero > 10);
}

TEST_CASE("relabeling slots inside leg-1 blocks costs only a sign") {
  Rng rng(38);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 2 + static_cast<int>(rng.below(4));
    const auto spec = testing::random_spec(d, 3, rng);
    const auto t = testing::random_tensor(3, 3, 4, rng);
    const auto bs = block_structure(spec);
    const auto& blocks = bs.legs[0].blocks;

    // rho sends block B onto a block of the same size, then shuffles inside.
    std::vector<std::size_t> target(blocks.size());
    for (std::size_t b = 0; b < blocks.size(); ++b) target[b] = b;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const std::size_t c = rng.below(blocks.size());
      if (blocks[b].size() == blocks[c].size()) std::swap(target[b], target[c]);
    }
    std::vector<int> rho(static_cast<std::size_t>(d));
    int sign = 1;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      const auto inner = random_permutation(static_cast<int>(blocks[b].size()), rng);
      sign *= inner.sign();
      for (std::size_t i = 0; i < blocks[b].size(); ++i) {
        rho[static_cast<std::size_t>(blocks[b][i])] = blocks[target[b]][static_cast<std::size_t>(inner(i))];
      }
    }
    const Permutation rinv = Permutation(rho).inverse();
    const HwvSpec moved(spec.lambda(), rinv * spec.tau1(), rinv * spec.tau2());
    CHECK(eval_q(moved, t) == sign * eval_q(spec, t));
  }
}

TEST_CASE("modular evaluation is reduction of the rational one") {
  Rng rng(39);
  for (std::uint64_t p : {kDefaultPrimeA, kDefaultPrimeB, std::uint64_t{1000003}}) {
    PrimeField fp(p);
    for (int trial = 0; trial < 20; ++trial) {
      const auto spec = testing::random_spec(1 + static_cast<int>(rng.below(6)), 4, rng);
      const auto t = testing::random_tensor(4, 4, 9, rng);
      CHECK(evaluate(spec, t, fp) == fp.from_rational(eval_q(spec, t)));
      CHECK(evaluate(spec, t, EvalDomain::modular(p)) == Rational(evaluate(spec, t, fp)));
    }
  }
}

TEST_CASE("transfer plan layout") {
  const auto sq = Pa({5, 5, 5, 5});
  Rng rng(40);
  const HwvSpec s(PartitionTriple(sq, sq, sq), random_permutation(20, rng), random_permutation(20, rng));
  const TransferPlan plan(s, 4);
  auto order = plan.visit_order();
  std::sort(order.begin(), order.end());
  for (int i = 0; i < 20; ++i) CHECK(order[static_cast<std::size_t>(i)] == i);
  CHECK(plan.max_width() > 0);
  CHECK_THROWS_AS(TransferPlan(s, 3), DomainError);
  CHECK_THROWS_AS(TransferPlan(s, 4, std::vector<int>{0, 1}), DomainError);
}

TEST_CASE("input validation") {
  const HwvSpec s(PartitionTriple(Pa({1, 1, 1}), Pa({3}), Pa({3})), Permutation::identity(3),
                  Permutation::identity(3));
  const auto t2 = ghz(2);
  CHECK_THROWS_AS(eval_q(s, t2), DomainError);
  CHECK_THROWS_AS(eval_q(s, t2, Strategy::Backtrack), DomainError);
  CHECK_THROWS_AS(HwvSpec(PartitionTriple(Pa({2}), Pa({2}), Pa({2})), Permutation::identity(3),
                          Permutation::identity(2)),
                  DomainError);
  Rng rng(41);
  const auto big = testing::random_spec(8, 3, rng);
  CHECK_THROWS_AS(evaluate_naive(big, testing::random_tensor(3, 8, 2, rng), QQ), DomainError);
}
