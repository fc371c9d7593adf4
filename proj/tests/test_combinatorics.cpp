#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "hwv/combinatorics.hpp"
#include "hwv/random.hpp"

using namespace hwv;

namespace {

Partition Pa(std::vector<int> parts) { return Partition(std::move(parts)); }

Integer factorial(int d) {
  Integer f = 1;
  for (int i = 2; i <= d; ++i) f *= i;
  return f;
}

// Sign of the class of cycle type mu.
int class_sign(const Partition& mu) {
  int s = 1;
  for (int part : mu.parts()) {
    if (part % 2 == 0) s = -s;
  }
  return s;
}

}  // namespace

TEST_CASE("partition basics") {
  CHECK(Pa({5, 5, 5, 5}).transpose() == Pa({4, 4, 4, 4, 4}));
  CHECK(Pa({5, 5, 5, 4}).transpose() == Pa({4, 4, 4, 4, 3}));
  CHECK(Partition::row(6).transpose() == Partition::column(6));
  CHECK_THROWS_AS(Pa({1, 2}), DomainError);
  CHECK_THROWS_AS(Pa({2, 0}), DomainError);
  CHECK(partitions_of(20).size() == 627);
  CHECK(partitions_of(19).size() == 490);
  CHECK(partitions_of(0).size() == 1);
  for (int d = 0; d <= 12; ++d) {
    for (const auto& p : partitions_of(d)) {
      CHECK(p.weight() == d);
      CHECK(p.transpose().transpose() == p);
    }
  }
}

TEST_CASE("character examples") {
  for (int d = 1; d <= 7; ++d) {
    for (const auto& mu : partitions_of(d)) {
      CHECK(mn_character(Partition::row(d), mu) == 1);
      CHECK(mn_character(Partition::column(d), mu) == class_sign(mu));
    }
  }
  CHECK(mn_character(Pa({2, 1}), Pa({1, 1, 1})) == 2);
  CHECK(mn_character(Pa({2, 1}), Pa({3})) == -1);
  CHECK(mn_character(Pa({2, 1}), Pa({2, 1})) == 0);
  CHECK_THROWS_AS(mn_character(Pa({2, 1}), Pa({2})), DomainError);
}

TEST_CASE("character orthogonality and dimensions, d <= 8") {
  for (int d = 1; d <= 8; ++d) {
    const auto parts = partitions_of(d);
    for (const auto& a : parts) {
      CHECK(mn_character(a, Partition::column(d)) == hook_length_dimension(a));
      for (const auto& b : parts) {
        Rational s = 0;
        for (const auto& mu : parts) {
          s += Rational(mn_character(a, mu) * mn_character(b, mu)) / Rational(centralizer_order(mu));
        }
        CHECK(s == (a == b ? 1 : 0));
      }
    }
  }
}

TEST_CASE("class sizes sum to d!, d <= 10") {
  for (int d = 0; d <= 10; ++d) {
    Integer total = 0;
    for (const auto& mu : partitions_of(d)) total += factorial(d) / centralizer_order(mu);
    CHECK(total == factorial(d));
  }
}

TEST_CASE("kronecker examples") {
  const auto sq = Pa({5, 5, 5, 5}), almost = Pa({5, 5, 5, 4});
  CHECK(kronecker(PartitionTriple(sq, sq, sq)) == 4);
  CHECK(kronecker(PartitionTriple(almost, almost, almost)) == 31);
  for (int d = 1; d <= 8; ++d) {
    CHECK(kronecker(PartitionTriple(Partition::row(d), Partition::row(d), Partition::row(d))) == 1);
  }
  CHECK_THROWS_AS(PartitionTriple(Pa({2}), Pa({1}), Pa({2})), DomainError);
}

TEST_CASE("kronecker symmetry and the trivial factor, d <= 6") {
  for (int d = 1; d <= 6; ++d) {
    const auto parts = partitions_of(d);
    for (const auto& a : parts) {
      for (const auto& b : parts) {
        CHECK(kronecker(PartitionTriple(a, b, Partition::row(d))) == (a == b ? 1u : 0u));
        for (const auto& c : parts) {
          const auto k = kronecker(PartitionTriple(a, b, c));
          CHECK(kronecker(PartitionTriple(a, c, b)) == k);
          CHECK(kronecker(PartitionTriple(b, a, c)) == k);
          CHECK(kronecker(PartitionTriple(b, c, a)) == k);
          CHECK(kronecker(PartitionTriple(c, a, b)) == k);
          CHECK(kronecker(PartitionTriple(c, b, a)) == k);
          // Tensoring with the sign representation transposes two factors.
          CHECK(kronecker(PartitionTriple(a.transpose(), b.transpose(), c)) == k);
        }
      }
    }
  }
}

TEST_CASE("permutations") {
  const Permutation a({1, 2, 0}), b({1, 0, 2});
  CHECK((a * b).images() == std::vector<int>{2, 1, 0});
  CHECK((a * a.inverse()) == Permutation::identity(3));
  CHECK(a.sign() == 1);
  CHECK(b.sign() == -1);
  CHECK((a * b).sign() == a.sign() * b.sign());
  CHECK_THROWS_AS(Permutation({0, 0, 1}), DomainError);
  CHECK_THROWS_AS(Permutation({0, 3, 1}), DomainError);
}

TEST_CASE("random permutations") {
  Rng one(5);
  CHECK(random_permutation(1, one) == Permutation::identity(1));

  Rng r1(derive_seed(42, {20})), r2(derive_seed(42, {20}));
  const auto p1 = random_permutation(20, r1), p2 = random_permutation(20, r2);
  CHECK(p1 == p2);
  CHECK(p1.size() == 20);

  // Chi-square goodness of fit over S_3 (5 degrees of freedom). The 0.999
  // quantile is 20.52; each count also stays within 5 sigma of 1000.
  Rng rng(7);
  std::map<std::vector<int>, int> counts;
  for (int i = 0; i < 6000; ++i) ++counts[random_permutation(3, rng).images()];
  CHECK(counts.size() == 6);
  double chi2 = 0;
  const double sigma = std::sqrt(6000.0 * (1.0 / 6) * (5.0 / 6));
  for (const auto& [perm, c] : counts) {
    chi2 += (c - 1000.0) * (c - 1000.0) / 1000.0;
    CHECK(std::abs(c - 1000.0) <= 5 * sigma);
  }
  CHECK(chi2 < 20.52);
}
