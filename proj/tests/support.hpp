#pragma once

// Random small instances shared by the property tests.

#include <vector>

#include "hwv/combinatorics.hpp"
#include "hwv/field.hpp"
#include "hwv/hwv.hpp"
#include "hwv/matrix.hpp"
#include "hwv/random.hpp"
#include "hwv/tensor.hpp"

namespace hwv::testing {

inline Partition random_partition(int d, std::size_t max_len, Rng& rng) {
  std::vector<Partition> ok;
  for (auto& p : partitions_of(d)) {
    if (p.length() <= max_len) ok.push_back(p);
  }
  return ok[rng.below(ok.size())];
}

inline HwvSpec random_spec(int d, int n, Rng& rng) {
  const auto len = static_cast<std::size_t>(n);
  PartitionTriple lambda(random_partition(d, len, rng), random_partition(d, len, rng), random_partition(d, len, rng));
  return HwvSpec(lambda, random_permutation(d, rng), random_permutation(d, rng));
}

inline std::vector<Rational> random_vector(int n, int bound, Rng& rng) {
  std::vector<Rational> v;
  for (int i = 0; i < n; ++i) v.emplace_back(static_cast<long>(rng.between(-bound, bound)));
  return v;
}

// Coefficients are nonunit rationals so coefficient folding is exercised.
inline RankDecomposedTensor random_tensor(int n, int r, int bound, Rng& rng) {
  std::vector<Term> terms;
  for (int i = 0; i < r; ++i) {
    Rational c(static_cast<long>(rng.between(-5, 5)), static_cast<unsigned long>(rng.between(1, 3)));
    c.canonicalize();
    terms.push_back({c, random_vector(n, bound, rng), random_vector(n, bound, rng), random_vector(n, bound, rng)});
  }
  return RankDecomposedTensor(n, terms);
}

inline Rational random_nonzero(Rng& rng) {
  Rational x(static_cast<long>(rng.between(1, 9)) * (rng.below(2) ? 1 : -1),
             static_cast<unsigned long>(rng.between(1, 7)));
  x.canonicalize();
  return x;
}

inline Matrix<Rational> random_unitriangular(int n, Rng& rng) {
  Matrix<Rational> m(static_cast<std::size_t>(n), static_cast<std::size_t>(n), Rational(0));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    m(i, i) = 1;
    for (std::size_t j = i + 1; j < m.cols(); ++j) m(i, j) = static_cast<long>(rng.between(-4, 4));
  }
  return m;
}

}  // namespace hwv::testing
