#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "hwv/field.hpp"
#include "hwv/matrix.hpp"
#include "hwv/random.hpp"

namespace hwv {

/// One simple term coeff * u (x) v (x) w.
struct Term {
  Rational coeff;
  std::vector<Rational> u, v, w;

  const std::vector<Rational>& leg(std::size_t l) const { return l == 0 ? u : (l == 1 ? v : w); }
  bool operator==(const Term&) const = default;
};

class SparseTensor;

/// A tensor in (F^n)^{(x)3} given as a list of weighted simple terms. The
/// number of terms bounds the rank from above.
class RankDecomposedTensor {
 public:
  RankDecomposedTensor() = default;
  RankDecomposedTensor(int n, std::vector<Term> terms);

  int n() const { return n_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  /// Every coefficient multiplied by alpha.
  RankDecomposedTensor scaled(const Rational& alpha) const;
  SparseTensor to_sparse() const;

  bool operator==(const RankDecomposedTensor&) const = default;

 private:
  int n_ = 0;
  std::vector<Term> terms_;
};

/// Coordinate form; zero coefficients are never stored. Indices are 0-based.
class SparseTensor {
 public:
  using Index = std::array<int, 3>;

  SparseTensor() = default;
  explicit SparseTensor(int n) : n_(n) {}
  SparseTensor(int n, const std::map<Index, Rational>& entries);

  int n() const { return n_; }
  const std::map<Index, Rational>& entries() const { return entries_; }
  Rational at(const Index& idx) const;
  void set(const Index& idx, const Rational& value);
  void add(const Index& idx, const Rational& value);
  std::set<Index> support() const;

  bool operator==(const SparseTensor&) const = default;

 private:
  void check(const Index& idx) const;

  int n_ = 0;
  std::map<Index, Rational> entries_;
};

/// Three diagonal matrices, stored by their diagonals.
struct DiagonalTriple {
  std::array<std::vector<Rational>, 3> diagonals;

  static DiagonalTriple identity(int n);
  bool operator==(const DiagonalTriple&) const = default;
};

using MatrixTriple = std::array<Matrix<Rational>, 3>;

/// Both views of the matrix multiplication tensor <n,n,n>.
struct MatMulTensor {
  RankDecomposedTensor decomposed;
  SparseTensor sparse;
};

/// <n,n,n> = sum e_ij (x) e_jk (x) e_ki with e_ij -> e_{(i-1)n + j}. Terms are
/// listed in lexicographic (i, j, k) order, so term 0 is e_11 (x) e_11 (x) e_11.
MatMulTensor mm_tensor(int n);

/// <2,2,2> with the coefficient of e_11 (x) e_11 (x) e_11 replaced by q. At
/// q = 0 that term is dropped.
RankDecomposedTensor perturbed_mm(const Rational& q);

/// GHZ_r = sum_i e_i (x) e_i (x) e_i in (F^r)^{(x)3}.
RankDecomposedTensor ghz(int r);

/// Sum of r terms whose vector entries are uniform in {-bound, ..., bound}
/// (unit coefficients), or uniform in F_p when a modulus is given.
RankDecomposedTensor random_rank_tensor(int n, int r, Rng& rng, std::optional<std::uint64_t> modulus = std::nullopt,
                                        int bound = 10);

/// Result of bringing a tensor with the support of <2,2,2> to the one-parameter family.
struct NormalForm {
  Rational q;
  /// Applied in order: slice scaling (leg 1), row scaling (leg 2), column scaling (leg 3).
  std::array<DiagonalTriple, 3> stages;
  SparseTensor s;
};

/// The eight coefficients a..h of a tensor with the support of <2,2,2>, in
/// the order (1,1,1), (1,2,3), (2,3,1), (2,4,3), (3,1,2), (3,2,4), (4,3,2), (4,4,4).
std::array<Rational, 8> mm_support_coefficients(const SparseTensor& t);

/// q = a*d*f*g / (b*c*e*h).
Rational normal_form_parameter(const SparseTensor& t);

/// Throws DomainError unless the support of t is exactly the support of <2,2,2>.
NormalForm normal_form(const SparseTensor& t);

SparseTensor apply_group(const DiagonalTriple& g, const SparseTensor& t);
RankDecomposedTensor apply_group(const DiagonalTriple& g, const RankDecomposedTensor& t);
SparseTensor apply_group(const MatrixTriple& g, const SparseTensor& t);
RankDecomposedTensor apply_group(const MatrixTriple& g, const RankDecomposedTensor& t);

/// Ranks of the three n x n^2 flattenings.
std::array<std::size_t, 3> flattening_ranks(const SparseTensor& t);
std::array<std::size_t, 3> flattening_ranks(const RankDecomposedTensor& t);

}  // namespace hwv
