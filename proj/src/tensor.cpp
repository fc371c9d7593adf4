#include "hwv/tensor.hpp"

#include <string>

namespace hwv {

namespace {

const std::array<SparseTensor::Index, 8> kMatMulSupport = {{
    {0, 0, 0}, {0, 1, 2}, {1, 2, 0}, {1, 3, 2}, {2, 0, 1}, {2, 1, 3}, {3, 2, 1}, {3, 3, 3},
}};

std::vector<Rational> unit_vector(int n, int i) {
  std::vector<Rational> v(static_cast<std::size_t>(n), Rational(0));
  v[static_cast<std::size_t>(i)] = 1;
  return v;
}

void require_invertible(const Matrix<Rational>& m, int n) {
  if (m.rows() != static_cast<std::size_t>(n) || m.cols() != static_cast<std::size_t>(n)) {
    throw DomainError("group element has wrong dimensions");
  }
  if (rank(RationalField{}, m) != static_cast<std::size_t>(n)) throw DomainError("group element is singular");
}

void require_nonzero_diagonal(const DiagonalTriple& g, int n) {
  for (const auto& diag : g.diagonals) {
    if (diag.size() != static_cast<std::size_t>(n)) throw DomainError("diagonal scaling has wrong dimension");
    for (const auto& x : diag) {
      if (sgn(x) == 0) throw DomainError("diagonal scaling is singular");
    }
  }
}

}  // namespace

RankDecomposedTensor::RankDecomposedTensor(int n, std::vector<Term> terms) : n_(n), terms_(std::move(terms)) {
  if (n < 1) throw DomainError("tensor dimension must be positive");
  for (const auto& t : terms_) {
    for (std::size_t l = 0; l < 3; ++l) {
      if (t.leg(l).size() != static_cast<std::size_t>(n)) {
        throw DomainError("term vector of dimension " + std::to_string(t.leg(l).size()) + " in a tensor with n = " +
                          std::to_string(n));
      }
    }
  }
}

RankDecomposedTensor RankDecomposedTensor::scaled(const Rational& alpha) const {
  auto terms = terms_;
  for (auto& t : terms) t.coeff *= alpha;
  return RankDecomposedTensor(n_, std::move(terms));
}

SparseTensor RankDecomposedTensor::to_sparse() const {
  SparseTensor out(n_);
  for (const auto& t : terms_) {
    if (sgn(t.coeff) == 0) continue;
    for (int i = 0; i < n_; ++i) {
      if (sgn(t.u[static_cast<std::size_t>(i)]) == 0) continue;
      for (int j = 0; j < n_; ++j) {
        if (sgn(t.v[static_cast<std::size_t>(j)]) == 0) continue;
        for (int k = 0; k < n_; ++k) {
          if (sgn(t.w[static_cast<std::size_t>(k)]) == 0) continue;
          out.add({i, j, k}, t.coeff * t.u[static_cast<std::size_t>(i)] * t.v[static_cast<std::size_t>(j)] *
                                 t.w[static_cast<std::size_t>(k)]);
        }
      }
    }
  }
  return out;
}

SparseTensor::SparseTensor(int n, const std::map<Index, Rational>& entries) : n_(n) {
  for (const auto& [idx, value] : entries) set(idx, value);
}

void SparseTensor::check(const Index& idx) const {
  for (int c : idx) {
    if (c < 0 || c >= n_) throw DomainError("tensor index out of range");
  }
}

Rational SparseTensor::at(const Index& idx) const {
  check(idx);
  auto it = entries_.find(idx);
  return it == entries_.end() ? Rational(0) : it->second;
}

void SparseTensor::set(const Index& idx, const Rational& value) {
  check(idx);
  if (sgn(value) == 0) {
    entries_.erase(idx);
  } else {
    entries_[idx] = value;
  }
}

void SparseTensor::add(const Index& idx, const Rational& value) { set(idx, at(idx) + value); }

std::set<SparseTensor::Index> SparseTensor::support() const {
  std::set<Index> s;
  for (const auto& [idx, value] : entries_) s.insert(idx);
  return s;
}

DiagonalTriple DiagonalTriple::identity(int n) {
  DiagonalTriple g;
  for (auto& d : g.diagonals) d.assign(static_cast<std::size_t>(n), Rational(1));
  return g;
}

MatMulTensor mm_tensor(int n) {
  if (n < 1) throw DomainError("mm_tensor needs n >= 1");
  const int dim = n * n;
  std::vector<Term> terms;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        terms.push_back({Rational(1), unit_vector(dim, i * n + j), unit_vector(dim, j * n + k), unit_vector(dim, k * n + i)});
      }
    }
  }
  RankDecomposedTensor decomposed(dim, std::move(terms));
  SparseTensor sparse = decomposed.to_sparse();
  return {std::move(decomposed), std::move(sparse)};
}

RankDecomposedTensor perturbed_mm(const Rational& q) {
  auto terms = mm_tensor(2).decomposed.terms();
  if (sgn(q) == 0) {
    terms.erase(terms.begin());
  } else {
    terms.front().coeff = q;
  }
  return RankDecomposedTensor(4, std::move(terms));
}

RankDecomposedTensor ghz(int r) {
  std::vector<Term> terms;
  for (int i = 0; i < r; ++i) terms.push_back({Rational(1), unit_vector(r, i), unit_vector(r, i), unit_vector(r, i)});
  return RankDecomposedTensor(r, std::move(terms));
}

RankDecomposedTensor random_rank_tensor(int n, int r, Rng& rng, std::optional<std::uint64_t> modulus, int bound) {
  auto draw = [&]() -> Rational {
    if (modulus) return Rational(Integer(static_cast<unsigned long>(rng.below(*modulus))));
    return Rational(static_cast<long>(rng.between(-bound, bound)));
  };
  std::vector<Term> terms;
  terms.reserve(static_cast<std::size_t>(r));
  for (int t = 0; t < r; ++t) {
    Term term{Rational(1), {}, {}, {}};
    for (auto* vec : {&term.u, &term.v, &term.w}) {
      vec->reserve(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) vec->push_back(draw());
    }
    terms.push_back(std::move(term));
  }
  return RankDecomposedTensor(n, std::move(terms));
}

std::array<Rational, 8> mm_support_coefficients(const SparseTensor& t) {
  if (t.n() != 4) throw DomainError("normal form needs a tensor in (F^4)^{(x)3}");
  std::set<SparseTensor::Index> expected(kMatMulSupport.begin(), kMatMulSupport.end());
  if (t.support() != expected) {
    throw DomainError("support differs from the support of <2,2,2> (or a coefficient is zero)");
  }
  std::array<Rational, 8> c;
  for (std::size_t i = 0; i < 8; ++i) c[i] = t.at(kMatMulSupport[i]);
  return c;
}

Rational normal_form_parameter(const SparseTensor& t) {
  const auto [a, b, c, d, e, f, g, h] = mm_support_coefficients(t);
  return (a * d * f * g) / (b * c * e * h);
}

NormalForm normal_form(const SparseTensor& t) {
  const auto [a, b, c, d, e, f, g, h] = mm_support_coefficients(t);
  const Rational one(1);
  NormalForm nf;
  nf.q = (a * d * f * g) / (b * c * e * h);
  for (auto& stage : nf.stages) stage = DiagonalTriple::identity(4);
  // Scale slices so that b, d, f, h become 1; then rows to clear e', g'; then column 1 to clear c''.
  nf.stages[0].diagonals[0] = {one / b, one / d, one / f, one / h};
  nf.stages[1].diagonals[1] = {f / e, one, h / g, one};
  nf.stages[2].diagonals[2] = {(d * g) / (c * h), one, one, one};

  nf.s = SparseTensor(4);
  for (std::size_t i = 0; i < 8; ++i) nf.s.set(kMatMulSupport[i], i == 0 ? nf.q : one);
  return nf;
}

SparseTensor apply_group(const DiagonalTriple& g, const SparseTensor& t) {
  require_nonzero_diagonal(g, t.n());
  SparseTensor out(t.n());
  for (const auto& [idx, value] : t.entries()) {
    out.set(idx, value * g.diagonals[0][static_cast<std::size_t>(idx[0])] *
                     g.diagonals[1][static_cast<std::size_t>(idx[1])] * g.diagonals[2][static_cast<std::size_t>(idx[2])]);
  }
  return out;
}

RankDecomposedTensor apply_group(const DiagonalTriple& g, const RankDecomposedTensor& t) {
  require_nonzero_diagonal(g, t.n());
  auto terms = t.terms();
  for (auto& term : terms) {
    for (int i = 0; i < t.n(); ++i) {
      const auto k = static_cast<std::size_t>(i);
      term.u[k] *= g.diagonals[0][k];
      term.v[k] *= g.diagonals[1][k];
      term.w[k] *= g.diagonals[2][k];
    }
  }
  return RankDecomposedTensor(t.n(), std::move(terms));
}

SparseTensor apply_group(const MatrixTriple& g, const SparseTensor& t) {
  const int n = t.n();
  for (const auto& m : g) require_invertible(m, n);
  SparseTensor out(n);
  for (const auto& [idx, value] : t.entries()) {
    for (int i = 0; i < n; ++i) {
      const Rational& a = g[0](static_cast<std::size_t>(i), static_cast<std::size_t>(idx[0]));
      if (sgn(a) == 0) continue;
      for (int j = 0; j < n; ++j) {
        const Rational& b = g[1](static_cast<std::size_t>(j), static_cast<std::size_t>(idx[1]));
        if (sgn(b) == 0) continue;
        for (int k = 0; k < n; ++k) {
          const Rational& c = g[2](static_cast<std::size_t>(k), static_cast<std::size_t>(idx[2]));
          if (sgn(c) == 0) continue;
          out.add({i, j, k}, value * a * b * c);
        }
      }
    }
  }
  return out;
}

RankDecomposedTensor apply_group(const MatrixTriple& g, const RankDecomposedTensor& t) {
  for (const auto& m : g) require_invertible(m, t.n());
  RationalField field;
  auto terms = t.terms();
  for (auto& term : terms) {
    term.u = multiply(field, g[0], std::span<const Rational>(term.u));
    term.v = multiply(field, g[1], std::span<const Rational>(term.v));
    term.w = multiply(field, g[2], std::span<const Rational>(term.w));
  }
  return RankDecomposedTensor(t.n(), std::move(terms));
}

std::array<std::size_t, 3> flattening_ranks(const SparseTensor& t) {
  const auto n = static_cast<std::size_t>(t.n());
  std::array<std::size_t, 3> ranks{};
  for (std::size_t leg = 0; leg < 3; ++leg) {
    Matrix<Rational> flat(n, n * n, Rational(0));
    for (const auto& [idx, value] : t.entries()) {
      const auto row = static_cast<std::size_t>(idx[leg]);
      const auto a = static_cast<std::size_t>(idx[(leg + 1) % 3]);
      const auto b = static_cast<std::size_t>(idx[(leg + 2) % 3]);
      flat(row, a * n + b) = value;
    }
    ranks[leg] = rank(RationalField{}, flat);
  }
  return ranks;
}

std::array<std::size_t, 3> flattening_ranks(const RankDecomposedTensor& t) { return flattening_ranks(t.to_sparse()); }

}  // namespace hwv
