#include "hwv/certify.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "hwv/modular.hpp"
#include "hwv/parallel.hpp"

namespace hwv {

namespace {

constexpr std::size_t kMaxReportedNonzero = 8;

std::uint64_t stream_seed(std::uint64_t root, Stream stream, std::uint64_t prime, std::uint64_t index) {
  return derive_seed(root, {static_cast<std::uint64_t>(stream), prime, index});
}

void validate_shape(const VanishingCombination& f) {
  if (f.basis.empty()) throw DomainError("combination has an empty basis");
  if (f.basis.size() != f.coeffs.size()) {
    throw DomainError("combination has " + std::to_string(f.basis.size()) + " basis elements but " +
                      std::to_string(f.coeffs.size()) + " coefficients");
  }
  for (const auto& spec : f.basis) {
    if (spec.lambda() != f.lambda) throw DomainError("basis element of a different weight");
  }
  if (f.n < 1) throw DomainError("tensor dimension must be positive");
}

struct ModKernel {
  Matrix<std::uint64_t> matrix;
  std::vector<std::size_t> free_columns;
  std::vector<std::vector<std::uint64_t>> vectors;
};

// Kernel in reduced echelon form: vector i has a 1 at free_columns[i] and 0 at
// the other free columns.
ModKernel kernel_mod(const PrimeField& field, Matrix<std::uint64_t> m) {
  ModKernel k;
  k.matrix = m;
  const auto pivots = detail::rref(field, m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<std::uint64_t> v(m.cols(), 0);
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = field.neg(m(i, f));
    k.free_columns.push_back(f);
    k.vectors.push_back(std::move(v));
  }
  return k;
}

Matrix<std::uint64_t> sample_matrix(const std::vector<TransferPlan>& plans, int n, int r, std::size_t rows,
                                    std::uint64_t seed, Stream stream, const PrimeField& field, unsigned threads) {
  const std::size_t k = plans.size();
  std::vector<RankDecomposedTensor> tensors(rows);
  for (std::size_t j = 0; j < rows; ++j) tensors[j] = sample_tensor(n, r, seed, stream, field.modulus(), j);
  Matrix<std::uint64_t> m(rows, k, 0);
  parallel_for(rows * k, threads, [&](std::size_t cell) {
    const std::size_t j = cell / k, i = cell % k;
    m(j, i) = plans[i].run(field, tensors[j]);
  });
  return m;
}

bool annihilates(const PrimeField& field, const Matrix<std::uint64_t>& m, const std::vector<Integer>& v) {
  std::vector<std::uint64_t> vm;
  for (const auto& x : v) vm.push_back(field.from_integer(x));
  for (auto x : multiply(field, m, std::span<const std::uint64_t>(vm))) {
    if (x != 0) return false;
  }
  return true;
}

}  // namespace

void validate(const VanishingCombination& f) {
  validate_shape(f);
  if (std::all_of(f.coeffs.begin(), f.coeffs.end(), [](const Integer& c) { return sgn(c) == 0; })) {
    throw DomainError("combination has an all-zero coefficient vector");
  }
}

RankDecomposedTensor sample_tensor(int n, int r, std::uint64_t root_seed, Stream stream, std::uint64_t prime,
                                   std::uint64_t index) {
  Rng rng(stream_seed(root_seed, stream, prime, index));
  return random_rank_tensor(n, r, rng, prime == 0 ? std::nullopt : std::optional<std::uint64_t>(prime));
}

RankDecomposedTensor dense_sample_tensor(int n, std::uint64_t root_seed, Stream stream, std::uint64_t prime,
                                         std::uint64_t index) {
  Rng rng(stream_seed(root_seed, stream, prime, index));
  const auto nn = static_cast<std::size_t>(n);
  std::vector<Term> terms;
  for (std::size_t a = 0; a < nn; ++a) {
    for (std::size_t b = 0; b < nn; ++b) {
      Term t{Rational(1), std::vector<Rational>(nn, Rational(0)), std::vector<Rational>(nn, Rational(0)), {}};
      t.u[a] = 1;
      t.v[b] = 1;
      for (std::size_t c = 0; c < nn; ++c) {
        t.w.push_back(prime == 0 ? Rational(static_cast<long>(rng.between(-10, 10)))
                                 : Rational(Integer(static_cast<unsigned long>(rng.below(prime)))));
      }
      terms.push_back(std::move(t));
    }
  }
  return RankDecomposedTensor(n, std::move(terms));
}

std::vector<TransferPlan> make_plans(const std::vector<HwvSpec>& basis, int n) {
  std::vector<TransferPlan> plans;
  plans.reserve(basis.size());
  for (const auto& spec : basis) plans.emplace_back(spec, n);
  return plans;
}

std::uint64_t evaluate_combination(const VanishingCombination& f, const std::vector<TransferPlan>& plans,
                                   const RankDecomposedTensor& t, const PrimeField& field) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < plans.size(); ++i) {
    const std::uint64_t c = field.from_integer(f.coeffs[i]);
    if (c == 0) continue;
    total = field.add(total, field.mul(c, plans[i].run(field, t)));
  }
  return total;
}

FindResult find_vanishing(const std::vector<HwvSpec>& basis, int r, int n, const FindOptions& options) {
  if (basis.empty()) throw DomainError("find_vanishing needs a nonempty basis");
  if (options.primes.empty()) throw DomainError("find_vanishing needs at least one prime");
  if (r < 0) throw DomainError("rank must be nonnegative");
  for (const auto& spec : basis) {
    if (spec.lambda() != basis.front().lambda()) throw DomainError("basis elements have different weights");
  }
  const std::size_t k = basis.size();
  const auto plans = make_plans(basis, n);
  FindResult out;
  out.samples = k + options.margin;

  std::vector<ModKernel> kernels;
  auto add_prime = [&](std::uint64_t p) {
    if (std::find(out.primes.begin(), out.primes.end(), p) != out.primes.end()) {
      throw DomainError("prime " + std::to_string(p) + " given twice");
    }
    PrimeField field(p);
    kernels.push_back(kernel_mod(field, sample_matrix(plans, n, r, out.samples, options.seed, Stream::Find, field,
                                                      options.threads)));
    out.primes.push_back(p);
    out.witnesses.push_back(kernels.back().matrix);
  };
  for (auto p : options.primes) add_prime(p);

  std::vector<std::uint64_t> pool;
  for (auto p : default_primes(options.max_primes + options.primes.size() + 2)) {
    if (std::find(options.primes.begin(), options.primes.end(), p) == options.primes.end()) pool.push_back(p);
  }
  std::size_t pool_next = 0;
  auto fresh_prime = [&]() {
    if (pool_next >= pool.size()) throw RetryExhausted("ran out of primes for rational reconstruction");
    return pool[pool_next++];
  };

  while (true) {
    for (const auto& km : kernels) {
      if (km.free_columns != kernels.front().free_columns) {
        throw DomainError("kernel shape differs between primes; resample with another seed");
      }
    }
    out.kernel_dimension = kernels.front().vectors.size();
    if (out.kernel_dimension == 0) break;

    std::vector<std::vector<Integer>> lifted;
    bool reconstructed = true;
    for (std::size_t b = 0; b < out.kernel_dimension && reconstructed; ++b) {
      std::vector<Rational> v(k);
      for (std::size_t c = 0; c < k && reconstructed; ++c) {
        std::vector<std::uint64_t> residues;
        for (const auto& km : kernels) residues.push_back(km.vectors[b][c]);
        Integer modulus = 1;
        for (auto p : out.primes) modulus *= Integer(static_cast<unsigned long>(p));
        auto q = rational_reconstruct(crt(residues, out.primes), modulus);
        if (!q) {
          reconstructed = false;
        } else {
          v[c] = *q;
        }
      }
      if (reconstructed) lifted.push_back(primitive_integer_vector(v));
    }

    const std::uint64_t check = fresh_prime();
    if (reconstructed) {
      PrimeField field(check);
      auto m = sample_matrix(plans, n, r, out.samples, options.seed, Stream::Witness, field, options.threads);
      const bool ok = std::all_of(lifted.begin(), lifted.end(), [&](const auto& v) { return annihilates(field, m, v); });
      if (ok) {
        out.check_prime = check;
        out.check_matrix = std::move(m);
        for (auto& v : lifted) {
          VanishingCombination f;
          f.lambda = basis.front().lambda();
          f.n = n;
          f.r = r;
          f.basis = basis;
          f.coeffs = std::move(v);
          out.combinations.push_back(std::move(f));
        }
        break;
      }
    }
    if (out.primes.size() >= options.max_primes) {
      throw RetryExhausted("kernel did not stabilize within " + std::to_string(options.max_primes) + " primes");
    }
    add_prime(check);
  }

  if (options.rational_pass) {
    RationalField field;
    Matrix<Rational> m(out.samples, k, Rational(0));
    std::vector<RankDecomposedTensor> tensors(out.samples);
    for (std::size_t j = 0; j < out.samples; ++j) tensors[j] = sample_tensor(n, r, options.seed, Stream::RationalFind, 0, j);
    parallel_for(out.samples * k, options.threads, [&](std::size_t cell) {
      const std::size_t j = cell / k, i = cell % k;
      m(j, i) = plans[i].run(field, tensors[j]);
    });
    const auto exact = nullspace(field, m);
    bool agrees = exact.size() == out.combinations.size();
    if (agrees && !exact.empty()) {
      std::vector<std::vector<Rational>> rows;
      for (const auto& v : exact) rows.push_back(v);
      for (const auto& f : out.combinations) {
        std::vector<Rational> row;
        for (const auto& c : f.coeffs) row.emplace_back(c);
        rows.push_back(std::move(row));
      }
      agrees = rank(field, Matrix<Rational>::from_rows(rows)) == exact.size();
    }
    out.rational_agrees = agrees;
  }
  return out;
}

MembershipReport verify_vanishing(const VanishingCombination& f, const VerifyOptions& options) {
  validate(f);
  if (options.trials == 0) throw DomainError("verification needs at least one trial");
  if (options.primes.empty()) throw DomainError("verification needs at least one prime");
  MembershipReport rep;
  rep.r = f.r;
  rep.degree_bound = 3 * f.degree();
  rep.trials = options.trials;
  rep.primes = options.primes;
  rep.seed = options.seed;
  for (auto p : options.primes) {
    PrimeField check(p);
    if (p <= static_cast<std::uint64_t>(rep.degree_bound)) {
      throw DomainError("prime " + std::to_string(p) + " does not exceed the degree bound " +
                        std::to_string(rep.degree_bound));
    }
    rep.per_trial_bound.push_back(Rational(rep.degree_bound) / Rational(Integer(static_cast<unsigned long>(p))));
    rep.log10_error_bound +=
        static_cast<double>(options.trials) * (std::log10(rep.degree_bound) - std::log10(static_cast<double>(p)));
  }

  const auto plans = make_plans(f.basis, f.n);
  const std::size_t cells = options.primes.size() * options.trials;
  std::vector<std::uint64_t> values(cells, 0);
  parallel_for(cells, options.threads, [&](std::size_t cell) {
    const std::uint64_t p = options.primes[cell / options.trials];
    const std::size_t trial = cell % options.trials;
    PrimeField field(p);
    values[cell] = evaluate_combination(f, plans, sample_tensor(f.n, f.r, options.seed, Stream::Verify, p, trial), field);
  });
  for (std::size_t cell = 0; cell < cells; ++cell) {
    if (values[cell] == 0) continue;
    ++rep.failures;
    if (rep.nonzero.size() < kMaxReportedNonzero) {
      rep.nonzero.push_back({options.primes[cell / options.trials], cell % options.trials, values[cell]});
    }
  }
  return rep;
}

std::vector<Rational> default_q_samples(int d) {
  std::vector<Rational> qs;
  for (int q = -(d / 2); q <= (d + 1) / 2 + 1; ++q) qs.emplace_back(q);
  return qs;
}

Rational evaluate_combination(const VanishingCombination& f, const RankDecomposedTensor& t, unsigned threads) {
  validate_shape(f);
  RationalField field;
  std::vector<Rational> parts(f.basis.size(), Rational(0));
  parallel_for(f.basis.size(), threads, [&](std::size_t i) {
    if (sgn(f.coeffs[i]) == 0) return;
    parts[i] = Rational(f.coeffs[i]) * TransferPlan(f.basis[i], f.n).run(field, t);
  });
  Rational total = 0;
  for (const auto& x : parts) total += x;
  return total;
}

FamilyEvaluation eval_on_family(const VanishingCombination& f, const FamilyOptions& options) {
  validate_shape(f);
  if (f.n != 4) throw DomainError("the <2,2,2>_q family lives in dimension n = 4");
  const int d = f.degree();
  const auto qs = options.q_samples.empty() ? default_q_samples(d) : options.q_samples;
  if (std::set<Rational>(qs.begin(), qs.end()).size() != qs.size()) throw DomainError("q samples are not distinct");
  if (qs.size() < static_cast<std::size_t>(d) + 1) {
    throw DomainError("need at least d+1 = " + std::to_string(d + 1) + " q samples, got " + std::to_string(qs.size()));
  }

  std::vector<RankDecomposedTensor> tensors;
  for (const auto& q : qs) {
    auto t = perturbed_mm(q);
    tensors.push_back(options.group_element ? apply_group(*options.group_element, t) : t);
  }
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
    if (sgn(f.coeffs[i]) != 0) active.push_back(i);
  }
  std::vector<TransferPlan> plans;
  for (auto i : active) plans.emplace_back(f.basis[i], f.n);

  RationalField field;
  std::vector<Rational> cell_values(qs.size() * active.size());
  parallel_for(cell_values.size(), options.threads, [&](std::size_t cell) {
    const std::size_t s = cell / active.size(), a = cell % active.size();
    cell_values[cell] = Rational(f.coeffs[active[a]]) * plans[a].run(field, tensors[s]);
  });

  FamilyEvaluation out;
  for (std::size_t s = 0; s < qs.size(); ++s) {
    Rational v = 0;
    for (std::size_t a = 0; a < active.size(); ++a) v += cell_values[s * active.size() + a];
    out.samples.emplace_back(qs[s], v);
  }
  try {
    out.poly = interpolate(out.samples, d);
  } catch (const DomainError& e) {
    throw DomainError(std::string("family evaluations are inconsistent with degree <= d: ") + e.what());
  }
  return out;
}

Certificate certify(std::span<const VanishingCombination> combinations, const CertifyOptions& options) {
  if (combinations.empty()) throw DomainError("certify needs at least one combination");
  std::vector<CertifiedPart> parts;
  for (const auto& f : combinations) {
    CertifiedPart part;
    part.combination = f;
    part.membership = verify_vanishing(f, options.verify);
    part.family = eval_on_family(f, options.family);
    parts.push_back(std::move(part));
  }
  return assemble_certificate(std::move(parts), options.upper_bound, options.verify.seed);
}

Certificate assemble_certificate(std::vector<CertifiedPart> parts, int upper_bound, std::uint64_t seed) {
  if (parts.empty()) throw DomainError("certify needs at least one combination");
  Certificate cert;
  cert.seed = seed;
  cert.upper_bound = upper_bound;
  cert.parts = std::move(parts);
  std::vector<UniPoly> polys;
  for (const auto& part : cert.parts) polys.push_back(part.family.poly);

  const int r = cert.parts.front().combination.r;
  for (const auto& part : cert.parts) {
    if (!part.membership.passed()) {
      cert.diagnostic = "degree-" + std::to_string(part.combination.degree()) + " combination failed verification (" +
                        std::to_string(part.membership.failures) + " nonzero trials)";
      return cert;
    }
    if (part.combination.r != r) {
      cert.diagnostic = "combinations vanish on different secant varieties";
      return cert;
    }
    if (part.family.poly.is_zero()) {
      cert.diagnostic = "degree-" + std::to_string(part.combination.degree()) +
                        " combination vanishes identically on the family";
      return cert;
    }
  }

  auto common = common_roots(polys);
  cert.common_roots = common.roots;
  cert.gcd = common.gcd;
  // gcd = q^k means no common root other than 0, over C as well as over Q.
  const bool only_zero = common.gcd.degree() == 0 || common.gcd == UniPoly::monomial(Rational(1), common.gcd.degree());
  if (!only_zero) {
    std::string roots;
    for (const auto& x : common.roots) roots += (roots.empty() ? "" : ", ") + to_string(x);
    cert.diagnostic = "the family polynomials share roots other than q = 0 (gcd " + common.gcd.to_string("q") +
                      (roots.empty() ? "" : ", rational roots {" + roots + "}") + ")";
    return cert;
  }
  cert.valid = true;
  cert.lower_bound = r + 1;
  cert.diagnostic = "no nonzero q puts <2,2,2>_q in sigma_" + std::to_string(r) + "; border support rank >= " +
                    std::to_string(r + 1) +
                    (upper_bound == r + 1 ? ", and with the rank upper bound " + std::to_string(upper_bound) +
                                                " it equals " + std::to_string(r + 1)
                                          : "");
  return cert;
}

BasisResult random_basis(const PartitionTriple& lambda, const BasisOptions& options) {
  const std::uint64_t k = kronecker(lambda);
  if (k == 0) throw DomainError("kronecker coefficient of " + lambda[0].to_string() + ", " + lambda[1].to_string() +
                                ", " + lambda[2].to_string() + " is 0; there is no highest-weight vector");
  const int d = lambda.degree();
  PrimeField field(options.prime);
  // Each attempt fixes k dense witness tensors and keeps drawing pairs,
  // keeping those that raise the rank of the evaluation matrix. Many pairs
  // give the zero vector, so insisting on k good pairs in a row would waste
  // most attempts.
  const std::uint64_t draws = options.draws_per_element * k;
  for (std::size_t attempt = 0; attempt < options.retries; ++attempt) {
    Rng rng(stream_seed(options.seed, Stream::Basis, options.prime, attempt << 32));
    std::vector<RankDecomposedTensor> samples;
    for (std::uint64_t j = 0; j < k; ++j) {
      samples.push_back(dense_sample_tensor(options.n, options.seed, Stream::Basis, options.prime, (attempt << 32) | (j + 1)));
    }
    BasisResult out;
    out.prime = options.prime;
    out.attempts = attempt + 1;
    out.witness = Matrix<std::uint64_t>(k, 0, 0);
    for (std::uint64_t draw = 0; draw < draws && out.basis.size() < k; ++draw) {
      auto tau1 = random_permutation(d, rng);
      auto tau2 = random_permutation(d, rng);
      HwvSpec spec(lambda, std::move(tau1), std::move(tau2));
      const TransferPlan plan(spec, options.n);
      std::vector<std::uint64_t> column(k);
      parallel_for(k, options.threads, [&](std::size_t j) { column[j] = plan.run(field, samples[j]); });
      Matrix<std::uint64_t> grown(k, out.basis.size() + 1, 0);
      for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < out.basis.size(); ++i) grown(j, i) = out.witness(j, i);
        grown(j, out.basis.size()) = column[j];
      }
      if (rank(field, grown) == out.basis.size() + 1) {
        out.basis.push_back(std::move(spec));
        out.witness = std::move(grown);
      }
    }
    if (out.basis.size() == k) return out;
  }
  throw RetryExhausted("no full-rank evaluation matrix after " + std::to_string(options.retries) + " attempts");
}

}  // namespace hwv
