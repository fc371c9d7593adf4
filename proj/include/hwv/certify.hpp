#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hwv/combinatorics.hpp"
#include "hwv/evaluate.hpp"
#include "hwv/field.hpp"
#include "hwv/hwv.hpp"
#include "hwv/matrix.hpp"
#include "hwv/polynomial.hpp"
#include "hwv/tensor.hpp"

namespace hwv {

/// A Las Vegas search gave up after its retry budget.
struct RetryExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// sum_i coeffs[i] * basis[i], meant to vanish on tensors of border rank <= r.
struct VanishingCombination {
  PartitionTriple lambda;
  int n = 4;
  int r = 0;
  std::vector<HwvSpec> basis;
  std::vector<Integer> coeffs;

  int degree() const { return lambda.degree(); }
};

/// Throws DomainError for an empty basis, a length mismatch, specs of another
/// weight, or an all-zero coefficient vector.
void validate(const VanishingCombination& f);

// Tags separating the random streams drawn under one root seed.
enum class Stream : std::uint64_t { Find = 1, Witness = 2, Verify = 3, Basis = 4, Control = 5, RationalFind = 6 };

/// Rank-r tensor for sample `index` of stream `stream` over F_p (or Q when p = 0).
RankDecomposedTensor sample_tensor(int n, int r, std::uint64_t root_seed, Stream stream, std::uint64_t prime,
                                   std::uint64_t index);

/// Dense random tensor (entries uniform in F_p) written as n^2 simple terms.
RankDecomposedTensor dense_sample_tensor(int n, std::uint64_t root_seed, Stream stream, std::uint64_t prime,
                                         std::uint64_t index);

/// Value of sum c_i b_i(t) over F_p.
std::uint64_t evaluate_combination(const VanishingCombination& f, const std::vector<TransferPlan>& plans,
                                   const RankDecomposedTensor& t, const PrimeField& field);
std::vector<TransferPlan> make_plans(const std::vector<HwvSpec>& basis, int n);

// --- kernel search -----------------------------------------------------------

struct FindOptions {
  std::uint64_t seed = 1;
  std::size_t margin = 4;
  std::vector<std::uint64_t> primes = {kDefaultPrimeA, kDefaultPrimeB};
  /// Upper limit on primes added while rational reconstruction is unstable.
  std::size_t max_primes = 24;
  /// Also compute the kernel over Q from samples with entries in {-10..10}.
  bool rational_pass = false;
  unsigned threads = 1;
};

struct FindResult {
  std::vector<VanishingCombination> combinations;
  std::size_t samples = 0;
  std::vector<std::uint64_t> primes;       // primes whose kernels were combined
  std::size_t kernel_dimension = 0;
  std::vector<Matrix<std::uint64_t>> witnesses;  // one evaluation matrix per prime
  /// Prime and fresh sample matrix the reconstructed vectors were re-checked against.
  std::uint64_t check_prime = 0;
  Matrix<std::uint64_t> check_matrix;
  std::optional<bool> rational_agrees;
};

/// Kernel of the (k + margin) x k matrix (b_i(t_j)) at random rank-r tensors,
/// computed over several primes, lifted by CRT and rational reconstruction,
/// and confirmed on a fresh sample matrix over an unused prime.
FindResult find_vanishing(const std::vector<HwvSpec>& basis, int r, int n, const FindOptions& options);

// --- randomized membership ---------------------------------------------------

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::size_t trials = 100;
  std::vector<std::uint64_t> primes = {kDefaultPrimeA, kDefaultPrimeB};
  unsigned threads = 1;
};

struct TrialOutcome {
  std::uint64_t prime = 0;
  std::size_t trial = 0;
  std::uint64_t value = 0;
};

struct MembershipReport {
  int r = 0;
  int degree_bound = 0;          // 3d: degree of the pullback along the rank-r parametrization
  std::size_t trials = 0;        // per prime
  std::vector<std::uint64_t> primes;
  std::size_t failures = 0;
  std::vector<Rational> per_trial_bound;  // 3d / p for each prime
  double log10_error_bound = 0;  // log10 of prod_p (3d/p)^trials
  std::uint64_t seed = 0;
  std::vector<TrialOutcome> nonzero;  // first few nonvanishing trials

  bool passed() const { return failures == 0 && trials > 0; }
};

/// Evaluates f at `trials` independent random rank-r tensors over each prime.
MembershipReport verify_vanishing(const VanishingCombination& f, const VerifyOptions& options);

// --- the <2,2,2>_q family ----------------------------------------------------

/// {-(d/2), ..., ceil(d/2)+1}: d+2 points, one more than the degree bound needs.
std::vector<Rational> default_q_samples(int d);

struct FamilyOptions {
  std::vector<Rational> q_samples;  // empty selects default_q_samples(d)
  std::optional<MatrixTriple> group_element;
  unsigned threads = 1;
};

struct FamilyEvaluation {
  UniPoly poly;
  std::vector<std::pair<Rational, Rational>> samples;
};

/// f(g . <2,2,2>_q) as an exact polynomial of degree <= d in q.
FamilyEvaluation eval_on_family(const VanishingCombination& f, const FamilyOptions& options = {});

/// Exact value of f at one rational tensor.
Rational evaluate_combination(const VanishingCombination& f, const RankDecomposedTensor& t, unsigned threads = 1);

// --- certificates --------------------------------------------------------------

struct CertifyOptions {
  VerifyOptions verify;
  FamilyOptions family;
  /// Known rank upper bound for <2,2,2>, from Strassen's algorithm.
  int upper_bound = 7;
};

struct CertifiedPart {
  VanishingCombination combination;
  MembershipReport membership;
  FamilyEvaluation family;
};

struct Certificate {
  std::vector<CertifiedPart> parts;
  std::vector<Rational> common_roots;
  UniPoly gcd;
  bool valid = false;
  std::string diagnostic;
  /// Border support rank >= lower_bound when valid.
  int lower_bound = 0;
  int upper_bound = 0;
  std::uint64_t seed = 0;
};

/// Verifies each combination, evaluates it on the family and intersects the
/// root sets. Valid iff every membership report passes and the only common
/// root of the family polynomials (over C, via their gcd) is q = 0.
Certificate certify(std::span<const VanishingCombination> combinations, const CertifyOptions& options);

/// The decision step of certify, for parts whose reports are already computed.
Certificate assemble_certificate(std::vector<CertifiedPart> parts, int upper_bound, std::uint64_t seed);

// --- Las Vegas basis -------------------------------------------------------------

struct BasisOptions {
  int n = 4;
  std::uint64_t seed = 1;
  std::uint64_t prime = kDefaultPrimeA;
  std::size_t retries = 16;
  /// Candidate pairs drawn per attempt, as a multiple of k.
  std::uint64_t draws_per_element = 8;
  unsigned threads = 1;
};

struct BasisResult {
  std::vector<HwvSpec> basis;
  Matrix<std::uint64_t> witness;  // (b_i(w_j)) over F_prime, full rank
  std::uint64_t prime = 0;
  std::size_t attempts = 0;
};

/// k = kronecker(lambda) random permutation pairs whose evaluation matrix at
/// k random dense tensors has full rank. Pairs are drawn one at a time and kept
/// when they raise the rank. Throws DomainError when k = 0 and RetryExhausted
/// after `retries` attempts of draws_per_element * k draws each.
BasisResult random_basis(const PartitionTriple& lambda, const BasisOptions& options);

}  // namespace hwv
