#pragma once

// JSON formats. Scalars are decimal strings ("-3", "7/10"); sparse tensor
// coordinates are 1-based; permutations are 0-based one-line arrays.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hwv/certify.hpp"
#include "hwv/combinatorics.hpp"
#include "hwv/hwv.hpp"
#include "hwv/polynomial.hpp"
#include "hwv/tensor.hpp"

namespace hwv {

using Json = nlohmann::ordered_json;

/// Malformed input; the message names the offending field.
struct JsonError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parses text, reporting syntax errors as JsonError.
Json parse_json(const std::string& text, const std::string& what);
Json read_json_file(const std::string& path);

Json scalar_to_json(const Rational& x);
Rational scalar_from_json(const Json& j, const std::string& field);
Json integer_to_json(const Integer& x);
Integer integer_from_json(const Json& j, const std::string& field);

Json to_json(const Partition& p);
Json to_json(const PartitionTriple& lambda);
PartitionTriple partition_triple_from_json(const Json& j, const std::string& field);
Permutation permutation_from_json(const Json& j, const std::string& field);

/// {"d", "lambda", "tau1", "tau2"}
Json to_json(const HwvSpec& spec);
HwvSpec hwv_from_json(const Json& j);

/// {"n", "terms": [{"coeff", "u", "v", "w"}]}
Json to_json(const RankDecomposedTensor& t);
/// {"n", "entries": [{"pos": [i, j, k], "coeff"}]}, 1-based.
Json to_json(const SparseTensor& t);
SparseTensor sparse_from_json(const Json& j);
/// Accepts either tensor format; a sparse tensor becomes one term per entry.
RankDecomposedTensor tensor_from_json(const Json& j);

Json to_json(const DiagonalTriple& g);
/// Three n x n matrices as nested arrays of scalars.
MatrixTriple matrix_triple_from_json(const Json& j, const std::string& field);
Json to_json(const MatrixTriple& g);

Json to_json(const NormalForm& nf);

/// Coefficients, lowest degree first.
Json to_json(const UniPoly& p);
UniPoly poly_from_json(const Json& j, const std::string& field);

/// A basis file: {"d", "lambda", "n"?, "pis": [[tau1, tau2], ...]}.
std::vector<HwvSpec> basis_from_json(const Json& j, int* n_out = nullptr);
Json basis_to_json(const std::vector<HwvSpec>& basis, int n);

/// {"d", "lambda", "n", "r", "pis", "coeffs"}; "n" defaults to 4.
Json to_json(const VanishingCombination& f);
VanishingCombination combination_from_json(const Json& j);

Json to_json(const MembershipReport& rep);
Json to_json(const Matrix<std::uint64_t>& m, std::uint64_t prime);
Json to_json(const FindResult& res);
Json to_json(const FamilyEvaluation& fam);
Json to_json(const BasisResult& res);

/// Keys "degree<d>" per part, plus common roots, bound and membership reports.
Json to_json(const Certificate& cert);

}  // namespace hwv
