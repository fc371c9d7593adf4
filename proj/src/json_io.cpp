#include "hwv/json_io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace hwv {

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& problem) {
  throw JsonError("field '" + field + "': " + problem);
}

const Json& require(const Json& j, const std::string& key, const std::string& context) {
  const std::string field = context.empty() ? key : context + "." + key;
  if (!j.is_object()) fail(context.empty() ? "<root>" : context, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(field, "missing");
  return *it;
}

int int_from_json(const Json& j, const std::string& field) {
  if (!j.is_number_integer()) fail(field, "expected an integer");
  const auto v = j.get<std::int64_t>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) fail(field, "out of range");
  return static_cast<int>(v);
}

std::vector<int> int_array(const Json& j, const std::string& field) {
  if (!j.is_array()) fail(field, "expected an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(int_from_json(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<Rational> scalar_array(const Json& j, const std::string& field) {
  if (!j.is_array()) fail(field, "expected an array of scalars");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(scalar_from_json(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

Json scalar_array_to_json(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(scalar_to_json(x));
  return out;
}

Json pis_to_json(const std::vector<HwvSpec>& basis) {
  Json pis = Json::array();
  for (const auto& spec : basis) pis.push_back(Json::array({spec.tau1().images(), spec.tau2().images()}));
  return pis;
}

std::vector<HwvSpec> pis_from_json(const Json& j, const PartitionTriple& lambda, const std::string& field) {
  if (!j.is_array()) fail(field, "expected an array of [tau1, tau2] pairs");
  std::vector<HwvSpec> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string f = field + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != 2) fail(f, "expected a pair [tau1, tau2]");
    auto tau1 = permutation_from_json(j[i][0], f + "[0]");
    auto tau2 = permutation_from_json(j[i][1], f + "[1]");
    try {
      out.emplace_back(lambda, std::move(tau1), std::move(tau2));
    } catch (const DomainError& e) {
      fail(f, e.what());
    }
  }
  return out;
}

void check_degree(const Json& j, const PartitionTriple& lambda) {
  if (j.contains("d") && int_from_json(j["d"], "d") != lambda.degree()) {
    fail("d", "does not match the weight's degree " + std::to_string(lambda.degree()));
  }
}

}  // namespace

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw JsonError(what + ": " + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw JsonError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path);
}

Json scalar_to_json(const Rational& x) { return to_string(x); }

Rational scalar_from_json(const Json& j, const std::string& field) {
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<std::int64_t>())));
  if (!j.is_string()) fail(field, "expected a decimal string such as \"-3\" or \"7/10\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const DomainError& e) {
    fail(field, e.what());
  }
}

Json integer_to_json(const Integer& x) { return to_string(x); }

Integer integer_from_json(const Json& j, const std::string& field) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<std::int64_t>()));
  if (!j.is_string()) fail(field, "expected a decimal integer string");
  try {
    return parse_integer(j.get<std::string>());
  } catch (const DomainError& e) {
    fail(field, e.what());
  }
}

Json to_json(const Partition& p) { return p.parts(); }

Json to_json(const PartitionTriple& lambda) {
  return Json::array({to_json(lambda[0]), to_json(lambda[1]), to_json(lambda[2])});
}

PartitionTriple partition_triple_from_json(const Json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 3) fail(field, "expected three partitions");
  std::array<Partition, 3> parts;
  for (std::size_t i = 0; i < 3; ++i) {
    const std::string f = field + "[" + std::to_string(i) + "]";
    try {
      parts[i] = Partition(int_array(j[i], f));
    } catch (const DomainError& e) {
      fail(f, e.what());
    }
  }
  try {
    return PartitionTriple(parts[0], parts[1], parts[2]);
  } catch (const DomainError& e) {
    fail(field, e.what());
  }
}

Permutation permutation_from_json(const Json& j, const std::string& field) {
  try {
    return Permutation(int_array(j, field));
  } catch (const DomainError& e) {
    fail(field, e.what());
  }
}

Json to_json(const HwvSpec& spec) {
  return Json{{"d", spec.degree()},
              {"lambda", to_json(spec.lambda())},
              {"tau1", spec.tau1().images()},
              {"tau2", spec.tau2().images()}};
}

HwvSpec hwv_from_json(const Json& j) {
  auto lambda = partition_triple_from_json(require(j, "lambda", ""), "lambda");
  check_degree(j, lambda);
  auto tau1 = permutation_from_json(require(j, "tau1", ""), "tau1");
  auto tau2 = permutation_from_json(require(j, "tau2", ""), "tau2");
  try {
    return HwvSpec(lambda, tau1, tau2);
  } catch (const DomainError& e) {
    fail("tau1", e.what());
  }
}

Json to_json(const RankDecomposedTensor& t) {
  Json terms = Json::array();
  for (const auto& term : t.terms()) {
    terms.push_back(Json{{"coeff", scalar_to_json(term.coeff)},
                         {"u", scalar_array_to_json(term.u)},
                         {"v", scalar_array_to_json(term.v)},
                         {"w", scalar_array_to_json(term.w)}});
  }
  return Json{{"n", t.n()}, {"terms", terms}};
}

Json to_json(const SparseTensor& t) {
  Json entries = Json::array();
  for (const auto& [idx, value] : t.entries()) {
    entries.push_back(Json{{"pos", Json::array({idx[0] + 1, idx[1] + 1, idx[2] + 1})}, {"coeff", scalar_to_json(value)}});
  }
  return Json{{"n", t.n()}, {"entries", entries}};
}

SparseTensor sparse_from_json(const Json& j) {
  const int n = int_from_json(require(j, "n", ""), "n");
  if (n < 1) fail("n", "must be positive");
  const Json& entries = require(j, "entries", "");
  if (!entries.is_array()) fail("entries", "expected an array");
  SparseTensor t(n);
  for (std::size_t e = 0; e < entries.size(); ++e) {
    const std::string f = "entries[" + std::to_string(e) + "]";
    auto pos = int_array(require(entries[e], "pos", f), f + ".pos");
    if (pos.size() != 3) fail(f + ".pos", "expected three 1-based coordinates");
    for (int c : pos) {
      if (c < 1 || c > n) fail(f + ".pos", "coordinate out of range 1.." + std::to_string(n));
    }
    const SparseTensor::Index idx{pos[0] - 1, pos[1] - 1, pos[2] - 1};
    if (sgn(t.at(idx)) != 0) fail(f + ".pos", "duplicate coordinate");
    t.set(idx, scalar_from_json(require(entries[e], "coeff", f), f + ".coeff"));
  }
  return t;
}

RankDecomposedTensor tensor_from_json(const Json& j) {
  if (j.is_object() && j.contains("entries") && !j.contains("terms")) {
    const SparseTensor s = sparse_from_json(j);
    std::vector<Term> terms;
    const auto n = static_cast<std::size_t>(s.n());
    for (const auto& [idx, value] : s.entries()) {
      Term t{value, std::vector<Rational>(n, Rational(0)), std::vector<Rational>(n, Rational(0)),
             std::vector<Rational>(n, Rational(0))};
      t.u[static_cast<std::size_t>(idx[0])] = 1;
      t.v[static_cast<std::size_t>(idx[1])] = 1;
      t.w[static_cast<std::size_t>(idx[2])] = 1;
      terms.push_back(std::move(t));
    }
    return RankDecomposedTensor(s.n(), std::move(terms));
  }
  const int n = int_from_json(require(j, "n", ""), "n");
  if (n < 1) fail("n", "must be positive");
  const Json& terms = require(j, "terms", "");
  if (!terms.is_array()) fail("terms", "expected an array");
  std::vector<Term> out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string f = "terms[" + std::to_string(i) + "]";
    Term t;
    t.coeff = terms[i].contains("coeff") ? scalar_from_json(terms[i]["coeff"], f + ".coeff") : Rational(1);
    t.u = scalar_array(require(terms[i], "u", f), f + ".u");
    t.v = scalar_array(require(terms[i], "v", f), f + ".v");
    t.w = scalar_array(require(terms[i], "w", f), f + ".w");
    for (const auto* vec : {&t.u, &t.v, &t.w}) {
      if (vec->size() != static_cast<std::size_t>(n)) fail(f, "vector length differs from n = " + std::to_string(n));
    }
    out.push_back(std::move(t));
  }
  return RankDecomposedTensor(n, std::move(out));
}

Json to_json(const DiagonalTriple& g) {
  Json out = Json::array();
  for (const auto& diag : g.diagonals) out.push_back(scalar_array_to_json(diag));
  return out;
}

MatrixTriple matrix_triple_from_json(const Json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 3) fail(field, "expected three square matrices");
  MatrixTriple g;
  for (std::size_t l = 0; l < 3; ++l) {
    const std::string f = field + "[" + std::to_string(l) + "]";
    if (!j[l].is_array() || j[l].empty()) fail(f, "expected a nonempty array of rows");
    std::vector<std::vector<Rational>> rows;
    for (std::size_t i = 0; i < j[l].size(); ++i) {
      rows.push_back(scalar_array(j[l][i], f + "[" + std::to_string(i) + "]"));
      if (rows.back().size() != j[l].size()) fail(f, "matrix is not square");
    }
    g[l] = Matrix<Rational>::from_rows(rows);
  }
  return g;
}

Json to_json(const MatrixTriple& g) {
  Json out = Json::array();
  for (const auto& m : g) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      Json row = Json::array();
      for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json(m(i, c)));
      rows.push_back(row);
    }
    out.push_back(rows);
  }
  return out;
}

Json to_json(const NormalForm& nf) {
  Json stages = Json::array();
  for (const auto& st : nf.stages) stages.push_back(to_json(st));
  return Json{{"q", scalar_to_json(nf.q)}, {"stages", stages}, {"s", to_json(nf.s)}};
}

Json to_json(const UniPoly& p) { return scalar_array_to_json(p.coefficients()); }

UniPoly poly_from_json(const Json& j, const std::string& field) { return UniPoly(scalar_array(j, field)); }

std::vector<HwvSpec> basis_from_json(const Json& j, int* n_out) {
  auto lambda = partition_triple_from_json(require(j, "lambda", ""), "lambda");
  check_degree(j, lambda);
  if (n_out) *n_out = j.contains("n") ? int_from_json(j["n"], "n") : 4;
  auto basis = pis_from_json(require(j, "pis", ""), lambda, "pis");
  if (basis.empty()) fail("pis", "basis is empty");
  return basis;
}

Json basis_to_json(const std::vector<HwvSpec>& basis, int n) {
  if (basis.empty()) return Json{{"n", n}, {"pis", Json::array()}};
  return Json{{"d", basis.front().degree()}, {"lambda", to_json(basis.front().lambda())}, {"n", n}, {"pis", pis_to_json(basis)}};
}

Json to_json(const VanishingCombination& f) {
  Json coeffs = Json::array();
  for (const auto& c : f.coeffs) coeffs.push_back(integer_to_json(c));
  return Json{{"d", f.degree()},   {"lambda", to_json(f.lambda)}, {"n", f.n},
              {"r", f.r},          {"pis", pis_to_json(f.basis)}, {"coeffs", coeffs}};
}

VanishingCombination combination_from_json(const Json& j) {
  VanishingCombination f;
  f.lambda = partition_triple_from_json(require(j, "lambda", ""), "lambda");
  check_degree(j, f.lambda);
  f.n = j.contains("n") ? int_from_json(j["n"], "n") : 4;
  f.r = int_from_json(require(j, "r", ""), "r");
  if (f.r < 0) fail("r", "must be nonnegative");
  f.basis = pis_from_json(require(j, "pis", ""), f.lambda, "pis");
  const Json& coeffs = require(j, "coeffs", "");
  if (!coeffs.is_array()) fail("coeffs", "expected an array of integer strings");
  for (std::size_t i = 0; i < coeffs.size(); ++i) f.coeffs.push_back(integer_from_json(coeffs[i], "coeffs[" + std::to_string(i) + "]"));
  if (f.coeffs.size() != f.basis.size()) {
    fail("coeffs", "has " + std::to_string(f.coeffs.size()) + " entries for " + std::to_string(f.basis.size()) + " pairs");
  }
  return f;
}

Json to_json(const MembershipReport& rep) {
  Json bounds = Json::array();
  for (const auto& b : rep.per_trial_bound) bounds.push_back(scalar_to_json(b));
  Json nonzero = Json::array();
  for (const auto& t : rep.nonzero) {
    nonzero.push_back(Json{{"prime", std::to_string(t.prime)}, {"trial", t.trial}, {"value", std::to_string(t.value)}});
  }
  Json primes = Json::array();
  for (auto p : rep.primes) primes.push_back(std::to_string(p));
  std::ostringstream log10;
  log10.precision(6);
  log10 << rep.log10_error_bound;
  return Json{{"r", rep.r},
              {"passed", rep.passed()},
              {"trials_per_prime", rep.trials},
              {"primes", primes},
              {"failures", rep.failures},
              {"degree_bound", rep.degree_bound},
              {"per_trial_bound", bounds},
              {"log10_error_bound", log10.str()},
              {"seed", std::to_string(rep.seed)},
              {"nonzero_trials", nonzero}};
}

Json to_json(const Matrix<std::uint64_t>& m, std::uint64_t prime) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(std::to_string(m(i, c)));
    rows.push_back(row);
  }
  return Json{{"prime", std::to_string(prime)}, {"rows", rows}};
}

Json to_json(const FindResult& res) {
  Json combos = Json::array();
  for (const auto& f : res.combinations) combos.push_back(to_json(f));
  Json witnesses = Json::array();
  for (std::size_t i = 0; i < res.witnesses.size(); ++i) witnesses.push_back(to_json(res.witnesses[i], res.primes[i]));
  Json out{{"kernel_dimension", res.kernel_dimension},
           {"samples", res.samples},
           {"combinations", combos},
           {"witnesses", witnesses}};
  if (res.check_prime != 0) out["check"] = to_json(res.check_matrix, res.check_prime);
  if (res.rational_agrees) out["rational_agrees"] = *res.rational_agrees;
  return out;
}

Json to_json(const FamilyEvaluation& fam) {
  Json samples = Json::array();
  for (const auto& [q, v] : fam.samples) samples.push_back(Json::array({scalar_to_json(q), scalar_to_json(v)}));
  return Json{{"poly", to_json(fam.poly)}, {"text", fam.poly.to_string("q")}, {"samples", samples}};
}

Json to_json(const BasisResult& res) {
  return Json{{"d", res.basis.front().degree()},
              {"lambda", to_json(res.basis.front().lambda())},
              {"k", res.basis.size()},
              {"pis", pis_to_json(res.basis)},
              {"attempts", res.attempts},
              {"witness", to_json(res.witness, res.prime)}};
}

Json to_json(const Certificate& cert) {
  Json out = Json::object();
  Json membership = Json::object();
  for (const auto& part : cert.parts) {
    const std::string key = "degree" + std::to_string(part.combination.degree());
    Json coeffs = Json::array();
    for (const auto& c : part.combination.coeffs) coeffs.push_back(integer_to_json(c));
    out[key] = Json{{"lambda", to_json(part.combination.lambda)},
                    {"r", part.combination.r},
                    {"pis", pis_to_json(part.combination.basis)},
                    {"coeffs", coeffs},
                    {"family_poly", to_json(part.family.poly)},
                    {"family_poly_text", part.family.poly.to_string("q")}};
    membership[key] = to_json(part.membership);
  }
  Json roots = Json::array();
  for (const auto& x : cert.common_roots) roots.push_back(scalar_to_json(x));
  out["common_roots"] = roots;
  out["gcd"] = to_json(cert.gcd);
  out["valid"] = cert.valid;
  out["bound"] = cert.valid ? Json(cert.lower_bound) : Json(nullptr);
  out["upper_bound"] = cert.upper_bound;
  out["conclusion"] = cert.diagnostic;
  out["seeds"] = Json::array({std::to_string(cert.seed)});
  out["membership"] = membership;
  return out;
}

}  // namespace hwv
