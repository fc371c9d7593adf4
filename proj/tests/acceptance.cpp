// End-to-end acceptance run: one PASS/FAIL line per criterion, exit status 1
// if any criterion fails. Usage: acceptance [--threads N] [--only K ...]

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "hwv/certify.hpp"
#include "hwv/evaluate.hpp"
#include "hwv/json_io.hpp"
#include "support.hpp"

using namespace hwv;

namespace {

using Clock = std::chrono::steady_clock;

unsigned g_threads = 1;

Partition Pa(std::vector<int> parts) { return Partition(std::move(parts)); }

const Integer kC19("69332245782016022615247261570208505413020193878724712262");

VanishingCombination bundled(const std::string& name) {
  return combination_from_json(read_json_file(std::string(HWV_DATA_DIR) + "/" + name));
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Family polynomials are shared between criteria 2-4.
std::optional<FamilyEvaluation> g_fam20, g_fam19;

FamilyEvaluation family(const VanishingCombination& f) {
  FamilyOptions o;
  o.threads = g_threads;
  return eval_on_family(f, o);
}

Outcome kron_reproduction() {
  const auto sq = Pa({5, 5, 5, 5}), al = Pa({5, 5, 5, 4});
  auto t0 = Clock::now();
  const auto k20 = kronecker(PartitionTriple(sq, sq, sq));
  const double s20 = std::chrono::duration<double>(Clock::now() - t0).count();
  t0 = Clock::now();
  const auto k19 = kronecker(PartitionTriple(al, al, al));
  const double s19 = std::chrono::duration<double>(Clock::now() - t0).count();
  std::ostringstream d;
  d << "k((5,5,5,5)^3) = " << k20 << " in " << s20 << " s, k((5,5,5,4)^3) = " << k19 << " in " << s19 << " s";
  return {k20 == 4 && k19 == 31 && s20 <= 300 && s19 <= 300, d.str()};
}

Outcome f20_family() {
  const auto t0 = Clock::now();
  g_fam20 = family(bundled("f20.json"));
  const double s = std::chrono::duration<double>(Clock::now() - t0).count();
  const UniPoly expected({Rational(0), Rational(0), Rational(-730140480), Rational(-730140480)});
  return {g_fam20->poly == expected && s <= 900,
          "f20(<2,2,2>_q) = " + g_fam20->poly.to_string("q") + " (" + std::to_string(s) + " s)"};
}

Outcome f19_family() {
  const auto t0 = Clock::now();
  g_fam19 = family(bundled("f19.json"));
  const double s = std::chrono::duration<double>(Clock::now() - t0).count();
  const UniPoly expected({Rational(0), Rational(2 * kC19), Rational(3 * kC19)});
  return {g_fam19->poly == expected && s <= 3600,
          "f19(<2,2,2>_q) = " + g_fam19->poly.to_string("q") + " (" + std::to_string(s) + " s)"};
}

// Membership reports are shared between criteria 4 and 6.
std::optional<MembershipReport> g_mem20, g_mem19;

MembershipReport membership(const VanishingCombination& f, std::size_t trials) {
  VerifyOptions o;
  o.trials = trials;
  o.threads = g_threads;
  return verify_vanishing(f, o);
}

Outcome probabilistic_membership() {
  const auto f20 = bundled("f20.json"), f19 = bundled("f19.json");
  const auto t0 = Clock::now();
  g_mem20 = membership(f20, 100);
  g_mem19 = membership(f19, 100);
  const double s = std::chrono::duration<double>(Clock::now() - t0).count();

  bool ok = true;
  for (const auto* rep : {&*g_mem20, &*g_mem19}) {
    ok = ok && rep->passed() && rep->trials == 100 && rep->primes.size() == 2 && rep->r == 6;
    for (std::size_t i = 0; i < rep->primes.size(); ++i) {
      ok = ok && rep->per_trial_bound[i] <= Rational(60) / Rational(Integer(rep->primes[i]));
    }
  }

  // b1 alone is not an equation for sigma_6.
  auto b1 = f20;
  b1.coeffs = {1, 0, 0, 0};
  const auto rep_b1 = membership(b1, 5);
  // f20 does not vanish at a random rank-7 tensor.
  auto f20_r7 = f20;
  f20_r7.r = 7;
  const auto rep_r7 = membership(f20_r7, 1);
  ok = ok && rep_b1.failures > 0 && rep_r7.failures > 0;

  std::ostringstream d;
  d << "f20: " << g_mem20->failures << " nonzero of " << 2 * g_mem20->trials << ", f19: " << g_mem19->failures
    << " nonzero of " << 2 * g_mem19->trials << ", per-trial bounds 60/p and 57/p, log10 error <= "
    << std::max(g_mem20->log10_error_bound, g_mem19->log10_error_bound) << "; controls: b1 nonzero at "
    << rep_b1.failures << "/" << 2 * rep_b1.trials << " rank-6 trials, f20 nonzero at " << rep_r7.failures << "/"
    << 2 * rep_r7.trials << " rank-7 trials (" << s << " s)";
  return {ok, d.str()};
}

Outcome certificate() {
  if (!g_fam20 || !g_fam19 || !g_mem20 || !g_mem19) return {false, "needs criteria 2, 3 and 6"};
  const auto t0 = Clock::now();
  std::vector<CertifiedPart> parts = {{bundled("f19.json"), *g_mem19, *g_fam19},
                                      {bundled("f20.json"), *g_mem20, *g_fam20}};
  const auto cert = assemble_certificate(std::move(parts), 7, 1);
  const double s = std::chrono::duration<double>(Clock::now() - t0).count();
  std::string roots;
  for (const auto& x : cert.common_roots) roots += (roots.empty() ? "" : ", ") + to_string(x);
  const bool ok = cert.valid && cert.common_roots == std::vector<Rational>{0} && cert.lower_bound == 7 &&
                  cert.upper_bound == 7;
  return {ok, "common roots {" + roots + "}, bound " + std::to_string(cert.lower_bound) + ": " + cert.diagnostic +
                  " (" + std::to_string(s) + " s)"};
}

Outcome kernel_rediscovery() {
  const auto f20 = bundled("f20.json");
  FindOptions o;
  o.threads = g_threads;
  const auto t0 = Clock::now();
  const auto res = find_vanishing(f20.basis, 6, 4, o);
  const double s = std::chrono::duration<double>(Clock::now() - t0).count();
  std::ostringstream d;
  d << "kernel dimension " << res.combinations.size();
  bool ok = res.combinations.size() == 1 && s <= 8 * 3600;
  if (!res.combinations.empty()) {
    d << ", vector (";
    for (std::size_t i = 0; i < res.combinations[0].coeffs.size(); ++i) {
      d << (i ? ", " : "") << res.combinations[0].coeffs[i];
    }
    d << ")";
    ok = ok && res.combinations[0].coeffs == f20.coeffs;
  }
  d << " over " << res.primes.size() << " primes, re-checked mod " << res.check_prime << " (" << s << " s)";
  return {ok, d.str()};
}

Outcome oracle_equivalence() {
  Rng rng(derive_seed(1, {7}));
  RationalField q;
  const auto t0 = Clock::now();
  int agree = 0, nonzero = 0;
  const int instances = 500;
  for (int i = 0; i < instances; ++i) {
    const int d = 1 + static_cast<int>(rng.below(4));
    const int n = 1 + static_cast<int>(rng.below(3));
    const int r = 1 + static_cast<int>(rng.below(3));
    const auto spec = testing::random_spec(d, n, rng);
    const auto t = testing::random_tensor(n, r, 5, rng);
    const Rational naive = evaluate_naive(spec, t, q);
    EvalOptions back;
    back.strategy = Strategy::Backtrack;
    agree += evaluate(spec, t, q) == naive && evaluate(spec, t, q, back) == naive;
    nonzero += sgn(naive) != 0;
  }
  const double s = std::chrono::duration<double>(Clock::now() - t0).count();
  std::ostringstream d;
  d << agree << "/" << instances << " exact agreements (" << nonzero << " nonzero values), " << s << " s";
  return {agree == instances && s <= 120, d.str()};
}

Outcome covariance() {
  Rng rng(derive_seed(1, {8}));
  RationalField q;
  const int instances = 100;
  int homog = 0, torus = 0, unip = 0;
  for (int i = 0; i < instances; ++i) {
    const int n = 2 + static_cast<int>(rng.below(2));
    const int d = 1 + static_cast<int>(rng.below(5));
    const auto spec = testing::random_spec(d, n, rng);
    const auto t = testing::random_tensor(n, 3, 4, rng);
    const Rational base = evaluate(spec, t, q);

    const Rational alpha = testing::random_nonzero(rng);
    Rational pw = 1;
    for (int e = 0; e < d; ++e) pw *= alpha;
    homog += evaluate(spec, t.scaled(alpha), q) == pw * base;

    // Part i of each weight sits on coordinate n+1-i.
    DiagonalTriple g;
    Rational factor = 1;
    for (std::size_t leg = 0; leg < 3; ++leg) {
      for (int c = 0; c < n; ++c) g.diagonals[leg].push_back(testing::random_nonzero(rng));
      const auto& parts = spec.lambda()[leg].parts();
      for (std::size_t p = 0; p < parts.size(); ++p) {
        for (int e = 0; e < parts[p]; ++e) factor *= g.diagonals[leg][static_cast<std::size_t>(n) - 1 - p];
      }
    }
    torus += evaluate(spec, apply_group(g, t), q) == factor * base;

    const MatrixTriple u = {testing::random_unitriangular(n, rng), testing::random_unitriangular(n, rng),
                            testing::random_unitriangular(n, rng)};
    unip += evaluate(spec, apply_group(u, t), q) == base;
  }
  std::ostringstream d;
  d << "homogeneity " << homog << "/" << instances << ", torus " << torus << "/" << instances << ", unipotent " << unip
    << "/" << instances;
  return {homog == instances && torus == instances && unip == instances, d.str()};
}

Outcome normal_forms() {
  using Idx = SparseTensor::Index;
  const std::array<Idx, 8> support = {Idx{0, 0, 0}, Idx{0, 1, 2}, Idx{1, 2, 0}, Idx{1, 3, 2},
                                      Idx{2, 0, 1}, Idx{2, 1, 3}, Idx{3, 2, 1}, Idx{3, 3, 3}};
  auto on_leg = [](std::size_t leg, std::vector<Rational> diag) {
    auto g = DiagonalTriple::identity(4);
    g.diagonals[leg] = std::move(diag);
    return g;
  };
  // The reduction applied one scaling stage at a time.
  auto staged = [&](SparseTensor t) {
    auto at = [&](int i) { return t.at(support[static_cast<std::size_t>(i)]); };
    const Rational one = 1;
    t = apply_group(on_leg(0, {one / at(1), one / at(3), one / at(5), one / at(7)}), t);
    t = apply_group(on_leg(1, {one / at(4), one, one / at(6), one}), t);
    t = apply_group(on_leg(2, {one / at(2), one, one, one}), t);
    return t;
  };

  Rng rng(derive_seed(1, {9}));
  const int instances = 1000;
  int ok = 0;
  for (int i = 0; i < instances; ++i) {
    std::array<Rational, 8> c;
    SparseTensor t(4);
    for (std::size_t k = 0; k < 8; ++k) {
      c[k] = testing::random_nonzero(rng);
      t.set(support[k], c[k]);
    }
    const auto nf = normal_form(t);
    int units = 0;
    for (std::size_t k = 1; k < 8; ++k) units += nf.s.at(support[k]) == 1;
    SparseTensor x = t;
    for (const auto& stage : nf.stages) x = apply_group(stage, x);
    const bool good = units == 7 && nf.s.entries().size() == 8 && nf.s.at(support[0]) == nf.q &&
                      nf.q == c[0] * c[3] * c[5] * c[6] / (c[1] * c[2] * c[4] * c[7]) && x == nf.s &&
                      staged(t) == nf.s;
    ok += good;
  }
  int family_ok = 0;
  const int family_points = 50;
  for (int i = 0; i < family_points; ++i) {
    const Rational qv = testing::random_nonzero(rng);
    family_ok += normal_form(perturbed_mm(qv).to_sparse()).q == qv;
  }
  std::ostringstream d;
  d << ok << "/" << instances << " random tuples (seven units, q = adfg/(bceh), staged oracle, round trip); "
    << family_ok << "/" << family_points << " family points return q";
  return {ok == instances && family_ok == family_points, d.str()};
}

Outcome sanity_controls() {
  const auto mm = mm_tensor(2);
  const auto fr = flattening_ranks(mm.sparse);
  using Idx = SparseTensor::Index;
  const std::set<Idx> printed = {{0, 0, 0}, {0, 1, 2}, {1, 2, 0}, {1, 3, 2},
                                 {2, 0, 1}, {2, 1, 3}, {3, 2, 1}, {3, 3, 3}};
  bool ok = fr == std::array<std::size_t, 3>{4, 4, 4} && mm.sparse.support() == printed;
  std::size_t triples = 0, bad = 0;
  for (int d = 1; d <= 6; ++d) {
    const auto parts = partitions_of(d);
    for (const auto& a : parts) {
      for (const auto& b : parts) {
        bad += kronecker(PartitionTriple(a, b, Partition::row(d))) != (a == b ? 1u : 0u);
        for (const auto& c : parts) {
          const auto k = kronecker(PartitionTriple(a, b, c));
          ++triples;
          bad += kronecker(PartitionTriple(a, c, b)) != k || kronecker(PartitionTriple(b, a, c)) != k ||
                 kronecker(PartitionTriple(b, c, a)) != k || kronecker(PartitionTriple(c, a, b)) != k ||
                 kronecker(PartitionTriple(c, b, a)) != k;
        }
      }
    }
  }
  ok = ok && bad == 0;
  std::ostringstream d;
  d << "flattening ranks (" << fr[0] << "," << fr[1] << "," << fr[2] << "), support "
    << (mm.sparse.support() == printed ? "matches" : "differs") << ", " << triples << " triples with d <= 6, "
    << bad << " symmetry/orthogonality violations";
  return {ok, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--threads" && i + 1 < argc) {
      g_threads = static_cast<unsigned>(std::stoul(argv[++i]));
    } else if (a == "--only" && i + 1 < argc) {
      only.insert(std::stoi(argv[++i]));
    } else {
      std::cerr << "usage: acceptance [--threads N] [--only K ...]\n";
      return 2;
    }
  }
  if (const char* env = std::getenv("HWVCERT_THREADS")) g_threads = static_cast<unsigned>(std::stoul(env));

  // Criterion 4 reuses the results of 2, 3 and 6, so it runs last.
  const std::vector<std::pair<int, std::pair<std::string, std::function<Outcome()>>>> criteria = {
      {1, {"Kronecker reproduction", kron_reproduction}},
      {10, {"sanity controls", sanity_controls}},
      {7, {"oracle equivalence", oracle_equivalence}},
      {8, {"covariance suite", covariance}},
      {9, {"normal form", normal_forms}},
      {2, {"f20 family polynomial", f20_family}},
      {3, {"f19 family polynomial", f19_family}},
      {5, {"kernel rediscovery (d=20)", kernel_rediscovery}},
      {6, {"probabilistic membership", probabilistic_membership}},
      {4, {"certificate", certificate}},
  };
  bool all = true;
  for (const auto& [id, entry] : criteria) {
    if (!only.empty() && !only.count(id)) continue;
    Outcome out;
    try {
      out = entry.second();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    all = all && out.pass;
    std::cout << (out.pass ? "PASS" : "FAIL") << "  criterion " << id << " (" << entry.first << "): " << out.detail
              << std::endl;
  }
  return all ? 0 : 1;
}
