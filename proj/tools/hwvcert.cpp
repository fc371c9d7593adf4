// hwvcert: command-line front end. Every command prints one JSON document
// that embeds the configuration it ran with.
//
// Exit status: 0 success, 1 refusal (failed verification, invalid
// certificate, exhausted retries), 2 usage error or malformed input.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hwv/certify.hpp"
#include "hwv/combinatorics.hpp"
#include "hwv/evaluate.hpp"
#include "hwv/json_io.hpp"
#include "hwv/tensor.hpp"

namespace {

using hwv::Json;

constexpr int kOk = 0;
constexpr int kRefused = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Settings {
  std::uint64_t seed = 1;
  std::vector<std::string> primes;
  std::size_t trials = 100;
  std::size_t margin = 4;
  unsigned threads = 1;
  std::string field;
  bool rediscover = false;
  std::string group_element;
  std::string output;
  std::string data_dir = HWV_DATA_DIR;
};

// Inline JSON when the argument looks like JSON, else a file path.
Json load(const std::string& arg, const std::string& what) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (arg[first] == '[' || arg[first] == '{')) return hwv::parse_json(arg, what);
  return hwv::read_json_file(arg);
}

std::vector<std::uint64_t> primes_of(const Settings& s) {
  if (s.primes.empty()) return {hwv::kDefaultPrimeA, hwv::kDefaultPrimeB};
  std::vector<std::uint64_t> out;
  for (const auto& text : s.primes) {
    std::size_t used = 0;
    std::uint64_t p = 0;
    try {
      p = std::stoull(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != text.size() || text.empty()) throw UsageError("--prime: not an integer: " + text);
    hwv::PrimeField check(p);  // throws DomainError unless p is an odd prime
    out.push_back(p);
  }
  return out;
}

std::optional<hwv::MatrixTriple> group_of(const Settings& s) {
  if (s.group_element.empty()) return std::nullopt;
  return hwv::matrix_triple_from_json(load(s.group_element, "--group-element"), "group_element");
}

Json config_json(const std::string& command, const Settings& s, const std::vector<std::string>& inputs) {
  Json primes = Json::array();
  for (auto p : primes_of(s)) primes.push_back(std::to_string(p));
  Json config{{"command", command},
              {"seed", std::to_string(s.seed)},
              {"primes", primes},
              {"trials", s.trials},
              {"samples_margin", s.margin},
              {"field", s.field.empty() ? Json(nullptr) : Json(s.field)},
              {"rediscover", s.rediscover},
              {"inputs", inputs}};
  if (!s.group_element.empty()) config["group_element"] = hwv::to_json(*group_of(s));
  return config;
}

void emit(const Settings& s, const Json& doc) {
  const std::string text = doc.dump(2) + "\n";
  if (s.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(s.output);
    if (!out) throw UsageError("cannot write " + s.output);
    out << text;
  }
}

hwv::PartitionTriple lambda_of(const std::string& arg) {
  return hwv::partition_triple_from_json(load(arg, "lambda"), "lambda");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Highest-weight-vector border rank certificates"};
  app.require_subcommand(1);
  app.fallthrough();
  Settings s;
  app.add_option("--seed", s.seed, "root seed for all randomness")->envname("HWVCERT_SEED");
  app.add_option("--prime", s.primes, "prime modulus (repeatable)")->envname("HWVCERT_PRIME")->delimiter(',');
  app.add_option("--trials", s.trials, "random trials per prime")->envname("HWVCERT_TRIALS");
  app.add_option("--samples-margin", s.margin, "extra sample tensors beyond the basis size")
      ->envname("HWVCERT_SAMPLES_MARGIN");
  app.add_option("--threads", s.threads, "worker threads (0 = all cores); never changes results")
      ->envname("HWVCERT_THREADS");
  app.add_option("--field", s.field, "rational or fp")
      ->envname("HWVCERT_FIELD")
      ->check(CLI::IsMember({"rational", "fp"}));
  app.add_flag("--rediscover", s.rediscover, "recompute the combinations instead of using bundled ones")
      ->envname("HWVCERT_REDISCOVER");
  app.add_option("--group-element", s.group_element, "matrix triple (JSON or file) applied to the family")
      ->envname("HWVCERT_GROUP_ELEMENT");
  app.add_option("--output,-o", s.output, "write the JSON here instead of stdout")->envname("HWVCERT_OUTPUT");
  app.add_option("--data-dir", s.data_dir, "directory holding f19.json and f20.json")->envname("HWVCERT_DATA_DIR");

  std::string arg1, arg2, q_text;
  int n = 0, rank_r = -1, dim = 4;

  auto* kron = app.add_subcommand("kron", "Kronecker coefficient of a partition triple");
  kron->add_option("lambda", arg1, "[[...],[...],[...]] or a file")->required();

  auto* mmten = app.add_subcommand("mmten", "matrix multiplication tensor <n,n,n>");
  mmten->add_option("n", n)->required()->check(CLI::PositiveNumber);
  mmten->add_option("--q", q_text, "coefficient of e11 x e11 x e11 (n = 2 only)");

  auto* normalize = app.add_subcommand("normalize", "bring a tensor with the support of <2,2,2> to <2,2,2>_q");
  normalize->add_option("tensor", arg1)->required();

  auto* basis = app.add_subcommand("basis", "random highest-weight-vector basis (Las Vegas)");
  basis->add_option("lambda", arg1)->required();
  basis->add_option("--n", dim, "tensor dimension")->check(CLI::PositiveNumber);

  auto* eval = app.add_subcommand("eval", "evaluate a highest-weight vector at a tensor");
  eval->add_option("hwv", arg1)->required();
  eval->add_option("tensor", arg2)->required();

  auto* nullspace = app.add_subcommand("nullspace", "combinations of a basis vanishing on sigma_r");
  nullspace->add_option("basis", arg1)->required();
  nullspace->add_option("--rank", rank_r, "secant rank r")->required()->check(CLI::NonNegativeNumber);

  auto* verify = app.add_subcommand("verify", "randomized membership test for a combination");
  verify->add_option("combination", arg1)->required();

  auto* certify = app.add_subcommand("certify", "certificate for the border support rank of <2,2,2>");

  auto* family = app.add_subcommand("family", "polynomial f(g . <2,2,2>_q) of a combination");
  family->add_option("combination", arg1)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (kron->parsed()) {
      const auto lambda = lambda_of(arg1);
      emit(s, Json{{"config", config_json("kron", s, {arg1})},
                   {"lambda", hwv::to_json(lambda)},
                   {"kronecker", hwv::kronecker(lambda)}});
    } else if (mmten->parsed()) {
      Json doc{{"config", config_json("mmten", s, {std::to_string(n)})}};
      if (!q_text.empty()) {
        if (n != 2) throw UsageError("--q applies to n = 2 only");
        const auto q = hwv::parse_rational(q_text);
        const auto t = hwv::perturbed_mm(q);
        doc["q"] = hwv::scalar_to_json(q);
        doc["tensor"] = hwv::to_json(t);
        doc["sparse"] = hwv::to_json(t.to_sparse());
      } else {
        const auto mm = hwv::mm_tensor(n);
        doc["tensor"] = hwv::to_json(mm.decomposed);
        doc["sparse"] = hwv::to_json(mm.sparse);
      }
      emit(s, doc);
    } else if (normalize->parsed()) {
      auto j = load(arg1, "tensor");
      if (j.contains("sparse")) j = Json(j["sparse"]);  // output of `mmten`
      const auto sparse = j.contains("entries") ? hwv::sparse_from_json(j) : hwv::tensor_from_json(j).to_sparse();
      emit(s, Json{{"config", config_json("normalize", s, {arg1})}, {"normal_form", hwv::to_json(hwv::normal_form(sparse))}});
    } else if (basis->parsed()) {
      hwv::BasisOptions opt;
      opt.n = dim;
      opt.seed = s.seed;
      opt.prime = primes_of(s).front();
      opt.threads = s.threads;
      const auto res = hwv::random_basis(lambda_of(arg1), opt);
      Json doc{{"config", config_json("basis", s, {arg1})}};
      doc["n"] = dim;
      const Json body = hwv::to_json(res);
      for (const auto& [key, value] : body.items()) doc[key] = value;
      emit(s, doc);
    } else if (eval->parsed()) {
      const auto spec = hwv::hwv_from_json(load(arg1, "hwv"));
      const auto t = hwv::tensor_from_json(load(arg2, "tensor"));
      Json doc{{"config", config_json("eval", s, {arg1, arg2})}};
      if (s.field == "fp") {
        const auto p = primes_of(s).front();
        hwv::PrimeField field(p);
        doc["field"] = field.name();
        doc["value"] = std::to_string(hwv::evaluate(spec, t, field));
      } else {
        doc["field"] = "rational";
        doc["value"] = hwv::scalar_to_json(hwv::evaluate(spec, t, hwv::RationalField{}));
      }
      emit(s, doc);
    } else if (nullspace->parsed()) {
      int basis_n = 4;
      const auto specs = hwv::basis_from_json(load(arg1, "basis"), &basis_n);
      hwv::FindOptions opt;
      opt.seed = s.seed;
      opt.margin = s.margin;
      opt.primes = primes_of(s);
      opt.threads = s.threads;
      opt.rational_pass = s.field == "rational";
      const auto res = hwv::find_vanishing(specs, rank_r, basis_n, opt);
      emit(s, Json{{"config", config_json("nullspace", s, {arg1})}, {"r", rank_r}, {"result", hwv::to_json(res)}});
    } else if (verify->parsed()) {
      const auto f = hwv::combination_from_json(load(arg1, "combination"));
      hwv::VerifyOptions opt;
      opt.seed = s.seed;
      opt.trials = s.trials;
      opt.primes = primes_of(s);
      opt.threads = s.threads;
      const auto rep = hwv::verify_vanishing(f, opt);
      emit(s, Json{{"config", config_json("verify", s, {arg1})}, {"membership", hwv::to_json(rep)}});
      return rep.passed() ? kOk : kRefused;
    } else if (family->parsed()) {
      const auto f = hwv::combination_from_json(load(arg1, "combination"));
      hwv::FamilyOptions opt;
      opt.group_element = group_of(s);
      opt.threads = s.threads;
      emit(s, Json{{"config", config_json("family", s, {arg1})}, {"family", hwv::to_json(hwv::eval_on_family(f, opt))}});
    } else if (certify->parsed()) {
      const std::vector<std::string> inputs = {s.data_dir + "/f19.json", s.data_dir + "/f20.json"};
      std::vector<hwv::VanishingCombination> combos;
      for (const auto& path : inputs) combos.push_back(hwv::combination_from_json(hwv::read_json_file(path)));
      Json rediscovery = Json::array();
      if (s.rediscover) {
        for (auto& f : combos) {
          hwv::FindOptions opt;
          opt.seed = s.seed;
          opt.margin = s.margin;
          opt.primes = primes_of(s);
          opt.threads = s.threads;
          const auto res = hwv::find_vanishing(f.basis, f.r, f.n, opt);
          rediscovery.push_back(Json{{"degree", f.degree()}, {"result", hwv::to_json(res)}});
          if (res.combinations.size() != 1) {
            emit(s, Json{{"config", config_json("certify", s, inputs)},
                         {"rediscovery", rediscovery},
                         {"valid", false},
                         {"conclusion", "degree-" + std::to_string(f.degree()) + " kernel has dimension " +
                                            std::to_string(res.combinations.size()) + ", expected 1"}});
            return kRefused;
          }
          f = res.combinations.front();
        }
      }
      hwv::CertifyOptions opt;
      opt.verify.seed = s.seed;
      opt.verify.trials = s.trials;
      opt.verify.primes = primes_of(s);
      opt.verify.threads = s.threads;
      opt.family.group_element = group_of(s);
      opt.family.threads = s.threads;
      const auto cert = hwv::certify(combos, opt);
      Json doc{{"config", config_json("certify", s, inputs)}};
      const Json body = hwv::to_json(cert);
      for (const auto& [key, value] : body.items()) doc[key] = value;
      if (s.rediscover) doc["rediscovery"] = rediscovery;
      emit(s, doc);
      return cert.valid ? kOk : kRefused;
    }
  } catch (const hwv::JsonError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const hwv::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const hwv::RetryExhausted& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kRefused;
  }
  return kOk;
}
