#include "hwv/combinatorics.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>

namespace hwv {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] <= 0) throw DomainError("partition parts must be positive: " + to_string());
    if (i > 0 && parts_[i] > parts_[i - 1]) throw DomainError("partition parts must be nonincreasing: " + to_string());
  }
}

int Partition::weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

Partition Partition::transpose() const {
  if (parts_.empty()) return {};
  std::vector<int> t(static_cast<std::size_t>(parts_.front()), 0);
  for (int p : parts_) {
    for (int j = 0; j < p; ++j) ++t[static_cast<std::size_t>(j)];
  }
  return Partition(std::move(t));
}

std::string Partition::to_string() const {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < parts_.size(); ++i) out << (i ? "," : "") << parts_[i];
  out << ")";
  return out.str();
}

std::vector<Partition> partitions_of(int d) {
  if (d < 0) throw DomainError("partitions_of: negative degree");
  std::vector<Partition> out;
  std::vector<int> current;
  // Depth-first over parts bounded by the previous part.
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.emplace_back(current);
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      current.push_back(p);
      self(self, remaining - p, p);
      current.pop_back();
    }
  };
  rec(rec, d, d);
  return out;
}

Integer centralizer_order(const Partition& mu) {
  Integer z = 1;
  std::map<int, int> mult;
  for (int p : mu.parts()) ++mult[p];
  for (auto [part, m] : mult) {
    Integer pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(part), static_cast<unsigned long>(m));
    Integer fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(m));
    z *= pw * fact;
  }
  return z;
}

Integer hook_length_dimension(const Partition& lambda) {
  const auto conj = lambda.transpose();
  Integer hooks = 1;
  for (std::size_t i = 0; i < lambda.length(); ++i) {
    for (int j = 0; j < lambda[i]; ++j) {
      int arm = lambda[i] - j - 1;
      int leg = conj[static_cast<std::size_t>(j)] - static_cast<int>(i) - 1;
      hooks *= arm + leg + 1;
    }
  }
  Integer fact;
  mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(lambda.weight()));
  return fact / hooks;
}

PartitionTriple::PartitionTriple(Partition a, Partition b, Partition c) : legs_{std::move(a), std::move(b), std::move(c)} {
  if (legs_[0].weight() != legs_[1].weight() || legs_[0].weight() != legs_[2].weight()) {
    throw DomainError("partition triple with unequal degrees: " + legs_[0].to_string() + " " + legs_[1].to_string() +
                      " " + legs_[2].to_string());
  }
}

std::size_t PartitionTriple::max_length() const {
  return std::max({legs_[0].length(), legs_[1].length(), legs_[2].length()});
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (int v : images_) {
    if (v < 0 || static_cast<std::size_t>(v) >= images_.size() || seen[static_cast<std::size_t>(v)]) {
      throw DomainError("not a permutation in 0-based one-line notation");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Permutation Permutation::identity(int d) {
  std::vector<int> v(static_cast<std::size_t>(d));
  std::iota(v.begin(), v.end(), 0);
  return Permutation(std::move(v));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[static_cast<std::size_t>(images_[i])] = static_cast<int>(i);
  return Permutation(std::move(inv));
}

int Permutation::sign() const {
  std::vector<bool> seen(images_.size(), false);
  int s = 1;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(images_[j])) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) s = -s;
  }
  return s;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw DomainError("composing permutations of different degrees");
  std::vector<int> v(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) v[i] = a(static_cast<std::size_t>(b(i)));
  return Permutation(std::move(v));
}

std::int64_t CharacterTable::value(const Partition& lambda, const Partition& mu) {
  if (lambda.weight() != mu.weight()) {
    throw DomainError("character of " + lambda.to_string() + " on class " + mu.to_string() + ": unequal degrees");
  }
  return eval(lambda.parts(), mu.parts(), 0);
}

std::size_t CharacterTable::cached_entries() const {
  std::shared_lock lock(mutex_);
  return cache_.size();
}

std::int64_t CharacterTable::eval(const std::vector<int>& lambda, const std::vector<int>& mu, std::size_t from) {
  if (from == mu.size()) return lambda.empty() ? 1 : 0;
  Key key{lambda, std::vector<int>(mu.begin() + static_cast<std::ptrdiff_t>(from), mu.end())};
  {
    std::shared_lock lock(mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }

  // Rim hooks of length k correspond to moving one bead of the beta-set down by k.
  const int k = mu[from];
  const int len = static_cast<int>(lambda.size());
  std::vector<int> beta(lambda.size());
  for (int i = 0; i < len; ++i) beta[static_cast<std::size_t>(i)] = lambda[static_cast<std::size_t>(i)] + len - 1 - i;

  std::int64_t total = 0;
  for (int i = 0; i < len; ++i) {
    const int b = beta[static_cast<std::size_t>(i)];
    const int target = b - k;
    if (target < 0 || std::find(beta.begin(), beta.end(), target) != beta.end()) continue;
    int between = 0;
    for (int x : beta) {
      if (x > target && x < b) ++between;
    }
    std::vector<int> moved = beta;
    moved[static_cast<std::size_t>(i)] = target;
    std::sort(moved.rbegin(), moved.rend());
    std::vector<int> next;
    for (int j = 0; j < len; ++j) {
      int part = moved[static_cast<std::size_t>(j)] - (len - 1 - j);
      if (part > 0) next.push_back(part);
    }
    std::int64_t sub = eval(next, mu, from + 1);
    total += (between % 2 == 0) ? sub : -sub;
  }

  std::unique_lock lock(mutex_);
  cache_.emplace(std::move(key), total);
  return total;
}

namespace {

CharacterTable& shared_table() {
  static CharacterTable table;
  return table;
}

}  // namespace

std::int64_t mn_character(const Partition& lambda, const Partition& mu) { return shared_table().value(lambda, mu); }

std::uint64_t kronecker(const PartitionTriple& lambda) {
  const int d = lambda.degree();
  Integer fact;
  mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(d));
  Integer total = 0;
  for (const auto& mu : partitions_of(d)) {
    Integer term = Integer(static_cast<long>(mn_character(lambda[0], mu)));
    if (term == 0) continue;
    term *= static_cast<long>(mn_character(lambda[1], mu));
    term *= static_cast<long>(mn_character(lambda[2], mu));
    total += term * (fact / centralizer_order(mu));
  }
  Integer k, rem;
  mpz_tdiv_qr(k.get_mpz_t(), rem.get_mpz_t(), total.get_mpz_t(), fact.get_mpz_t());
  if (rem != 0 || k < 0 || !k.fits_ulong_p()) {
    throw DomainError("character sum for " + lambda[0].to_string() + " is not a natural number");
  }
  return k.get_ui();
}

Permutation random_permutation(int d, Rng& rng) {
  if (d < 1) throw DomainError("random_permutation needs d >= 1");
  std::vector<int> v(static_cast<std::size_t>(d));
  std::iota(v.begin(), v.end(), 0);
  for (std::size_t i = v.size(); i-- > 1;) {
    std::swap(v[i], v[rng.below(i + 1)]);
  }
  return Permutation(std::move(v));
}

}  // namespace hwv
