#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <shared_mutex>
#include <string>
#include <vector>

#include "hwv/field.hpp"
#include "hwv/random.hpp"

namespace hwv {

/// An integer partition: a nonincreasing list of positive parts.
class Partition {
 public:
  Partition() = default;
  /// Throws DomainError unless parts are positive and nonincreasing.
  explicit Partition(std::vector<int> parts);

  static Partition row(int d) { return d == 0 ? Partition() : Partition({d}); }
  static Partition column(int d) { return Partition(std::vector<int>(static_cast<std::size_t>(d), 1)); }

  const std::vector<int>& parts() const { return parts_; }
  std::size_t length() const { return parts_.size(); }
  int weight() const;
  int operator[](std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }

  Partition transpose() const;
  std::string to_string() const;

  auto operator<=>(const Partition&) const = default;

 private:
  std::vector<int> parts_;
};

/// All partitions of d, in reverse lexicographic order starting from (d).
std::vector<Partition> partitions_of(int d);

/// Order of the centralizer of a permutation with cycle type mu: prod i^{m_i} m_i!.
Integer centralizer_order(const Partition& mu);

/// Number of standard Young tableaux of shape lambda (hook length formula).
Integer hook_length_dimension(const Partition& lambda);

/// Three partitions of a common degree d, one per tensor leg.
class PartitionTriple {
 public:
  PartitionTriple() = default;
  PartitionTriple(Partition a, Partition b, Partition c);

  const Partition& operator[](std::size_t leg) const { return legs_[leg]; }
  const std::array<Partition, 3>& legs() const { return legs_; }
  int degree() const { return legs_[0].weight(); }
  std::size_t max_length() const;

  auto operator<=>(const PartitionTriple&) const = default;

 private:
  std::array<Partition, 3> legs_;
};

/// A permutation of {0, ..., d-1} in 0-based one-line notation.
/// Composition follows (a * b)(i) = a(b(i)).
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int d);

  std::size_t size() const { return images_.size(); }
  int operator()(std::size_t i) const { return images_[i]; }
  const std::vector<int>& images() const { return images_; }

  Permutation inverse() const;
  int sign() const;
  friend Permutation operator*(const Permutation& a, const Permutation& b);

  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<int> images_;
};

/// Memoized Murnaghan-Nakayama evaluation of irreducible S_d characters.
/// Lookups take a shared lock; insertions take an exclusive one.
class CharacterTable {
 public:
  std::int64_t value(const Partition& lambda, const Partition& mu);
  std::size_t cached_entries() const;

 private:
  using Key = std::pair<std::vector<int>, std::vector<int>>;
  std::int64_t eval(const std::vector<int>& lambda, const std::vector<int>& mu, std::size_t from);

  mutable std::shared_mutex mutex_;
  std::map<Key, std::int64_t> cache_;
};

/// chi_lambda(mu) using the process-wide character cache.
std::int64_t mn_character(const Partition& lambda, const Partition& mu);

/// k(lambda) = sum over classes mu of chi chi chi / z_mu.
std::uint64_t kronecker(const PartitionTriple& lambda);

/// Uniform permutation of d points (Fisher-Yates).
Permutation random_permutation(int d, Rng& rng);

}  // namespace hwv
