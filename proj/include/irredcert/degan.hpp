#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "irredcert/check.hpp"
#include "irredcert/polymodp.hpp"
#include "irredcert/polyz.hpp"

namespace irredcert {

/// Subset of {0, ..., d} of factor degrees not yet excluded. Always contains
/// 0 and d and is symmetric under e -> d - e.
class DegreeSet {
 public:
  DegreeSet() = default;
  /// Every degree 0..d.
  static DegreeSet full(unsigned d);
  /// Only the trivial degrees {0, d}.
  static DegreeSet trivial(unsigned d);

  unsigned degree() const { return d_; }
  bool contains(unsigned e) const { return e < bits_.size() && bits_[e]; }
  /// Members in 1..floor(d/2).
  std::vector<unsigned> proper() const;
  bool proper_empty() const { return proper().empty(); }
  /// Least member >= 1 (equals d when the proper part is empty).
  unsigned least_positive() const;
  std::vector<unsigned> members() const;
  bool is_symmetric() const;

  DegreeSet& operator&=(const DegreeSet& other);
  friend bool operator==(const DegreeSet&, const DegreeSet&) = default;

 private:
  friend DegreeSet possible_degrees(std::span<const unsigned> factor_degrees, unsigned d);
  unsigned d_ = 0;
  std::vector<bool> bits_;
};

/// Modular factorization of f at one prime: monic irreducible factors,
/// repeated according to multiplicity when f mod p is not squarefree.
struct PrimeEvidence {
  std::uint32_t p = 2;
  std::vector<PolyModP> factors;

  friend bool operator==(const PrimeEvidence&, const PrimeEvidence&) = default;
};

/// Certified factor degree lower bound: every nontrivial factor of f has
/// degree >= value. Evidence is empty iff value == 1.
struct DeltaBound {
  unsigned value = 1;
  std::vector<PrimeEvidence> evidence;

  friend bool operator==(const DeltaBound&, const DeltaBound&) = default;
};

/// Subset-sum closure of the factor degrees. Throws if they do not sum to d.
DegreeSet possible_degrees(std::span<const unsigned> factor_degrees, unsigned d);
DegreeSet possible_degrees(const PrimeEvidence& evidence, unsigned d);

/// Factors f mod p when p does not divide lc(f) and the reduction is
/// squarefree; absent otherwise.
std::optional<std::pair<PrimeEvidence, DegreeSet>> analyze_prime(const PolyZ& f, std::uint32_t p);

/// Like analyze_prime but also handles non-squarefree reductions by listing
/// repeated factors. Absent only when p divides lc(f).
std::optional<std::pair<PrimeEvidence, DegreeSet>> analyze_prime_with_multiplicity(const PolyZ& f, std::uint32_t p);

/// Bitwise intersection; all sets must share the same degree.
DegreeSet intersect(std::span<const DegreeSet> sets);

/// Subset of evidence whose intersection still equals target: exhaustive over
/// sizes 1..3, then greedy cover.
std::vector<PrimeEvidence> minimize_evidence(std::span<const PrimeEvidence> evidence, const DegreeSet& target);

struct DegreeVerification {
  CheckResult check;
  DegreeSet degrees;
};

/// Trusted check of a list of modular factorizations. On success the result
/// holds the recomputed intersection; an empty proper part certifies f
/// irreducible, otherwise its least member is a certified lower bound.
DegreeVerification verify_degan(const PolyZ& f, std::span<const PrimeEvidence> evidence);

/// Trial division primality for word-sized integers.
bool is_small_prime(std::uint64_t n);

/// Incremental prime-selection strategy for degree analysis. Alternates
/// between a preferential prime list and random primes from a range that
/// doubles after every 8 unhelpful primes. All choices derive from the seed.
/// Non-squarefree reductions are used with their repeated factors.
class DegreeAnalyzer {
 public:
  DegreeAnalyzer(PolyZ f, std::uint64_t seed);

  /// Tries one more prime. Returns true if the degree set shrank.
  bool step();
  bool done() const { return current_.proper_empty(); }

  const PolyZ& polynomial() const { return f_; }
  const DegreeSet& degrees() const { return current_; }
  const std::vector<PrimeEvidence>& evidence() const { return evidence_; }
  std::size_t primes_tried() const { return tried_; }

  /// The current bound with a minimized evidence list.
  DeltaBound delta_bound() const;

 private:
  std::uint32_t next_prime();

  PolyZ f_;
  unsigned d_;
  std::mt19937_64 rng_;
  std::vector<std::uint32_t> preferential_;
  std::size_t pref_index_ = 0;
  bool take_preferential_ = true;
  std::uint64_t random_hi_;
  unsigned unhelpful_ = 0;
  std::set<std::uint32_t> used_;
  std::size_t tried_ = 0;
  DegreeSet current_;
  std::vector<PrimeEvidence> evidence_;
};

struct DeganResult {
  DegreeSet degrees;
  std::vector<PrimeEvidence> evidence;
};

/// Runs the prime strategy for at most `budget` primes, stopping early once
/// the proper degree set is empty.
DeganResult generate_degan(const PolyZ& f, std::size_t budget, std::uint64_t seed);

}  // namespace irredcert
