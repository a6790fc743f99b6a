#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <variant>
#include <vector>

#include "irredcert/check.hpp"
#include "irredcert/polyz.hpp"

namespace irredcert {

/// Primes below this bound certify themselves by trial division.
inline constexpr std::uint64_t kSmallPrimeLimit = 1u << 20;
/// Minimum Miller-Rabin rounds when a probable-prime claim is re-checked.
inline constexpr unsigned kMinProbableRounds = 40;

struct PrattFactor;

struct SmallPrime {
  friend bool operator==(const SmallPrime&, const SmallPrime&) { return true; }
};

/// w^(n-1) = 1 and w^((n-1)/q) != 1 (mod n) for every prime q | n-1, with
/// n - 1 = prod q^e and each q certified recursively.
struct LucasPratt {
  Integer witness;
  std::vector<PrattFactor> factors;
};

struct ProbablePrime {
  unsigned rounds = kMinProbableRounds;
  friend bool operator==(const ProbablePrime&, const ProbablePrime&) = default;
};

using PrimalityCert = std::variant<SmallPrime, LucasPratt, ProbablePrime>;

struct PrattFactor {
  Integer q;
  unsigned e = 1;
  PrimalityCert cert;
};

bool operator==(const LucasPratt& a, const LucasPratt& b);
bool operator==(const PrattFactor& a, const PrattFactor& b);

/// Miller-Rabin. Below 3.3e24 a fixed base set makes the answer exact;
/// above it, base 2 plus `rounds` random bases drawn from rng.
bool is_probable_prime(const Integer& n, unsigned rounds, std::mt19937_64& rng);
/// Same, with a generator seeded from n so the answer is reproducible.
bool is_probable_prime(const Integer& n, unsigned rounds = kMinProbableRounds);

/// Effort budget for Pratt generation, measured in modular multiplications
/// spent by Pollard rho.
struct PrattBudget {
  std::uint64_t group_ops = 2'000'000;
};

/// Primality certificate for a probable prime n: SmallPrime below 2^20,
/// otherwise a Lucas-Pratt tree. Absent when factoring n-1 exceeds the budget.
std::optional<PrimalityCert> gen_pratt(const Integer& n, PrattBudget budget = {});

/// Checks a primality certificate. ProbablePrime is rejected in strict mode.
CheckResult verify_pratt(const Integer& n, const PrimalityCert& cert, bool strict);

/// Prime factorization (ascending, with exponents) by trial division then
/// Pollard rho (Brent). Absent if the budget runs out.
std::optional<std::vector<std::pair<Integer, unsigned>>> factor_integer(const Integer& n, std::uint64_t& budget);

}  // namespace irredcert
