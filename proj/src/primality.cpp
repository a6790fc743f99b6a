#include "irredcert/primality.hpp"

#include <algorithm>
#include <string>

#include "irredcert/degan.hpp"

namespace irredcert {

bool operator==(const LucasPratt& a, const LucasPratt& b) {
  return a.witness == b.witness && a.factors == b.factors;
}

bool operator==(const PrattFactor& a, const PrattFactor& b) {
  return a.q == b.q && a.e == b.e && a.cert == b.cert;
}

namespace {

constexpr unsigned kSmallPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

// Jaeschke / Sorenson-Webster: bases 2..41 are exact below this bound.
const Integer kDeterministicBound("3317044064679887385961981");

bool strong_probable_prime(const Integer& n, const Integer& base, const Integer& odd_part, unsigned twos) {
  const Integer n_minus_1 = n - 1;
  Integer x;
  mpz_powm(x.get_mpz_t(), base.get_mpz_t(), odd_part.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n_minus_1) return true;
  for (unsigned i = 1; i < twos; ++i) {
    x = x * x % n;
    if (x == n_minus_1) return true;
    if (x == 1) return false;
  }
  return false;
}

Integer random_below(const Integer& bound, std::mt19937_64& rng) {
  // Uniform enough for witness selection: draw more bits than needed, reduce.
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2) + 64;
  Integer r = 0;
  for (std::size_t got = 0; got < bits; got += 64) {
    r <<= 64;
    const std::uint64_t chunk = rng();
    r += Integer(static_cast<unsigned long>(chunk >> 32)) << 32;
    r += static_cast<unsigned long>(chunk & 0xffffffffu);
  }
  return r % bound;
}

}  // namespace

bool is_probable_prime(const Integer& n, unsigned rounds, std::mt19937_64& rng) {
  if (n < 2) return false;
  for (unsigned q : kSmallPrimes) {
    if (n == q) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), q)) return false;
  }
  Integer odd_part = n - 1;
  unsigned twos = 0;
  while (mpz_even_p(odd_part.get_mpz_t())) {
    odd_part >>= 1;
    ++twos;
  }
  if (n < kDeterministicBound) {
    for (unsigned base : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u, 41u})
      if (!strong_probable_prime(n, base, odd_part, twos)) return false;
    return true;
  }
  if (!strong_probable_prime(n, 2, odd_part, twos)) return false;
  const Integer span = n - 3;
  for (unsigned i = 0; i < rounds; ++i) {
    const Integer base = random_below(span, rng) + 2;
    if (!strong_probable_prime(n, base, odd_part, twos)) return false;
  }
  return true;
}

bool is_probable_prime(const Integer& n, unsigned rounds) {
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull ^ mpz_fdiv_ui(n.get_mpz_t(), 0xfffffffbu));
  return is_probable_prime(n, rounds, rng);
}

namespace {

// Pollard rho with Brent's cycle detection. Returns a nontrivial factor of
// the odd composite n, or 0 once the budget is exhausted.
Integer pollard_brent(const Integer& n, std::uint64_t& budget) {
  std::mt19937_64 rng(0x243f6a8885a308d3ull ^ mpz_fdiv_ui(n.get_mpz_t(), 0xfffffffbu));
  constexpr unsigned long kBatch = 128;
  for (;;) {
    const Integer c = random_below(n - 1, rng) + 1;
    Integer y = random_below(n, rng);
    Integer x, ys, q = 1, g = 1;
    auto step = [&](Integer& v) {
      v = (v * v + c) % n;
      if (budget > 0) --budget;
    };
    unsigned long r = 1;
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) step(y);
      unsigned long k = 0;
      do {
        ys = y;
        const unsigned long lim = std::min(kBatch, r - k);
        for (unsigned long i = 0; i < lim; ++i) {
          step(y);
          q = q * abs(x - y) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += kBatch;
        if (budget == 0 && g == 1) return 0;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        step(ys);
        const Integer diff = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
    if (budget == 0) return 0;
  }
}

}  // namespace

std::optional<std::vector<std::pair<Integer, unsigned>>> factor_integer(const Integer& n_in, std::uint64_t& budget) {
  if (n_in < 1) throw DomainError("factor_integer requires a positive integer");
  std::vector<Integer> primes;
  Integer n = n_in;
  for (unsigned long q = 2; q < 10000 && n > 1; q += (q == 2 ? 1 : 2)) {
    if (Integer(q) * q > n) break;
    while (mpz_divisible_ui_p(n.get_mpz_t(), q)) {
      primes.emplace_back(q);
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), q);
    }
  }
  std::vector<Integer> pending;
  if (n > 1) pending.push_back(n);
  while (!pending.empty()) {
    Integer m = pending.back();
    pending.pop_back();
    if (is_probable_prime(m)) {
      primes.push_back(m);
      continue;
    }
    const Integer g = pollard_brent(m, budget);
    if (g == 0) return std::nullopt;
    pending.push_back(g);
    pending.push_back(m / g);
  }
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<Integer, unsigned>> out;
  for (const auto& q : primes) {
    if (!out.empty() && out.back().first == q)
      ++out.back().second;
    else
      out.emplace_back(q, 1);
  }
  return out;
}

namespace {

std::optional<PrimalityCert> gen_pratt_impl(const Integer& n, std::uint64_t& budget) {
  if (n < 2) return std::nullopt;
  if (n < kSmallPrimeLimit) {
    if (!is_small_prime(n.get_ui())) return std::nullopt;
    return PrimalityCert{SmallPrime{}};
  }
  const Integer n_minus_1 = n - 1;
  auto factors = factor_integer(n_minus_1, budget);
  if (!factors) return std::nullopt;

  Integer witness = 0;
  for (unsigned long w = 2; w < 100000; ++w) {
    if (!is_small_prime(w)) continue;
    Integer t;
    const Integer base(w);
    mpz_powm(t.get_mpz_t(), base.get_mpz_t(), n_minus_1.get_mpz_t(), n.get_mpz_t());
    if (t != 1) return std::nullopt;  // n is composite
    bool primitive = true;
    for (const auto& [q, e] : *factors) {
      const Integer exp = n_minus_1 / q;
      mpz_powm(t.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), n.get_mpz_t());
      if (t == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      witness = w;
      break;
    }
  }
  if (witness == 0) return std::nullopt;

  LucasPratt cert{witness, {}};
  for (const auto& [q, e] : *factors) {
    auto sub = gen_pratt_impl(q, budget);
    if (!sub) return std::nullopt;
    cert.factors.push_back(PrattFactor{q, e, std::move(*sub)});
  }
  return PrimalityCert{std::move(cert)};
}

}  // namespace

std::optional<PrimalityCert> gen_pratt(const Integer& n, PrattBudget budget) {
  std::uint64_t ops = budget.group_ops;
  return gen_pratt_impl(n, ops);
}

CheckResult verify_pratt(const Integer& n, const PrimalityCert& cert, bool strict) {
  if (std::holds_alternative<SmallPrime>(cert)) {
    if (n < 2 || n >= kSmallPrimeLimit) return CheckResult::fail("pratt.small_prime: " + n.get_str() + " outside the self-certifying range");
    if (!is_small_prime(n.get_ui())) return CheckResult::fail("pratt.small_prime: " + n.get_str() + " is composite");
    return CheckResult::pass();
  }
  if (const auto* pp = std::get_if<ProbablePrime>(&cert)) {
    if (strict) return CheckResult::fail("pratt.strict: probable-prime claim for " + n.get_str() + " not accepted");
    if (!is_probable_prime(n, std::max(pp->rounds, kMinProbableRounds)))
      return CheckResult::fail("pratt.probable_prime: " + n.get_str() + " failed Miller-Rabin");
    return CheckResult::pass();
  }

  const auto& lp = std::get<LucasPratt>(cert);
  const std::string tag = "pratt[" + n.get_str() + "]";
  if (n < 3) return CheckResult::fail(tag + ".range: Lucas-Pratt requires n >= 3");
  if (lp.factors.empty()) return CheckResult::fail(tag + ".factors: empty factor list");
  const Integer n_minus_1 = n - 1;
  const std::size_t max_exponent = mpz_sizeinbase(n.get_mpz_t(), 2);
  Integer product = 1;
  for (const auto& f : lp.factors) {
    if (f.q < 2) return CheckResult::fail(tag + ".factors: factor below 2");
    if (f.e < 1 || f.e > max_exponent) return CheckResult::fail(tag + ".factors: bad exponent");
    Integer power;
    mpz_pow_ui(power.get_mpz_t(), f.q.get_mpz_t(), f.e);
    product *= power;
    if (product > n_minus_1) break;
  }
  if (product != n_minus_1) return CheckResult::fail(tag + ".factorization: product of q^e differs from n-1");

  Integer t;
  mpz_powm(t.get_mpz_t(), lp.witness.get_mpz_t(), n_minus_1.get_mpz_t(), n.get_mpz_t());
  if (t != 1) return CheckResult::fail(tag + ".fermat: w^(n-1) != 1 mod n");
  for (const auto& f : lp.factors) {
    const Integer exp = n_minus_1 / f.q;
    mpz_powm(t.get_mpz_t(), lp.witness.get_mpz_t(), exp.get_mpz_t(), n.get_mpz_t());
    if (t == 1) return CheckResult::fail(tag + ".order: w^((n-1)/" + f.q.get_str() + ") == 1 mod n");
  }
  for (const auto& f : lp.factors) {
    auto sub = verify_pratt(f.q, f.cert, strict);
    if (!sub) return sub;
  }
  return CheckResult::pass();
}

}  // namespace irredcert
