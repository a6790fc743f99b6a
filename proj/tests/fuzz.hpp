// Random reducible polynomials and forged certificates for soundness tests.
#pragma once

#include <random>
#include <vector>

#include "irredcert/engine.hpp"
#include "irredcert/lpfw.hpp"
#include "oracles.hpp"

namespace fuzz {

using namespace irredcert;

// Irreducible by construction: linear, or certified by the engine itself with
// the result re-checked.
inline PolyZ random_irreducible(std::mt19937_64& rng, int degree) {
  CertifyConfig cfg;
  cfg.max_iterations = 400;
  for (;;) {
    PolyZ g = primitive_part(oracle::random_poly(rng, degree, 12));
    if (g.degree() != degree) continue;
    if (degree == 1) return g;
    auto v = certify(g, cfg);
    if (auto* c = std::get_if<Certified>(&v); c && verify(g, c->doc, false)) return g;
  }
}

// g * h with deg g, deg h >= 1 and total degree in [lo, hi].
inline PolyZ random_reducible(std::mt19937_64& rng, int lo, int hi) {
  const int total = std::uniform_int_distribution<int>(lo, hi)(rng);
  const int dg = std::uniform_int_distribution<int>(1, total / 2)(rng);
  return primitive_part(random_irreducible(rng, dg) * random_irreducible(rng, total - dg));
}

// Primes dividing v: those below 1000, plus the cofactor when it is prime.
inline std::vector<Integer> some_prime_divisors(Integer v) {
  std::vector<Integer> out;
  if (v < 0) v = -v;
  if (v == 0) return out;
  for (std::uint32_t q : primes_below(1000)) {
    if (mpz_divisible_ui_p(v.get_mpz_t(), q)) {
      out.emplace_back(q);
      while (mpz_divisible_ui_p(v.get_mpz_t(), q)) v /= q;
    }
  }
  if (v > 1 && is_probable_prime(v)) out.push_back(v);
  return out;
}

// An LPFW certificate for f that satisfies as many checks as an adversary can
// arrange: real root bound, real evidence, a genuine prime dividing f(n).
// Returns false if no prime could be found at the chosen point.
inline bool forge_lpfw(const PolyZ& f, const RootBoundCert& rb, const DeltaBound& honest, std::mt19937_64& rng, LpfwCert& out) {
  const Integer start = first_evaluation_point(rb.rho);
  const long span = 60;
  std::uniform_int_distribution<long> off(0, span);
  Integer n = start + off(rng);
  if (rng() & 1) n = -n;
  if (rng() % 8 == 0) n = Integer(static_cast<long>(rng() % 7) - 3);  // inside the root disk
  const auto primes = some_prime_divisors(eval(f, n));
  if (primes.empty()) return false;
  out.root_bound = rb;
  out.n = n;
  out.p = primes[rng() % primes.size()];
  out.delta = honest;
  switch (rng() % 4) {
    case 0:
      out.delta = DeltaBound{};
      break;
    case 1:  // claim more than the evidence shows
      out.delta.value = std::min<unsigned>(static_cast<unsigned>(f.degree()), honest.value + 1 + rng() % 3);
      break;
    default:
      break;
  }
  out.primality.reset();
  if (rng() % 3 == 0 && out.p < (Integer(1) << 40)) out.primality = gen_pratt(out.p);
  return true;
}

}  // namespace fuzz
