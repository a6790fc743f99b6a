#include "irredcert/lpfw.hpp"

#include <mutex>
#include <string>

namespace irredcert {

Integer first_evaluation_point(const Rational& rho) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), rho.get_num_mpz_t(), rho.get_den_mpz_t());
  return fl + 2;
}

SearchState start_search(const RootBoundCert& rb) {
  SearchState st;
  st.n_pos = first_evaluation_point(rb.rho);
  st.n_neg = -st.n_pos;
  return st;
}

bool cofactor_within_bound(const Integer& s, const Integer& n, const Rational& rho, unsigned delta) {
  // s < ((|n| den - num) / den)^delta  <=>  s den^delta < (|n| den - num)^delta
  const Integer& num = rho.get_num();
  const Integer& den = rho.get_den();
  const Integer base = abs(n) * den - num;
  if (base <= 0) return false;
  Integer lhs, rhs;
  mpz_pow_ui(lhs.get_mpz_t(), den.get_mpz_t(), delta);
  lhs *= s;
  mpz_pow_ui(rhs.get_mpz_t(), base.get_mpz_t(), delta);
  return lhs < rhs;
}

CheckResult verify_lpfw(const PolyZ& f, const LpfwCert& cert, bool strict) {
  if (f.degree() < 2) return CheckResult::fail("lpfw.degree: polynomial degree must be at least 2");
  const unsigned d = static_cast<unsigned>(f.degree());

  if (!verify_root_bound(f, cert.root_bound))
    return CheckResult::fail("lpfw.root_bound: rho=" + to_string(cert.root_bound.rho) + " not certified with " +
                             std::to_string(cert.root_bound.graeffe_iters) + " Graeffe iterations");

  const Rational& rho = cert.root_bound.rho;
  if (!(Rational(abs(cert.n)) > rho + 1)) return CheckResult::fail("lpfw.evaluation_point: |n| <= 1 + rho");

  const Integer value = abs(eval(f, cert.n));
  if (value == 0) return CheckResult::fail("lpfw.divisibility: f(n) = 0");
  if (cert.p < 2) return CheckResult::fail("lpfw.divisibility: p < 2");
  if (!mpz_divisible_p(value.get_mpz_t(), cert.p.get_mpz_t())) return CheckResult::fail("lpfw.divisibility: p does not divide f(n)");
  Integer s;
  mpz_divexact(s.get_mpz_t(), value.get_mpz_t(), cert.p.get_mpz_t());

  const unsigned delta = cert.delta.value;
  if (delta < 1 || delta > d) return CheckResult::fail("lpfw.delta: delta outside 1..deg f");
  if (!cofactor_within_bound(s, cert.n, rho, delta))
    return CheckResult::fail("lpfw.cofactor_bound: s=" + s.get_str() + " not below (|n|-rho)^" + std::to_string(delta));

  if (delta == 1) {
    if (!cert.delta.evidence.empty()) return CheckResult::fail("lpfw.delta: evidence given for delta = 1");
  } else {
    if (cert.delta.evidence.empty()) return CheckResult::fail("lpfw.delta: delta > 1 without evidence");
    auto dv = verify_degan(f, cert.delta.evidence);
    if (!dv.check) return CheckResult::fail("lpfw.delta: " + dv.check.failure());
    if (dv.degrees.least_positive() < delta)
      return CheckResult::fail("lpfw.delta: evidence only certifies delta >= " + std::to_string(dv.degrees.least_positive()));
  }

  if (cert.primality) {
    auto pc = verify_pratt(cert.p, *cert.primality, strict);
    if (!pc) return CheckResult::fail("lpfw.primality: " + pc.failure());
  } else if (strict) {
    return CheckResult::fail("lpfw.primality: strict mode requires a primality certificate");
  } else if (!is_probable_prime(cert.p, kMinProbableRounds)) {
    return CheckResult::fail("lpfw.primality: p failed Miller-Rabin");
  }
  return CheckResult::pass();
}

std::vector<std::uint32_t> primes_below(std::uint32_t bound) {
  std::vector<bool> composite(bound, false);
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 2; i < bound; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = std::uint64_t{i} * i; j < bound; j += i) composite[j] = true;
  }
  return out;
}

namespace {

const std::vector<std::uint32_t>& cached_primes(std::uint32_t bound) {
  static std::mutex mu;
  static std::map<std::uint32_t, std::vector<std::uint32_t>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(bound);
  if (it == cache.end()) it = cache.emplace(bound, primes_below(bound)).first;
  return it->second;
}

}  // namespace

void search_lpfw(const PolyZ& f, const RootBoundCert& rb, SearchState& state, std::uint32_t smooth_bound, std::uint64_t iters,
                 const PrimeFilter& accept) {
  if (f.degree() < 2) throw DomainError("LPFW search requires degree >= 2");
  const unsigned dmax = static_cast<unsigned>(f.degree()) - 1;
  const auto& small = cached_primes(smooth_bound);
  const Rational& rho = rb.rho;

  for (std::uint64_t step = 0; step < iters; ++step) {
    const Integer vpos = abs(eval(f, state.n_pos));
    const Integer vneg = abs(eval(f, state.n_neg));
    const bool positive = vpos <= vneg;
    const Integer n = positive ? state.n_pos : state.n_neg;
    Integer rest = positive ? vpos : vneg;
    if (positive)
      ++state.n_pos;
    else
      --state.n_neg;
    ++state.points_tried;
    if (rest == 0) continue;

    // Everything stripped off here goes into s; give up once s alone is
    // already too big for the weakest usable bound.
    Integer limit = abs(n) * rho.get_den() - rho.get_num();
    Integer limit_pow;
    mpz_pow_ui(limit_pow.get_mpz_t(), limit.get_mpz_t(), dmax);
    Integer den_pow;
    mpz_pow_ui(den_pow.get_mpz_t(), rho.get_den_mpz_t(), dmax);

    Integer s = 1;
    std::uint32_t largest = 0;
    bool abandoned = false;
    for (std::uint32_t q : small) {
      if (rest == 1) break;
      if (!mpz_divisible_ui_p(rest.get_mpz_t(), q)) continue;
      do {
        mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), q);
        s *= q;
      } while (mpz_divisible_ui_p(rest.get_mpz_t(), q));
      largest = q;
      // With rest == 1 the last prime may still become p, so only s/q counts.
      if (rest != 1 && s * den_pow >= limit_pow) {
        abandoned = true;
        break;
      }
    }
    if (abandoned) continue;

    Integer p;
    if (rest == 1) {
      if (largest == 0) continue;
      p = largest;
      s /= largest;
    } else {
      // Cheap single-base screen before the full test.
      if (!is_probable_prime(rest, 0) || !is_probable_prime(rest, kMinProbableRounds)) continue;
      p = rest;
    }
    if (accept && !accept(p)) continue;

    for (unsigned delta = 1; delta <= dmax; ++delta) {
      if (state.found.count(delta)) continue;
      if (cofactor_within_bound(s, n, rho, delta)) state.found.emplace(delta, Witness{n, p, s});
    }
  }
}

}  // namespace irredcert
