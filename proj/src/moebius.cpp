#include "irredcert/moebius.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <tuple>

#include "irredcert/degan.hpp"

namespace irredcert {

namespace {

PolyZ linear(const Integer& slope, const Integer& intercept) { return PolyZ{intercept, slope}; }

}  // namespace

PolyZ apply(const MoebiusMatrix& m, const PolyZ& f) {
  if (f.is_zero()) throw DomainError("Moebius transform of the zero polynomial");
  if (m.det() == 0) throw DomainError("degenerate Moebius matrix (det = 0)");
  const std::size_t n = static_cast<std::size_t>(f.degree());
  const auto& c = f.coeffs();

  if (m.b == 0 && m.c == 0) {
    std::vector<Integer> out(n + 1);
    Integer apow = 1;
    for (std::size_t j = 0; j <= n; ++j) {
      Integer dpow;
      mpz_pow_ui(dpow.get_mpz_t(), m.d.get_mpz_t(), n - j);
      out[j] = c[j] * apow * dpow;
      apow *= m.a;
    }
    return PolyZ(std::move(out));
  }
  if (m.a == 0 && m.d == 0) {
    // f_j b^j (cx)^(n-j)
    std::vector<Integer> out(n + 1);
    Integer bpow = 1;
    for (std::size_t j = 0; j <= n; ++j) {
      Integer cpow;
      mpz_pow_ui(cpow.get_mpz_t(), m.c.get_mpz_t(), n - j);
      out[n - j] = c[j] * bpow * cpow;
      bpow *= m.b;
    }
    return PolyZ(std::move(out));
  }

  const PolyZ num = linear(m.a, m.b);
  const PolyZ den = linear(m.c, m.d);
  std::vector<PolyZ> den_pows(n + 1);
  den_pows[0] = PolyZ::constant(1);
  for (std::size_t k = 1; k <= n; ++k) den_pows[k] = den_pows[k - 1] * den;
  PolyZ result;
  PolyZ num_pow = PolyZ::constant(1);
  for (std::size_t j = 0; j <= n; ++j) {
    if (c[j] != 0) result += c[j] * (num_pow * den_pows[n - j]);
    num_pow = num_pow * num;
  }
  return result;
}

MoebiusMatrix pseudo_inverse(const MoebiusMatrix& m) { return {m.d, -m.b, -m.c, m.a}; }

CheckResult verify_transform(const PolyZ& f, const MoebiusMatrix& m, const PolyZ& g) {
  if (m.det() == 0) throw DomainError("degenerate Moebius matrix (det = 0)");
  if (f.degree() != g.degree()) throw DomainError("transform changes the degree");
  if (f.degree() < 2) throw DomainError("transform verification needs degree >= 2");
  if (content(g) != 1) return CheckResult::fail("transform.image_not_primitive");
  if (g.leading() < 0) return CheckResult::fail("transform.image_leading_coefficient_negative");

  const std::size_t need = static_cast<std::size_t>(f.degree()) + 1;
  const long max_candidates = static_cast<long>(10 * need);
  std::vector<std::pair<Integer, Integer>> samples;  // (g(t), v(t))
  for (long i = 0; i < max_candidates && samples.size() < need; ++i) {
    // 0, 1, -1, 2, -2, ...
    const Integer t = (i % 2 == 1) ? Integer((i + 1) / 2) : Integer(-(i / 2));
    const Integer w = m.c * t + m.d;
    if (w == 0) continue;
    const Integer gt = eval(g, t);
    if (gt == 0) continue;
    const Integer v = eval_homogeneous(f, m.a * t + m.b, w);
    if (v == 0) continue;
    samples.emplace_back(gt, v);
  }
  if (samples.size() < need) throw DomainError("too few usable evaluation points");

  const auto& [g0, v0] = samples.front();
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (samples[i].first * v0 != g0 * samples[i].second) return CheckResult::fail("transform.ratio_mismatch");
  return CheckResult::pass();
}

namespace {

struct Catalog {
  const PolyZ& f;
  int d;
  Integer fd;
  std::size_t max;
  std::vector<MoebiusMatrix> out;

  bool full() const { return out.size() >= max; }

  std::optional<PolyZ> image(const MoebiusMatrix& m) const {
    if (m.det() == 0) return std::nullopt;
    PolyZ g = apply(m, f);
    if (g.degree() != d) return std::nullopt;
    return primitive_part(g);
  }

  bool add(const MoebiusMatrix& m, bool must_reduce_fd) {
    if (full()) return false;
    auto g = image(m);
    if (!g) return false;
    if (must_reduce_fd && fixed_divisor(*g) >= fd) return false;
    if (std::find(out.begin(), out.end(), m) != out.end()) return false;
    out.push_back(m);
    return true;
  }
};

MoebiusMatrix scaling(Integer u, Integer v) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t());
  return {u / g, 0, 0, v / g};
}

unsigned multiplicity(Integer n, const Integer& q) {
  unsigned k = 0;
  n = abs(n);
  if (n == 0) return 0;
  while (mpz_divisible_p(n.get_mpz_t(), q.get_mpz_t())) {
    n /= q;
    ++k;
  }
  return k;
}

// "Simple" rationals u/v, u, v in 1..5 coprime, excluding 1/1, by height.
std::vector<std::pair<unsigned, unsigned>> simple_rationals() {
  std::vector<std::pair<unsigned, unsigned>> out;
  for (unsigned u = 1; u <= 5; ++u)
    for (unsigned v = 1; v <= 5; ++v)
      if (std::gcd(u, v) == 1 && !(u == 1 && v == 1)) out.emplace_back(u, v);
  std::sort(out.begin(), out.end(), [](auto x, auto y) {
    return std::make_tuple(std::max(x.first, x.second), x.first + x.second, x.first) <
           std::make_tuple(std::max(y.first, y.second), y.first + y.second, y.first);
  });
  return out;
}

}  // namespace

std::vector<MoebiusMatrix> candidate_transforms(const PolyZ& f, std::size_t max_candidates) {
  if (f.degree() < 2) throw DomainError("candidate transforms need degree >= 2");
  Catalog cat{f, f.degree(), fixed_divisor(f), max_candidates, {}};
  cat.add(MoebiusMatrix::identity(), false);
  const Integer f0 = f.coeff(0);
  if (f0 != 0) cat.add(MoebiusMatrix::reversal(), false);
  const auto simple = simple_rationals();

  if (cat.fd > 1) {
    // The fixed divisor of a primitive polynomial divides d!, so its prime
    // factors are at most d.
    std::vector<std::pair<Integer, unsigned>> primes;
    Integer rest = cat.fd;
    for (unsigned long q = 2; q <= static_cast<unsigned long>(cat.d) + 1 && rest > 1; ++q) {
      if (!is_small_prime(q) || !mpz_divisible_ui_p(rest.get_mpz_t(), q)) continue;
      while (mpz_divisible_ui_p(rest.get_mpz_t(), q)) rest /= q;
      const unsigned k = std::max(1u, f0 != 0 ? multiplicity(f0, Integer(q)) : multiplicity(cat.fd, Integer(q)));
      primes.emplace_back(Integer(q), k);
    }
    if (rest > 1) primes.emplace_back(rest, 1);

    // Greedy composite scaling: repeatedly apply the single prime-power
    // scaling that lowers the fixed divisor the most.
    Integer u = 1, v = 1;
    Integer current = cat.fd;
    for (;;) {
      std::optional<std::pair<Integer, Integer>> best;
      Integer best_fd = current;
      for (const auto& [q, k] : primes) {
        Integer qj = 1;
        for (unsigned j = 1; j <= k; ++j) {
          qj *= q;
          for (const auto& [nu, nv] : {std::pair<Integer, Integer>(u * qj, v), std::pair<Integer, Integer>(u, v * qj)}) {
            const MoebiusMatrix m = scaling(nu, nv);
            auto g = cat.image(m);
            if (!g) continue;
            const Integer gfd = fixed_divisor(*g);
            if (gfd < best_fd) {
              best_fd = gfd;
              best = std::pair{m.a, m.d};
            }
          }
        }
      }
      if (!best) break;
      std::tie(u, v) = *best;
      current = best_fd;
      if (current == 1) break;
    }
    if (!(u == 1 && v == 1)) {
      cat.add(scaling(u, v), true);
      for (const auto& [su, sv] : simple) cat.add(scaling(u * su, v * sv), true);
    }

    for (const auto& [q, k] : primes) {
      Integer qj = 1;
      for (unsigned j = 1; j <= k; ++j) {
        qj *= q;
        cat.add(scaling(qj, 1), true);
        cat.add(scaling(1, qj), true);
      }
    }
  }

  for (const auto& [u, v] : simple) {
    cat.add(scaling(u, v), false);
    cat.add(MoebiusMatrix{0, u, v, 0}, false);
  }
  return cat.out;
}

}  // namespace irredcert
