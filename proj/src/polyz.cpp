#include "irredcert/polyz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "irredcert/polymodp.hpp"

namespace irredcert {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

PolyZ::PolyZ(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

PolyZ::PolyZ(std::initializer_list<Integer> coeffs) : coeffs_(coeffs) { normalize(); }

PolyZ PolyZ::constant(const Integer& c) { return PolyZ(std::vector<Integer>{c}); }

PolyZ PolyZ::monomial(const Integer& c, std::size_t k) {
  std::vector<Integer> v(k + 1);
  v[k] = c;
  return PolyZ(std::move(v));
}

void PolyZ::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Integer PolyZ::coeff(std::size_t j) const { return j < coeffs_.size() ? coeffs_[j] : Integer(0); }

const Integer& PolyZ::leading() const {
  if (coeffs_.empty()) throw DomainError("leading coefficient of the zero polynomial");
  return coeffs_.back();
}

PolyZ& PolyZ::operator+=(const PolyZ& g) {
  if (g.coeffs_.size() > coeffs_.size()) coeffs_.resize(g.coeffs_.size());
  for (std::size_t j = 0; j < g.coeffs_.size(); ++j) coeffs_[j] += g.coeffs_[j];
  normalize();
  return *this;
}

PolyZ& PolyZ::operator-=(const PolyZ& g) {
  if (g.coeffs_.size() > coeffs_.size()) coeffs_.resize(g.coeffs_.size());
  for (std::size_t j = 0; j < g.coeffs_.size(); ++j) coeffs_[j] -= g.coeffs_[j];
  normalize();
  return *this;
}

PolyZ& PolyZ::operator*=(const Integer& c) {
  if (c == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& a : coeffs_) a *= c;
  return *this;
}

PolyZ operator*(const PolyZ& f, const PolyZ& g) {
  if (f.is_zero() || g.is_zero()) return {};
  std::vector<Integer> r(f.size() + g.size() - 1);
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < g.size(); ++j) r[i + j] += f.coeffs_[i] * g.coeffs_[j];
  }
  return PolyZ(std::move(r));
}

PolyZ operator-(PolyZ f) {
  for (auto& a : f.coeffs_) a = -a;
  return f;
}

PolyZ exact_div(const PolyZ& f, const Integer& c) {
  if (c == 0) throw DomainError("division by zero");
  std::vector<Integer> v = f.coeffs();
  for (auto& a : v) {
    if (!mpz_divisible_p(a.get_mpz_t(), c.get_mpz_t()))
      throw DomainError("exact_div: constant does not divide coefficients");
    mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
  }
  return PolyZ(std::move(v));
}

PolyZ exact_div(const PolyZ& f, const PolyZ& g) {
  if (g.is_zero()) throw DomainError("division by the zero polynomial");
  if (f.is_zero()) return {};
  if (f.degree() < g.degree()) throw DomainError("exact_div: divisor does not divide");
  std::vector<Integer> rem = f.coeffs();
  const std::size_t dg = static_cast<std::size_t>(g.degree());
  std::vector<Integer> q(rem.size() - dg);
  const Integer& lc = g.leading();
  for (std::size_t k = q.size(); k-- > 0;) {
    Integer& top = rem[k + dg];
    if (!mpz_divisible_p(top.get_mpz_t(), lc.get_mpz_t()))
      throw DomainError("exact_div: divisor does not divide");
    mpz_divexact(q[k].get_mpz_t(), top.get_mpz_t(), lc.get_mpz_t());
    for (std::size_t j = 0; j <= dg; ++j) rem[k + j] -= q[k] * g.coeffs()[j];
  }
  if (std::any_of(rem.begin(), rem.end(), [](const Integer& a) { return a != 0; }))
    throw DomainError("exact_div: divisor does not divide");
  return PolyZ(std::move(q));
}

Integer eval(const PolyZ& f, const Integer& t) {
  Integer acc = 0;
  for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it) {
    acc *= t;
    acc += *it;
  }
  return acc;
}

Rational eval(const PolyZ& f, const Rational& t) {
  // Horner on the homogenized form keeps everything integral until the end.
  if (f.is_zero()) return Rational(0);
  const Integer num = eval_homogeneous(f, t.get_num(), t.get_den());
  Integer den;
  mpz_pow_ui(den.get_mpz_t(), t.get_den().get_mpz_t(), static_cast<unsigned long>(f.degree()));
  return make_rational(num, den);
}

Integer eval_homogeneous(const PolyZ& f, const Integer& num, const Integer& den) {
  Integer acc = 0;
  Integer den_pow = 1;
  for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it) {
    acc *= num;
    acc += *it * den_pow;
    den_pow *= den;
  }
  return acc;
}

Integer content(const PolyZ& f) {
  if (f.is_zero()) throw DomainError("content of the zero polynomial");
  Integer g = 0;
  for (const auto& a : f.coeffs()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

PolyZ primitive_part(const PolyZ& f) {
  Integer c = content(f);
  if (f.leading() < 0) c = -c;
  return exact_div(f, c);
}

PolyZ derivative(const PolyZ& f) {
  if (f.degree() < 1) return {};
  std::vector<Integer> v(f.size() - 1);
  for (std::size_t j = 1; j < f.size(); ++j) v[j - 1] = f.coeffs()[j] * static_cast<unsigned long>(j);
  return PolyZ(std::move(v));
}

PolyZ pseudo_rem(const PolyZ& f, const PolyZ& g) {
  if (g.is_zero()) throw DomainError("pseudo-remainder by the zero polynomial");
  std::vector<Integer> r = f.coeffs();
  const int dg = g.degree();
  const Integer& lc = g.leading();
  int dr = f.degree();
  int steps = std::max(0, dr - dg + 1);
  while (dr >= dg && dr >= 0) {
    const Integer top = r[static_cast<std::size_t>(dr)];
    for (auto& a : r) a *= lc;
    for (int j = 0; j <= dg; ++j) r[static_cast<std::size_t>(dr - dg + j)] -= top * g.coeffs()[static_cast<std::size_t>(j)];
    r.pop_back();
    --steps;
    --dr;
    while (dr >= 0 && r[static_cast<std::size_t>(dr)] == 0) {
      r.pop_back();
      --dr;
    }
  }
  PolyZ rem(std::move(r));
  if (steps > 0) {
    Integer scale;
    mpz_pow_ui(scale.get_mpz_t(), lc.get_mpz_t(), static_cast<unsigned long>(steps));
    rem *= scale;
  }
  return rem;
}

PolyZ gcd(const PolyZ& f, const PolyZ& g) {
  if (f.is_zero() && g.is_zero()) return {};
  if (f.is_zero()) return primitive_part(g);
  if (g.is_zero()) return primitive_part(f);
  // Primitive polynomial remainder sequence.
  PolyZ a = primitive_part(f);
  PolyZ b = primitive_part(g);
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    PolyZ r = pseudo_rem(a, b);
    a = std::move(b);
    b = r.is_zero() ? PolyZ() : primitive_part(r);
  }
  return primitive_part(a);
}

bool is_squarefree(const PolyZ& f) {
  if (f.degree() < 1) return true;
  // A squarefree reduction modulo a prime not dividing lc(f) proves squarefreeness.
  for (std::uint32_t p : {1000003u, 1000033u, 1000037u, 1000039u}) {
    if (mpz_divisible_ui_p(f.leading().get_mpz_t(), p)) continue;
    if (is_squarefree(reduce(f, p))) return true;
  }
  return gcd(f, derivative(f)).degree() == 0;
}

PolyZ graeffe(const PolyZ& f) {
  if (f.degree() < 1) throw DomainError("graeffe requires degree >= 1");
  std::vector<Integer> even, odd;
  for (std::size_t j = 0; j < f.size(); ++j) (j % 2 == 0 ? even : odd).push_back(f.coeffs()[j]);
  const PolyZ e(std::move(even));
  const PolyZ o(std::move(odd));
  PolyZ g = e * e - PolyZ::monomial(1, 1) * (o * o);
  if (f.degree() % 2 != 0) g = -g;
  return g;
}

PolyZ fstar(const PolyZ& f) {
  if (f.degree() < 1) throw DomainError("fstar requires degree >= 1");
  std::vector<Integer> v(f.size());
  for (std::size_t j = 0; j + 1 < f.size(); ++j) v[j] = -abs(f.coeffs()[j]);
  v.back() = abs(f.leading());
  return PolyZ(std::move(v));
}

namespace {

// Hard cap for certificates presented to the verifier: rho^(2^k) grows too
// quickly to evaluate for large k.
constexpr unsigned kVerifierMaxGraeffe = 10;

Integer pow2k(const Integer& base, unsigned k) {
  Integer r = base;
  for (unsigned i = 0; i < k; ++i) r *= r;
  return r;
}

PolyZ iterated_graeffe(PolyZ f, unsigned k) {
  for (unsigned i = 0; i < k; ++i) f = graeffe(f);
  return f;
}

// fstar_k(num^(2^k) / den^(2^k)) > 0, with fstar_k = fstar(graeffe^k(f)).
bool accepts(const PolyZ& fstar_k, unsigned k, const Integer& num, const Integer& den) {
  return sgn(eval_homogeneous(fstar_k, pow2k(num, k), pow2k(den, k))) > 0;
}

double log_abs(const Integer& z) {
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

// Floating-point estimate of log of the positive root of fstar_k(y^(2^k)),
// i.e. the rho where acceptance starts. Only used to seed the exact search.
double approx_log_threshold(const PolyZ& fstar_k, unsigned k, double lo, double hi) {
  const double scale = std::ldexp(1.0, static_cast<int>(k));
  const double lead = log_abs(fstar_k.leading());
  const auto d = static_cast<double>(fstar_k.degree());
  std::vector<std::pair<double, double>> low;  // (log|a_j|, j)
  for (std::size_t j = 0; j + 1 < fstar_k.size(); ++j)
    if (fstar_k.coeffs()[j] != 0) low.emplace_back(log_abs(fstar_k.coeffs()[j]), static_cast<double>(j));
  if (low.empty()) return lo;
  auto positive = [&](double t) {
    double m = -std::numeric_limits<double>::infinity();
    for (auto [c, j] : low) m = std::max(m, c + j * scale * t);
    double sum = 0;
    for (auto [c, j] : low) sum += std::exp(c + j * scale * t - m);
    return lead + d * scale * t > m + std::log(sum);
  };
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (positive(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace

bool verify_root_bound(const PolyZ& f, const RootBoundCert& cert) {
  if (f.degree() < 1) return false;
  if (sgn(cert.rho) <= 0) return false;
  if (cert.graeffe_iters > kVerifierMaxGraeffe) return false;
  const PolyZ fk = fstar(iterated_graeffe(f, cert.graeffe_iters));
  return accepts(fk, cert.graeffe_iters, cert.rho.get_num(), cert.rho.get_den());
}

RootBoundCert compute_root_bound(const PolyZ& f, unsigned max_iters) {
  if (f.degree() < 1) throw DomainError("root bound requires degree >= 1");
  max_iters = std::min(max_iters, kVerifierMaxGraeffe);
  const Integer den = Integer(1) << kRootBoundDenominatorBits;

  // Cauchy bound 1 + max|a_j|/|a_d|, rounded up.
  Integer max_low = 0;
  for (std::size_t j = 0; j + 1 < f.size(); ++j) max_low = std::max(max_low, Integer(abs(f.coeffs()[j])));
  Integer cauchy;
  mpz_cdiv_q(cauchy.get_mpz_t(), max_low.get_mpz_t(), Integer(abs(f.leading())).get_mpz_t());
  cauchy += 1;

  bool have_best = false;
  RootBoundCert best;
  PolyZ fk = f;
  for (unsigned k = 0; k <= max_iters; ++k) {
    if (k > 0) fk = graeffe(fk);
    const PolyZ star = fstar(fk);
    // fstar has a single positive root, so acceptance is monotone in rho.
    // Start from a floating-point estimate and settle the grid point exactly.
    const double cauchy_log = log_abs(cauchy) + std::log(2.0);
    const double guess = std::exp(approx_log_threshold(star, k, -cauchy_log - 50, cauchy_log)) * static_cast<double>(den.get_ui());
    Integer hi;
    mpz_set_d(hi.get_mpz_t(), std::ceil(std::max(1.0, std::min(guess, 1e300))));
    Integer step = 1;
    while (!accepts(star, k, hi, den)) {
      hi += step;
      step *= 2;
    }
    Integer lo = hi - 1;
    step = 1;
    while (lo > 0 && accepts(star, k, lo, den)) {
      hi = lo;
      lo -= step;
      step *= 2;
    }
    if (lo < 0) lo = 0;
    // Now lo is rejected (or zero) and hi accepted.
    while (hi - lo > 1) {
      Integer mid = (lo + hi) / 2;
      if (accepts(star, k, mid, den))
        hi = mid;
      else
        lo = mid;
    }
    Rational rho = make_rational(hi, den);
    if (!have_best || rho < best.rho) {
      best = RootBoundCert{rho, k};
      have_best = true;
    }
  }
  return best;
}

Integer fixed_divisor(const PolyZ& f) {
  if (f.is_zero()) throw DomainError("fixed divisor of the zero polynomial");
  Integer g = 0;
  for (int n = 0; n <= f.degree(); ++n) {
    const Integer v = eval(f, Integer(n));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

}  // namespace irredcert
