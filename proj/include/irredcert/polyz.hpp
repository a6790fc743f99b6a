#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "irredcert/check.hpp"

namespace irredcert {

using Integer = mpz_class;
/// Exact rational, always kept canonical (lowest terms, positive denominator).
using Rational = mpq_class;

Rational make_rational(const Integer& num, const Integer& den);
/// "num/den" in lowest terms; the denominator is always written.
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

/// Dense univariate polynomial over Z. coeffs[j] is the coefficient of x^j.
/// Trailing zeros are stripped on construction, so the zero polynomial is the
/// empty coefficient vector and degree() == size - 1 otherwise.
class PolyZ {
 public:
  PolyZ() = default;
  explicit PolyZ(std::vector<Integer> coeffs);
  PolyZ(std::initializer_list<Integer> coeffs);

  static PolyZ constant(const Integer& c);
  static PolyZ monomial(const Integer& c, std::size_t k);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  std::size_t size() const { return coeffs_.size(); }
  const std::vector<Integer>& coeffs() const { return coeffs_; }
  /// Coefficient of x^j; zero beyond the degree.
  Integer coeff(std::size_t j) const;
  const Integer& leading() const;

  PolyZ& operator+=(const PolyZ& g);
  PolyZ& operator-=(const PolyZ& g);
  PolyZ& operator*=(const Integer& c);

  friend PolyZ operator+(PolyZ f, const PolyZ& g) { return f += g; }
  friend PolyZ operator-(PolyZ f, const PolyZ& g) { return f -= g; }
  friend PolyZ operator*(const PolyZ& f, const PolyZ& g);
  friend PolyZ operator*(PolyZ f, const Integer& c) { return f *= c; }
  friend PolyZ operator*(const Integer& c, PolyZ f) { return f *= c; }
  friend PolyZ operator-(PolyZ f);
  friend bool operator==(const PolyZ& f, const PolyZ& g) { return f.coeffs_ == g.coeffs_; }

 private:
  void normalize();

  std::vector<Integer> coeffs_;
};

/// Divides every coefficient by c, which must divide each exactly.
PolyZ exact_div(const PolyZ& f, const Integer& c);
/// Quotient of f by g over Z; g must divide f exactly (checked).
PolyZ exact_div(const PolyZ& f, const PolyZ& g);

Integer eval(const PolyZ& f, const Integer& t);
Rational eval(const PolyZ& f, const Rational& t);
/// sum_j f_j num^j den^(deg f - j); equals den^deg(f) * f(num/den).
Integer eval_homogeneous(const PolyZ& f, const Integer& num, const Integer& den);

/// gcd of the coefficients; throws DomainError on the zero polynomial.
Integer content(const PolyZ& f);
/// f / content(f) with positive leading coefficient.
PolyZ primitive_part(const PolyZ& f);
PolyZ derivative(const PolyZ& f);

/// Pseudo-remainder: lc(g)^(deg f - deg g + 1) * f mod g.
PolyZ pseudo_rem(const PolyZ& f, const PolyZ& g);
/// gcd over Q, returned primitive with positive leading coefficient.
PolyZ gcd(const PolyZ& f, const PolyZ& g);
bool is_squarefree(const PolyZ& f);

/// g with g(x^2) = +-f(x) f(-x), normalized to a positive leading coefficient.
PolyZ graeffe(const PolyZ& f);
/// |a_d| x^d - sum_{j<d} |a_j| x^j.
PolyZ fstar(const PolyZ& f);

struct RootBoundCert {
  Rational rho;
  unsigned graeffe_iters = 0;

  friend bool operator==(const RootBoundCert&, const RootBoundCert&) = default;
};

inline constexpr unsigned kDefaultMaxGraeffe = 6;
inline constexpr unsigned kRootBoundDenominatorBits = 10;

/// True iff fstar(graeffe^k(f)) > 0 at rho^(2^k). A true result proves every
/// complex root of f has modulus at most rho.
bool verify_root_bound(const PolyZ& f, const RootBoundCert& cert);
/// Smallest dyadic rho (denominator dividing 2^10) accepted by
/// verify_root_bound for some k <= max_iters; ties go to the smaller k.
RootBoundCert compute_root_bound(const PolyZ& f, unsigned max_iters = kDefaultMaxGraeffe);

/// gcd{ f(n) : n in Z }, computed as gcd(f(0), ..., f(deg f)).
Integer fixed_divisor(const PolyZ& f);

}  // namespace irredcert
