#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "irredcert/polyz.hpp"

namespace irredcert {

/// Polynomial over F_p for a word-sized prime p < 2^31. Coefficients are
/// reduced residues in ascending degree order with no trailing zeros.
class PolyModP {
 public:
  PolyModP() = default;
  PolyModP(std::uint32_t p, std::vector<std::uint32_t> coeffs);

  std::uint32_t modulus() const { return p_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<std::uint32_t>& coeffs() const { return coeffs_; }
  std::uint32_t coeff(std::size_t j) const { return j < coeffs_.size() ? coeffs_[j] : 0; }
  std::uint32_t leading() const { return coeffs_.empty() ? 0 : coeffs_.back(); }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }

  friend bool operator==(const PolyModP&, const PolyModP&) = default;
  /// Canonical order: by degree, then lexicographic on the ascending coefficients.
  friend bool operator<(const PolyModP& f, const PolyModP& g);

 private:
  std::uint32_t p_ = 2;
  std::vector<std::uint32_t> coeffs_;
};

/// Residue arithmetic helpers.
std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p);
std::uint32_t pow_mod(std::uint32_t a, std::uint64_t e, std::uint32_t p);
std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p);

PolyModP reduce(const PolyZ& f, std::uint32_t p);
/// Lift residues to Z in [0, p).
PolyZ lift(const PolyModP& f);

PolyModP operator+(const PolyModP& f, const PolyModP& g);
PolyModP operator-(const PolyModP& f, const PolyModP& g);
PolyModP operator*(const PolyModP& f, const PolyModP& g);
PolyModP scale(const PolyModP& f, std::uint32_t c);

/// Quotient and remainder; g must be nonzero.
std::pair<PolyModP, PolyModP> divmod(const PolyModP& f, const PolyModP& g);
PolyModP rem(const PolyModP& f, const PolyModP& g);
/// Monic gcd (zero iff both inputs are zero).
PolyModP gcd(const PolyModP& f, const PolyModP& g);
PolyModP make_monic(const PolyModP& f);
PolyModP derivative(const PolyModP& f);
/// base^e mod m.
PolyModP pow_mod(const PolyModP& base, std::uint64_t e, const PolyModP& m);

bool is_squarefree(const PolyModP& g);

/// Monic irreducible factors of a squarefree g, canonically sorted. Throws
/// DomainError when g is not squarefree or has degree < 1.
std::vector<PolyModP> factor_mod_p(const PolyModP& g);

/// Monic irreducible factors with repetition (each factor appears as often as
/// its multiplicity), canonically sorted. Works for any g of degree >= 1.
std::vector<PolyModP> factor_mod_p_with_multiplicity(const PolyModP& g);

/// Row i holds the coefficients of x^(i*p) mod g, for monic g of degree d >= 1.
std::vector<std::vector<std::uint32_t>> berlekamp_matrix(const PolyModP& g);

/// Rank over F_p by Gaussian elimination.
std::size_t rank_mod_p(std::vector<std::vector<std::uint32_t>> rows, std::uint32_t p);

/// Irreducibility over F_p for monic g: squarefree and rank(B - I) = deg g - 1.
bool is_irreducible_mod_p(const PolyModP& g);

}  // namespace irredcert
