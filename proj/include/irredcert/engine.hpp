#pragma once

#include <cstdint>
#include <variant>

#include "irredcert/certificate.hpp"
#include "irredcert/check.hpp"
#include "irredcert/polyz.hpp"

namespace irredcert {

struct CertifyConfig {
  std::uint64_t seed = 0;
  /// Work units: one prime analysed or one LPFW evaluation point.
  std::uint64_t max_iterations = 10000;
  unsigned degan_slice = 8;
  unsigned lpfw_slice = 8;
  std::uint32_t smooth_bound = 10000;
  unsigned max_graeffe = kDefaultMaxGraeffe;
  std::size_t max_transforms = 24;
  bool use_transforms = true;
  bool strict_primality = false;
  unsigned thread_count = 1;
  /// Pratt generation effort per LPFW prime; larger primes get ProbablePrime
  /// unless strict_primality is set.
  std::uint64_t pratt_budget = 200000;
};

struct Certified {
  CertificateDocument doc;
};

/// witness is a proper factor of f over Q (currently gcd(f, f')).
struct Reducible {
  PolyZ witness;
};

struct Inconclusive {
  std::uint64_t iterations_used = 0;
};

using Verdict = std::variant<Certified, Reducible, Inconclusive>;

/// Interleaves degree analysis on f with LPFW search over f and a catalog
/// of Moebius images. Throws DomainError for zero or constant input.
Verdict certify(const PolyZ& f, const CertifyConfig& config = {});

/// Accepts iff doc proves primitive_part(f) irreducible in Z[x]. The
/// failure names the first check that did not hold.
CheckResult verify(const PolyZ& f, const CertificateDocument& doc, bool strict);

/// Checks a certificate against g = primitive_part(f) directly.
CheckResult verify_certificate(const PolyZ& g, const Certificate& cert, bool strict);

}  // namespace irredcert
