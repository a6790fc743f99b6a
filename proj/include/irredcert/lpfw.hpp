#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "irredcert/check.hpp"
#include "irredcert/degan.hpp"
#include "irredcert/polyz.hpp"
#include "irredcert/primality.hpp"

namespace irredcert {

/// Large prime factor witness: |f(n)| = s * p with p prime, |n| > 1 + rho and
/// s < (|n| - rho)^delta.
struct LpfwCert {
  RootBoundCert root_bound;
  DeltaBound delta;
  Integer n;
  Integer p;
  std::optional<PrimalityCert> primality;

  friend bool operator==(const LpfwCert&, const LpfwCert&) = default;
};

/// Checks, in order: root bound, |n| > 1+rho, p | f(n), the cofactor bound,
/// the evidence behind delta, primality of p. Failures are named
/// lpfw.root_bound, lpfw.evaluation_point, lpfw.divisibility,
/// lpfw.cofactor_bound, lpfw.delta, lpfw.primality.
CheckResult verify_lpfw(const PolyZ& f, const LpfwCert& cert, bool strict);

struct Witness {
  Integer n;
  Integer p;
  Integer s;

  friend bool operator==(const Witness&, const Witness&) = default;
};

/// Search progress for one polynomial. found[delta] is the first witness
/// whose cofactor beats (|n| - rho)^delta. A witness good for delta is good for
/// every larger delta, so the recorded deltas form an upward-closed range.
struct SearchState {
  Integer n_pos;
  Integer n_neg;
  std::map<unsigned, Witness> found;
  std::uint64_t points_tried = 0;
};

/// Fresh state with n_pos = floor(1 + rho) + 1 and n_neg = -n_pos.
SearchState start_search(const RootBoundCert& rb);

/// Smallest integer strictly greater than 1 + rho.
Integer first_evaluation_point(const Rational& rho);

/// s < (|n| - rho)^delta, in exact arithmetic. False when |n| <= rho.
bool cofactor_within_bound(const Integer& s, const Integer& n, const Rational& rho, unsigned delta);

/// Optional veto on candidate primes (used to demand a Pratt certificate).
using PrimeFilter = std::function<bool(const Integer&)>;

/// Runs `iters` evaluation steps, each at whichever of n_pos, n_neg gives the
/// smaller |f(n)| (the positive side wins ties). Trial division uses the
/// primes below smooth_bound; the remaining cofactor must be a probable
/// prime, or 1 in which case p is the largest small prime found.
void search_lpfw(const PolyZ& f, const RootBoundCert& rb, SearchState& state, std::uint32_t smooth_bound, std::uint64_t iters,
                 const PrimeFilter& accept = {});

/// Primes below bound, ascending.
std::vector<std::uint32_t> primes_below(std::uint32_t bound);

}  // namespace irredcert
