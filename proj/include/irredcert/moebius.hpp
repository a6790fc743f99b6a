#pragma once

#include <cstddef>
#include <vector>

#include "irredcert/check.hpp"
#include "irredcert/polyz.hpp"

namespace irredcert {

/// (a b; c d), acting by x -> (ax + b)/(cx + d).
struct MoebiusMatrix {
  Integer a = 1, b = 0, c = 0, d = 1;

  Integer det() const { return a * d - b * c; }
  static MoebiusMatrix identity() { return {1, 0, 0, 1}; }
  /// x -> 1/x
  static MoebiusMatrix reversal() { return {0, 1, 1, 0}; }
  bool is_identity() const { return a == 1 && b == 0 && c == 0 && d == 1; }

  friend bool operator==(const MoebiusMatrix&, const MoebiusMatrix&) = default;
};

/// sum_j f_j (ax+b)^j (cx+d)^(deg f - j). The degree drops exactly when
/// c != 0 and f(a/c) = 0. Throws DomainError for det M = 0 or f = 0.
PolyZ apply(const MoebiusMatrix& m, const PolyZ& f);

/// Classical adjoint (d -b; -c a).
MoebiusMatrix pseudo_inverse(const MoebiusMatrix& m);

/// Checks g = primitive_part(apply(m, f)) by comparing value ratios at d+1
/// integer points. Throws DomainError on a degenerate matrix, a degree
/// mismatch, or too few usable points.
CheckResult verify_transform(const PolyZ& f, const MoebiusMatrix& m, const PolyZ& g);

/// Diagonal and anti-diagonal transforms worth trying for f, identity first.
/// Every entry preserves the degree; two entries may share an image.
std::vector<MoebiusMatrix> candidate_transforms(const PolyZ& f, std::size_t max_candidates);

}  // namespace irredcert
