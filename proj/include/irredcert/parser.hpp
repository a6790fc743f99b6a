#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "irredcert/polyz.hpp"

namespace irredcert {

/// Syntax error with the 0-based character offset where parsing stopped.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Accepts either a sum of monomials in x ("97x^4 +76x^3 - 2", "3*x^2+x")
/// or a bracketed ascending coefficient list ("[2, 4, 78, 76, 97]").
PolyZ parse_poly(std::string_view text);

/// Descending-degree rendering without spaces, e.g. "97x^4+76x^3+78x^2+4x+2".
std::string format_poly(const PolyZ& f);

}  // namespace irredcert
