#include "doctest.h"
#include "irredcert/parser.hpp"

using namespace irredcert;

TEST_CASE("sum of monomials") {
  CHECK(parse_poly("x^4+x^3+3x+4") == PolyZ{4, 3, 0, 1, 1});
  CHECK(parse_poly("  -x^2 + 2 * x - 7 ") == PolyZ{-7, 2, -1});
  CHECK(parse_poly("x + x + 1") == PolyZ{1, 2});
  CHECK(parse_poly("x^2 - x^2") == PolyZ());
  CHECK(parse_poly("0") == PolyZ());
  CHECK(parse_poly("+5") == PolyZ{5});
  CHECK(parse_poly("97x^4+76x^3+78x^2+4x+2") == PolyZ{2, 4, 78, 76, 97});
  CHECK(parse_poly("123456789012345678901234567890x") == PolyZ{0, Integer("123456789012345678901234567890")});
}

TEST_CASE("coefficient lists") {
  CHECK(parse_poly("[1, 0, 1]") == PolyZ{1, 0, 1});
  CHECK(parse_poly("[7744,0,-1036,0,1]") == PolyZ{7744, 0, -1036, 0, 1});
  CHECK(parse_poly("[]") == PolyZ());
  CHECK(parse_poly("[0,0]") == PolyZ());
}

TEST_CASE("errors carry offsets") {
  try {
    parse_poly("x^2 + + 3");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 6);
  }
  CHECK_THROWS_WITH_AS(parse_poly(""), doctest::Contains("empty input"), ParseError);
  CHECK_THROWS_WITH_AS(parse_poly("   "), doctest::Contains("empty input"), ParseError);
  CHECK_THROWS_WITH_AS(parse_poly("y^2+1"), doctest::Contains("unknown variable"), ParseError);
  CHECK_THROWS_WITH_AS(parse_poly("3*y"), doctest::Contains("unknown variable"), ParseError);
  CHECK_THROWS_AS(parse_poly("x^"), ParseError);
  CHECK_THROWS_AS(parse_poly("x^1000001"), ParseError);
  CHECK_THROWS_AS(parse_poly("[1,2"), ParseError);
  CHECK_THROWS_AS(parse_poly("[1,,2]"), ParseError);
  CHECK_THROWS_AS(parse_poly("x^2 3"), ParseError);
  CHECK_THROWS_AS(parse_poly("2*"), ParseError);
}

TEST_CASE("format round trip") {
  for (const char* s : {"x^4+x^3+3x+4", "-x^2+2x-7", "0", "5", "x", "-x", "x^12+12x^4+92", "2x+4"}) {
    const PolyZ f = parse_poly(s);
    CHECK(format_poly(f) == s);
    CHECK(parse_poly(format_poly(f)) == f);
  }
}
