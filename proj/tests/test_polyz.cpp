#include <random>

#include "doctest.h"
#include "irredcert/parser.hpp"
#include "irredcert/polyz.hpp"
#include "oracles.hpp"

using namespace irredcert;

namespace {

PolyZ P(const char* s) { return parse_poly(s); }

}  // namespace

TEST_CASE("construction strips trailing zeros") {
  PolyZ f{1, 2, 0, 0};
  CHECK(f.degree() == 1);
  CHECK(PolyZ{0, 0}.is_zero());
  CHECK(PolyZ().degree() == -1);
  CHECK_THROWS_AS(PolyZ().leading(), DomainError);
  CHECK(f.coeff(7) == 0);
}

TEST_CASE("ring operations") {
  const PolyZ f = P("x^2+1"), g = P("x-3");
  CHECK(f * g == P("x^3-3x^2+x-3"));
  CHECK(f + g == P("x^2+x-2"));
  CHECK(f - f == PolyZ());
  CHECK(-g == P("3-x"));
  CHECK(Integer(2) * f == P("2x^2+2"));
  CHECK(exact_div(f * g, g) == f);
  CHECK_THROWS_AS(exact_div(f, g), DomainError);
  CHECK(exact_div(P("6x+4"), Integer(2)) == P("3x+2"));
  CHECK_THROWS_AS(exact_div(P("6x+3"), Integer(2)), DomainError);
}

TEST_CASE("evaluation") {
  const PolyZ f = P("x^12+12x^4+92");
  CHECK(eval(f, Integer(5)) == Integer("244148217"));
  CHECK(eval(P("x^2+1"), make_rational(1, 2)) == make_rational(5, 4));
  // den^d f(num/den)
  CHECK(eval_homogeneous(P("x^2+1"), 1, 2) == 5);
  CHECK(eval(PolyZ(), Integer(3)) == 0);
}

TEST_CASE("content and primitive part") {
  CHECK(content(P("6x^2-4x+2")) == 2);
  CHECK(primitive_part(P("-6x^2+4x-2")) == P("3x^2-2x+1"));
  CHECK_THROWS_AS(content(PolyZ()), DomainError);
  CHECK(primitive_part(P("-5")) == P("1"));
}

TEST_CASE("gcd and squarefree") {
  const PolyZ a = P("x^2+1"), b = P("x-2"), c = P("3x+1");
  CHECK(gcd(a * b, b * c) == b);
  CHECK(gcd(Integer(4) * a * c, Integer(6) * a * b) == a);
  CHECK(is_squarefree(a * b * c));
  CHECK_FALSE(is_squarefree(a * a * b));
  CHECK_FALSE(is_squarefree(P("x^3+x^2+2x+2") * P("x^2+2")));
  CHECK(gcd(P("x^3+x^2+2x+2") * P("x^2+2"), derivative(P("x^3+x^2+2x+2") * P("x^2+2"))) == P("x^2+2"));
  CHECK(derivative(P("x^3+5")) == P("3x^2"));
}

TEST_CASE("graeffe squares the roots") {
  // roots 2, -3 -> 4, 9
  CHECK(graeffe(P("x^2+x-6")) == P("x^2-13x+36"));
  CHECK(graeffe(P("x^2+1")) == P("x^2+2x+1"));
  CHECK(fstar(P("-2x^3+x^2-5")) == P("2x^3-x^2-5"));
}

TEST_CASE("root bound verification") {
  const PolyZ f = P("x^12+12x^4+92");
  CHECK(verify_root_bound(f, {make_rational(7, 4), 0}));
  CHECK(verify_root_bound(f, {make_rational(7, 4), 1}));
  CHECK_FALSE(verify_root_bound(f, {make_rational(3, 2), 0}));

  CHECK(verify_root_bound(P("x^4-1036x^2+7744"), {Rational(33), 0}));

  const PolyZ rev = P("x^4+4x^3+156x^2+304x+776");
  for (unsigned k = 0; k < 3; ++k) CHECK_FALSE(verify_root_bound(rev, {make_rational(67, 5), k}));
  CHECK(verify_root_bound(rev, {make_rational(67, 5), 3}));

  for (unsigned k = 0; k <= 6; ++k) CHECK_FALSE(verify_root_bound(P("x^4+1"), {Rational(1), k}));
  CHECK(verify_root_bound(P("x^4+1"), {make_rational(17, 16), 0}));

  CHECK_FALSE(verify_root_bound(f, {Rational(0), 0}));
  CHECK_FALSE(verify_root_bound(f, {Rational(-5), 0}));
  CHECK_FALSE(verify_root_bound(f, {Rational(100), 11}));
}

TEST_CASE("root bound acceptance is not monotone in k") {
  const PolyZ sd = oracle::swinnerton_dyer({71, 113, 163});
  CHECK(verify_root_bound(sd, {Rational(43), 0}));
  CHECK_FALSE(verify_root_bound(sd, {Rational(43), 1}));
  CHECK(verify_root_bound(sd, {Rational(43), 2}));
}

TEST_CASE("computed root bound is minimal on its grid") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const PolyZ f = oracle::random_poly(rng, 2 + trial % 7, 50);
    const RootBoundCert rb = compute_root_bound(f, 4);
    REQUIRE(verify_root_bound(f, rb));
    CHECK(rb.rho.get_den() <= 1024);
    const Rational step = make_rational(1, 1024);
    for (unsigned k = 0; k <= 4; ++k) {
      if (rb.rho - step > 0) CHECK_FALSE(verify_root_bound(f, {rb.rho - step, k}));
    }
  }
}

TEST_CASE("fixed divisor matches gcd of values on [-100, 100]") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    PolyZ f = oracle::random_poly(rng, 1 + trial % 8, 30);
    if (trial % 3 == 0) f = f * P("x^2+x");  // force even values
    if (trial % 5 == 0) f = f * P("x^3-x");  // force multiples of 6
    CHECK(fixed_divisor(f) == oracle::gcd_of_values(f, -100, 100));
  }
  CHECK(fixed_divisor(P("x^2+x+2")) == 2);
  CHECK(fixed_divisor(P("x^4+1")) == 1);
}

TEST_CASE("to_string formats") {
  CHECK(to_string(make_rational(4, 2)) == "2/1");
  CHECK(to_string(make_rational(-6, 4)) == "-3/2");
  CHECK_THROWS_AS(make_rational(1, 0), DomainError);
  CHECK(to_string(Integer(-12)) == "-12");
}
