#include <random>

#include "doctest.h"
#include "irredcert/degan.hpp"
#include "irredcert/parser.hpp"
#include "oracles.hpp"

using namespace irredcert;

namespace {

PrimeEvidence evidence_at(const PolyZ& f, std::uint32_t p) {
  auto r = analyze_prime_with_multiplicity(f, p);
  REQUIRE(r.has_value());
  return r->first;
}

std::vector<unsigned> degs(std::initializer_list<unsigned> v) { return v; }

}  // namespace

TEST_CASE("possible degrees") {
  CHECK(possible_degrees(degs({1, 3}), 4).members() == std::vector<unsigned>{0, 1, 3, 4});
  CHECK(possible_degrees(degs({2, 2}), 4).members() == std::vector<unsigned>{0, 2, 4});
  CHECK(possible_degrees(degs({1, 1, 1, 1}), 4).members() == std::vector<unsigned>{0, 1, 2, 3, 4});
  CHECK_THROWS_AS(possible_degrees(degs({1, 2}), 4), DomainError);
  CHECK(DegreeSet::full(6).proper() == std::vector<unsigned>{1, 2, 3});
  CHECK(DegreeSet::trivial(6).proper_empty());
  CHECK(DegreeSet::trivial(6).least_positive() == 6);
}

TEST_CASE("intersection") {
  const DegreeSet a = possible_degrees(degs({1, 3}), 4), b = possible_degrees(degs({2, 2}), 4);
  const DegreeSet both = intersect(std::vector<DegreeSet>{a, b});
  CHECK(both.members() == std::vector<unsigned>{0, 4});
  CHECK(both.proper_empty());
  CHECK(intersect(std::vector<DegreeSet>{b}) == b);
  const DegreeSet full = DegreeSet::full(4);
  CHECK(intersect(std::vector<DegreeSet>{full, full}) == full);
  DegreeSet c = DegreeSet::full(5);
  CHECK_THROWS_AS(c &= a, DomainError);
}

TEST_CASE("analyze_prime examples") {
  const PolyZ f = parse_poly("x^4+x^3+3x+4");
  auto r2 = analyze_prime(f, 2);
  REQUIRE(r2);
  CHECK(r2->second.members() == std::vector<unsigned>{0, 1, 3, 4});
  // f mod 5 = (x^2 - 2x - 2)^2 is not squarefree: skipped by analyze_prime,
  // usable with multiplicity.
  CHECK_FALSE(analyze_prime(f, 5).has_value());
  auto r5 = analyze_prime_with_multiplicity(f, 5);
  REQUIRE(r5);
  CHECK(r5->second.members() == std::vector<unsigned>{0, 2, 4});
  CHECK(r5->first.factors.size() == 2);
  CHECK(r5->first.factors[0] == r5->first.factors[1]);

  CHECK_FALSE(analyze_prime(parse_poly("x^4+1"), 2).has_value());
  CHECK_FALSE(analyze_prime(parse_poly("3x^4+1"), 3).has_value());
  CHECK_FALSE(analyze_prime_with_multiplicity(parse_poly("3x^4+1"), 3).has_value());
}

TEST_CASE("minimize evidence") {
  const PolyZ f = parse_poly("x^4+x^3+3x+4");
  std::vector<PrimeEvidence> ev{evidence_at(f, 2), evidence_at(f, 5), evidence_at(f, 7)};
  const DegreeSet target = DegreeSet::trivial(4);
  const auto m = minimize_evidence(ev, target);
  REQUIRE(m.size() == 2);
  CHECK(m[0].p == 2);
  CHECK(m[1].p == 5);
  for (const auto& e : ev) CHECK_FALSE(possible_degrees(e, 4) == target);

  CHECK(minimize_evidence(std::vector<PrimeEvidence>{evidence_at(f, 2)}, possible_degrees(evidence_at(f, 2), 4)).size() == 1);
  CHECK_THROWS_AS(minimize_evidence(std::vector<PrimeEvidence>{evidence_at(f, 2)}, target), DomainError);
  const PrimeEvidence q = evidence_at(parse_poly("x^4+1"), 3);
  CHECK(minimize_evidence(std::vector<PrimeEvidence>{q, q}, possible_degrees(q, 4)).size() == 1);
}

TEST_CASE("known degree analysis certificates verify") {
  const PolyZ f16 = parse_poly("x^16+4x^14+6x^2+4");
  const std::vector<PrimeEvidence> l16{evidence_at(f16, 13), evidence_at(f16, 127)};
  auto v16 = verify_degan(f16, l16);
  REQUIRE(v16.check.ok());
  CHECK(v16.degrees.proper_empty());

  const PolyZ f4 = parse_poly("x^4+16x^3+5x^2-14x-18");
  auto v4 = verify_degan(f4, std::vector<PrimeEvidence>{evidence_at(f4, 107)});
  REQUIRE(v4.check.ok());
  CHECK(v4.degrees.proper_empty());
}

TEST_CASE("no prime up to 101 certifies x^4+16x^3+5x^2-14x-18") {
  const PolyZ f = parse_poly("x^4+16x^3+5x^2-14x-18");
  DegreeSet all = DegreeSet::full(4);
  for (std::uint32_t p = 2; p <= 101; ++p) {
    if (!oracle::is_prime(p)) continue;
    if (auto r = analyze_prime_with_multiplicity(f, p)) all &= r->second;
  }
  CHECK_FALSE(all.proper_empty());
}

TEST_CASE("x^4+1 always keeps degree 2") {
  const PolyZ f = parse_poly("x^4+1");
  int used = 0;
  for (std::uint32_t p = 3; used < 40; p += 2) {
    if (!oracle::is_prime(p)) continue;
    auto r = analyze_prime(f, p);
    if (!r) continue;
    ++used;
    CHECK(r->second.contains(2));
  }
  CHECK(generate_degan(f, 200, 1).degrees.contains(2));
}

TEST_CASE("verification rejects tampering") {
  const PolyZ f = parse_poly("x^16+4x^14+6x^2+4");
  PrimeEvidence good = evidence_at(f, 13);
  REQUIRE(verify_degan(f, std::vector<PrimeEvidence>{good}).check.ok());

  PrimeEvidence coeff = good;
  auto c = coeff.factors[0].coeffs();
  c[0] = (c[0] + 1) % 13;
  coeff.factors[0] = PolyModP(13, c);
  auto r = verify_degan(f, std::vector<PrimeEvidence>{coeff});
  CHECK_FALSE(r.check.ok());
  CHECK(r.check.failure().find("degan[p=13]") == 0);

  PrimeEvidence wrong_p = good;
  wrong_p.p = 15;
  CHECK_FALSE(verify_degan(f, std::vector<PrimeEvidence>{wrong_p}).check.ok());

  PrimeEvidence reducible_factor = good;
  // merge two factors into one reducible factor
  reducible_factor.factors[0] = reducible_factor.factors[0] * reducible_factor.factors[1];
  reducible_factor.factors.erase(reducible_factor.factors.begin() + 1);
  CHECK(verify_degan(f, std::vector<PrimeEvidence>{reducible_factor}).check.failure().find("not irreducible") != std::string::npos);

  PrimeEvidence empty{13, {}};
  CHECK_FALSE(verify_degan(f, std::vector<PrimeEvidence>{empty}).check.ok());

  PrimeEvidence lc{2, {PolyModP(2, {0, 1})}};
  CHECK_FALSE(verify_degan(parse_poly("2x^2+x"), std::vector<PrimeEvidence>{lc}).check.ok());

  PrimeEvidence non_monic{13, good.factors};
  non_monic.factors[0] = scale(non_monic.factors[0], 2);
  CHECK_FALSE(verify_degan(f, std::vector<PrimeEvidence>{non_monic}).check.ok());
}

TEST_CASE("soundness: a true factor degree always survives") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int dg = 2 + trial % 4, dh = 2 + (trial / 4) % 4;
    const PolyZ g = oracle::random_poly(rng, dg, 20), h = oracle::random_poly(rng, dh, 20);
    const PolyZ f = primitive_part(g * h);
    for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u, 101u}) {
      auto r = analyze_prime_with_multiplicity(f, p);
      if (!r) continue;
      REQUIRE(verify_degan(f, std::vector<PrimeEvidence>{r->first}).check.ok());
      CHECK(r->second.contains(static_cast<unsigned>(dg)));
      CHECK(r->second.is_symmetric());
    }
  }
}

TEST_CASE("generator is deterministic and its evidence verifies") {
  for (const char* s : {"x^4+x^3+3x+4", "x^16+4x^14+6x^2+4", "x^4+16x^3+5x^2-14x-18", "x^4+1", "x^6+x+1"}) {
    const PolyZ f = parse_poly(s);
    const auto a = generate_degan(f, 300, 42), b = generate_degan(f, 300, 42);
    CHECK(a.degrees == b.degrees);
    CHECK(a.evidence == b.evidence);
    auto v = verify_degan(f, a.evidence);
    REQUIRE(v.check.ok());
    CHECK(v.degrees == a.degrees);
    CHECK(a.degrees.is_symmetric());
  }
  CHECK(generate_degan(parse_poly("x^4+x^3+3x+4"), 300, 9).degrees.proper_empty());
  CHECK(generate_degan(parse_poly("x^16+4x^14+6x^2+4"), 300, 9).degrees.proper_empty());
}

TEST_CASE("delta bound") {
  DegreeAnalyzer a(parse_poly("x^4-1036x^2+7744"), 3);
  while (a.primes_tried() < 40 && a.degrees().least_positive() < 2) a.step();
  const DeltaBound db = a.delta_bound();
  CHECK(db.value == 2);
  CHECK_FALSE(db.evidence.empty());
  CHECK(verify_degan(parse_poly("x^4-1036x^2+7744"), db.evidence).degrees.least_positive() == 2);

  DegreeAnalyzer fresh(parse_poly("x^4+1"), 3);
  CHECK(fresh.delta_bound().value == 1);
  CHECK(fresh.delta_bound().evidence.empty());
}
