#include <random>

#include "doctest.h"
#include "fuzz.hpp"
#include "irredcert/engine.hpp"
#include "irredcert/parser.hpp"

using namespace irredcert;

namespace {

PolyZ P(const char* s) { return parse_poly(s); }

// Key whose value contains byte pos.
std::string enclosing_key(const std::string& bytes, std::size_t pos) {
  const std::size_t colon = bytes.rfind("\":", pos);
  const std::size_t open = bytes.rfind('"', colon - 1);
  return bytes.substr(open + 1, colon - open - 1);
}

CertificateDocument certified(const PolyZ& f, const CertifyConfig& cfg = {}) {
  auto v = certify(f, cfg);
  auto* c = std::get_if<Certified>(&v);
  REQUIRE_MESSAGE(c != nullptr, "not certified: " << format_poly(f));
  return c->doc;
}

PrimeEvidence evidence_at(const PolyZ& f, std::uint32_t p) {
  auto r = analyze_prime_with_multiplicity(f, p);
  REQUIRE(r);
  return r->first;
}

std::vector<PolyZ> irreducible_corpus() {
  std::vector<PolyZ> out;
  for (int n = 7; n <= 21; ++n) out.push_back(oracle::cyclotomic(n));
  for (const auto& sd : std::vector<std::vector<long>>{{2, 3}, {2, 5}, {3, 7}, {2, 3, 5}, {71, 113, 163}}) out.push_back(oracle::swinnerton_dyer(sd));
  for (const char* s : {"x^4+x^3+3x+4", "x^4+1", "x^12+12x^4+92", "x^16+4x^14+6x^2+4", "x^4+16x^3+5x^2-14x-18", "x^4-1036x^2+7744",
                        "97x^4+76x^3+78x^2+4x+2", "x^4+4x^3+156x^2+304x+776", "2x+4", "x^2+x+2"}) {
    out.push_back(P(s));
  }
  return out;
}

}  // namespace

TEST_CASE("engine examples") {
  const CertificateDocument a = certified(P("x^4+x^3+3x+4"));
  CHECK(std::holds_alternative<DegreeAnalysis>(a.certificate));
  CHECK(verify(P("x^4+x^3+3x+4"), a, false).ok());

  const CertificateDocument b = certified(P("x^4+1"));
  CHECK(std::holds_alternative<LpfwCert>(b.certificate));
  CHECK(verify(P("x^4+1"), b, false).ok());

  CHECK(std::holds_alternative<Linear>(certified(P("2x+4")).certificate));
  CHECK(verify(P("2x+4"), certified(P("2x+4")), true).ok());

  const auto v = certify(P("x^3+x^2+2x+2"), CertifyConfig{.max_iterations = 500});
  CHECK_FALSE(std::holds_alternative<Certified>(v));

  const auto sq = certify(P("x^3+x^2+2x+2") * P("x^2+2"));
  REQUIRE(std::holds_alternative<Reducible>(sq));
  CHECK(std::get<Reducible>(sq).witness == P("x^2+2"));

  CHECK_THROWS_AS(certify(PolyZ()), DomainError);
  CHECK_THROWS_AS(certify(P("7")), DomainError);
  CHECK_THROWS_AS(certify(P("x^2+1"), CertifyConfig{.degan_slice = 0}), DomainError);
  CHECK_THROWS_AS(certify(P("x^2+1"), CertifyConfig{.smooth_bound = 1}), DomainError);
}

TEST_CASE("corpus round trip through serialization") {
  const auto polys = irreducible_corpus();
  REQUIRE(polys.size() == 30);
  for (const auto& f : polys) {
    const CertificateDocument doc = certified(f);
    const std::string bytes = serialize(doc);
    const CertificateDocument back = parse_certificate(bytes);
    CHECK(serialize(back) == bytes);
    CHECK_MESSAGE(verify(f, back, false).ok(), format_poly(f));
  }
}

TEST_CASE("strict mode and threads") {
  for (const char* s : {"x^4+1", "x^12+12x^4+92", "x^4-1036x^2+7744", "97x^4+76x^3+78x^2+4x+2"}) {
    const CertificateDocument doc = certified(P(s), CertifyConfig{.strict_primality = true});
    CHECK(verify(P(s), doc, true).ok());
    const CertificateDocument threaded = certified(P(s), CertifyConfig{.thread_count = 3});
    CHECK(verify(P(s), threaded, false).ok());
  }
}

TEST_CASE("single threaded certify is deterministic") {
  for (const auto& f : irreducible_corpus()) {
    for (std::uint64_t seed : {0ull, 99ull}) {
      CertifyConfig cfg;
      cfg.seed = seed;
      CHECK(serialize(certified(f, cfg)) == serialize(certified(f, cfg)));
    }
  }
}

TEST_CASE("reducible inputs are never certified") {
  std::mt19937_64 rng(73);
  CertifyConfig cfg;
  cfg.max_iterations = 300;
  for (int i = 0; i < 200; ++i) {
    const PolyZ f = fuzz::random_reducible(rng, 4, 10);
    cfg.seed = i;
    const auto v = certify(f, cfg);
    if (std::holds_alternative<Certified>(v)) FAIL("certified reducible " << format_poly(f));
    if (auto* r = std::get_if<Reducible>(&v)) {
      CHECK(r->witness.degree() >= 1);
      CHECK(r->witness.degree() < f.degree());
    }
  }
}

TEST_CASE("delta from the mod 3 factorization yields the n = 47 witness") {
  const PolyZ f = P("x^4-1036x^2+7744");
  const CertificateDocument doc = certified(f, CertifyConfig{.use_transforms = false});
  const auto* l = std::get_if<LpfwCert>(&doc.certificate);
  REQUIRE(l);
  CHECK(l->delta.value == 2);
  CHECK(abs(l->n) == 47);
  CHECK(l->p == 14519);
}

TEST_CASE("Moebius chains verify end to end") {
  const PolyZ f = P("97x^4+76x^3+78x^2+4x+2");
  const PolyZ quartic = P("x^4+1");
  const LpfwCert inner{{make_rational(17, 16), 0}, DeltaBound{}, 4, 257, SmallPrime{}};
  const CertificateDocument ex5{std::string(kFormatVersion), f, Transform{{1, 1, -3, 2}, quartic, inner}};
  CHECK(verify(f, ex5, true).ok());

  const PolyZ g = P("x^4+4x^3+156x^2+304x+776");
  CHECK(eval(g, Integer(-29)) == 241 * 3041);
  const LpfwCert row{{make_rational(67, 5), 3}, DeltaBound{2, {evidence_at(g, 3)}}, -29, 3041, SmallPrime{}};
  const CertificateDocument last{std::string(kFormatVersion), f, Transform{{0, 2, 1, 0}, g, row}};
  CHECK(verify(f, last, true).ok());

  // same inner certificate behind a different matrix
  CertificateDocument wrong = last;
  std::get<Transform>(wrong.certificate).matrix = {0, 3, 1, 0};
  CHECK(verify(f, wrong, false).failure().find("transform") == 0);
  // inner against the wrong polynomial
  CHECK_FALSE(verify(P("x^4+4x^3+156x^2+304x+777"), last, false).ok());
  CHECK(verify(f, CertificateDocument{std::string(kFormatVersion), P("x^4+1"), inner}, false).failure().find("document.polynomial") == 0);
}

TEST_CASE("verify dispatch failures") {
  CHECK(verify(P("x^2+1"), CertificateDocument{std::string(kFormatVersion), P("x^2+1"), Linear{}}, false).failure().find("linear") != std::string::npos);
  const PolyZ f = P("x^4+x^3+3x+4");
  CertificateDocument partial{std::string(kFormatVersion), f, DegreeAnalysis{{evidence_at(f, 2)}}};
  CHECK(verify(f, partial, false).failure() == "degree_analysis.proper_degrees_remain");
  CertificateDocument versioned{"irredcert/0", f, DegreeAnalysis{{evidence_at(f, 2), evidence_at(f, 5)}}};
  CHECK(verify(f, versioned, false).failure() == "document.format");
  versioned.format = std::string(kFormatVersion);
  CHECK(verify(f, versioned, false).ok());
  CHECK(verify(Integer(3) * f, CertificateDocument{versioned.format, Integer(3) * f, versioned.certificate}, false).ok());
}

TEST_CASE("tampered numeric bytes are rejected") {
  // Slack fields: another root bound, iteration count, Pratt witness or round
  // count can still make a valid proof, so mutations there are not forgeries.
  const std::vector<std::string> slack{"rho", "graeffe_iters", "witness", "rounds", "format"};
  std::mt19937_64 rng(79);
  long mutations = 0;
  for (const char* s : {"x^4+1", "x^4+x^3+3x+4", "x^12+12x^4+92", "97x^4+76x^3+78x^2+4x+2", "x^4-1036x^2+7744"}) {
    const PolyZ f = P(s);
    const std::string bytes = serialize(certified(f, CertifyConfig{.strict_primality = true}));
    for (std::size_t pos = 0; pos < bytes.size(); ++pos) {
      if (bytes[pos] < '0' || bytes[pos] > '9') continue;
      if (std::find(slack.begin(), slack.end(), enclosing_key(bytes, pos)) != slack.end()) continue;
      for (int t = 0; t < 3; ++t) {
        std::string mutated = bytes;
        mutated[pos] = static_cast<char>('0' + (mutated[pos] - '0' + 1 + rng() % 9) % 10);
        ++mutations;
        bool accepted = false;
        try {
          accepted = verify(f, parse_certificate(mutated), true).ok();
        } catch (const CertParseError&) {
        }
        if (accepted) FAIL("accepted mutation at byte " << pos << " (" << enclosing_key(bytes, pos) << "): " << mutated);
      }
    }
  }
  CHECK(mutations > 300);
}
