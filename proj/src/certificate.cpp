#include "irredcert/certificate.hpp"

#include <initializer_list>
#include <limits>
#include <regex>

#include "json.hpp"

namespace irredcert {

using Json = nlohmann::ordered_json;

CertParseError::CertParseError(Kind kind, const std::string& what)
    : std::runtime_error(std::string(irredcert::to_string(kind)) + ": " + what), kind_(kind) {}

const char* to_string(CertParseError::Kind kind) {
  switch (kind) {
    case CertParseError::Kind::Malformed: return "malformed";
    case CertParseError::Kind::Version: return "version";
    case CertParseError::Kind::UnknownKind: return "unknown_kind";
    case CertParseError::Kind::Nesting: return "nesting";
    case CertParseError::Kind::NonCanonicalRational: return "non_canonical_rational";
    case CertParseError::Kind::Schema: return "schema";
  }
  return "unknown";
}

namespace {

// ---- writing ----

Json poly_json(const PolyZ& f) {
  Json a = Json::array();
  for (const auto& c : f.coeffs()) a.push_back(c.get_str());
  return a;
}

Json modp_json(const PolyModP& g) {
  Json a = Json::array();
  for (auto c : g.coeffs()) a.push_back(std::to_string(c));
  return a;
}

Json evidence_json(const std::vector<PrimeEvidence>& evidence) {
  Json a = Json::array();
  for (const auto& ev : evidence) {
    Json e;
    e["p"] = std::to_string(ev.p);
    Json fs = Json::array();
    for (const auto& g : ev.factors) fs.push_back(modp_json(g));
    e["factors"] = std::move(fs);
    a.push_back(std::move(e));
  }
  return a;
}

Json primality_json(const PrimalityCert& cert) {
  Json j;
  if (std::holds_alternative<SmallPrime>(cert)) {
    j["kind"] = "small";
  } else if (const auto* pp = std::get_if<ProbablePrime>(&cert)) {
    j["kind"] = "probable";
    j["rounds"] = std::to_string(pp->rounds);
  } else {
    const auto& lp = std::get<LucasPratt>(cert);
    j["kind"] = "pratt";
    j["witness"] = lp.witness.get_str();
    Json fs = Json::array();
    for (const auto& f : lp.factors) {
      Json e;
      e["q"] = f.q.get_str();
      e["e"] = std::to_string(f.e);
      e["cert"] = primality_json(f.cert);
      fs.push_back(std::move(e));
    }
    j["factors"] = std::move(fs);
  }
  return j;
}

Json lpfw_json(const LpfwCert& c) {
  Json j;
  j["kind"] = "lpfw";
  j["rho"] = to_string(c.root_bound.rho);
  j["graeffe_iters"] = std::to_string(c.root_bound.graeffe_iters);
  j["delta"] = std::to_string(c.delta.value);
  j["delta_evidence"] = evidence_json(c.delta.evidence);
  j["n"] = c.n.get_str();
  j["p"] = c.p.get_str();
  j["primality"] = c.primality ? primality_json(*c.primality) : Json(nullptr);
  return j;
}

Json certificate_json(const Certificate& cert);

Json inner_json(const InnerCertificate& inner) {
  return std::visit([](const auto& c) { return certificate_json(Certificate{c}); }, inner);
}

Json certificate_json(const Certificate& cert) {
  Json j;
  if (std::holds_alternative<Linear>(cert)) {
    j["kind"] = "linear";
  } else if (const auto* da = std::get_if<DegreeAnalysis>(&cert)) {
    j["kind"] = "degree_analysis";
    j["evidence"] = evidence_json(da->evidence);
  } else if (const auto* lp = std::get_if<LpfwCert>(&cert)) {
    j = lpfw_json(*lp);
  } else {
    const auto& t = std::get<Transform>(cert);
    j["kind"] = "transform";
    j["matrix"] = Json::array({t.matrix.a.get_str(), t.matrix.b.get_str(), t.matrix.c.get_str(), t.matrix.d.get_str()});
    j["image"] = poly_json(t.image);
    j["inner"] = inner_json(t.inner);
  }
  return j;
}

// ---- reading ----

using Kind = CertParseError::Kind;

[[noreturn]] void schema(const std::string& what) { throw CertParseError(Kind::Schema, what); }

const Json& field(const Json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) schema(std::string("missing key \"") + key + "\"");
  return *it;
}

void expect_keys(const Json& obj, std::initializer_list<const char*> keys, const char* what) {
  if (!obj.is_object()) schema(std::string(what) + " must be an object");
  if (obj.size() != keys.size()) schema(std::string(what) + " has unexpected keys");
  for (const char* k : keys) field(obj, k);
}

const std::string& str(const Json& j, const char* what) {
  if (!j.is_string()) schema(std::string(what) + " must be a string");
  return j.get_ref<const std::string&>();
}

const std::regex& integer_re() {
  static const std::regex re("-?(0|[1-9][0-9]*)");
  return re;
}

Integer read_integer(const Json& j, const char* what) {
  const std::string& s = str(j, what);
  if (!std::regex_match(s, integer_re()) || s == "-0") schema(std::string(what) + " is not a canonical decimal integer");
  return Integer(s);
}

std::uint64_t read_natural(const Json& j, const char* what, std::uint64_t max) {
  const Integer z = read_integer(j, what);
  if (z < 0 || z > Integer(std::to_string(max))) schema(std::string(what) + " out of range");
  return std::stoull(z.get_str());
}

Rational read_rational(const Json& j, const char* what) {
  if (!j.is_string()) schema(std::string(what) + " must be a string");
  static const std::regex re("(-?(?:0|[1-9][0-9]*))/([1-9][0-9]*)");
  std::smatch m;
  const std::string& s = j.get_ref<const std::string&>();
  if (!std::regex_match(s, m, re) || m[1] == "-0")
    throw CertParseError(Kind::NonCanonicalRational, std::string(what) + " \"" + s + "\" is not of the form num/den");
  const Integer num(m[1].str()), den(m[2].str());
  Integer g;
  mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (g != 1) throw CertParseError(Kind::NonCanonicalRational, std::string(what) + " \"" + s + "\" is not in lowest terms");
  return make_rational(num, den);
}

PolyZ read_poly(const Json& j, const char* what) {
  if (!j.is_array()) schema(std::string(what) + " must be an array");
  std::vector<Integer> c;
  for (const auto& e : j) c.push_back(read_integer(e, what));
  PolyZ f(std::move(c));
  if (f.size() != j.size()) schema(std::string(what) + " has trailing zero coefficients");
  return f;
}

std::vector<PrimeEvidence> read_evidence(const Json& j) {
  if (!j.is_array()) schema("evidence must be an array");
  std::vector<PrimeEvidence> out;
  for (const auto& e : j) {
    expect_keys(e, {"p", "factors"}, "evidence entry");
    const auto p = static_cast<std::uint32_t>(read_natural(field(e, "p"), "p", (1u << 31) - 1));
    if (p < 2) schema("evidence modulus below 2");
    const Json& fs = field(e, "factors");
    if (!fs.is_array()) schema("factors must be an array");
    PrimeEvidence ev{p, {}};
    for (const auto& g : fs) {
      if (!g.is_array()) schema("factor must be an array");
      std::vector<std::uint32_t> c;
      for (const auto& x : g) {
        const auto v = read_natural(x, "factor coefficient", p - 1);
        c.push_back(static_cast<std::uint32_t>(v));
      }
      PolyModP poly(p, std::move(c));
      if (static_cast<std::size_t>(poly.degree() + 1) != g.size()) schema("factor has trailing zero coefficients");
      ev.factors.push_back(std::move(poly));
    }
    out.push_back(std::move(ev));
  }
  return out;
}

PrimalityCert read_primality(const Json& j, int depth) {
  if (depth > 64) schema("primality certificate nested too deeply");
  if (!j.is_object()) schema("primality must be an object or null");
  const std::string& kind = str(field(j, "kind"), "kind");
  if (kind == "small") {
    expect_keys(j, {"kind"}, "small prime certificate");
    return SmallPrime{};
  }
  if (kind == "probable") {
    expect_keys(j, {"kind", "rounds"}, "probable prime certificate");
    return ProbablePrime{static_cast<unsigned>(read_natural(field(j, "rounds"), "rounds", std::numeric_limits<unsigned>::max()))};
  }
  if (kind == "pratt") {
    expect_keys(j, {"kind", "witness", "factors"}, "pratt certificate");
    LucasPratt lp{read_integer(field(j, "witness"), "witness"), {}};
    const Json& fs = field(j, "factors");
    if (!fs.is_array()) schema("pratt factors must be an array");
    for (const auto& f : fs) {
      expect_keys(f, {"q", "e", "cert"}, "pratt factor");
      lp.factors.push_back(PrattFactor{read_integer(field(f, "q"), "q"),
                                       static_cast<unsigned>(read_natural(field(f, "e"), "e", std::numeric_limits<unsigned>::max())),
                                       read_primality(field(f, "cert"), depth + 1)});
    }
    return lp;
  }
  throw CertParseError(Kind::UnknownKind, "primality kind \"" + kind + "\"");
}

LpfwCert read_lpfw(const Json& j) {
  expect_keys(j, {"kind", "rho", "graeffe_iters", "delta", "delta_evidence", "n", "p", "primality"}, "lpfw certificate");
  LpfwCert c;
  c.root_bound.rho = read_rational(field(j, "rho"), "rho");
  c.root_bound.graeffe_iters = static_cast<unsigned>(read_natural(field(j, "graeffe_iters"), "graeffe_iters", 64));
  c.delta.value = static_cast<unsigned>(read_natural(field(j, "delta"), "delta", std::numeric_limits<unsigned>::max()));
  c.delta.evidence = read_evidence(field(j, "delta_evidence"));
  c.n = read_integer(field(j, "n"), "n");
  c.p = read_integer(field(j, "p"), "p");
  const Json& pr = field(j, "primality");
  if (!pr.is_null()) c.primality = read_primality(pr, 0);
  return c;
}

Certificate read_certificate(const Json& j, bool inner) {
  if (!j.is_object()) schema("certificate must be an object");
  const std::string& kind = str(field(j, "kind"), "kind");
  if (kind == "linear") {
    expect_keys(j, {"kind"}, "linear certificate");
    return Linear{};
  }
  if (kind == "degree_analysis") {
    expect_keys(j, {"kind", "evidence"}, "degree analysis certificate");
    return DegreeAnalysis{read_evidence(field(j, "evidence"))};
  }
  if (kind == "lpfw") return read_lpfw(j);
  if (kind == "transform") {
    if (inner) throw CertParseError(Kind::Nesting, "a transform certificate may not wrap another transform");
    expect_keys(j, {"kind", "matrix", "image", "inner"}, "transform certificate");
    const Json& m = field(j, "matrix");
    if (!m.is_array() || m.size() != 4) schema("matrix must be an array of four integers");
    Transform t;
    t.matrix = {read_integer(m[0], "matrix"), read_integer(m[1], "matrix"), read_integer(m[2], "matrix"), read_integer(m[3], "matrix")};
    t.image = read_poly(field(j, "image"), "image");
    Certificate in = read_certificate(field(j, "inner"), true);
    t.inner = std::visit(
        [](auto&& c) -> InnerCertificate {
          if constexpr (std::is_same_v<std::decay_t<decltype(c)>, Transform>)
            throw CertParseError(Kind::Nesting, "nested transform");
          else
            return c;
        },
        std::move(in));
    return t;
  }
  throw CertParseError(Kind::UnknownKind, "certificate kind \"" + kind + "\"");
}

}  // namespace

std::string serialize(const CertificateDocument& doc) {
  Json j;
  j["format"] = doc.format;
  j["polynomial"] = poly_json(doc.polynomial);
  j["certificate"] = certificate_json(doc.certificate);
  return j.dump() + "\n";
}

CertificateDocument parse_certificate(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw CertParseError(Kind::Malformed, e.what());
  }
  if (!j.is_object()) schema("document must be an object");
  const std::string& format = str(field(j, "format"), "format");
  if (format != kFormatVersion) throw CertParseError(Kind::Version, "unsupported format \"" + format + "\"");
  expect_keys(j, {"format", "polynomial", "certificate"}, "document");

  CertificateDocument doc;
  doc.format = format;
  try {
    doc.polynomial = read_poly(field(j, "polynomial"), "polynomial");
    doc.certificate = read_certificate(field(j, "certificate"), false);
  } catch (const DomainError& e) {
    schema(e.what());
  }
  // Anything that parsed but would be written differently (key order,
  // reduced residues, ...) is not canonical.
  if (serialize(doc) != j.dump() + "\n") schema("document is not in canonical form");
  return doc;
}

}  // namespace irredcert
