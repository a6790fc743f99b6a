#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "irredcert/degan.hpp"
#include "irredcert/lpfw.hpp"
#include "irredcert/moebius.hpp"
#include "irredcert/polyz.hpp"

namespace irredcert {

inline constexpr std::string_view kFormatVersion = "irredcert/1";

struct Linear {
  friend bool operator==(const Linear&, const Linear&) { return true; }
};

/// Modular factorizations whose degree sets intersect to {0, d}.
struct DegreeAnalysis {
  std::vector<PrimeEvidence> evidence;
  friend bool operator==(const DegreeAnalysis&, const DegreeAnalysis&) = default;
};

using InnerCertificate = std::variant<Linear, DegreeAnalysis, LpfwCert>;

/// Certifies f through its primitive Moebius image; inner speaks about image.
struct Transform {
  MoebiusMatrix matrix;
  PolyZ image;
  InnerCertificate inner;
  friend bool operator==(const Transform&, const Transform&) = default;
};

using Certificate = std::variant<Linear, DegreeAnalysis, LpfwCert, Transform>;

struct CertificateDocument {
  std::string format{kFormatVersion};
  PolyZ polynomial;
  Certificate certificate;
  friend bool operator==(const CertificateDocument&, const CertificateDocument&) = default;
};

/// Canonical JSON, no whitespace, fixed key order, newline-terminated.
std::string serialize(const CertificateDocument& doc);

class CertParseError : public std::runtime_error {
 public:
  enum class Kind { Malformed, Version, UnknownKind, Nesting, NonCanonicalRational, Schema };
  CertParseError(Kind kind, const std::string& what);
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

const char* to_string(CertParseError::Kind kind);

/// Inverse of serialize. Whitespace between tokens is ignored; anything
/// else that serialize would not have produced is rejected.
CertificateDocument parse_certificate(std::string_view text);

}  // namespace irredcert
