#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "irredcert/certificate.hpp"
#include "irredcert/degan.hpp"
#include "irredcert/engine.hpp"
#include "irredcert/parser.hpp"

namespace {

using namespace irredcert;

constexpr int kExitOk = 0;
constexpr int kExitReducible = 1;
constexpr int kExitReject = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// An expression, a coefficient list, or @file holding either.
PolyZ read_poly_arg(const std::string& arg) {
  const std::string text = !arg.empty() && arg[0] == '@' ? read_file(arg.substr(1)) : arg;
  try {
    return parse_poly(text);
  } catch (const ParseError& e) {
    throw UsageError(std::string("cannot parse polynomial: ") + e.what());
  }
}

std::string join(const std::vector<unsigned>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

int run_certify(const std::string& poly, const std::string& out_path, const CertifyConfig& config) {
  const PolyZ f = read_poly_arg(poly);
  if (f.degree() < 1) throw UsageError("polynomial must be non-constant");
  const Verdict v = certify(f, config);
  if (const auto* c = std::get_if<Certified>(&v)) {
    const std::string bytes = serialize(c->doc);
    if (out_path.empty()) {
      std::cout << bytes;
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) throw UsageError("cannot write " + out_path);
      out << bytes;
    }
    return kExitOk;
  }
  if (const auto* r = std::get_if<Reducible>(&v)) {
    std::cerr << "reducible: repeated factor " << format_poly(r->witness) << "\n";
    return kExitReducible;
  }
  std::cerr << "inconclusive after " << std::get<Inconclusive>(v).iterations_used << " iterations\n";
  return kExitInconclusive;
}

int run_verify(const std::string& poly, const std::string& cert_path, bool strict) {
  const PolyZ f = read_poly_arg(poly);
  const std::string bytes = read_file(cert_path);
  CertificateDocument doc;
  try {
    doc = parse_certificate(bytes);
  } catch (const CertParseError& e) {
    std::cout << "reject: certificate." << e.what() << "\n";
    return kExitReject;
  }
  const CheckResult r = verify(f, doc, strict);
  if (!r) {
    std::cout << "reject: " << r.failure() << "\n";
    return kExitReject;
  }
  std::cout << "accept\n";
  return kExitOk;
}

int run_info(const std::string& poly, const std::vector<std::uint32_t>& primes_arg) {
  const PolyZ f = read_poly_arg(poly);
  if (f.is_zero()) throw UsageError("zero polynomial");
  const PolyZ g = primitive_part(f);
  std::cout << "polynomial: " << format_poly(f) << "\n";
  std::cout << "degree: " << f.degree() << "\n";
  std::cout << "content: " << content(f).get_str() << "\n";
  if (g.degree() < 1) return kExitOk;
  std::cout << "squarefree: " << (is_squarefree(g) ? "yes" : "no") << "\n";
  std::cout << "fixed divisor: " << fixed_divisor(g).get_str() << "\n";
  const RootBoundCert rb = compute_root_bound(g);
  std::cout << "root bound: " << to_string(rb.rho) << " (graeffe iterations " << rb.graeffe_iters << ")\n";

  const std::vector<std::uint32_t> primes = primes_arg.empty() ? std::vector<std::uint32_t>{2, 3, 5, 7, 11, 13} : primes_arg;
  for (std::uint32_t p : primes) {
    std::cout << "p=" << p << ": ";
    if (p < 2 || p >= (1u << 31) || !is_small_prime(p)) {
      std::cout << "not a usable prime\n";
      continue;
    }
    auto r = analyze_prime_with_multiplicity(g, p);
    if (!r) {
      std::cout << "divides the leading coefficient\n";
      continue;
    }
    std::vector<unsigned> degs;
    for (const auto& h : r->first.factors) degs.push_back(static_cast<unsigned>(h.degree()));
    std::cout << "factor degrees [" << join(degs) << "]";
    if (!is_squarefree(reduce(g, p))) std::cout << " (not squarefree)";
    std::cout << ", possible degrees {" << join(r->second.members()) << "}\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Irreducibility certificates for integer polynomials"};
  app.require_subcommand(1);

  std::string poly, out_path, cert_path;
  CertifyConfig config;
  bool no_transforms = false;
  bool strict = false;
  std::vector<std::uint32_t> primes;

  auto* cert_cmd = app.add_subcommand("certify", "Produce an irreducibility certificate");
  cert_cmd->add_option("poly", poly, "Expression, [c0,c1,...] or @file")->required();
  cert_cmd->add_option("--out", out_path, "Write the certificate here instead of stdout");
  cert_cmd->add_option("--seed", config.seed, "Random seed");
  cert_cmd->add_option("--max-iters", config.max_iterations, "Work budget")->check(CLI::PositiveNumber);
  cert_cmd->add_option("--smooth-bound", config.smooth_bound, "Trial division bound")->check(CLI::Range(2u, 1u << 30));
  cert_cmd->add_option("--max-graeffe", config.max_graeffe, "Graeffe iterations for root bounds")->check(CLI::Range(0u, 10u));
  cert_cmd->add_flag("--no-transforms", no_transforms, "Only search the input polynomial itself");
  cert_cmd->add_flag("--strict-primality", config.strict_primality, "Require Pratt certificates for LPFW primes");
  cert_cmd->add_option("--threads", config.thread_count, "Worker threads")->check(CLI::Range(1u, 256u));

  auto* verify_cmd = app.add_subcommand("verify", "Check a certificate");
  verify_cmd->add_option("poly", poly, "Expression, [c0,c1,...] or @file")->required();
  verify_cmd->add_option("--cert", cert_path, "Certificate file")->required();
  verify_cmd->add_flag("--strict", strict, "Reject probable-prime claims");

  auto* info_cmd = app.add_subcommand("info", "Show invariants of a polynomial");
  info_cmd->add_option("poly", poly, "Expression, [c0,c1,...] or @file")->required();
  info_cmd->add_option("--primes", primes, "Primes for factor degree sets")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*cert_cmd) {
      config.use_transforms = !no_transforms;
      return run_certify(poly, out_path, config);
    }
    if (*verify_cmd) return run_verify(poly, cert_path, strict);
    return run_info(poly, primes);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
