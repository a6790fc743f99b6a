#include "irredcert/engine.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>

#include "irredcert/degan.hpp"
#include "irredcert/lpfw.hpp"
#include "irredcert/moebius.hpp"
#include "irredcert/primality.hpp"

namespace irredcert {

namespace {

struct Entry {
  MoebiusMatrix matrix;
  PolyZ image;
  RootBoundCert rb;
  SearchState state;
  DeltaBound delta;
};

// Re-derives a delta bound for a Moebius image from the primes the degree
// analysis used on the original polynomial.
DeltaBound transfer_delta(const PolyZ& image, const std::vector<PrimeEvidence>& source) {
  std::vector<PrimeEvidence> evidence;
  DegreeSet degrees = DegreeSet::full(static_cast<unsigned>(image.degree()));
  for (const auto& ev : source) {
    auto r = analyze_prime_with_multiplicity(image, ev.p);
    if (!r) continue;
    degrees &= r->second;
    evidence.push_back(std::move(r->first));
  }
  const unsigned value = degrees.least_positive();
  if (value <= 1) return {};
  return {value, minimize_evidence(evidence, degrees)};
}

class PrimalityOracle {
 public:
  PrimalityOracle(bool strict, std::uint64_t budget) : strict_(strict), budget_(budget) {}

  /// The certificate to embed for p; absent only in strict mode when no
  /// Pratt certificate could be produced.
  std::optional<PrimalityCert> certificate(const Integer& p) {
    std::lock_guard<std::mutex> lock(mu_);
    const std::string key = p.get_str();
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    std::optional<PrimalityCert> cert;
    if (strict_ || mpz_sizeinbase(p.get_mpz_t(), 2) <= 128) cert = gen_pratt(p, PrattBudget{budget_});
    if (!cert && !strict_) cert = ProbablePrime{kMinProbableRounds};
    cache_.emplace(key, cert);
    return cert;
  }

 private:
  bool strict_;
  std::uint64_t budget_;
  std::mutex mu_;
  std::map<std::string, std::optional<PrimalityCert>> cache_;
};

}  // namespace

Verdict certify(const PolyZ& f, const CertifyConfig& config) {
  if (f.is_zero()) throw DomainError("cannot certify the zero polynomial");
  if (config.degan_slice < 1 || config.lpfw_slice < 1) throw DomainError("slice sizes must be at least 1");
  if (config.smooth_bound < 2) throw DomainError("smooth bound must be at least 2");
  const PolyZ g = primitive_part(f);
  if (g.degree() < 1) throw DomainError("cannot certify a constant polynomial");

  CertificateDocument doc;
  doc.polynomial = f;
  if (g.degree() == 1) {
    doc.certificate = Linear{};
    return Certified{std::move(doc)};
  }
  if (!is_squarefree(g)) return Reducible{gcd(g, derivative(g))};

  std::vector<Entry> entries;
  const std::size_t max_images = std::max<std::size_t>(1, config.max_transforms);
  const auto matrices = config.use_transforms ? candidate_transforms(g, 4 * max_images)
                                              : std::vector<MoebiusMatrix>{MoebiusMatrix::identity()};
  for (const auto& m : matrices) {
    if (entries.size() >= max_images) break;
    PolyZ image = m.is_identity() ? g : primitive_part(apply(m, g));
    if (std::any_of(entries.begin(), entries.end(), [&](const Entry& x) { return x.image == image; })) continue;
    Entry e;
    e.matrix = m;
    e.image = std::move(image);
    e.rb = compute_root_bound(e.image, config.max_graeffe);
    e.state = start_search(e.rb);
    entries.push_back(std::move(e));
  }

  PrimalityOracle oracle(config.strict_primality, config.pratt_budget);
  PrimeFilter filter;
  if (config.strict_primality) filter = [&oracle](const Integer& p) { return oracle.certificate(p).has_value(); };

  auto recorded = [&]() -> std::optional<Certificate> {
    for (const auto& e : entries) {
      auto it = e.state.found.find(e.delta.value);
      if (it == e.state.found.end()) continue;
      LpfwCert c{e.rb, e.delta, it->second.n, it->second.p, oracle.certificate(it->second.p)};
      if (!verify_lpfw(e.image, c, config.strict_primality)) continue;
      if (e.matrix.is_identity()) return Certificate{std::move(c)};
      return Certificate{Transform{e.matrix, e.image, std::move(c)}};
    }
    return std::nullopt;
  };

  DegreeAnalyzer analyzer(g, config.seed);
  unsigned published = 1;
  std::uint64_t used = 0;
  while (used < config.max_iterations) {
    if (!analyzer.done()) {
      for (unsigned i = 0; i < config.degan_slice && used < config.max_iterations && !analyzer.done(); ++i, ++used) analyzer.step();
      if (analyzer.done()) {
        doc.certificate = DegreeAnalysis{minimize_evidence(analyzer.evidence(), analyzer.degrees())};
        return Certified{std::move(doc)};
      }
      const unsigned lp = analyzer.degrees().least_positive();
      if (lp > published) {
        published = lp;
        const DeltaBound bound = analyzer.delta_bound();
        for (auto& e : entries) e.delta = e.matrix.is_identity() ? bound : transfer_delta(e.image, analyzer.evidence());
      }
    }
    if (auto c = recorded()) {
      doc.certificate = std::move(*c);
      return Certified{std::move(doc)};
    }

    std::vector<std::uint64_t> quota(entries.size(), 0);
    for (std::size_t i = 0; i < entries.size() && used < config.max_iterations; ++i) {
      quota[i] = std::min<std::uint64_t>(config.lpfw_slice, config.max_iterations - used);
      used += quota[i];
    }
    if (config.thread_count > 1) {
      std::vector<std::future<void>> jobs;
      for (std::size_t i = 0; i < entries.size(); ++i) {
        if (quota[i] == 0) continue;
        if (jobs.size() >= config.thread_count) {
          jobs.front().get();
          jobs.erase(jobs.begin());
        }
        jobs.push_back(std::async(std::launch::async, [&, i] {
          search_lpfw(entries[i].image, entries[i].rb, entries[i].state, config.smooth_bound, quota[i], filter);
        }));
      }
      for (auto& j : jobs) j.get();
    } else {
      for (std::size_t i = 0; i < entries.size(); ++i)
        if (quota[i] > 0) search_lpfw(entries[i].image, entries[i].rb, entries[i].state, config.smooth_bound, quota[i], filter);
    }
    if (auto c = recorded()) {
      doc.certificate = std::move(*c);
      return Certified{std::move(doc)};
    }
  }
  return Inconclusive{used};
}

namespace {

CheckResult verify_inner(const PolyZ& g, const Certificate& cert, bool strict) {
  if (g.degree() < 1) return CheckResult::fail("verify.degree: polynomial is constant");
  if (std::holds_alternative<Linear>(cert)) {
    if (g.degree() != 1) return CheckResult::fail("linear.degree: polynomial is not linear");
    return CheckResult::pass();
  }
  if (const auto* da = std::get_if<DegreeAnalysis>(&cert)) {
    auto dv = verify_degan(g, da->evidence);
    if (!dv.check) return dv.check;
    if (!dv.degrees.proper_empty()) return CheckResult::fail("degree_analysis.proper_degrees_remain");
    return CheckResult::pass();
  }
  if (const auto* lp = std::get_if<LpfwCert>(&cert)) return verify_lpfw(g, *lp, strict);

  const auto& t = std::get<Transform>(cert);
  if (g.degree() < 2) return CheckResult::fail("transform.degree: transforms need degree >= 2");
  if (t.image.degree() != g.degree()) return CheckResult::fail("transform.degree: image degree differs");
  if (t.matrix.det() == 0) return CheckResult::fail("transform.degenerate");
  CheckResult tr = CheckResult::pass();
  try {
    tr = verify_transform(g, t.matrix, t.image);
  } catch (const DomainError& e) {
    return CheckResult::fail(std::string("transform.points: ") + e.what());
  }
  if (!tr) return tr;
  const Certificate inner = std::visit([](const auto& c) { return Certificate{c}; }, t.inner);
  auto r = verify_inner(t.image, inner, strict);
  if (!r) return CheckResult::fail("transform.inner: " + r.failure());
  return r;
}

}  // namespace

CheckResult verify_certificate(const PolyZ& g, const Certificate& cert, bool strict) {
  try {
    return verify_inner(g, cert, strict);
  } catch (const DomainError& e) {
    return CheckResult::fail(std::string("verify.domain: ") + e.what());
  }
}

CheckResult verify(const PolyZ& f, const CertificateDocument& doc, bool strict) {
  if (doc.format != kFormatVersion) return CheckResult::fail("document.format");
  if (!(doc.polynomial == f)) return CheckResult::fail("document.polynomial: certificate is for a different polynomial");
  if (f.is_zero()) return CheckResult::fail("verify.degree: zero polynomial");
  return verify_certificate(primitive_part(f), doc.certificate, strict);
}

}  // namespace irredcert
