#include "irredcert/degan.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace irredcert {

DegreeSet DegreeSet::full(unsigned d) {
  DegreeSet s;
  s.d_ = d;
  s.bits_.assign(d + 1, true);
  return s;
}

DegreeSet DegreeSet::trivial(unsigned d) {
  DegreeSet s;
  s.d_ = d;
  s.bits_.assign(d + 1, false);
  s.bits_[0] = true;
  s.bits_[d] = true;
  return s;
}

std::vector<unsigned> DegreeSet::proper() const {
  std::vector<unsigned> out;
  for (unsigned e = 1; 2 * e <= d_; ++e)
    if (bits_[e]) out.push_back(e);
  return out;
}

unsigned DegreeSet::least_positive() const {
  for (unsigned e = 1; e <= d_; ++e)
    if (bits_[e]) return e;
  return d_;
}

std::vector<unsigned> DegreeSet::members() const {
  std::vector<unsigned> out;
  for (unsigned e = 0; e <= d_ && e < bits_.size(); ++e)
    if (bits_[e]) out.push_back(e);
  return out;
}

bool DegreeSet::is_symmetric() const {
  for (unsigned e = 0; e <= d_; ++e)
    if (bits_[e] != bits_[d_ - e]) return false;
  return true;
}

DegreeSet& DegreeSet::operator&=(const DegreeSet& other) {
  if (other.d_ != d_) throw DomainError("intersecting degree sets of different degrees");
  for (unsigned e = 0; e <= d_; ++e) bits_[e] = bits_[e] && other.bits_[e];
  return *this;
}

DegreeSet possible_degrees(std::span<const unsigned> factor_degrees, unsigned d) {
  std::uint64_t total = 0;
  for (unsigned k : factor_degrees) total += k;
  if (total != d) throw DomainError("factor degrees do not sum to the polynomial degree");
  DegreeSet s;
  s.d_ = d;
  s.bits_.assign(d + 1, false);
  s.bits_[0] = true;
  for (unsigned k : factor_degrees)
    for (unsigned e = d + 1; e-- > k;)
      if (s.bits_[e - k]) s.bits_[e] = true;
  return s;
}

DegreeSet possible_degrees(const PrimeEvidence& evidence, unsigned d) {
  std::vector<unsigned> degs;
  degs.reserve(evidence.factors.size());
  for (const auto& g : evidence.factors) degs.push_back(static_cast<unsigned>(std::max(0, g.degree())));
  return possible_degrees(degs, d);
}

namespace {

std::optional<std::pair<PrimeEvidence, DegreeSet>> analyze(const PolyZ& f, std::uint32_t p, bool allow_repeated) {
  if (f.degree() < 1) throw DomainError("degree analysis requires a non-constant polynomial");
  if (mpz_divisible_ui_p(f.leading().get_mpz_t(), p)) return std::nullopt;
  const PolyModP g = reduce(f, p);
  PrimeEvidence ev{p, {}};
  if (is_squarefree(g))
    ev.factors = factor_mod_p(g);
  else if (allow_repeated)
    ev.factors = factor_mod_p_with_multiplicity(g);
  else
    return std::nullopt;
  DegreeSet s = possible_degrees(ev, static_cast<unsigned>(f.degree()));
  return std::make_pair(std::move(ev), std::move(s));
}

}  // namespace

std::optional<std::pair<PrimeEvidence, DegreeSet>> analyze_prime(const PolyZ& f, std::uint32_t p) {
  return analyze(f, p, false);
}

std::optional<std::pair<PrimeEvidence, DegreeSet>> analyze_prime_with_multiplicity(const PolyZ& f, std::uint32_t p) {
  return analyze(f, p, true);
}

DegreeSet intersect(std::span<const DegreeSet> sets) {
  if (sets.empty()) throw DomainError("intersect of an empty list");
  DegreeSet out = sets.front();
  for (std::size_t i = 1; i < sets.size(); ++i) out &= sets[i];
  return out;
}

std::vector<PrimeEvidence> minimize_evidence(std::span<const PrimeEvidence> evidence, const DegreeSet& target) {
  const unsigned d = target.degree();
  std::vector<DegreeSet> sets;
  sets.reserve(evidence.size());
  for (const auto& ev : evidence) sets.push_back(possible_degrees(ev, d));

  DegreeSet all = DegreeSet::full(d);
  for (const auto& s : sets) all &= s;
  if (!(all == target)) throw DomainError("evidence does not intersect to the target degree set");
  if (target == DegreeSet::full(d)) return {};

  auto pick = [&](std::initializer_list<std::size_t> idx) {
    std::vector<PrimeEvidence> out;
    for (std::size_t i : idx) out.push_back(evidence[i]);
    return out;
  };
  const std::size_t n = sets.size();
  for (std::size_t i = 0; i < n; ++i)
    if (sets[i] == target) return pick({i});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      DegreeSet s = sets[i];
      if ((s &= sets[j]) == target) return pick({i, j});
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        DegreeSet s = sets[i];
        s &= sets[j];
        if ((s &= sets[k]) == target) return pick({i, j, k});
      }

  // Greedy cover: repeatedly take the set removing the most remaining degrees.
  std::vector<bool> chosen(n, false);
  DegreeSet current = DegreeSet::full(d);
  while (!(current == target)) {
    std::size_t best = n;
    std::size_t best_size = std::numeric_limits<std::size_t>::max();
    for (std::size_t i = 0; i < n; ++i) {
      if (chosen[i]) continue;
      DegreeSet s = current;
      s &= sets[i];
      const std::size_t size = s.members().size();
      if (size < best_size) {
        best_size = size;
        best = i;
      }
    }
    chosen[best] = true;
    current &= sets[best];
  }
  std::vector<PrimeEvidence> out;
  for (std::size_t i = 0; i < n; ++i)
    if (chosen[i]) out.push_back(evidence[i]);
  return out;
}

bool is_small_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t q = 3; q * q <= n; q += 2)
    if (n % q == 0) return false;
  return true;
}

DegreeVerification verify_degan(const PolyZ& f, std::span<const PrimeEvidence> evidence) {
  auto failure = [](std::uint32_t p, const std::string& what) {
    return DegreeVerification{CheckResult::fail("degan[p=" + std::to_string(p) + "]: " + what), {}};
  };
  if (f.degree() < 1) return {CheckResult::fail("degan: polynomial must be non-constant"), {}};
  const unsigned d = static_cast<unsigned>(f.degree());
  DegreeSet result = DegreeSet::full(d);
  for (const auto& ev : evidence) {
    const std::uint32_t p = ev.p;
    if (p >= (1u << 31) || !is_small_prime(p)) return failure(p, "modulus is not prime");
    if (mpz_divisible_ui_p(f.leading().get_mpz_t(), p)) return failure(p, "modulus divides the leading coefficient");
    if (ev.factors.empty()) return failure(p, "empty factor list");
    PolyModP product(p, {static_cast<std::uint32_t>(mpz_fdiv_ui(f.leading().get_mpz_t(), p))});
    for (const auto& g : ev.factors) {
      if (g.modulus() != p) return failure(p, "factor over a different modulus");
      if (g.degree() < 1 || !g.is_monic()) return failure(p, "factor is not monic of positive degree");
      if (!is_irreducible_mod_p(g)) return failure(p, "factor is not irreducible");
      product = product * g;
    }
    if (!(product == reduce(f, p))) return failure(p, "product of factors differs from f");
    result &= possible_degrees(ev, d);
  }
  return {CheckResult::pass(), std::move(result)};
}

namespace {

std::uint32_t next_prime_at_least(std::uint64_t n) {
  if (n <= 2) return 2;
  if (n % 2 == 0) ++n;
  while (!is_small_prime(n)) n += 2;
  return static_cast<std::uint32_t>(n);
}

constexpr std::uint64_t kMaxModulus = (1u << 31) - 1;

}  // namespace

DegreeAnalyzer::DegreeAnalyzer(PolyZ f, std::uint64_t seed) : f_(std::move(f)), rng_(seed) {
  if (f_.degree() < 1) throw DomainError("degree analysis requires a non-constant polynomial");
  d_ = static_cast<unsigned>(f_.degree());
  current_ = DegreeSet::full(d_);
  std::set<std::uint32_t> pref{2, 3, 5, 7, 11, 13};
  std::uint64_t q = d_ + 1;
  for (int count = 0; count < 10; ++count) {
    const std::uint32_t prime = next_prime_at_least(q);
    pref.insert(prime);
    q = std::uint64_t{prime} + 1;
  }
  preferential_.assign(pref.begin(), pref.end());
  random_hi_ = std::max<std::uint64_t>(4ull * d_, 8);
}

std::uint32_t DegreeAnalyzer::next_prime() {
  const bool use_pref = pref_index_ < preferential_.size() && take_preferential_;
  take_preferential_ = !take_preferential_;
  if (use_pref) return preferential_[pref_index_++];
  for (int attempt = 0; attempt < 16; ++attempt) {
    std::uniform_int_distribution<std::uint64_t> dist(2, random_hi_);
    const std::uint32_t p = next_prime_at_least(dist(rng_));
    if (p <= kMaxModulus && !used_.count(p)) return p;
    if (++unhelpful_ % 8 == 0) random_hi_ = std::min(random_hi_ * 2, kMaxModulus);
  }
  return 0;
}

bool DegreeAnalyzer::step() {
  ++tried_;
  const std::uint32_t p = next_prime();
  if (p == 0 || used_.count(p)) return false;
  used_.insert(p);
  bool helped = false;
  if (auto result = analyze_prime_with_multiplicity(f_, p)) {
    DegreeSet next = current_;
    next &= result->second;
    if (!(next == current_)) {
      current_ = std::move(next);
      evidence_.push_back(std::move(result->first));
      helped = true;
    }
  }
  if (!helped && ++unhelpful_ % 8 == 0) random_hi_ = std::min(random_hi_ * 2, kMaxModulus);
  return helped;
}

DeltaBound DegreeAnalyzer::delta_bound() const {
  const unsigned value = current_.least_positive();
  if (value <= 1) return DeltaBound{};
  return DeltaBound{value, minimize_evidence(evidence_, current_)};
}

DeganResult generate_degan(const PolyZ& f, std::size_t budget, std::uint64_t seed) {
  DegreeAnalyzer analyzer(f, seed);
  for (std::size_t i = 0; i < budget && !analyzer.done(); ++i) analyzer.step();
  return {analyzer.degrees(), analyzer.evidence()};
}

}  // namespace irredcert
