#include "irredcert/polymodp.hpp"

#include <algorithm>
#include <random>

namespace irredcert {

namespace {

void strip(std::vector<std::uint32_t>& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

void require_same_modulus(const PolyModP& f, const PolyModP& g) {
  if (f.modulus() != g.modulus()) throw DomainError("polynomials over different fields");
}

PolyModP x_poly(std::uint32_t p) { return PolyModP(p, {0, 1}); }
PolyModP one_poly(std::uint32_t p) { return PolyModP(p, {1}); }

}  // namespace

PolyModP::PolyModP(std::uint32_t p, std::vector<std::uint32_t> coeffs) : p_(p), coeffs_(std::move(coeffs)) {
  if (p < 2 || p >= (1u << 31)) throw DomainError("modulus must be a prime below 2^31");
  for (auto& c : coeffs_) c %= p_;
  strip(coeffs_);
}

bool operator<(const PolyModP& f, const PolyModP& g) {
  if (f.degree() != g.degree()) return f.degree() < g.degree();
  return f.coeffs_ < g.coeffs_;
}

std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
}

std::uint32_t pow_mod(std::uint32_t a, std::uint64_t e, std::uint32_t p) {
  std::uint32_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  if (a % p == 0) throw DomainError("inverse of zero residue");
  return pow_mod(a, p - 2, p);
}

PolyModP reduce(const PolyZ& f, std::uint32_t p) {
  std::vector<std::uint32_t> v(f.size());
  for (std::size_t j = 0; j < f.size(); ++j)
    v[j] = static_cast<std::uint32_t>(mpz_fdiv_ui(f.coeffs()[j].get_mpz_t(), p));
  return PolyModP(p, std::move(v));
}

PolyZ lift(const PolyModP& f) {
  std::vector<Integer> v;
  v.reserve(f.coeffs().size());
  for (auto c : f.coeffs()) v.emplace_back(static_cast<unsigned long>(c));
  return PolyZ(std::move(v));
}

PolyModP operator+(const PolyModP& f, const PolyModP& g) {
  require_same_modulus(f, g);
  const auto p = f.modulus();
  std::vector<std::uint32_t> v(std::max(f.coeffs().size(), g.coeffs().size()));
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = static_cast<std::uint32_t>((std::uint64_t{f.coeff(j)} + g.coeff(j)) % p);
  return PolyModP(p, std::move(v));
}

PolyModP operator-(const PolyModP& f, const PolyModP& g) {
  require_same_modulus(f, g);
  const auto p = f.modulus();
  std::vector<std::uint32_t> v(std::max(f.coeffs().size(), g.coeffs().size()));
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = static_cast<std::uint32_t>((std::uint64_t{f.coeff(j)} + p - g.coeff(j)) % p);
  return PolyModP(p, std::move(v));
}

PolyModP operator*(const PolyModP& f, const PolyModP& g) {
  require_same_modulus(f, g);
  const auto p = f.modulus();
  if (f.is_zero() || g.is_zero()) return PolyModP(p, {});
  std::vector<std::uint64_t> acc(f.coeffs().size() + g.coeffs().size() - 1, 0);
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    const std::uint64_t a = f.coeffs()[i];
    if (a == 0) continue;
    for (std::size_t j = 0; j < g.coeffs().size(); ++j) acc[i + j] = (acc[i + j] + a * g.coeffs()[j]) % p;
  }
  std::vector<std::uint32_t> v(acc.begin(), acc.end());
  return PolyModP(p, std::move(v));
}

PolyModP scale(const PolyModP& f, std::uint32_t c) {
  std::vector<std::uint32_t> v = f.coeffs();
  for (auto& a : v) a = mul_mod(a, c, f.modulus());
  return PolyModP(f.modulus(), std::move(v));
}

std::pair<PolyModP, PolyModP> divmod(const PolyModP& f, const PolyModP& g) {
  require_same_modulus(f, g);
  if (g.is_zero()) throw DomainError("division by the zero polynomial");
  const auto p = f.modulus();
  if (f.degree() < g.degree()) return {PolyModP(p, {}), f};
  std::vector<std::uint32_t> r = f.coeffs();
  const std::size_t dg = static_cast<std::size_t>(g.degree());
  std::vector<std::uint32_t> q(r.size() - dg, 0);
  const std::uint32_t inv = inv_mod(g.leading(), p);
  for (std::size_t k = q.size(); k-- > 0;) {
    const std::uint32_t c = mul_mod(r[k + dg], inv, p);
    q[k] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dg; ++j)
      r[k + j] = static_cast<std::uint32_t>((r[k + j] + std::uint64_t{p - mul_mod(c, g.coeffs()[j], p)}) % p);
  }
  r.resize(dg);
  return {PolyModP(p, std::move(q)), PolyModP(p, std::move(r))};
}

PolyModP rem(const PolyModP& f, const PolyModP& g) { return divmod(f, g).second; }

PolyModP make_monic(const PolyModP& f) {
  if (f.is_zero()) return f;
  return scale(f, inv_mod(f.leading(), f.modulus()));
}

PolyModP gcd(const PolyModP& f, const PolyModP& g) {
  require_same_modulus(f, g);
  PolyModP a = f, b = g;
  while (!b.is_zero()) {
    PolyModP r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a);
}

PolyModP derivative(const PolyModP& f) {
  if (f.degree() < 1) return PolyModP(f.modulus(), {});
  std::vector<std::uint32_t> v(f.coeffs().size() - 1);
  for (std::size_t j = 1; j < f.coeffs().size(); ++j)
    v[j - 1] = mul_mod(f.coeffs()[j], static_cast<std::uint32_t>(j % f.modulus()), f.modulus());
  return PolyModP(f.modulus(), std::move(v));
}

PolyModP pow_mod(const PolyModP& base, std::uint64_t e, const PolyModP& m) {
  PolyModP result = rem(one_poly(m.modulus()), m);
  PolyModP b = rem(base, m);
  while (e) {
    if (e & 1) result = rem(result * b, m);
    e >>= 1;
    if (e) b = rem(b * b, m);
  }
  return result;
}

bool is_squarefree(const PolyModP& g) {
  if (g.degree() < 1) return true;
  return gcd(g, derivative(g)).degree() == 0;
}

namespace {

// Splits a squarefree monic g whose irreducible factors all have degree k.
void equal_degree_split(const PolyModP& g, int k, std::mt19937_64& rng, std::vector<PolyModP>& out) {
  if (g.degree() == k) {
    out.push_back(g);
    return;
  }
  const auto p = g.modulus();
  std::uniform_int_distribution<std::uint32_t> coeff(0, p - 1);
  for (;;) {
    std::vector<std::uint32_t> v(static_cast<std::size_t>(g.degree()));
    for (auto& c : v) c = coeff(rng);
    const PolyModP a(p, std::move(v));
    if (a.degree() < 1) continue;

    PolyModP b;
    if (p == 2) {
      // Trace map a + a^2 + ... + a^(2^(k-1)).
      PolyModP t = a;
      b = a;
      for (int i = 1; i < k; ++i) {
        t = rem(t * t, g);
        b = b + t;
      }
    } else {
      // a^((p^k - 1)/2) = (a^(1 + p + ... + p^(k-1)))^((p-1)/2)
      PolyModP t = a;
      PolyModP norm = a;
      for (int i = 1; i < k; ++i) {
        t = pow_mod(t, p, g);
        norm = rem(norm * t, g);
      }
      b = pow_mod(norm, (p - 1) / 2, g) - one_poly(p);
    }
    const PolyModP d = gcd(g, b);
    if (d.degree() > 0 && d.degree() < g.degree()) {
      equal_degree_split(d, k, rng, out);
      equal_degree_split(divmod(g, d).first, k, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<PolyModP> factor_mod_p(const PolyModP& g) {
  if (g.degree() < 1) throw DomainError("factor_mod_p requires degree >= 1");
  if (!is_squarefree(g)) throw DomainError("factor_mod_p requires a squarefree polynomial");
  const auto p = g.modulus();
  std::mt19937_64 rng(0x5eed0000ull ^ p);
  std::vector<PolyModP> out;

  // Distinct-degree factorization.
  PolyModP h = make_monic(g);
  PolyModP xp = x_poly(p);
  for (int i = 1; 2 * i <= h.degree(); ++i) {
    xp = pow_mod(xp, p, h);
    const PolyModP gi = gcd(h, xp - x_poly(p));
    if (gi.degree() > 0) {
      equal_degree_split(gi, i, rng, out);
      h = divmod(h, gi).first;
      xp = rem(xp, h);
    }
  }
  if (h.degree() > 0) out.push_back(h);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Squarefree decomposition over F_p: appends (part, multiplicity) pairs.
void squarefree_decompose(const PolyModP& f, std::uint64_t mult, std::vector<std::pair<PolyModP, std::uint64_t>>& out) {
  const auto p = f.modulus();
  if (f.degree() < 1) return;
  PolyModP c = gcd(f, derivative(f));
  PolyModP w = divmod(f, c).first;
  std::uint64_t i = 1;
  while (w.degree() > 0) {
    const PolyModP y = gcd(w, c);
    const PolyModP z = divmod(w, y).first;
    if (z.degree() > 0) out.emplace_back(make_monic(z), i * mult);
    ++i;
    w = y;
    c = divmod(c, y).first;
  }
  if (c.degree() > 0) {
    // c is a p-th power: c(x) = r(x)^p with r_j = c_{jp}.
    std::vector<std::uint32_t> root;
    for (std::size_t j = 0; j < c.coeffs().size(); j += p) root.push_back(c.coeffs()[j]);
    squarefree_decompose(PolyModP(p, std::move(root)), mult * p, out);
  }
}

}  // namespace

std::vector<PolyModP> factor_mod_p_with_multiplicity(const PolyModP& g) {
  if (g.degree() < 1) throw DomainError("factorization requires degree >= 1");
  std::vector<std::pair<PolyModP, std::uint64_t>> parts;
  squarefree_decompose(make_monic(g), 1, parts);
  std::vector<PolyModP> out;
  for (const auto& [part, m] : parts)
    for (const auto& fac : factor_mod_p(part))
      for (std::uint64_t k = 0; k < m; ++k) out.push_back(fac);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<std::uint32_t>> berlekamp_matrix(const PolyModP& g) {
  if (g.degree() < 1 || !g.is_monic()) throw DomainError("berlekamp_matrix requires a monic polynomial of degree >= 1");
  const auto p = g.modulus();
  const std::size_t d = static_cast<std::size_t>(g.degree());
  const PolyModP xp = pow_mod(x_poly(p), p, g);
  std::vector<std::vector<std::uint32_t>> rows;
  rows.reserve(d);
  PolyModP row = rem(one_poly(p), g);
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<std::uint32_t> r(d, 0);
    std::copy(row.coeffs().begin(), row.coeffs().end(), r.begin());
    rows.push_back(std::move(r));
    row = rem(row * xp, g);
  }
  return rows;
}

std::size_t rank_mod_p(std::vector<std::vector<std::uint32_t>> rows, std::uint32_t p) {
  if (rows.empty()) return 0;
  const std::size_t ncols = rows.front().size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < ncols && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] % p == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    const std::uint32_t inv = inv_mod(rows[rank][col] % p, p);
    for (auto& a : rows[rank]) a = mul_mod(a % p, inv, p);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank) continue;
      const std::uint32_t factor = rows[r][col] % p;
      if (factor == 0) continue;
      for (std::size_t c = col; c < ncols; ++c)
        rows[r][c] = static_cast<std::uint32_t>((rows[r][c] % p + std::uint64_t{p - mul_mod(factor, rows[rank][c], p)}) % p);
    }
    ++rank;
  }
  return rank;
}

bool is_irreducible_mod_p(const PolyModP& g) {
  if (g.degree() < 1 || !g.is_monic()) return false;
  if (g.degree() == 1) return true;
  if (!is_squarefree(g)) return false;
  auto b = berlekamp_matrix(g);
  const auto p = g.modulus();
  for (std::size_t i = 0; i < b.size(); ++i) b[i][i] = (b[i][i] + p - 1) % p;
  return rank_mod_p(std::move(b), p) + 1 == static_cast<std::size_t>(g.degree());
}

}  // namespace irredcert
