#include "tspec/factor.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace tspec {

IntPoly Factorization::expand() const {
  IntPoly out = IntPoly::constant(unit_content);
  for (const auto& [f, m] : factors) out *= f.pow(static_cast<unsigned>(m));
  return out;
}

namespace modp {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(static_cast<u128>(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1U) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1U;
  }
  return r;
}

Poly derivative(const Poly& a, u64 p) {
  if (a.size() <= 1) return {};
  Poly d(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) d[i - 1] = mulmod(a[i], i % p, p);
  trim(d);
  return d;
}

Poly exact_quotient(const Poly& a, const Poly& b, u64 p) {
  Poly r;
  return divmod(a, b, p, r);
}

// base^e mod m
Poly powmod_poly(Poly base, u64 e, const Poly& m, u64 p) {
  Poly r{1};
  base = rem(base, m, p);
  while (e) {
    if (e & 1U) r = rem(mul(r, base, p), m, p);
    e >>= 1U;
    if (e) base = rem(mul(base, base, p), m, p);
  }
  return r;
}

// Splits a product of distinct monic irreducibles all of degree d.
void equal_degree_split(const Poly& f, std::size_t d, u64 p, std::mt19937_64& rng, std::vector<Poly>& out) {
  const std::size_t deg = f.size() - 1;
  if (deg == d) {
    out.push_back(f);
    return;
  }
  std::uniform_int_distribution<u64> coeff(0, p - 1);
  for (;;) {
    Poly a(deg);
    for (auto& c : a) c = coeff(rng);
    trim(a);
    if (a.size() < 2) continue;
    Poly b;
    if (p == 2) {
      // Trace map a + a^2 + ... + a^(2^(d-1)) takes values in F_2 on each factor.
      Poly t = rem(a, f, p);
      b = t;
      for (std::size_t i = 1; i < d; ++i) {
        t = rem(mul(t, t, p), f, p);
        b = add(b, t, p);
      }
    } else {
      // a^((p^d - 1)/2) = (a * a^p * ... * a^(p^(d-1)))^((p-1)/2)
      Poly t = a, s = a;
      for (std::size_t i = 1; i < d; ++i) {
        t = powmod_poly(t, p, f, p);
        s = rem(mul(s, t, p), f, p);
      }
      b = sub(powmod_poly(s, (p - 1) / 2, f, p), Poly{1}, p);
    }
    Poly g = gcd(b, f, p);
    if (g.size() > 1 && g.size() < f.size()) {
      equal_degree_split(g, d, p, rng, out);
      equal_degree_split(exact_quotient(f, g, p), d, p, rng, out);
      return;
    }
  }
}

}  // namespace

std::uint64_t inverse(std::uint64_t a, std::uint64_t p) { return powmod(a % p, p - 2, p); }

Poly reduce(const IntPoly& a, std::uint64_t prime) {
  Poly r;
  r.reserve(a.size());
  const Integer pp(prime);
  for (const auto& c : a.coefficients()) r.push_back(mod_floor(c, pp).convert_to<u64>());
  trim(r);
  return r;
}

Poly add(const Poly& a, const Poly& b, std::uint64_t p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + b[i]) % p;
  trim(r);
  return r;
}

Poly sub(const Poly& a, const Poly& b, std::uint64_t p) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + p - b[i]) % p;
  trim(r);
  return r;
}

Poly mul(const Poly& a, const Poly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mulmod(a[i], b[j], p)) % p;
  }
  trim(r);
  return r;
}

Poly divmod(const Poly& a, const Poly& b, std::uint64_t p, Poly& remainder) {
  if (b.empty()) fail(ErrorKind::Domain, "modp::divmod: division by zero");
  Poly r = a;
  if (r.size() < b.size()) {
    remainder = r;
    return {};
  }
  Poly q(r.size() - b.size() + 1, 0);
  const u64 inv = inverse(b.back(), p);
  for (std::size_t i = r.size(); i-- > b.size() - 1;) {
    const u64 f = mulmod(r[i], inv, p);
    if (f == 0) continue;
    const std::size_t shift = i - (b.size() - 1);
    q[shift] = f;
    for (std::size_t j = 0; j < b.size(); ++j) r[shift + j] = (r[shift + j] + p - mulmod(f, b[j], p)) % p;
  }
  trim(r);
  trim(q);
  remainder = std::move(r);
  return q;
}

Poly rem(const Poly& a, const Poly& b, std::uint64_t p) {
  Poly r;
  divmod(a, b, p, r);
  return r;
}

Poly make_monic(const Poly& a, std::uint64_t p) {
  if (a.empty()) return a;
  const u64 inv = inverse(a.back(), p);
  Poly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mulmod(a[i], inv, p);
  return r;
}

Poly gcd(const Poly& a0, const Poly& b0, std::uint64_t p) {
  Poly a = a0, b = b0;
  while (!b.empty()) {
    Poly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a, p);
}

bool is_squarefree(const Poly& a, std::uint64_t p) {
  const Poly d = derivative(a, p);
  if (d.empty()) return a.size() <= 1;
  return gcd(a, d, p).size() == 1;
}

std::vector<Poly> factor_squarefree(const Poly& a, std::uint64_t p) {
  std::vector<Poly> out;
  Poly f = make_monic(a, p);
  if (f.size() <= 1) return out;
  std::mt19937_64 rng(0x5eed5eedULL ^ p);
  // Distinct-degree factorization.
  Poly h{0, 1};
  const Poly x{0, 1};
  for (std::size_t d = 1; f.size() > 1; ++d) {
    if (2 * d > f.size() - 1) {
      out.push_back(f);
      break;
    }
    h = powmod_poly(h, p, f, p);
    Poly g = gcd(sub(h, x, p), f, p);
    if (g.size() > 1) {
      equal_degree_split(g, d, p, rng, out);
      f = exact_quotient(f, g, p);
      h = rem(h, f, p);
    }
  }
  std::sort(out.begin(), out.end(), [](const Poly& l, const Poly& r) {
    if (l.size() != r.size()) return l.size() < r.size();
    return std::lexicographical_compare(l.rbegin(), l.rend(), r.rbegin(), r.rend());
  });
  return out;
}

bool is_irreducible(const Poly& a, std::uint64_t p) {
  if (a.size() <= 1) return false;
  if (!is_squarefree(a, p)) return false;
  return factor_squarefree(a, p).size() == 1;
}

}  // namespace modp

std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& p) {
  std::vector<std::pair<IntPoly, int>> out;
  IntPoly f = primitive_part(p);
  if (f.degree() <= 0) return out;
  IntPoly g = gcd(f, f.derivative());
  IntPoly w = primitive_part(f.exact_div(g));
  for (int i = 1; w.degree() > 0; ++i) {
    IntPoly y = gcd(w, g);
    IntPoly z = primitive_part(w.exact_div(y));
    if (z.degree() > 0) out.emplace_back(z, i);
    w = y;
    g = primitive_part(g.exact_div(y));
  }
  return out;
}

namespace {

using modp::Poly;

IntPoly lift_to_int(const Poly& a) {
  std::vector<Integer> v;
  v.reserve(a.size());
  for (auto c : a) v.emplace_back(c);
  return IntPoly(std::move(v));
}

IntPoly reduce_mod(const IntPoly& a, const Integer& m) {
  std::vector<Integer> v;
  v.reserve(a.size());
  for (const auto& c : a.coefficients()) v.push_back(mod_floor(c, m));
  return IntPoly(std::move(v));
}

IntPoly symmetric_mod(const IntPoly& a, const Integer& m) {
  std::vector<Integer> v;
  v.reserve(a.size());
  const Integer half = m / 2;
  for (const auto& c : a.coefficients()) {
    Integer r = mod_floor(c, m);
    if (r > half) r -= m;
    v.push_back(r);
  }
  return IntPoly(std::move(v));
}

Integer inverse_mod(const Integer& a, const Integer& m) {
  // extended Euclid
  Integer old_r = mod_floor(a, m), r = m, old_s = 1, s = 0;
  while (r != 0) {
    const Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) fail(ErrorKind::Domain, "inverse_mod: not invertible");
  return mod_floor(old_s, m);
}

// Bezout coefficients s*g + t*h = 1 over F_p.
void bezout(const Poly& g, const Poly& h, std::uint64_t p, Poly& s, Poly& t) {
  Poly r0 = g, r1 = h, s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    Poly r;
    const Poly q = modp::divmod(r0, r1, p, r);
    Poly s2 = modp::sub(s0, modp::mul(q, s1, p), p);
    Poly t2 = modp::sub(t0, modp::mul(q, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  // r0 is a nonzero constant
  const Poly inv{modp::inverse(r0.at(0), p)};
  s = modp::mul(s0, inv, p);
  t = modp::mul(t0, inv, p);
}

// Lifts monic F = G*H (mod p) with G, H monic and coprime mod p to a factorization
// modulo p^a. F is given modulo p^a.
void hensel_two(const IntPoly& F, const Poly& g, const Poly& h, std::uint64_t p, unsigned a, IntPoly& G,
                IntPoly& H) {
  Poly s, t;
  bezout(g, h, p, s, t);
  G = lift_to_int(g);
  H = lift_to_int(h);
  const Integer P(p);
  Integer q = P;
  for (unsigned k = 1; k < a; ++k) {
    // e = (F - G*H) / q mod p, then e = dh*g + dg*h with deg dg < deg g.
    const IntPoly diff = F - G * H;
    std::vector<Integer> ev;
    ev.reserve(diff.size());
    for (const auto& c : diff.coefficients()) ev.push_back(c / q);
    const Poly e = modp::reduce(IntPoly(std::move(ev)), p);
    Poly dg;
    const Poly quo = modp::divmod(modp::mul(e, t, p), g, p, dg);
    const Poly dh = modp::add(modp::mul(e, s, p), modp::mul(quo, h, p), p);
    q *= P;
    G = reduce_mod(G + (q / P) * lift_to_int(dg), q);
    H = reduce_mod(H + (q / P) * lift_to_int(dh), q);
  }
}

// Lifts the monic modular factors of F (monic modulo p^a) to p^a.
void hensel_multi(const IntPoly& F, const std::vector<Poly>& factors, std::uint64_t p, unsigned a,
                  std::vector<IntPoly>& lifted) {
  if (factors.size() == 1) {
    lifted.push_back(F);
    return;
  }
  const std::size_t half = factors.size() / 2;
  std::vector<Poly> left(factors.begin(), factors.begin() + static_cast<std::ptrdiff_t>(half));
  std::vector<Poly> right(factors.begin() + static_cast<std::ptrdiff_t>(half), factors.end());
  Poly g{1}, h{1};
  for (const auto& f : left) g = modp::mul(g, f, p);
  for (const auto& f : right) h = modp::mul(h, f, p);
  IntPoly G, H;
  hensel_two(F, g, h, p, a, G, H);
  hensel_multi(G, left, p, a, lifted);
  hensel_multi(H, right, p, a, lifted);
}

const std::vector<std::uint64_t>& small_primes() {
  static const std::vector<std::uint64_t> primes = [] {
    std::vector<std::uint64_t> v;
    for (std::uint64_t n = 3; v.size() < 60; n += 2) {
      bool prime = true;
      for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) {
          prime = false;
          break;
        }
      if (prime) v.push_back(n);
    }
    return v;
  }();
  return primes;
}

// Zassenhaus factorization of a primitive square-free polynomial of degree >= 2.
std::vector<IntPoly> zassenhaus(const IntPoly& f0) {
  IntPoly f = f0;
  const Integer lc = f.leading();

  std::uint64_t best_p = 0;
  std::vector<Poly> best;
  int tried = 0;
  for (auto p : small_primes()) {
    if (lc % Integer(p) == 0) continue;
    const Poly fp = modp::reduce(f, p);
    if (!modp::is_squarefree(fp, p)) continue;
    auto facs = modp::factor_squarefree(fp, p);
    if (best_p == 0 || facs.size() < best.size()) {
      best_p = p;
      best = std::move(facs);
    }
    if (best.size() == 1 || ++tried >= 8) break;
  }
  if (best_p == 0) fail(ErrorKind::Domain, "factor: no suitable prime found");
  if (best.size() == 1) return {f};

  // Coefficient bound for any factor, scaled by the leading coefficient.
  Integer maxc = 0;
  for (const auto& c : f.coefficients()) maxc = std::max(maxc, abs(c));
  Integer bound = 2 * abs(lc) * maxc * Integer(f.size());
  for (int i = 0; i < f.degree(); ++i) bound *= 2;
  const Integer P(best_p);
  unsigned a = 1;
  Integer pa = P;
  while (pa <= 2 * bound) {
    pa *= P;
    ++a;
  }

  // Monic version of f modulo p^a.
  const Integer lc_inv = inverse_mod(lc, pa);
  IntPoly fmonic = reduce_mod(lc_inv * f, pa);
  std::vector<IntPoly> lifted;
  hensel_multi(fmonic, best, best_p, a, lifted);

  std::vector<IntPoly> found;
  std::size_t s = 1;
  while (2 * s <= lifted.size()) {
    bool hit = false;
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    for (;;) {
      IntPoly prod = IntPoly::constant(f.leading());
      for (auto i : idx) prod = reduce_mod(prod * lifted[i], pa);
      IntPoly cand = primitive_part(symmetric_mod(prod, pa));
      if (cand.degree() > 0 && f.divisible_by(cand)) {
        found.push_back(cand);
        f = f.exact_div(cand);
        std::vector<IntPoly> rest;
        for (std::size_t i = 0; i < lifted.size(); ++i)
          if (std::find(idx.begin(), idx.end(), i) == idx.end()) rest.push_back(lifted[i]);
        lifted = std::move(rest);
        hit = true;
        break;
      }
      // next subset
      std::size_t i = s;
      while (i-- > 0 && idx[i] == lifted.size() - s + i) {
      }
      if (i == static_cast<std::size_t>(-1)) break;
      ++idx[i];
      for (std::size_t j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!hit) ++s;
  }
  if (f.degree() > 0) found.push_back(primitive_part(f));
  return found;
}

}  // namespace

Factorization factor_int_poly(const IntPoly& p, int degree_cap) {
  if (p.is_zero()) fail(ErrorKind::Domain, "factor_int_poly: zero polynomial");
  if (p.degree() > degree_cap)
    fail(ErrorKind::Capability, "factor_int_poly: degree " + std::to_string(p.degree()) +
                                    " exceeds the configured cap " + std::to_string(degree_cap));
  Factorization out;
  out.unit_content = content(p);
  if (p.degree() == 0) return out;
  std::map<std::pair<int, std::vector<Integer>>, int> collected;
  for (const auto& [part, mult] : squarefree_decomposition(p)) {
    std::vector<IntPoly> irreducibles = part.degree() == 1 ? std::vector<IntPoly>{part} : zassenhaus(part);
    for (auto& q : irreducibles) collected[{q.degree(), q.coefficients()}] += mult;
  }
  for (const auto& [key, mult] : collected) out.factors.emplace_back(IntPoly(key.second), mult);
  return out;
}

}  // namespace tspec
