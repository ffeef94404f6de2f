#include "tspec/polynomial.hpp"

#include "tspec/exactla.hpp"

namespace tspec {

Integer content(const IntPoly& p) {
  if (p.is_zero()) return 0;
  Integer g = 0;
  for (const auto& c : p.coefficients()) g = gcd(g, c);
  return p.leading() < 0 ? Integer(-g) : g;
}

IntPoly primitive_part(const IntPoly& p) {
  if (p.is_zero()) return p;
  const Integer c = content(p);
  std::vector<Integer> v = p.coefficients();
  for (auto& x : v) x /= c;
  return IntPoly(std::move(v));
}

IntPoly gcd(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero()) return primitive_part(b);
  if (b.is_zero()) return primitive_part(a);
  // Primitive remainder sequence over Z.
  IntPoly f = primitive_part(a), g = primitive_part(b);
  if (f.degree() < g.degree()) std::swap(f, g);
  while (!g.is_zero()) {
    // Pseudo-remainder: scale f so that division by g is exact.
    const int delta = f.degree() - g.degree();
    Integer scale = 1;
    for (int i = 0; i <= delta; ++i) scale *= g.leading();
    IntPoly r = (scale * f).divmod(g).second;
    f = g;
    g = primitive_part(r);
  }
  return primitive_part(f);
}

RatPoly to_rational(const IntPoly& p) {
  std::vector<Rational> v;
  v.reserve(p.size());
  for (const auto& c : p.coefficients()) v.emplace_back(c);
  return RatPoly(std::move(v));
}

IntPoly clear_denominators(const RatPoly& p) {
  Integer l = 1;
  for (const auto& c : p.coefficients()) l = lcm(l, denominator(c));
  std::vector<Integer> v;
  v.reserve(p.size());
  for (const auto& c : p.coefficients()) v.push_back(numerator(c) * (l / denominator(c)));
  return primitive_part(IntPoly(std::move(v)));
}

IntMatrix companion(const IntPoly& monic) {
  if (!monic.is_monic()) fail(ErrorKind::Domain, "companion: polynomial is not monic");
  const int t = monic.degree();
  IntMatrix c = IntMatrix::Zero(t, t);
  for (int i = 1; i < t; ++i) c(i, i - 1) = 1;
  for (int i = 0; i < t; ++i) c(i, t - 1) = -monic.coeff(static_cast<std::size_t>(i));
  return c;
}

std::vector<Integer> power_sums(const IntPoly& monic, std::size_t count) {
  if (!monic.is_monic()) fail(ErrorKind::Domain, "power_sums: polynomial is not monic");
  const int t = monic.degree();
  // e-coefficients: z^t + b_1 z^{t-1} + ... + b_t
  auto b = [&](int j) -> Integer { return j > t ? Integer(0) : monic.coeff(static_cast<std::size_t>(t - j)); };
  std::vector<Integer> s(count + 1, Integer(0));
  for (std::size_t k = 1; k <= count; ++k) {
    const int kk = static_cast<int>(k);
    Integer acc = kk <= t ? Integer(-kk * b(kk)) : Integer(0);
    for (int j = 1; j < kk && j <= t; ++j) acc -= b(j) * s[k - static_cast<std::size_t>(j)];
    s[k] = acc;
  }
  s.erase(s.begin());
  return s;
}

}  // namespace tspec
