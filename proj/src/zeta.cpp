#include "tspec/zeta.hpp"

#include "tspec/exactla.hpp"
#include "tspec/factor.hpp"
#include "tspec/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace tspec {

std::vector<Integer> RationalFunction::taylor(std::size_t order) const {
  if (denominator.coeff(0) != 1) fail(ErrorKind::Domain, "taylor: denominator(0) must be 1");
  std::vector<Integer> c(order + 1, Integer(0));
  for (std::size_t m = 0; m <= order; ++m) {
    Integer acc = numerator.coeff(m);
    for (std::size_t i = 1; i <= m && i < denominator.size(); ++i) acc -= denominator.coeff(i) * c[m - i];
    c[m] = acc;
  }
  return c;
}

Integer SpectralDecomposition::value_at(std::uint64_t k) const {
  Integer total = 0;
  for (const auto& f : factors) total += f.rho * power_sums(f.poly, k).back();
  return total;
}

std::size_t default_degree_bound(const EndoSpec& spec) {
  return (std::size_t{1} << spec.n) * spec.order();
}

IntPoly find_min_recurrence(const std::vector<Integer>& seq, std::size_t guard,
                            std::optional<std::size_t> degree_bound) {
  const std::size_t L = seq.size();
  if (std::all_of(seq.begin(), seq.end(), [](const Integer& x) { return x == 0; }))
    return IntPoly::constant(Integer(1));
  std::size_t top = L >= guard ? (L - guard) / 2 : 0;
  if (degree_bound) top = std::min(top, *degree_bound);
  for (std::size_t t = 1; t <= top; ++t) {
    // s_{i+t} = sum_j c_j s_{i+j} for i = 0..L-t-1
    const std::size_t rows = L - t;
    RatMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(t));
    RatVector b(static_cast<Eigen::Index>(rows));
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < t; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = Rational(seq[i + j]);
      b(static_cast<Eigen::Index>(i)) = Rational(seq[i + t]);
    }
    RatVector c;
    if (!solve_exact(m, b, c)) continue;
    std::vector<Integer> coeffs(t + 1);
    for (std::size_t j = 0; j < t; ++j) {
      const Rational& cj = c(static_cast<Eigen::Index>(j));
      if (!is_integral(cj))
        fail(ErrorKind::OracleMismatch,
             "decomposition error: minimal recurrence of degree " + std::to_string(t) + " has a non-integral coefficient");
      coeffs[j] = -numerator(cj);
    }
    coeffs[t] = 1;
    return IntPoly(std::move(coeffs));
  }
  std::ostringstream msg;
  msg << "window exhausted: no linear recurrence of degree <= " << top << " verified on " << L
      << " terms with guard " << guard;
  if (degree_bound) msg << " (degree bound " << *degree_bound << ", need kmax >= " << 2 * *degree_bound + guard << ")";
  msg << "; increase kmax";
  fail(ErrorKind::WindowExhausted, msg.str());
}

namespace {

bool poly_less(const IntPoly& a, const IntPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    const auto u = static_cast<std::size_t>(i);
    if (a.coeff(u) != b.coeff(u)) return a.coeff(u) < b.coeff(u);
  }
  return false;
}

void summarize(SpectralDecomposition& d) {
  d.lambda = 0;
  d.lambda_radius = 0;
  d.r_phi = 0;
  d.rho_phi = 0;
  Integer positive = 0, negative = 0;
  for (const auto& f : d.factors) {
    const int deg = f.poly.degree();
    d.r_phi += deg;
    d.rho_phi += f.rho * deg;
    if (f.rho > 0) positive += f.rho * deg;
    else negative -= f.rho * deg;
    for (const auto& r : f.roots)
      if (r.modulus() > d.lambda) {
        d.lambda = r.modulus();
        d.lambda_radius = r.radius;
      }
  }
  d.M_phi = std::max(positive, negative);
  d.n_phi = 0;
  const long double tol = std::max<long double>(1e-9L * d.lambda, 2 * d.lambda_radius);
  for (const auto& f : d.factors)
    for (const auto& r : f.roots)
      if (d.lambda > 0 && std::abs(r.modulus() - d.lambda) <= tol) ++d.n_phi;
}

}  // namespace

SpectralDecomposition residues(const IntPoly& vtilde, const std::vector<Integer>& seq, int degree_cap) {
  if (!vtilde.is_monic()) fail(ErrorKind::Domain, "residues: recurrence polynomial must be monic");
  SpectralDecomposition out;
  out.recurrence = vtilde;
  out.window = seq.size();
  if (vtilde.degree() == 0) {
    for (std::size_t k = 0; k < seq.size(); ++k)
      if (seq[k] != 0) fail(ErrorKind::OracleMismatch, "decomposition error: empty recurrence but nonzero term");
    return out;
  }
  if (vtilde.coeff(0) == 0) fail(ErrorKind::OracleMismatch, "decomposition error: recurrence has the root 0");
  const Factorization fac = factor_int_poly(vtilde, degree_cap);
  for (const auto& [poly, mult] : fac.factors) {
    if (mult != 1) fail(ErrorKind::OracleMismatch, "decomposition error: repeated factor " + poly.str() + " in " + vtilde.str());
    out.factors.push_back(SpectralFactor{poly, Integer(0), {}});
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const SpectralFactor& a, const SpectralFactor& b) { return poly_less(a.poly, b.poly); });

  const auto rows = static_cast<Eigen::Index>(seq.size());
  const auto cols = static_cast<Eigen::Index>(out.factors.size());
  RatMatrix m(rows, cols);
  RatVector b(rows);
  for (Eigen::Index a = 0; a < cols; ++a) {
    const auto sums = power_sums(out.factors[static_cast<std::size_t>(a)].poly, seq.size());
    for (Eigen::Index k = 0; k < rows; ++k) m(k, a) = Rational(sums[static_cast<std::size_t>(k)]);
  }
  for (Eigen::Index k = 0; k < rows; ++k) b(k) = Rational(seq[static_cast<std::size_t>(k)]);
  RatVector rho;
  if (!solve_exact(m, b, rho)) {
    if (rank(m) < cols) fail(ErrorKind::WindowExhausted, "window too small: residue system is singular; increase kmax");
    fail(ErrorKind::OracleMismatch, "decomposition error: the window is not a sum of root powers of " + vtilde.str());
  }
  for (Eigen::Index a = 0; a < cols; ++a) {
    const Rational& r = rho(a);
    auto& f = out.factors[static_cast<std::size_t>(a)];
    if (!is_integral(r))
      fail(ErrorKind::OracleMismatch, "decomposition error: residue " + r.str() + " of " + f.poly.str() + " is not an integer");
    if (r == 0) fail(ErrorKind::OracleMismatch, "decomposition error: zero residue on " + f.poly.str());
    f.rho = numerator(r);
  }
  parallel_for(out.factors.size(), [&](std::size_t i) { out.factors[i].roots = polynomial_roots(out.factors[i].poly); });
  summarize(out);
  return out;
}

SpectralDecomposition decompose(const EndoSpec& spec, const std::vector<Integer>& seq, std::size_t guard, int degree_cap) {
  const IntPoly v = find_min_recurrence(seq, guard, default_degree_bound(spec));
  return residues(v, seq, degree_cap);
}

RationalFunction zeta_rational(const SpectralDecomposition& decomp) {
  RationalFunction out{IntPoly::constant(Integer(1)), IntPoly::constant(Integer(1))};
  for (const auto& f : decomp.factors) {
    const IntPoly rev = f.poly.reversed();
    const unsigned e = abs(f.rho).convert_to<unsigned>();
    if (f.rho > 0) out.denominator *= rev.pow(e);
    else out.numerator *= rev.pow(e);
  }
  const IntPoly g = gcd(out.numerator, out.denominator);
  if (g.degree() > 0) {
    out.numerator = out.numerator.exact_div(g);
    out.denominator = out.denominator.exact_div(g);
  }
  if (out.denominator.coeff(0) < 0) {
    out.numerator = -out.numerator;
    out.denominator = -out.denominator;
  }
  return out;
}

CompanionPair companion_pair(const SpectralDecomposition& decomp) {
  std::vector<IntMatrix> plus, minus;
  for (const auto& f : decomp.factors) {
    const IntMatrix block = companion(f.poly);
    auto& side = f.rho > 0 ? plus : minus;
    for (Integer i = 0; i < abs(f.rho); ++i) side.push_back(block);
  }
  return {direct_sum(plus), direct_sum(minus)};
}

RadiusReport radius_and_lambda(const SpectralDecomposition& decomp) {
  RadiusReport r;
  r.lambda = decomp.lambda;
  r.radius = decomp.lambda > 0 ? 1 / decomp.lambda : std::numeric_limits<long double>::infinity();
  r.n_phi = decomp.n_phi;
  r.rho_phi = decomp.rho_phi;
  r.M_phi = decomp.M_phi;
  return r;
}

ExteriorBoundReport verify_exterior_bound(const EndoSpec& spec, const SpectralDecomposition& decomp) {
  ExteriorBoundReport rep;
  rep.lambda = decomp.lambda;
  const RatPoly chi = charpoly(spec.D);
  if (chi(Rational(1)) == 0) {
    rep.reason = "inapplicable: 1 is an eigenvalue of D";
    return rep;
  }
  rep.applicable = true;
  long double radius = 1;  // zeroth exterior power
  for (int j = 1; j <= spec.n; ++j) {
    const IntPoly p = clear_denominators(charpoly(exterior_power(spec.D, j)));
    for (const auto& [factor, mult] : factor_int_poly(p).factors) radius = std::max(radius, max_root_modulus(factor));
  }
  rep.exterior_radius = radius;
  rep.relative_error = std::abs(radius - decomp.lambda) / std::max<long double>(radius, 1e-300L);
  rep.match = rep.relative_error <= 1e-9L;
  if (!rep.match) rep.reason = "spectral radius differs from lambda";
  return rep;
}

std::vector<Rational> exp_log_series(const std::vector<Integer>& seq, std::size_t order) {
  std::vector<Rational> c(order + 1, Rational(0));
  c[0] = 1;
  // m c_m = sum_{k=1}^{m} R_k c_{m-k}
  for (std::size_t m = 1; m <= order; ++m) {
    Rational acc = 0;
    for (std::size_t k = 1; k <= m && k <= seq.size(); ++k) acc += Rational(seq[k - 1]) * c[m - k];
    c[m] = acc / Rational(static_cast<long>(m));
  }
  return c;
}

std::vector<Integer> power_traces(const IntMatrix& m, std::size_t count) {
  if (m.rows() == 0) return std::vector<Integer>(count, Integer(0));
  return power_sums(charpoly(m), count);
}

}  // namespace tspec
