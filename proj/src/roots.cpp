#include "tspec/roots.hpp"

#include "tspec/errors.hpp"

#include <boost/multiprecision/cpp_complex.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tspec {

namespace {

using Wide = boost::multiprecision::cpp_complex_50;
using WideReal = boost::multiprecision::cpp_bin_float_50;
using Cx = std::complex<long double>;

template <typename C, typename Coeffs>
void eval_with_derivative(const Coeffs& c, const C& z, C& value, C& slope) {
  value = C(0);
  slope = C(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    slope = slope * z + value;
    value = value * z + *it;
  }
}

std::vector<Cx> aberth(const std::vector<long double>& c) {
  const std::size_t t = c.size() - 1;
  // Start on a circle whose radius is a Cauchy-type bound, rotated off the axes.
  long double bound = 0;
  for (std::size_t i = 0; i < t; ++i) bound = std::max(bound, std::abs(c[i] / c[t]));
  const long double radius = std::max<long double>(1 + bound, 1) * 0.5L + 0.5L;
  std::vector<Cx> z(t);
  for (std::size_t i = 0; i < t; ++i) {
    const long double th = 2 * std::numbers::pi_v<long double> * static_cast<long double>(i) / static_cast<long double>(t) + 0.4L;
    z[i] = std::polar(radius, th);
  }
  std::vector<Cx> coeffs(c.begin(), c.end());
  for (int iter = 0; iter < 500; ++iter) {
    long double worst = 0;
    for (std::size_t i = 0; i < t; ++i) {
      Cx v, d;
      eval_with_derivative(coeffs, z[i], v, d);
      if (v == Cx(0)) continue;
      const Cx ratio = v / d;
      Cx repulsion(0);
      for (std::size_t j = 0; j < t; ++j)
        if (j != i) repulsion += Cx(1) / (z[i] - z[j]);
      const Cx step = ratio / (Cx(1) - ratio * repulsion);
      z[i] -= step;
      worst = std::max(worst, std::abs(step) / std::max<long double>(1, std::abs(z[i])));
    }
    if (worst < 1e-17L) break;
  }
  return z;
}

}  // namespace

std::vector<RootEstimate> polynomial_roots(const IntPoly& p) {
  const int t = p.degree();
  if (t < 1) return {};
  if (t == 1) {
    const Rational r(-p.coeff(0), p.coeff(1));
    return {RootEstimate{Cx(r.convert_to<long double>(), 0), 0, true}};
  }
  std::vector<long double> c;
  std::vector<Wide> wc;
  for (const auto& x : p.coefficients()) {
    c.push_back(to_long_double(x));
    wc.emplace_back(WideReal(x.str()));
  }
  const std::vector<Cx> rough = aberth(c);

  std::vector<Wide> z;
  for (const auto& r : rough) z.emplace_back(WideReal(r.real()), WideReal(r.imag()));
  for (int iter = 0; iter < 8; ++iter)
    for (auto& zi : z) {
      Wide v, d;
      eval_with_derivative(wc, zi, v, d);
      if (abs(d) != 0) zi -= v / d;
    }

  const Wide lc = wc.back();
  std::vector<RootEstimate> out;
  std::vector<WideReal> radius(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    Wide v, d;
    eval_with_derivative(wc, z[i], v, d);
    Wide denom = lc;
    for (std::size_t j = 0; j < z.size(); ++j)
      if (j != i) denom *= z[i] - z[j];
    radius[i] = abs(denom) == 0 ? WideReal(1e30) : WideReal(t * abs(v) / abs(denom));
  }
  for (std::size_t i = 0; i < z.size(); ++i) {
    RootEstimate e;
    e.value = Cx(z[i].real().convert_to<long double>(), z[i].imag().convert_to<long double>());
    e.radius = radius[i].convert_to<long double>();
    for (std::size_t j = 0; j < z.size(); ++j)
      if (j != i && abs(z[i] - z[j]) <= radius[i] + radius[j]) e.isolated = false;
    out.push_back(e);
  }
  std::sort(out.begin(), out.end(), [](const RootEstimate& a, const RootEstimate& b) {
    if (a.modulus() != b.modulus()) return a.modulus() > b.modulus();
    return a.angle() < b.angle();
  });
  return out;
}

long double max_root_modulus(const IntPoly& p) {
  long double best = 0;
  for (const auto& r : polynomial_roots(p)) best = std::max(best, r.modulus());
  return best;
}

}  // namespace tspec
