#pragma once

#include "tspec/errors.hpp"
#include "tspec/scalar.hpp"

#include <initializer_list>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace tspec {

/// Dense univariate polynomial with coefficients in ascending degree.
/// Canonical form: no trailing zero coefficient; the zero polynomial is empty.
template <typename Scalar>
class Polynomial {
public:
  Polynomial() = default;
  Polynomial(std::initializer_list<Scalar> c) : coeffs_(c) { trim(); }
  explicit Polynomial(std::vector<Scalar> c) : coeffs_(std::move(c)) { trim(); }

  static Polynomial constant(const Scalar& c) { return Polynomial(std::vector<Scalar>{c}); }
  static Polynomial monomial(const Scalar& c, std::size_t degree) {
    std::vector<Scalar> v(degree + 1, Scalar(0));
    v[degree] = c;
    return Polynomial(std::move(v));
  }
  /// z - root
  static Polynomial linear_root(const Scalar& root) { return Polynomial({Scalar(-root), Scalar(1)}); }

  bool is_zero() const { return coeffs_.empty(); }
  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Scalar& leading() const { return coeffs_.back(); }
  Scalar coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Scalar(0); }
  const std::vector<Scalar>& coefficients() const { return coeffs_; }
  std::size_t size() const { return coeffs_.size(); }
  bool is_monic() const { return !is_zero() && leading() == 1; }

  Scalar operator()(const Scalar& x) const {
    Scalar acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  bool operator==(const Polynomial& o) const { return coeffs_ == o.coeffs_; }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  Polynomial operator-() const {
    std::vector<Scalar> v(coeffs_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = -coeffs_[i];
    return Polynomial(std::move(v));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Scalar> v(std::max(a.size(), b.size()), Scalar(0));
    for (std::size_t i = 0; i < a.size(); ++i) v[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.size(); ++i) v[i] += b.coeffs_[i];
    return Polynomial(std::move(v));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Scalar> v(a.size() + b.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Polynomial(std::move(v));
  }
  friend Polynomial operator*(const Scalar& c, const Polynomial& p) {
    std::vector<Scalar> v(p.coeffs_);
    for (auto& x : v) x *= c;
    return Polynomial(std::move(v));
  }

  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial pow(unsigned e) const {
    Polynomial result = constant(Scalar(1)), base = *this;
    while (e) {
      if (e & 1U) result *= base;
      e >>= 1U;
      if (e) base *= base;
    }
    return result;
  }

  Polynomial derivative() const {
    if (size() <= 1) return {};
    std::vector<Scalar> v(size() - 1);
    for (std::size_t i = 1; i < size(); ++i) v[i - 1] = coeffs_[i] * Scalar(static_cast<long>(i));
    return Polynomial(std::move(v));
  }

  /// z^deg * p(1/z). For p(0) != 0 this is an involution.
  Polynomial reversed() const {
    std::vector<Scalar> v(coeffs_.rbegin(), coeffs_.rend());
    return Polynomial(std::move(v));
  }

  /// Division with remainder. Over a field any nonzero divisor works; over the
  /// integers the leading coefficient of the divisor must divide every step
  /// (checked, Domain error otherwise).
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const {
    if (d.is_zero()) fail(ErrorKind::Domain, "polynomial division by zero");
    std::vector<Scalar> r = coeffs_;
    if (degree() < d.degree()) return {Polynomial{}, *this};
    std::vector<Scalar> q(size() - d.size() + 1, Scalar(0));
    const Scalar& lc = d.leading();
    for (int i = degree(); i >= d.degree(); --i) {
      const Scalar& top = r[static_cast<std::size_t>(i)];
      if (top == 0) continue;
      Scalar factor = top / lc;
      if (factor * lc != top) fail(ErrorKind::Domain, "inexact polynomial division");
      const std::size_t shift = static_cast<std::size_t>(i - d.degree());
      q[shift] = factor;
      for (std::size_t j = 0; j < d.size(); ++j) r[shift + j] -= factor * d.coeffs_[j];
    }
    return {Polynomial(std::move(q)), Polynomial(std::move(r))};
  }

  /// True when d divides *this exactly (no remainder, exact quotient coefficients).
  bool divisible_by(const Polynomial& d) const {
    try {
      return divmod(d).second.is_zero();
    } catch (const Error&) {
      return false;
    }
  }

  /// Exact quotient; Domain error if d does not divide.
  Polynomial exact_div(const Polynomial& d) const {
    auto [q, r] = divmod(d);
    if (!r.is_zero()) fail(ErrorKind::Domain, "polynomial does not divide exactly");
    return q;
  }

  std::string str(const char* var = "z") const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
      const Scalar& c = coeffs_[static_cast<std::size_t>(i)];
      if (c == 0) continue;
      std::string cs = to_string(c < 0 ? Scalar(-c) : c);
      if (!out.empty()) out += (c < 0) ? " - " : " + ";
      else if (c < 0) out += "-";
      if (i == 0 || cs != "1") out += cs;
      if (i >= 1) out += var;
      if (i >= 2) out += "^" + std::to_string(i);
    }
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.str(); }

private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  std::vector<Scalar> coeffs_;
};

using IntPoly = Polynomial<Integer>;
using RatPoly = Polynomial<Rational>;

/// gcd of the coefficients, sign taken from the leading coefficient (0 for zero).
Integer content(const IntPoly& p);
/// p / content(p); leading coefficient positive.
IntPoly primitive_part(const IntPoly& p);
/// Greatest common divisor over Z[z], primitive with positive leading coefficient.
IntPoly gcd(const IntPoly& a, const IntPoly& b);

RatPoly to_rational(const IntPoly& p);
/// Scale a rational polynomial to a primitive integer polynomial with the same roots.
IntPoly clear_denominators(const RatPoly& p);

/// Companion matrix with ones on the subdiagonal and -b_j in the last column, so
/// that det(zI - C) = p for monic p.
IntMatrix companion(const IntPoly& monic);

/// Power sums s_k = sum of k-th powers of the roots of a monic polynomial, k = 1..count,
/// via Newton's identities.
std::vector<Integer> power_sums(const IntPoly& monic, std::size_t count);

}  // namespace tspec
