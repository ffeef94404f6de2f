#pragma once

// Arbitrary-precision scalar types and the dense Eigen aliases built on them.
// Expression templates are disabled on the multiprecision numbers so that they
// compose with Eigen's own expression machinery.

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <Eigen/Dense>

#include <cstdint>
#include <string>

namespace tspec {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;
using IntVector = Vector<Integer>;
using RatVector = Vector<Rational>;

inline Integer numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integral(const Rational& q) { return denominator(q) == 1; }

inline Integer abs(const Integer& x) { return x < 0 ? Integer(-x) : x; }
inline Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }

inline Integer gcd(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }
inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / gcd(a, b) * b);
}

/// Floor division and the matching non-negative remainder (for positive m).
inline Integer floor_div(const Integer& a, const Integer& m) {
  Integer q = a / m;
  if ((a % m != 0) && ((a < 0) != (m < 0))) --q;
  return q;
}
inline Integer mod_floor(const Integer& a, const Integer& m) { return a - floor_div(a, m) * m; }

inline std::string to_string(const Integer& x) { return x.str(); }
inline std::string to_string(const Rational& x) { return x.str(); }

inline double to_double(const Integer& x) { return x.convert_to<double>(); }
inline double to_double(const Rational& x) { return x.convert_to<double>(); }
inline long double to_long_double(const Integer& x) { return x.convert_to<long double>(); }

template <typename Scalar>
Matrix<Scalar> identity(Eigen::Index n) {
  return Matrix<Scalar>::Identity(n, n);
}

/// Entry-wise conversion of an integer matrix to rationals (and back when exact).
RatMatrix to_rational(const IntMatrix& m);
bool is_integral(const RatMatrix& m);
IntMatrix to_integer(const RatMatrix& m);  // throws Domain if some entry is fractional

}  // namespace tspec
