#pragma once

#include "tspec/polynomial.hpp"

#include <complex>
#include <vector>

namespace tspec {

/// A numerical root with a certified inclusion radius: the closed disc of this
/// radius around `value` contains a root, and exactly one when `isolated`.
struct RootEstimate {
  std::complex<long double> value;
  long double radius = 0;
  bool isolated = true;

  long double modulus() const { return std::abs(value); }
  long double angle() const { return std::arg(value); }
};

/// All complex roots of a square-free integer polynomial of degree >= 1, found by
/// Aberth iteration and polished with Newton steps in 50-digit arithmetic.
/// Inclusion radii: r_i = t |p(z_i)| / |lc prod_{j!=i} (z_i - z_j)|.
std::vector<RootEstimate> polynomial_roots(const IntPoly& p);

/// Largest root modulus, 0 for constants.
long double max_root_modulus(const IntPoly& p);

}  // namespace tspec
