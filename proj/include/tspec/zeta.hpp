#pragma once

#include "tspec/polynomial.hpp"
#include "tspec/roots.hpp"
#include "tspec/spectrum.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tspec {

/// numerator / denominator with gcd 1 and denominator(0) = 1.
struct RationalFunction {
  IntPoly numerator;
  IntPoly denominator;

  /// Taylor coefficients c_0..c_order (integral because denominator(0) = 1).
  std::vector<Integer> taylor(std::size_t order) const;
};

struct SpectralFactor {
  IntPoly poly;    // monic irreducible
  Integer rho;     // common residue of its roots, nonzero
  std::vector<RootEstimate> roots;  // by decreasing modulus
};

struct SpectralDecomposition {
  IntPoly recurrence;                  // product of the factors
  std::vector<SpectralFactor> factors;  // ordered by (degree, coefficients)
  long double lambda = 0;              // largest root modulus, 0 when empty
  long double lambda_radius = 0;       // certified inclusion radius of lambda
  int n_phi = 0;                       // roots of modulus lambda
  int r_phi = 0;                       // total number of roots
  Integer rho_phi{0};                  // sum of residues over roots
  Integer M_phi{0};                    // max(sum of positive, -sum of negative)
  std::size_t window = 0;              // terms the decomposition was checked against

  bool empty() const { return factors.empty(); }
  /// sum_i rho_i lambda_i^k, evaluated exactly through power sums.
  Integer value_at(std::uint64_t k) const;
};

struct CompanionPair {
  IntMatrix plus;
  IntMatrix minus;
};

/// Default recurrence degree bound 2^n #Phi.
std::size_t default_degree_bound(const EndoSpec& spec);

/// Monic integer polynomial of least degree t whose recurrence annihilates every
/// supplied term, searched while 2t + guard <= seq.size() (and t <= degree_bound when
/// given). seq holds R(1), R(2), .... WindowExhausted when no degree qualifies;
/// OracleMismatch when the minimal recurrence is not integral.
IntPoly find_min_recurrence(const std::vector<Integer>& seq, std::size_t guard,
                            std::optional<std::size_t> degree_bound = std::nullopt);

/// Splits vtilde into irreducible factors and solves for their integral residues.
SpectralDecomposition residues(const IntPoly& vtilde, const std::vector<Integer>& seq,
                               int degree_cap = 64);

/// find_min_recurrence followed by residues, using the spec's degree bound.
SpectralDecomposition decompose(const EndoSpec& spec, const std::vector<Integer>& seq,
                                std::size_t guard = 10, int degree_cap = 64);

RationalFunction zeta_rational(const SpectralDecomposition& decomp);
CompanionPair companion_pair(const SpectralDecomposition& decomp);

struct RadiusReport {
  long double lambda = 0;
  long double radius = 0;  // +infinity when lambda = 0
  int n_phi = 0;
  Integer rho_phi{0};
  Integer M_phi{0};
};

RadiusReport radius_and_lambda(const SpectralDecomposition& decomp);

struct ExteriorBoundReport {
  bool applicable = false;
  std::string reason;
  long double lambda = 0;
  long double exterior_radius = 0;  // spectral radius of the sum of all exterior powers of D
  long double relative_error = 0;
  bool match = false;
};

ExteriorBoundReport verify_exterior_bound(const EndoSpec& spec, const SpectralDecomposition& decomp);

/// Coefficients of exp(sum_k seq[k-1] z^k / k) through z^order, exactly.
std::vector<Rational> exp_log_series(const std::vector<Integer>& seq, std::size_t order);

/// tr M^k for k = 1..count by Newton's identities on charpoly(M).
std::vector<Integer> power_traces(const IntMatrix& m, std::size_t count);

}  // namespace tspec
