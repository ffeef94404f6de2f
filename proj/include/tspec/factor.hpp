#pragma once

#include "tspec/polynomial.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace tspec {

/// p = unit_content * prod factor_i^multiplicity_i, each factor primitive,
/// irreducible over Z and with positive leading coefficient.
struct Factorization {
  Integer unit_content{1};
  std::vector<std::pair<IntPoly, int>> factors;

  IntPoly expand() const;
};

inline constexpr int kDefaultFactorDegreeCap = 64;

/// Square-free decomposition (Yun) followed by Zassenhaus factorization of each
/// square-free part: modular factorization, Hensel lifting and recombination.
/// Capability error when deg p exceeds degree_cap.
Factorization factor_int_poly(const IntPoly& p, int degree_cap = kDefaultFactorDegreeCap);

/// Square-free decomposition of a primitive polynomial: p = prod q_i^i.
std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& p);

namespace modp {

/// Polynomials over F_p, ascending coefficients in [0, p), canonical (no trailing zeros).
using Poly = std::vector<std::uint64_t>;

Poly reduce(const IntPoly& p, std::uint64_t prime);
Poly add(const Poly& a, const Poly& b, std::uint64_t prime);
Poly sub(const Poly& a, const Poly& b, std::uint64_t prime);
Poly mul(const Poly& a, const Poly& b, std::uint64_t prime);
/// Quotient of a by b; the remainder is written to `remainder`.
Poly divmod(const Poly& a, const Poly& b, std::uint64_t prime, Poly& remainder);
std::uint64_t inverse(std::uint64_t a, std::uint64_t prime);
Poly rem(const Poly& a, const Poly& b, std::uint64_t prime);
Poly gcd(const Poly& a, const Poly& b, std::uint64_t prime);
Poly make_monic(const Poly& a, std::uint64_t prime);
bool is_squarefree(const Poly& a, std::uint64_t prime);
/// Monic irreducible factors of a square-free polynomial (distinct-degree then
/// equal-degree splitting with a fixed-seed generator, so results are reproducible).
std::vector<Poly> factor_squarefree(const Poly& a, std::uint64_t prime);
bool is_irreducible(const Poly& a, std::uint64_t prime);

}  // namespace modp

}  // namespace tspec
