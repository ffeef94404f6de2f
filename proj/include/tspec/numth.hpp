#pragma once

#include "tspec/errors.hpp"
#include "tspec/scalar.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tspec {

/// A non-negative integer or Infinite. Infinite absorbs under addition and
/// compares above every finite value.
class ExtNat {
public:
  ExtNat() = default;
  ExtNat(const Integer& v);  // NOLINT(google-explicit-constructor): finite values read naturally
  ExtNat(long v) : ExtNat(Integer(v)) {}
  static ExtNat infinite() {
    ExtNat x;
    x.infinite_ = true;
    return x;
  }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  /// Domain error on Infinite.
  const Integer& value() const;

  friend ExtNat operator+(const ExtNat& a, const ExtNat& b);
  friend bool operator==(const ExtNat& a, const ExtNat& b);
  friend std::strong_ordering operator<=>(const ExtNat& a, const ExtNat& b);

  /// Decimal digits, or "inf".
  std::string str() const;

private:
  Integer value_{0};
  bool infinite_ = false;
};

/// Möbius function; Domain error for n = 0.
int mobius(std::uint64_t n);

/// Ascending divisors of n; Domain error for n = 0.
std::vector<std::uint64_t> divisors(std::uint64_t n);

/// Ascending prime divisors of n.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// Deterministic primality for 64-bit inputs.
bool is_prime(std::uint64_t n);

/// Sequence indexed by k >= 1.
using IntSequence = std::map<std::uint64_t, Integer>;
using ExtSequence = std::map<std::uint64_t, ExtNat>;

struct Multiplicity {
  Integer dold;        // I_k
  Rational algebraic;  // A_k = I_k / k
};

/// Dold multiplicity I_k = sum_{d|k} mu(k/d) seq(d) and A_k = I_k / k.
/// Domain error if some divisor value is missing.
Multiplicity dold_and_algebraic(const IntSequence& seq, std::uint64_t k);

/// Inverse transform: seq(k) = sum_{d|k} d * A_d.
Integer reconstruct_from_algebraic(const std::map<std::uint64_t, Rational>& algebraic, std::uint64_t k);

struct CongruenceViolation {
  std::uint64_t k;
  Integer dold;
  bool not_divisible;  // I_k != 0 mod k
  bool negative;       // I_k < 0
};

struct CongruenceReport {
  std::vector<CongruenceViolation> violations;
  /// k for which some divisor value is Infinite; the congruence is undefined there.
  std::vector<std::uint64_t> undefined;
  bool ok() const { return violations.empty(); }
};

/// Checks I_k = 0 mod k and I_k >= 0 for every k <= kmax.
CongruenceReport gauss_congruence_check(const ExtSequence& seq, std::uint64_t kmax);

/// The first `count` primes congruent to a mod q; Domain error if gcd(a, q) != 1.
std::vector<std::uint64_t> primes_in_progression(std::int64_t a, std::uint64_t q, std::size_t count);

}  // namespace tspec
