#include "tspec/numth.hpp"

#include "tspec/errors.hpp"

#include <numeric>

namespace tspec {

ExtNat::ExtNat(const Integer& v) : value_(v) {
  if (v < 0) fail(ErrorKind::Domain, "ExtNat: negative value " + v.str());
}

const Integer& ExtNat::value() const {
  if (infinite_) fail(ErrorKind::InfiniteValue, "ExtNat: value requested from Infinite");
  return value_;
}

ExtNat operator+(const ExtNat& a, const ExtNat& b) {
  if (a.infinite_ || b.infinite_) return ExtNat::infinite();
  return ExtNat(a.value_ + b.value_);
}

bool operator==(const ExtNat& a, const ExtNat& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
  return a.value_ == b.value_;
}

std::strong_ordering operator<=>(const ExtNat& a, const ExtNat& b) {
  if (a.infinite_ && b.infinite_) return std::strong_ordering::equal;
  if (a.infinite_) return std::strong_ordering::greater;
  if (b.infinite_) return std::strong_ordering::less;
  if (a.value_ < b.value_) return std::strong_ordering::less;
  if (a.value_ > b.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string ExtNat::str() const { return infinite_ ? "inf" : value_.str(); }

int mobius(std::uint64_t n) {
  if (n == 0) fail(ErrorKind::Domain, "mobius: n must be positive");
  int sign = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  if (n > 1) sign = -sign;
  return sign;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  if (n == 0) fail(ErrorKind::Domain, "divisors: n must be positive");
  std::vector<std::uint64_t> small, large;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  using u128 = unsigned __int128;
  auto mulmod = [n](std::uint64_t a, std::uint64_t b) { return static_cast<std::uint64_t>(static_cast<u128>(a) * b % n); };
  auto powmod = [&](std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
      if (e & 1U) r = mulmod(r, a);
      a = mulmod(a, a);
      e >>= 1U;
    }
    return r;
  };
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  // This witness set is deterministic for all 64-bit n.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Multiplicity dold_and_algebraic(const IntSequence& seq, std::uint64_t k) {
  Integer sum = 0;
  for (auto d : divisors(k)) {
    auto it = seq.find(d);
    if (it == seq.end()) fail(ErrorKind::Domain, "dold_and_algebraic: missing value at " + std::to_string(d));
    const int mu = mobius(k / d);
    if (mu != 0) sum += mu * it->second;
  }
  return {sum, Rational(sum, Integer(k))};
}

Integer reconstruct_from_algebraic(const std::map<std::uint64_t, Rational>& algebraic, std::uint64_t k) {
  Rational sum = 0;
  for (auto d : divisors(k)) sum += Rational(Integer(d)) * algebraic.at(d);
  if (!is_integral(sum)) fail(ErrorKind::Domain, "reconstruct_from_algebraic: non-integral result");
  return numerator(sum);
}

CongruenceReport gauss_congruence_check(const ExtSequence& seq, std::uint64_t kmax) {
  CongruenceReport report;
  for (std::uint64_t k = 1; k <= kmax; ++k) {
    IntSequence finite;
    bool undefined = false;
    for (auto d : divisors(k)) {
      auto it = seq.find(d);
      if (it == seq.end()) fail(ErrorKind::Domain, "gauss_congruence_check: missing value at " + std::to_string(d));
      if (it->second.is_infinite()) {
        undefined = true;
        break;
      }
      finite[d] = it->second.value();
    }
    if (undefined) {
      report.undefined.push_back(k);
      continue;
    }
    const Integer dold = dold_and_algebraic(finite, k).dold;
    const bool not_div = dold % Integer(k) != 0;
    const bool neg = dold < 0;
    if (not_div || neg) report.violations.push_back({k, dold, not_div, neg});
  }
  return report;
}

std::vector<std::uint64_t> primes_in_progression(std::int64_t a, std::uint64_t q, std::size_t count) {
  if (q == 0) fail(ErrorKind::Domain, "primes_in_progression: modulus must be positive");
  const auto qq = static_cast<std::int64_t>(q);
  const std::int64_t r = ((a % qq) + qq) % qq;
  if (std::gcd(static_cast<std::uint64_t>(r), q) != 1)
    fail(ErrorKind::Domain, "primes_in_progression: gcd(a, q) != 1");
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = static_cast<std::uint64_t>(r); out.size() < count; n += q)
    if (is_prime(n)) out.push_back(n);
  return out;
}

}  // namespace tspec
