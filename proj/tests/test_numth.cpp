#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tspec/numth.hpp"

#include <random>

using namespace tspec;

TEST_CASE("mobius and divisors") {
  CHECK(mobius(1) == 1);
  CHECK(mobius(6) == 1);
  CHECK(mobius(12) == 0);
  CHECK(mobius(30) == -1);
  CHECK(mobius(7) == -1);
  CHECK_THROWS_AS(mobius(0), Error);
  CHECK(divisors(1) == std::vector<std::uint64_t>{1});
  CHECK(divisors(12) == std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12});
  CHECK(divisors(7) == std::vector<std::uint64_t>{1, 7});
  CHECK_THROWS_AS(divisors(0), Error);
  CHECK(prime_factors(360) == std::vector<std::uint64_t>{2, 3, 5});
}

TEST_CASE("primality") {
  std::vector<std::uint64_t> small;
  for (std::uint64_t n = 0; n < 60; ++n)
    if (is_prime(n)) small.push_back(n);
  CHECK(small == std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59});
  CHECK(is_prime(1000000007ULL));
  CHECK_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
  CHECK(is_prime(18446744073709551557ULL));
}

TEST_CASE("extended naturals") {
  const ExtNat inf = ExtNat::infinite();
  CHECK((inf + ExtNat(3)).is_infinite());
  CHECK(ExtNat(2) + ExtNat(3) == ExtNat(5));
  CHECK(ExtNat(100) < inf);
  CHECK(inf == ExtNat::infinite());
  CHECK(inf.str() == "inf");
  CHECK(ExtNat(42).str() == "42");
  CHECK_THROWS_AS(inf.value(), Error);
  CHECK_THROWS_AS(ExtNat(-1), Error);
}

TEST_CASE("Dold and algebraic multiplicities") {
  const auto a = dold_and_algebraic({{1, 1}, {2, 3}}, 2);
  CHECK(a.dold == 2);
  CHECK(a.algebraic == 1);
  IntSequence constant;
  for (auto d : divisors(6)) constant[d] = 5;
  CHECK(dold_and_algebraic(constant, 6).dold == 0);
  const auto b = dold_and_algebraic({{1, 3}, {2, 3}}, 2);
  CHECK(b.dold == 0);
  CHECK_THROWS_AS(dold_and_algebraic({{1, 1}}, 2), Error);
}

TEST_CASE("Mobius inversion round trip") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<long> v(-50, 50);
  for (std::uint64_t k = 1; k <= 36; ++k) {
    IntSequence seq;
    for (std::uint64_t d = 1; d <= k; ++d) seq[d] = v(rng);
    std::map<std::uint64_t, Rational> alg;
    for (auto d : divisors(k)) alg[d] = dold_and_algebraic(seq, d).algebraic;
    CHECK(reconstruct_from_algebraic(alg, k) == seq[k]);
  }
}

TEST_CASE("Gauss congruence check") {
  ExtSequence pow2;
  for (std::uint64_t k = 1; k <= 12; ++k) pow2[k] = ExtNat((Integer(1) << k) - 1);
  CHECK(gauss_congruence_check(pow2, 12).ok());

  ExtSequence ones;
  for (std::uint64_t k = 1; k <= 12; ++k) ones[k] = ExtNat(1);
  CHECK(gauss_congruence_check(ones, 12).ok());

  const auto bad = gauss_congruence_check({{1, ExtNat(1)}, {2, ExtNat(2)}}, 2);
  REQUIRE(bad.violations.size() == 1);
  CHECK(bad.violations[0].k == 2);
  CHECK(bad.violations[0].dold == 1);
  CHECK(bad.violations[0].not_divisible);

  const auto undef = gauss_congruence_check({{1, ExtNat(1)}, {2, ExtNat::infinite()}, {3, ExtNat(4)}}, 3);
  CHECK(undef.undefined == std::vector<std::uint64_t>{2});
  CHECK(undef.ok());
}

TEST_CASE("primes in progression") {
  CHECK(primes_in_progression(1, 4, 3) == std::vector<std::uint64_t>{5, 13, 17});
  CHECK(primes_in_progression(1, 1, 2) == std::vector<std::uint64_t>{2, 3});
  CHECK(primes_in_progression(-1, 6, 3) == std::vector<std::uint64_t>{5, 11, 17});
  CHECK_THROWS_AS(primes_in_progression(2, 4, 1), Error);
}
